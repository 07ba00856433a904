#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <functional>

#include "detset/gadgets.hpp"
#include "detset/random.hpp"

using namespace detset;

namespace {

template <class R>
bool raises(Errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("build_m0") {
  ZRing z;
  Matrix<ZRing> m = build_m0(z, Int(0), Int(1), 2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 1);
  CHECK(det(m) == 1);

  CHECK(det(build_m0(z, Int(2), Int(3), 3)) == 3);  // 3 * (3-2)^2
  CHECK(raises<ZRing>(Errc::bad_pivot_pair,
                      [&] { build_m0(z, Int(1), Int(1), 3); }));
  CHECK(raises<ZRing>(Errc::bad_pivot_pair,
                      [&] { build_m0(z, Int(2), Int(0), 3); }));

  // determinant formula across sizes and rings, against the oracle
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 101ULL}) {
    Fp ring(p);
    for (std::uint64_t b = 1; b < std::min<std::uint64_t>(p, 6); ++b)
      for (std::uint64_t a = 0; a < std::min<std::uint64_t>(p, 6); ++a) {
        if (a == b) continue;
        for (std::size_t n = 1; n <= 6; ++n) {
          Matrix<Fp> mm = build_m0(ring, a, b, n);
          REQUIRE(det(mm) == det_m0_formula(ring, a, b, n));
          if (n <= 6) REQUIRE(det_oracle(mm) == det(mm));
        }
      }
  }
}

TEST_CASE("block_double") {
  ZRing z;
  Matrix<ZRing> m0 = Matrix<ZRing>::identity(z, 1);
  Matrix<ZRing> zero = Matrix<ZRing>(z, 1, 1);
  Matrix<ZRing> d = Matrix<ZRing>::from_rows(z, {{Int(9)}});
  GadgetWitness<ZRing> w = block_double(m0, zero, d);
  CHECK(w.size() == 2);
  CHECK(w.value() == 9);

  GadgetWitness<ZRing> same = block_double(m0, d, d);
  CHECK(same.value() == 0);

  CHECK(raises<ZRing>(Errc::singular_block,
                      [&] { block_double(zero, d, d); }));

  SplitMix64 rng(55);
  Fp f7(7);
  for (int round = 0; round < 200; ++round) {
    Matrix<Fp> b0 = build_m0<Fp>(f7, 0, 1, 2);
    Matrix<Fp> m1 = random_matrix(f7, 2, rng);
    Matrix<Fp> m2 = random_matrix(f7, 2, rng);
    GadgetWitness<Fp> ww = block_double(b0, m1, m2);
    REQUIRE(ww.value() == f7.mul(det(b0), det(sub(m2, m1))));
    REQUIRE(det_oracle(ww.matrix()) == ww.value());
  }
}

TEST_CASE("build_bidiagonal") {
  ZRing z;
  CHECK(build_bidiagonal(z, {Int(5), Int(6)}, 2) ==
        Matrix<ZRing>::identity(z, 1));
  Matrix<ZRing> m =
      build_bidiagonal(z, {Int(7), Int(4), Int(9)}, 3);
  CHECK(m.at(0, 1) == 4);  // the second coordinate sits on the superdiagonal
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(1, 1) == 1);
  CHECK(m.at(1, 0) == 0);
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<Int> row(n, Int(3));
    CHECK(det(build_bidiagonal(z, row, n)) == 1);
  }
}

TEST_CASE("build_gadget fixed instances") {
  ZRing z;
  // three summands of two factors, the 4x4 layout
  Assignment<ZRing> asg{3, 2,
                        {Int(2), Int(5), Int(3), Int(7), Int(4), Int(6)}};
  GadgetWitness<ZRing> w = build_gadget(z, asg);
  CHECK(w.size() == 4);
  CHECK(w.value() == -(Int(2) * 5 + Int(3) * 7 + Int(4) * 6));

  // one summand of two factors
  Assignment<ZRing> xy{1, 2, {Int(3), Int(4)}};
  GadgetWitness<ZRing> wxy = build_gadget(z, xy);
  CHECK(wxy.value() == -12);
  CHECK(det_oracle(wxy.matrix()) == -12);

  // n = 3 with all ones
  Assignment<ZRing> ones{3, 3, std::vector<Int>(9, Int(1))};
  CHECK(build_gadget(z, ones).value() == 3);

  // degenerate n = 1
  Assignment<ZRing> single{1, 1, {Int(8)}};
  CHECK(build_gadget(z, single).value() == 8);
  CHECK(build_gadget(z, single).size() == 1);
  Assignment<ZRing> singles{3, 1, {Int(2), Int(3), Int(4)}};
  GadgetWitness<ZRing> ws = build_gadget(z, singles);
  CHECK(ws.value() == 9);
  CHECK(ws.size() == 4);

  Assignment<ZRing> bad{2, 2, {Int(1)}};
  CHECK(raises<ZRing>(Errc::shape_mismatch, [&] { build_gadget(z, bad); }));
}

TEST_CASE("build_gadget identity on random assignments") {
  SplitMix64 rng(66);
  for (int round = 0; round < 2000; ++round) {
    std::size_t m = 1 + rng.below(6), n = 1 + rng.below(6);
    auto run = [&](const auto& ring) {
      using R = std::decay_t<decltype(ring)>;
      Assignment<R> asg = random_assignment(ring, m, n, rng);
      GadgetWitness<R> w = build_gadget(ring, asg);
      typename R::Elem sum = ring.zero();
      for (std::size_t i = 0; i < m; ++i) {
        typename R::Elem prod = ring.one();
        for (std::size_t j = 0; j < n; ++j)
          prod = ring.mul(prod, asg.at(i, j));
        sum = ring.add(sum, prod);
      }
      REQUIRE(ring.eq(w.value(), n % 2 == 1 ? sum : ring.neg(sum)));
    };
    if (round % 2 == 0)
      run(Fp(std::array<std::uint64_t, 4>{2, 3, 7, 101}[rng.below(4)]));
    else
      run(ZRing());
  }
}

TEST_CASE("unit-scaled gadget") {
  ZRing z;
  Assignment<ZRing> asg{2, 3, {Int(1), Int(2), Int(3), Int(4), Int(5), Int(6)}};
  Int unit = 7;
  GadgetWitness<ZRing> w = build_gadget_with_unit(z, asg, unit);
  std::size_t size = 2 * 2 + 1;
  Int expect = pow(Int(7), static_cast<unsigned>(size - 3)) * (6 + 120);
  CHECK(w.value() == expect);
  // n = 1 routed with a unit
  Assignment<ZRing> singles{2, 1, {Int(3), Int(5)}};
  GadgetWitness<ZRing> ws = build_gadget_with_unit(z, singles, Int(2));
  CHECK(ws.value() == Int(4) * 8);
}

TEST_CASE("build_combined") {
  ZRing z;
  Assignment<ZRing> p1{1, 2, {Int(2), Int(3)}};  // contributes -xy
  Assignment<ZRing> p2{1, 2, {Int(4), Int(5)}};  // contributes -uv
  GadgetWitness<ZRing> w = build_combined(z, {p1, p2});
  CHECK(w.size() == 3);
  CHECK(w.value() == -(Int(2) * 3) - (Int(4) * 5));

  // single part delegates to the plain gadget
  GadgetWitness<ZRing> single = build_combined(z, {p1});
  CHECK(single.value() == build_gadget(z, p1).value());
  CHECK(single.matrix() == build_gadget(z, p1).matrix());

  Assignment<ZRing> zeros{2, 2, std::vector<Int>(4, Int(0))};
  CHECK(build_combined(z, {zeros, zeros}).value() == 0);

  // mixed shapes, including a routed n = 1 part
  Assignment<ZRing> p3{2, 3, std::vector<Int>(6, Int(1))};
  Assignment<ZRing> p4{2, 1, {Int(5), Int(6)}};
  GadgetWitness<ZRing> mixed = build_combined(z, {p1, p3, p4});
  CHECK(mixed.size() == 1 + 1 + 4 + 2);
  CHECK(mixed.value() == Int(-6) + 2 - 11);

  Fp f7(7);
  SplitMix64 rng(77);
  for (int round = 0; round < 100; ++round) {
    std::vector<Assignment<Fp>> parts;
    std::size_t count = 1 + rng.below(3);
    for (std::size_t i = 0; i < count; ++i)
      parts.push_back(
          random_assignment(f7, 1 + rng.below(3), 1 + rng.below(3), rng));
    build_combined(f7, parts);  // construction asserts det == value
  }
}

TEST_CASE("synthesize_witness") {
  ZRing z;
  ElemSet<ZRing> a01 = ElemSet<ZRing>::of_ints(z, {0, 1});
  GadgetWitness<ZRing> w = synthesize_witness(a01, 3, 2, Int(-2));
  CHECK(w.size() == 4);
  CHECK(w.value() == -2);
  CHECK(det_oracle(w.matrix()) == -2);
  for (std::size_t i = 0; i < w.matrix().rows(); ++i)
    for (std::size_t j = 0; j < w.matrix().cols(); ++j)
      CHECK(a01.contains(w.matrix().at(i, j)));

  CHECK(raises<ZRing>(Errc::not_a_member, [&] {
    synthesize_witness(a01, 3, 2, Int(100));
  }));
  ElemSet<ZRing> no_zero = ElemSet<ZRing>::of_ints(z, {1, 2});
  CHECK(raises<ZRing>(Errc::missing_zero_one, [&] {
    synthesize_witness(no_zero, 2, 2, Int(1));
  }));

  // membership is exact in both directions over a symmetric field subset
  Fp f5(5);
  ElemSet<Fp> a = ElemSet<Fp>::of_ints(f5, {0, 1, 4});
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      ElemSet<Fp> reach = iter_sumset(m, iter_productset(n, a));
      for (Fp::Elem t = 0; t < 5; ++t) {
        if (reach.contains(t)) {
          GadgetWitness<Fp> ww = synthesize_witness(a, m, n, t);
          REQUIRE(ww.value() == t);
        } else {
          REQUIRE(raises<Fp>(Errc::not_a_member, [&] {
            synthesize_witness(a, m, n, t);
          }));
        }
      }
    }
}

TEST_CASE("constructive membership witness chains verify") {
  ZRing z;
  ElemSet<ZRing> a = ElemSet<ZRing>::of_ints(z, {0, 1, 3});
  ElemSet<ZRing> diff = difference_set(a);
  ElemSet<ZRing> reach = iter_sumset(2, iter_productset(2, diff));
  reach.for_each([&](const Int& d) {
    GadgetWitness<ZRing> w = constructive_membership_witness(a, 2, 2, d);
    REQUIRE(w.value() == w.scale() * d);
    for (std::size_t i = 0; i < w.matrix().rows(); ++i)
      for (std::size_t j = 0; j < w.matrix().cols(); ++j)
        REQUIRE(a.contains(w.matrix().at(i, j)));
  });

  Fp f7(7);
  ElemSet<Fp> b = ElemSet<Fp>::of_ints(f7, {1, 3});
  ElemSet<Fp> bdiff = difference_set(b);
  ElemSet<Fp> breach = iter_sumset(3, iter_productset(2, bdiff));
  breach.for_each([&](Fp::Elem d) {
    GadgetWitness<Fp> w = constructive_membership_witness(b, 3, 2, d);
    REQUIRE(w.value() == f7.mul(w.scale(), d));
  });
}

TEST_CASE("coverage_certificate") {
  Fp f5(5);
  ElemSet<Fp> a = ElemSet<Fp>::of_ints(f5, {0, 1});
  CoverageCertificate<Fp> cert = coverage_certificate(a, 64);
  CHECK(cert.sym.elems() == std::vector<Fp::Elem>{0, 1, 4});
  CHECK(cert.m == 2);
  CHECK(cert.n == 2);
  CHECK(cert.matrix_size == 6);
  for (Fp::Elem t = 0; t < 5; ++t) {
    GadgetWitness<Fp> w = cert.witness_for(t);
    CHECK(w.value() == t);
    CHECK(w.size() == cert.matrix_size);
  }

  // a tight budget leaves only the (1,1) candidate, which cannot cover
  CHECK(raises<Fp>(Errc::insufficient_budget,
                   [&] { coverage_certificate(a, 2); }));

  // the whole field certifies itself at size one
  Fp f2(2);
  CoverageCertificate<Fp> tiny =
      coverage_certificate(ElemSet<Fp>::of_ints(f2, {0, 1}), 8);
  CHECK(tiny.direct);
  CHECK(tiny.matrix_size == 1);
  CHECK(tiny.witness_for(1).value() == 1);

  CHECK(raises<Fp>(Errc::set_too_small, [&] {
    coverage_certificate(ElemSet<Fp>::of_ints(f5, {2}), 64);
  }));
}
