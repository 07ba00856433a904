#include <catch2/catch_amalgamated.hpp>

#include "detset/bounds.hpp"
#include "detset/random.hpp"

using namespace detset;

namespace {

ElemSet<Fp> mask_set(const Fp& ring, std::uint64_t mask) {
  ElemSet<Fp> s(ring);
  for (std::uint64_t v = 0; v < ring.modulus(); ++v)
    if (mask & (std::uint64_t{1} << v)) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("check_lemma2") {
  ZRing z;
  BoundReport zero = check_lemma2(ElemSet<ZRing>::of_ints(z, {0}), 3);
  CHECK(zero.pass);
  CHECK(zero.lhs == 1);
  CHECK(zero.rhs_rat == Rat(1, 8));

  Fp f13(13);
  BoundReport r = check_lemma2(ElemSet<Fp>::of_ints(f13, {1, 2}), 1);
  CHECK(r.pass);
  CHECK(r.lhs == 13);  // 8A - 8A already covers the field
  CHECK(r.rhs_rat == Rat(2, 8));

  // exhaustive small-field sweeps at n = 1
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    Fp ring(p);
    for (std::uint64_t mask = 0; mask < (1ULL << p); ++mask)
      REQUIRE(check_lemma2(mask_set(ring, mask), 1).pass);
  }

  // the integer variant drops the modulus from the bound
  BoundReport zr = check_lemma2(ElemSet<ZRing>::of_ints(z, {0, 1, 3}), 1);
  CHECK(zr.pass);
  CHECK(zr.rhs_rat == Rat(3, 8));
  CHECK(!zr.p.has_value());
}

TEST_CASE("check_glk_inner") {
  Fp f13(13);
  BoundReport r = check_glk_inner(ElemSet<Fp>::of_ints(f13, {1, 2, 3, 4, 5}), 1);
  CHECK(r.pass);
  CHECK(r.status == "ok");
  CHECK(r.details.at("N_n") == "1");
  CHECK(r.details.at("N_n_integral") == "false");  // exact value is 1/2
  // |A - A| = 9 vs (3/8) min(5, 6)
  CHECK(r.lhs == 9);
  CHECK(r.rhs_rat == Rat(15, 8));

  BoundReport short_h =
      check_glk_inner(ElemSet<Fp>::of_ints(f13, {1, 2, 3, 4}), 1);
  CHECK(short_h.status == "hypothesis_not_met");
  CHECK(short_h.pass);

  Fp f31(31);
  BoundReport n2 =
      check_glk_inner(ElemSet<Fp>::of_ints(f31, {1, 2, 3, 5, 11}), 2);
  CHECK(n2.details.at("N_n") == "3");
  CHECK(n2.details.at("N_n_integral") == "true");
  CHECK(n2.pass);
}

TEST_CASE("larger inner sumset counts stay integral") {
  // (5/24) 4^n - 1/3 for n = 2, 3, 4
  CHECK((Int(5) * pow(Int(4), 2) - 8) % 24 == 0);
  CHECK((Int(5) * pow(Int(4), 3) - 8) % 24 == 0);
  CHECK((Int(5) * pow(Int(4), 4) - 8) % 24 == 0);
  CHECK((Int(5) * pow(Int(4), 2) - 8) / 24 == 3);
  CHECK((Int(5) * pow(Int(4), 3) - 8) / 24 == 13);
  CHECK((Int(5) * pow(Int(4), 4) - 8) / 24 == 53);
}

TEST_CASE("check_cor3") {
  Fp f5(5);
  ElemSet<Fp> a01 = ElemSet<Fp>::of_ints(f5, {0, 1});
  BoundReport r = check_cor3(a01, 2, Int(3));
  CHECK(r.pass);
  CHECK_FALSE(r.rhs_is_exact);
  CHECK(r.rhs_approx == Catch::Approx(std::pow(2.0, 0.1) / 8.0).epsilon(1e-12));

  BoundReport n1 = check_cor3(a01, 1, Int(2));
  CHECK(n1.pass);
  CHECK(n1.rhs_is_exact);
  CHECK(n1.rhs_rat == Rat(1, 8));

  // integer exponent at n = 2^10
  BoundReport deep = check_cor3(a01, 1024, Int(2));
  CHECK(deep.rhs_is_exact);
  CHECK(deep.rhs_rat == Rat(2, 8));  // min(|A|^1, 5) / 8
  CHECK(deep.pass);

  // conservative slack: a reported size exactly at the bound fails
  BoundReport margin = check_cor3(a01, 2, Int(0));
  CHECK_FALSE(margin.pass);
}

TEST_CASE("check_cor4") {
  Fp f7(7);
  BoundReport r = check_cor4(ElemSet<Fp>::of_ints(f7, {1, 3}), 0.01, 64);
  CHECK(r.pass);
  CHECK(r.status == "ok");
  CHECK(r.lhs == 8);  // certified doubled size
  CHECK(r.details.at("n_star") == "9");
  CHECK(r.details.at("witnesses_verified") == "7");

  Fp f2(2);
  BoundReport tiny = check_cor4(ElemSet<Fp>::of_ints(f2, {0, 1}), 0.5, 4);
  CHECK(tiny.pass);
  CHECK(tiny.lhs == 1);

  BoundReport thin = check_cor4(ElemSet<Fp>::of_ints(f7, {1}), 0.9, 64);
  CHECK(thin.status == "hypothesis_not_met");

  BoundReport starved = check_cor4(ElemSet<Fp>::of_ints(f7, {1, 3}), 0.01, 2);
  CHECK_FALSE(starved.pass);
  CHECK(starved.status == "insufficient_budget");
}

TEST_CASE("check_example1") {
  EnumBudget budget{1u << 21, 120.0, EnumBudget::Method::Naive};
  BoundReport r22 = check_example1(2, 2, budget);
  CHECK(r22.pass);
  CHECK(r22.rhs_rat == Rat(8));  // 2! * 2^2

  BoundReport r11 = check_example1(1, 3, budget);
  CHECK(r11.pass);
  CHECK(r11.lhs == 0);  // repeated rows of ones

  BoundReport r33 = check_example1(3, 3, budget);
  CHECK(r33.pass);
  CHECK(r33.rhs_rat == Rat(162));
}

TEST_CASE("check_cauchy_davenport") {
  Fp f7(7);
  BoundReport r = check_cauchy_davenport(ElemSet<Fp>::of_ints(f7, {0, 1}),
                                         ElemSet<Fp>::of_ints(f7, {0, 2, 3}));
  CHECK(r.pass);
  CHECK(r.rhs_rat == Rat(4));
  ZRing z;
  BoundReport zr = check_cauchy_davenport(
      ElemSet<ZRing>::of_ints(z, {0, 4}), ElemSet<ZRing>::of_ints(z, {1}));
  CHECK(zr.pass);
  CHECK(zr.rhs_rat == Rat(2));
  CHECK_THROWS_AS(
      check_cauchy_davenport(ElemSet<Fp>(f7), ElemSet<Fp>::of_ints(f7, {1})),
      Error);
}

TEST_CASE("reduction chain inclusion at n = 1") {
  for (std::uint64_t p : {5ULL, 7ULL}) {
    Fp ring(p);
    for (std::uint64_t mask = 1; mask < (1ULL << p); ++mask) {
      ElemSet<Fp> a = mask_set(ring, mask);
      ElemSet<Fp> inner = difference_set(iter_sumset(4, a));
      ElemSet<Fp> outer = difference_set(iter_sumset(8, a));
      REQUIRE(inner.subset_of(outer));
    }
  }
}
