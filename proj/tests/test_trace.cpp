#include <catch2/catch_amalgamated.hpp>

#include "detset/random.hpp"
#include "detset/trace_set.hpp"

using namespace detset;

TEST_CASE("traced sets match their untraced counterparts") {
  Fp f7(7);
  ElemSet<Fp> a = ElemSet<Fp>::of_ints(f7, {0, 1, 3});
  for (std::size_t m = 1; m <= 4; ++m) {
    CHECK(traced_iter_sumset(m, a).as_set() == iter_sumset(m, a));
    CHECK(traced_iter_productset(m, a).as_set() == iter_productset(m, a));
  }
  ZRing z;
  ElemSet<ZRing> b = ElemSet<ZRing>::of_ints(z, {-1, 2});
  CHECK(traced_iter_sumset(3, b).as_set() == iter_sumset(3, b));
  CHECK(traced_iter_productset(3, b).as_set() == iter_productset(3, b));
}

TEST_CASE("decode replays every element exactly") {
  SplitMix64 rng(41);
  Fp f31(31);
  for (int round = 0; round < 10; ++round) {
    ElemSet<Fp> a(f31);
    std::size_t card = 2 + rng.below(3);
    while (a.size() < card) a.insert(rng.below(31));
    std::size_t m = 1 + rng.below(4);

    TraceSet<Fp> sums = traced_iter_sumset(m, a);
    sums.as_set().for_each([&](Fp::Elem e) {
      std::vector<Fp::Elem> parts = sums.decode(e);
      REQUIRE(parts.size() == m);
      Fp::Elem replay = 0;
      for (Fp::Elem x : parts) {
        REQUIRE(a.contains(x));
        replay = f31.add(replay, x);
      }
      REQUIRE(replay == e);
    });

    TraceSet<Fp> prods = traced_iter_productset(m, a);
    prods.as_set().for_each([&](Fp::Elem e) {
      std::vector<Fp::Elem> parts = prods.decode(e);
      Fp::Elem replay = 1;
      for (Fp::Elem x : parts) replay = f31.mul(replay, x);
      REQUIRE(replay == e);
    });
  }
}

TEST_CASE("decode refuses non-members") {
  ZRing z;
  ElemSet<ZRing> a = ElemSet<ZRing>::of_ints(z, {0, 1});
  TraceSet<ZRing> sums = traced_iter_sumset(2, a);
  CHECK(sums.contains(Int(2)));
  CHECK_FALSE(sums.contains(Int(5)));
  CHECK_THROWS_MATCHES(sums.decode(Int(5)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::not_a_member;
                       }));
}

TEST_CASE("decode is deterministic") {
  Fp f13(13);
  ElemSet<Fp> a = ElemSet<Fp>::of_ints(f13, {1, 2, 5});
  TraceSet<Fp> first = traced_iter_sumset(3, a);
  TraceSet<Fp> second = traced_iter_sumset(3, a);
  first.as_set().for_each([&](Fp::Elem e) {
    CHECK(first.decode(e) == second.decode(e));
  });
}
