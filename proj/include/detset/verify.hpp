#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "detset/bounds.hpp"
#include "detset/enumerate.hpp"
#include "detset/gadgets.hpp"
#include "detset/json_io.hpp"
#include "detset/parallel.hpp"
#include "detset/random.hpp"

namespace detset {

struct VerifyOptions {
  std::uint64_t seed = 2468013579ULL;
  unsigned jobs = 1;
};

namespace suites {

inline constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 101};

inline BoundReport counted(const std::string& name, std::uint64_t passed,
                           std::uint64_t total, const VerifyOptions& opt) {
  BoundReport r;
  r.name = name;
  r.ring = "mixed";
  r.seed = opt.seed;
  r.trials = total;
  r.lhs = Int(passed);
  r.rhs_rat = Rat(Int(total));
  r.rhs_approx = static_cast<double>(total);
  r.pass = passed == total;
  return r;
}

template <class Fn>
std::uint64_t count_passes(std::size_t trials, const VerifyOptions& opt,
                           Fn fn) {
  std::vector<char> oks = parallel_map<char>(
      trials, opt.jobs, [&](std::size_t i) { return fn(i) ? 1 : 0; });
  return static_cast<std::uint64_t>(
      std::count(oks.begin(), oks.end(), char(1)));
}

inline ElemSet<Fp> subset_from_mask(const Fp& ring, std::uint64_t mask) {
  ElemSet<Fp> s(ring);
  for (std::uint64_t v = 0; v < ring.modulus(); ++v)
    if (mask & (std::uint64_t{1} << v)) s.insert(v);
  return s;
}

// det(M0) = b (b-a)^(n-1): exhaustive over F_7 for n <= 5, a small integer
// grid, plus the doubled-block identity on random triples over both rings.
inline std::vector<BoundReport> lemma1(const VerifyOptions& opt) {
  std::vector<BoundReport> out;

  {
    Fp f7(7);
    std::uint64_t passed = 0, total = 0;
    for (std::uint64_t b = 1; b < 7; ++b)
      for (std::uint64_t a = 0; a < 7; ++a) {
        if (a == b) continue;
        for (std::size_t n = 1; n <= 5; ++n) {
          ++total;
          Matrix<Fp> m0 = build_m0(f7, a, b, n);
          bool ok = det(m0) == det_m0_formula(f7, a, b, n) &&
                    det(m0) == det_oracle(m0);
          if (ok) ++passed;
        }
      }
    BoundReport r = counted("lemma1.m0_exhaustive_f7", passed, total, opt);
    r.ring = "fp";
    r.p = 7;
    out.push_back(std::move(r));
  }

  {
    ZRing z;
    std::uint64_t passed = 0, total = 0;
    for (std::int64_t b = -3; b <= 3; ++b) {
      if (b == 0) continue;
      for (std::int64_t a = -3; a <= 3; ++a) {
        if (a == b) continue;
        for (std::size_t n = 1; n <= 4; ++n) {
          ++total;
          Matrix<ZRing> m0 = build_m0(z, Int(a), Int(b), n);
          if (det(m0) == det_m0_formula(z, Int(a), Int(b), n) &&
              det(m0) == det_oracle(m0))
            ++passed;
        }
      }
    }
    out.push_back(counted("lemma1.m0_grid_int", passed, total, opt));
  }

  {
    auto trial = [&](std::size_t i) {
      SplitMix64 rng = derive_rng(opt.seed, 11, i);
      std::size_t n = 1 + rng.below(4);
      auto run = [&](const auto& ring) {
        using R = std::decay_t<decltype(ring)>;
        Matrix<R> any = random_matrix(ring, n, rng);
        Matrix<R> m1 = random_matrix(ring, n, rng);
        Matrix<R> m2 = random_matrix(ring, n, rng);
        // raw identity, singular corner blocks included
        bool ok = det(block2x2(any, m1, any, m2)) ==
                  ring.mul(det(any), det(sub(m2, m1)));
        // operation-level witness with a guaranteed nonsingular block
        typename R::Elem b, a;
        if constexpr (is_prime_field_v<R>) {
          b = 1 + rng.below(ring.modulus() - 1);
          do {
            a = rng.below(ring.modulus());
          } while (a == b);
        } else {
          b = ring.from_int(rng.in_range(1, 9));
          do {
            a = ring.from_int(rng.in_range(-9, 9));
          } while (ring.eq(a, b));
        }
        Matrix<R> m0 = build_m0(ring, a, b, n);
        GadgetWitness<R> w = block_double(m0, m1, m2);
        ok = ok && ring.eq(w.value(), ring.mul(det(m0), det(sub(m2, m1))));
        return ok;
      };
      if (i % 6 == 5) return run(ZRing());
      return run(Fp(kPrimes[i % 6]));
    };
    out.push_back(counted("lemma1.block_double", count_passes(1000, opt, trial),
                          1000, opt));
  }

  return out;
}

// The sum-of-products gadget identity, fixed small instances first, then a
// large random sweep over both rings, combined layouts, and the witness
// synthesis round trip.
inline std::vector<BoundReport> theorem1(const VerifyOptions& opt) {
  std::vector<BoundReport> out;

  {
    ZRing z;
    Assignment<ZRing> ones{3, 2, std::vector<Int>(6, Int(1))};
    GadgetWitness<ZRing> w2 = build_gadget(z, ones);
    Assignment<ZRing> ones3{3, 3, std::vector<Int>(9, Int(1))};
    GadgetWitness<ZRing> w3 = build_gadget(z, ones3);
    BoundReport r = counted("theorem1.all_ones_displays",
                            (w2.value() == Int(-3) && w2.size() == 4 &&
                             w3.value() == Int(3) && w3.size() == 7)
                                ? 1
                                : 0,
                            1, opt);
    r.ring = "int";
    out.push_back(std::move(r));
  }

  {
    auto trial = [&](std::size_t i) {
      SplitMix64 rng = derive_rng(opt.seed, 21, i);
      std::size_t m = 1 + rng.below(6), n = 1 + rng.below(6);
      auto run = [&](const auto& ring) {
        using R = std::decay_t<decltype(ring)>;
        Assignment<R> asg = random_assignment(ring, m, n, rng);
        GadgetWitness<R> w = build_gadget(ring, asg);
        typename R::Elem sum = ring.zero();
        for (std::size_t r0 = 0; r0 < m; ++r0) {
          typename R::Elem prod = ring.one();
          for (std::size_t c = 0; c < n; ++c)
            prod = ring.mul(prod, asg.at(r0, c));
          sum = ring.add(sum, prod);
        }
        typename R::Elem expect =
            (n % 2 == 1) ? sum : ring.neg(sum);  // (-1)^(n+1)
        bool ok = ring.eq(w.value(), expect) && ring.eq(det(w.matrix()), expect);
        if (w.size() <= 6) ok = ok && ring.eq(det_oracle(w.matrix()), expect);
        return ok;
      };
      if (i % 6 == 5) return run(ZRing());
      return run(Fp(kPrimes[i % 6]));
    };
    out.push_back(counted("theorem1.gadget_identity",
                          count_passes(10000, opt, trial), 10000, opt));
  }

  {
    auto trial = [&](std::size_t i) {
      SplitMix64 rng = derive_rng(opt.seed, 22, i);
      std::size_t nparts = 1 + rng.below(3);
      auto run = [&](const auto& ring) {
        using R = std::decay_t<decltype(ring)>;
        std::vector<Assignment<R>> parts;
        for (std::size_t k = 0; k < nparts; ++k)
          parts.push_back(random_assignment(ring, 1 + rng.below(3),
                                            1 + rng.below(3), rng, -4, 4));
        GadgetWitness<R> w = build_combined(ring, parts);
        if (parts.size() == 1) {
          GadgetWitness<R> direct = build_gadget(ring, parts[0]);
          return ring.eq(w.value(), direct.value()) &&
                 w.size() == direct.size();
        }
        std::size_t size = 1;
        for (const auto& p : parts)
          size += p.m * ((p.n < 2 ? 2 : p.n) - 1);
        return w.size() == size;
      };
      if (i % 6 == 5) return run(ZRing());
      return run(Fp(kPrimes[i % 6]));
    };
    out.push_back(counted("theorem1.combined", count_passes(300, opt, trial),
                          300, opt));
  }

  {
    Fp f5(5);
    ElemSet<Fp> a = ElemSet<Fp>::of_ints(f5, {0, 1, 4});
    std::uint64_t passed = 0, total = 0;
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n) {
        ElemSet<Fp> reachable =
            iter_sumset(m, iter_productset(n, a));
        for (std::uint64_t t = 0; t < 5; ++t) {
          ++total;
          // A is symmetric, so membership is sign-free
          bool member = reachable.contains(t);
          try {
            GadgetWitness<Fp> w = synthesize_witness(a, m, n, t);
            if (member && w.value() == t) ++passed;
          } catch (const Error& e) {
            if (!member && e.code() == Errc::not_a_member) ++passed;
          }
        }
      }
    BoundReport r = counted("theorem1.witness_synthesis", passed, total, opt);
    r.ring = "fp";
    r.p = 5;
    r.set_repr = format_set(a);
    r.set_size = a.size();
    out.push_back(std::move(r));
  }

  return out;
}

inline std::vector<BoundReport> lemma2(const VerifyOptions& opt) {
  std::vector<BoundReport> out;

  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    Fp ring(p);
    std::uint64_t total = std::uint64_t{1} << p;
    auto trial = [&](std::size_t mask) {
      return check_lemma2(subset_from_mask(ring, mask), 1).pass;
    };
    std::uint64_t passed = count_passes(total, opt, trial);
    BoundReport r = counted("lemma2.sweep_n1", passed, total, opt);
    r.ring = "fp";
    r.p = p;
    r.n = 1;
    out.push_back(std::move(r));
  }

  {
    Fp f31(31);
    auto trial = [&](std::size_t i) {
      SplitMix64 rng = derive_rng(opt.seed, 31, i);
      std::uint64_t mask = rng.next() & ((std::uint64_t{1} << 31) - 1);
      return check_lemma2(subset_from_mask(f31, mask), 2).pass;
    };
    BoundReport r =
        counted("lemma2.spot_n2", count_passes(200, opt, trial), 200, opt);
    r.ring = "fp";
    r.p = 31;
    r.n = 2;
    out.push_back(std::move(r));
  }

  {
    ZRing z;
    std::uint64_t passed = 0, total = 0;
    std::vector<std::vector<std::int64_t>> sets = {
        {0}, {0, 1}, {0, 1, 3}, {-2, 1, 5}, {-6, -1, 0, 2, 4}};
    for (const auto& vals : sets) {
      ++total;
      if (check_lemma2(ElemSet<ZRing>::of_ints(z, vals), 1).pass) ++passed;
    }
    out.push_back(counted("lemma2.int_variant", passed, total, opt));
  }

  {
    Fp f13(13);
    out.push_back(check_glk_inner(
        ElemSet<Fp>::of_ints(f13, {1, 2, 3, 4, 5}), 1));
    out.push_back(check_glk_inner(
        ElemSet<Fp>::of_ints(f13, {1, 2, 3, 4}), 1));  // hypothesis short
    Fp f31(31);
    SplitMix64 rng = derive_rng(opt.seed, 32, 0);
    ElemSet<Fp> a(f31);
    while (a.size() < 5) a.insert(rng.below(31));
    out.push_back(check_glk_inner(a, 2));
  }

  {
    // 8A - 8A contains 4A - 4A: the inner reduction step at n = 1
    std::uint64_t passed = 0, total = 0;
    for (std::uint64_t p : {5ULL, 7ULL}) {
      Fp ring(p);
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
        ++total;
        ElemSet<Fp> a = subset_from_mask(ring, mask);
        ElemSet<Fp> inner = difference_set(iter_sumset(4, a));
        ElemSet<Fp> outer = difference_set(iter_sumset(8, a));
        if (inner.subset_of(outer)) ++passed;
      }
    }
    BoundReport r = counted("lemma2.inclusion_n1", passed, total, opt);
    r.ring = "fp";
    out.push_back(std::move(r));
  }

  return out;
}

inline std::vector<BoundReport> cor3(const VerifyOptions& opt) {
  std::vector<BoundReport> out;
  EnumBudget budget{.max_matrices = 1u << 21, .max_seconds = 120.0};

  {
    Fp f5(5);
    std::uint64_t passed = 0, total = 0;
    for (std::uint64_t mask = 1; mask < 32; ++mask) {
      ElemSet<Fp> a = subset_from_mask(f5, mask);
      if (a.size() > 3) continue;
      for (std::size_t n : {2, 3}) {
        ++total;
        ElemSet<Fp> d = dset_naive(a, n, budget, opt.jobs);
        if (check_cor3(a, n, Int(d.size())).pass) ++passed;
      }
    }
    BoundReport r = counted("cor3.family_f5", passed, total, opt);
    r.ring = "fp";
    r.p = 5;
    out.push_back(std::move(r));
  }

  {
    ZRing z;
    std::uint64_t passed = 0, total = 0;
    std::vector<std::int64_t> universe = {-2, -1, 0, 1, 2};
    for (std::uint64_t mask = 1; mask < 32; ++mask) {
      std::vector<std::int64_t> vals;
      for (std::size_t b = 0; b < 5; ++b)
        if (mask & (1u << b)) vals.push_back(universe[b]);
      if (vals.size() > 3) continue;
      ++total;
      ElemSet<ZRing> a = ElemSet<ZRing>::of_ints(z, vals);
      ElemSet<ZRing> d = dset_naive(a, 2, budget, opt.jobs);
      if (check_cor3(a, 2, Int(d.size())).pass) ++passed;
    }
    out.push_back(counted("cor3.family_int", passed, total, opt));
  }

  {
    Fp f7(7);
    std::uint64_t passed = 0, total = 0;
    for (std::uint64_t mask = 1; mask < 128; ++mask) {
      ElemSet<Fp> a = subset_from_mask(f7, mask);
      if (a.size() > 3) continue;
      ++total;
      ElemSet<Fp> d = dset_naive(a, 2, budget, opt.jobs);
      if (check_cor3(a, 2, Int(d.size())).pass) ++passed;
    }
    BoundReport r = counted("cor3.family_f7", passed, total, opt);
    r.ring = "fp";
    r.p = 7;
    out.push_back(std::move(r));
  }

  {
    Fp f5(5);
    ElemSet<Fp> a = ElemSet<Fp>::of_ints(f5, {0, 1});
    ElemSet<Fp> d = dset_naive(a, 2, budget);
    out.push_back(check_cor3(a, 2, Int(d.size())));
  }

  {
    // enumeration-free observed size through the constructive lower bound
    Fp f31(31);
    ElemSet<Fp> a = ElemSet<Fp>::of_ints(f31, {1, 3, 9});
    ConstructiveBound<Fp> lb = dset_lower_bound_constructive(a, 8);
    BoundReport r = check_cor3(a, 8, Int(lb.set.size()));
    r.name = "cor3.constructive";
    r.details["bound_m"] = std::to_string(lb.m);
    r.details["bound_k"] = std::to_string(lb.k);
    out.push_back(std::move(r));
  }

  return out;
}

inline std::vector<BoundReport> cor4(const VerifyOptions& opt) {
  (void)opt;
  std::vector<BoundReport> out;
  {
    Fp f7(7);
    out.push_back(
        check_cor4(ElemSet<Fp>::of_ints(f7, {1, 3}), 0.01, 64));
  }
  {
    Fp f2(2);
    out.push_back(check_cor4(ElemSet<Fp>::of_ints(f2, {0, 1}), 0.5, 8));
  }
  {
    Fp f7(7);
    out.push_back(check_cor4(ElemSet<Fp>::of_ints(f7, {1}), 0.9, 64));
  }
  return out;
}

inline std::vector<BoundReport> example1(const VerifyOptions& opt) {
  (void)opt;
  std::vector<BoundReport> out;
  EnumBudget budget{.max_matrices = 1u << 21, .max_seconds = 120.0};
  for (std::size_t m : {1, 2, 3})
    for (std::size_t n : {2, 3}) out.push_back(check_example1(m, n, budget));
  return out;
}

// |perm| = |det| on random sum-of-products gadgets, and the perm/det sign is
// a function of (m, n) alone.
inline std::vector<BoundReport> permanent_suite(const VerifyOptions& opt) {
  struct Outcome {
    bool ok = false;
    int ring_tag = 0;
    std::size_t m = 0, n = 0;
    int sign = 0;  // +1, -1, or 0 when det == 0
  };

  auto trial = [&](std::size_t i) {
    SplitMix64 rng = derive_rng(opt.seed, 81, i);
    std::size_t n = 1 + rng.below(6);
    std::size_t max_m = n >= 2 ? 12 / (n - 1) : 12;
    std::size_t m = 1 + rng.below(max_m);
    Outcome o;
    o.m = m;
    o.n = n;
    auto run = [&](const auto& ring, int tag) {
      using R = std::decay_t<decltype(ring)>;
      o.ring_tag = tag;
      Assignment<R> asg = random_assignment(ring, m, n, rng);
      GadgetWitness<R> w = build_gadget(ring, asg);
      typename R::Elem pm = permanent(w.matrix());
      typename R::Elem dt = w.value();
      if (ring.is_zero(dt)) {
        o.ok = ring.is_zero(pm);
        o.sign = 0;
      } else if (ring.eq(pm, dt)) {
        o.ok = true;
        o.sign = 1;
      } else if (ring.eq(pm, ring.neg(dt))) {
        o.ok = true;
        o.sign = -1;
      }
    };
    if (i % 6 == 5)
      run(ZRing(), 5);
    else
      run(Fp(kPrimes[i % 6]), static_cast<int>(i % 6));
    return o;
  };

  std::vector<Outcome> outcomes = parallel_map<Outcome>(1000, opt.jobs, trial);
  std::uint64_t passed = 0;
  std::map<std::tuple<int, std::size_t, std::size_t>, int> group_sign;
  bool signs_consistent = true;
  for (const Outcome& o : outcomes) {
    if (o.ok) ++passed;
    if (o.sign == 0) continue;
    // p = 2 identifies both signs; skip it in the grouping
    if (o.ring_tag == 0) continue;
    auto key = std::make_tuple(o.ring_tag, o.m, o.n);
    auto [it, fresh] = group_sign.emplace(key, o.sign);
    if (!fresh && it->second != o.sign) signs_consistent = false;
  }
  BoundReport r = counted("permanent.abs_and_sign",
                          signs_consistent ? passed : 0, 1000, opt);
  r.details["sign_groups"] = std::to_string(group_sign.size());
  r.details["signs_consistent"] = signs_consistent ? "true" : "false";
  return {r};
}

inline std::vector<BoundReport> cd(const VerifyOptions& opt) {
  std::vector<BoundReport> out;

  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    Fp ring(p);
    std::uint64_t subsets = (std::uint64_t{1} << p) - 1;
    auto trial = [&](std::size_t idx) {
      std::uint64_t amask = 1 + (idx / subsets);
      std::uint64_t bmask = 1 + (idx % subsets);
      ElemSet<Fp> a = subset_from_mask(ring, amask);
      ElemSet<Fp> b = subset_from_mask(ring, bmask);
      std::uint64_t need =
          std::min<std::uint64_t>(p, a.size() + b.size() - 1);
      return sumset(a, b).size() >= need;
    };
    std::uint64_t total = subsets * subsets;
    BoundReport r =
        counted("cd.exhaustive", count_passes(total, opt, trial), total, opt);
    r.ring = "fp";
    r.p = p;
    out.push_back(std::move(r));
  }

  {
    ZRing z;
    auto trial = [&](std::size_t i) {
      SplitMix64 rng = derive_rng(opt.seed, 91, i);
      ElemSet<ZRing> a(z), b(z);
      std::size_t na = 1 + rng.below(6), nb = 1 + rng.below(6);
      while (a.size() < na) a.insert(Int(rng.in_range(-10, 10)));
      while (b.size() < nb) b.insert(Int(rng.in_range(-10, 10)));
      return sumset(a, b).size() >= a.size() + b.size() - 1;
    };
    out.push_back(
        counted("cd.int_random", count_passes(200, opt, trial), 200, opt));
  }

  return out;
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma1", "theorem1", "lemma2", "cor3",
      "cor4",   "example1", "permanent", "cd"};
  return names;
}

inline std::vector<BoundReport> run_suite(const std::string& name,
                                          const VerifyOptions& opt) {
  if (name == "lemma1") return suites::lemma1(opt);
  if (name == "theorem1") return suites::theorem1(opt);
  if (name == "lemma2") return suites::lemma2(opt);
  if (name == "cor3") return suites::cor3(opt);
  if (name == "cor4") return suites::cor4(opt);
  if (name == "example1") return suites::example1(opt);
  if (name == "permanent") return suites::permanent_suite(opt);
  if (name == "cd") return suites::cd(opt);
  raise(Errc::usage, "unknown suite: " + name);
}

inline std::vector<BoundReport> run_suites(const std::vector<std::string>& names,
                                           const VerifyOptions& opt) {
  std::vector<BoundReport> out;
  for (const std::string& name : names) {
    std::vector<BoundReport> part = run_suite(name, opt);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::string render_jsonl(const std::vector<BoundReport>& reports) {
  std::string out;
  for (const BoundReport& r : reports) {
    out += report_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::string render_csv(const std::vector<BoundReport>& reports) {
  std::string out = report_csv_header() + "\n";
  for (const BoundReport& r : reports) out += report_to_csv(r) + "\n";
  return out;
}

}  // namespace detset
