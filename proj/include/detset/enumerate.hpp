#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "detset/elem_set.hpp"
#include "detset/matrix.hpp"
#include "detset/parallel.hpp"

namespace detset {

struct EnumBudget {
  enum class Method { Naive, Cofactor };

  std::uint64_t max_matrices = 1'000'000;
  double max_seconds = 300.0;
  Method method = Method::Naive;

  void validate() const {
    if (max_matrices == 0 || max_seconds <= 0.0)
      raise(Errc::usage, "enumeration budgets must be positive");
  }
};

namespace detail {

inline void check_count_budget(const Int& count, const EnumBudget& budget,
                               const char* label) {
  budget.validate();
  if (count > Int(budget.max_matrices))
    raise(Errc::budget_exceeded,
          std::string(label) + " needs " + count.str() +
              " matrices, over the budget of " +
              std::to_string(budget.max_matrices));
}

class Deadline {
public:
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}

  void poll() {
    if (++ticks_ % 4096 == 0 && std::chrono::steady_clock::now() > end_)
      raise(Errc::budget_exceeded, "enumeration ran out of wall-clock budget");
  }

private:
  std::chrono::steady_clock::time_point end_;
  std::uint64_t ticks_ = 0;
};

// odometer over `digits` slots with `radix` values each; f sees the digit
// vector for every combination
template <class F>
void for_each_tuple(std::size_t digits, std::size_t radix, F f) {
  std::vector<std::size_t> idx(digits, 0);
  while (true) {
    f(idx);
    std::size_t pos = digits;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < radix) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (digits == 0) return;
  }
}

}  // namespace detail

// D_n(A) by full enumeration of all |A|^(n^2) matrices.
template <class R>
ElemSet<R> dset_naive(const ElemSet<R>& a, std::size_t n,
                      const EnumBudget& budget, unsigned jobs = 1) {
  if (a.empty() || n == 0)
    raise(Errc::degenerate, "need a nonempty set and n >= 1");
  const R& ring = a.ring();
  std::vector<typename R::Elem> elems = a.elems();
  detail::check_count_budget(pow(Int(elems.size()), static_cast<unsigned>(n * n)),
                             budget, "naive enumeration");

  // partition on the value of the top-left entry; merged by set union, so
  // the result is independent of the worker count
  auto worker = [&](std::size_t first) {
    detail::Deadline deadline(budget.max_seconds);
    ElemSet<R> acc(ring);
    Matrix<R> m(ring, n, n);
    m.at(0, 0) = elems[first];
    detail::for_each_tuple(n * n - 1, elems.size(),
                           [&](const std::vector<std::size_t>& idx) {
                             deadline.poll();
                             for (std::size_t t = 0; t < idx.size(); ++t)
                               m.at((t + 1) / n, (t + 1) % n) = elems[idx[t]];
                             acc.insert(det(m));
                           });
    return acc;
  };
  std::vector<ElemSet<R>> parts =
      parallel_map<ElemSet<R>>(elems.size(), jobs, worker);
  ElemSet<R> out(ring);
  for (const ElemSet<R>& part : parts) out = set_union(out, part);
  return out;
}

// Same set as dset_naive: enumerate the top (n-1) x n submatrix, expand the
// last row by cofactors, and realize the contributed determinants as the
// sumset c_1*A + ... + c_n*A.
template <class R>
ElemSet<R> dset_cofactor(const ElemSet<R>& a, std::size_t n,
                         const EnumBudget& budget, unsigned jobs = 1) {
  if (a.empty() || n == 0)
    raise(Errc::degenerate, "need a nonempty set and n >= 1");
  const R& ring = a.ring();
  if (n == 1) {
    budget.validate();
    return a;
  }
  std::vector<typename R::Elem> elems = a.elems();
  detail::check_count_budget(
      pow(Int(elems.size()), static_cast<unsigned>(n * (n - 1))), budget,
      "cofactor enumeration");

  auto worker = [&](std::size_t first) {
    detail::Deadline deadline(budget.max_seconds);
    ElemSet<R> acc(ring);
    Matrix<R> top(ring, n - 1, n);
    top.at(0, 0) = elems[first];
    Matrix<R> minor(ring, n - 1, n - 1);
    detail::for_each_tuple(
        n * (n - 1) - 1, elems.size(),
        [&](const std::vector<std::size_t>& idx) {
          deadline.poll();
          for (std::size_t t = 0; t < idx.size(); ++t)
            top.at((t + 1) / n, (t + 1) % n) = elems[idx[t]];
          // cofactors of the missing last row
          bool any = false;
          ElemSet<R> contributed(ring);
          for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
              std::size_t cc = 0;
              for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i, cc++) = top.at(i, c);
              }
            }
            typename R::Elem cof = det(minor);
            if ((n - 1 + j) % 2 == 1) cof = ring.neg(cof);
            ElemSet<R> dil = dilate(cof, a);
            contributed = any ? sumset(contributed, dil) : dil;
            any = true;
          }
          acc = set_union(acc, contributed);
        });
    return acc;
  };
  std::vector<ElemSet<R>> parts =
      parallel_map<ElemSet<R>>(elems.size(), jobs, worker);
  ElemSet<R> out(ring);
  for (const ElemSet<R>& part : parts) out = set_union(out, part);
  return out;
}

template <class R>
ElemSet<R> dset(const ElemSet<R>& a, std::size_t n, const EnumBudget& budget,
                unsigned jobs = 1) {
  return budget.method == EnumBudget::Method::Cofactor
             ? dset_cofactor(a, n, budget, jobs)
             : dset_naive(a, n, budget, jobs);
}

// A certified lower-bound set for D_size(A) obtained without enumeration:
// for size = 2(m(k-1)+1), the m-fold sumset of k-fold products of A - A has
// cardinality at most |D_size(A)| (each element maps to a distinct verified
// determinant through constructive_membership_witness).
template <class R>
struct ConstructiveBound {
  ElemSet<R> set;
  std::size_t m = 0, k = 0;
};

template <class R>
ConstructiveBound<R> dset_lower_bound_constructive(const ElemSet<R>& a,
                                                   std::size_t size) {
  if (a.empty()) raise(Errc::degenerate, "need a nonempty set");
  if (size < 2 || size % 2 != 0)
    raise(Errc::shape_mismatch,
          "size must be even and of the form 2(m(k-1)+1)");
  std::size_t h = size / 2 - 1;
  ElemSet<R> diff = difference_set(a);
  if (h == 0) return {diff, 1, 1};

  // all decompositions h = m(k-1) with k >= 2; keep the largest certified
  // set, smallest k on ties
  ConstructiveBound<R> best{ElemSet<R>(a.ring()), 0, 0};
  for (std::size_t step = 1; step <= h; ++step) {
    if (h % step != 0) continue;
    std::size_t k = step + 1;
    std::size_t m = h / step;
    ElemSet<R> candidate = iter_sumset(m, iter_productset(k, diff));
    if (best.k == 0 || candidate.size() > best.set.size())
      best = ConstructiveBound<R>{std::move(candidate), m, k};
  }
  return best;
}

}  // namespace detset
