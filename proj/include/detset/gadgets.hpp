#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "detset/elem_set.hpp"
#include "detset/matrix.hpp"
#include "detset/trace_set.hpp"

namespace detset {

// An m x n table of ring elements a(i,j); row i feeds one n-factor product
// of the sum-of-products gadget.
template <class R>
struct Assignment {
  using Elem = typename R::Elem;

  std::size_t m = 0, n = 0;
  std::vector<Elem> entries;  // row-major, m*n

  const Elem& at(std::size_t i, std::size_t j) const {
    return entries[i * n + j];
  }
  Elem& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }

  void validate() const {
    if (m == 0 || n == 0 || entries.size() != m * n)
      raise(Errc::shape_mismatch, "assignment dimensions do not match");
  }
};

// A matrix together with its certified determinant value. The determinant
// is recomputed at construction and the build fails fast on mismatch; when
// an entry pool is recorded, membership of every entry is checked too.
template <class R>
class GadgetWitness {
public:
  using Elem = typename R::Elem;

  GadgetWitness(Matrix<R> matrix, Elem value, Assignment<R> assignment,
                Elem scale, std::optional<ElemSet<R>> entry_pool = {})
      : matrix_(std::move(matrix)),
        value_(std::move(value)),
        assignment_(std::move(assignment)),
        scale_(std::move(scale)),
        entry_pool_(std::move(entry_pool)) {
    const R& ring = matrix_.ring();
    if (!ring.eq(det(matrix_), value_))
      raise(Errc::degenerate, "witness determinant does not match its value");
    if (entry_pool_) {
      for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j)
          if (!entry_pool_->contains(matrix_.at(i, j)))
            raise(Errc::degenerate, "witness entry outside the allowed set");
    }
  }

  const Matrix<R>& matrix() const { return matrix_; }
  const Elem& value() const { return value_; }
  const Assignment<R>& assignment() const { return assignment_; }
  const Elem& scale() const { return scale_; }
  std::size_t size() const { return matrix_.rows(); }

private:
  Matrix<R> matrix_;
  Elem value_;
  Assignment<R> assignment_;
  Elem scale_;
  std::optional<ElemSet<R>> entry_pool_;
};

namespace detail {

template <class R>
typename R::Elem least_nonzero(const ElemSet<R>& s) {
  typename R::Elem out = s.ring().zero();
  bool found = false;
  s.for_each([&](const typename R::Elem& e) {
    if (!found && !s.ring().is_zero(e)) {
      out = e;
      found = true;
    }
  });
  if (!found) raise(Errc::degenerate, "set has no nonzero element");
  return out;
}

template <class R>
typename R::Elem least_other(const ElemSet<R>& s, const typename R::Elem& b) {
  typename R::Elem out = s.ring().zero();
  bool found = false;
  s.for_each([&](const typename R::Elem& e) {
    if (!found && !s.ring().eq(e, b)) {
      out = e;
      found = true;
    }
  });
  if (!found) raise(Errc::set_too_small, "need at least two elements");
  return out;
}

// first-found x - y = d decompositions over A, deterministic in ascending
// iteration order
template <class R>
std::map<typename R::Elem, std::pair<typename R::Elem, typename R::Elem>>
difference_split_table(const ElemSet<R>& a) {
  std::map<typename R::Elem, std::pair<typename R::Elem, typename R::Elem>>
      table;
  a.for_each([&](const typename R::Elem& x) {
    a.for_each([&](const typename R::Elem& y) {
      table.emplace(a.ring().sub(x, y), std::make_pair(x, y));
    });
  });
  return table;
}

// split W (entries in A - A) into M2 - M1 with entries in A, then stack the
// canonical nonsingular block over A on the left: det = det(M0) * det(W)
template <class R>
GadgetWitness<R> lift_through_difference(const ElemSet<R>& a,
                                         const Matrix<R>& w,
                                         const typename R::Elem& value,
                                         const Assignment<R>& asg,
                                         const typename R::Elem& scale) {
  const R& ring = a.ring();
  auto split = difference_split_table(a);
  Matrix<R> m1(ring, w.rows(), w.cols()), m2(ring, w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      auto it = split.find(w.at(i, j));
      if (it == split.end())
        raise(Errc::degenerate, "entry is not a difference of two elements");
      m2.at(i, j) = it->second.first;
      m1.at(i, j) = it->second.second;
    }
  typename R::Elem b = least_nonzero(a);
  Matrix<R> m0 = build_m0(ring, least_other(a, b), b, w.rows());
  return GadgetWitness<R>(block2x2(m0, m1, m0, m2), value, asg, scale, a);
}

}  // namespace detail

// n x n matrix with first row and diagonal b, everything else a; its
// determinant is b*(b-a)^(n-1), nonzero whenever b != 0 and a != b.
template <class R>
Matrix<R> build_m0(const R& ring, const typename R::Elem& a,
                   const typename R::Elem& b, std::size_t n) {
  if (ring.is_zero(b) || ring.eq(a, b))
    raise(Errc::bad_pivot_pair, "need b != 0 and a != b");
  if (n == 0) raise(Errc::shape_mismatch, "matrix dimensions must be positive");
  Matrix<R> m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = (i == 0 || i == j) ? b : a;
  typename R::Elem expected =
      ring.mul(b, ring.pow(ring.sub(b, a), static_cast<std::uint64_t>(n - 1)));
  if (!ring.eq(det(m), expected))
    raise(Errc::degenerate, "pivot block determinant mismatch");
  return m;
}

template <class R>
typename R::Elem det_m0_formula(const R& ring, const typename R::Elem& a,
                                const typename R::Elem& b, std::size_t n) {
  return ring.mul(b,
                  ring.pow(ring.sub(b, a), static_cast<std::uint64_t>(n - 1)));
}

// [[M0, M1], [M0, M2]]; subtracting the top block row leaves a zero corner,
// so the determinant is det(M0) * det(M2 - M1).
template <class R>
GadgetWitness<R> block_double(const Matrix<R>& m0, const Matrix<R>& m1,
                              const Matrix<R>& m2) {
  require_same_ring(m0.ring(), m1.ring());
  require_same_ring(m0.ring(), m2.ring());
  if (!m0.square() || !m1.square() || !m2.square() ||
      m0.rows() != m1.rows() || m1.rows() != m2.rows())
    raise(Errc::shape_mismatch, "blocks must be square and equally sized");
  const R& ring = m0.ring();
  typename R::Elem d0 = det(m0);
  if (ring.is_zero(d0))
    raise(Errc::singular_block, "pivot block must be nonsingular");
  typename R::Elem value = ring.mul(d0, det(sub(m2, m1)));
  return GadgetWitness<R>(block2x2(m0, m1, m0, m2), value, Assignment<R>{},
                          ring.one());
}

// (n-1) x (n-1) upper bidiagonal block: ones on the diagonal, superdiagonal
// a(i,n-1), a(i,n-2), ..., a(i,2) top to bottom. Unit determinant.
template <class R>
Matrix<R> build_bidiagonal(const R& ring,
                           const std::vector<typename R::Elem>& row,
                           std::size_t n) {
  if (n < 2 || row.size() != n)
    raise(Errc::shape_mismatch, "bidiagonal block needs a full row, n >= 2");
  Matrix<R> m(ring, n - 1, n - 1);
  for (std::size_t r = 0; r + 1 < n; ++r) m.at(r, r) = ring.one();
  for (std::size_t r = 0; r + 2 < n; ++r) m.at(r, r + 1) = row[n - 2 - r];
  return m;
}

// value = factor * (sum of row products) for the gadget layouts below
template <class R>
typename R::Elem gadget_unit_factor(const R& ring, std::size_t m,
                                    std::size_t n,
                                    const typename R::Elem& unit) {
  if (n == 1)
    return m == 1 ? ring.one() : ring.pow(unit, static_cast<std::uint64_t>(m));
  std::size_t size = m * (n - 1) + 1;
  typename R::Elem f = ring.pow(unit, static_cast<std::uint64_t>(size - n));
  return (n % 2 == 1) ? f : ring.neg(f);
}

// The sum-of-products gadget of size m(n-1)+1: zero corner, a(i,n) along the
// first row, a(i,1) down the first column, unit bidiagonal blocks on the
// diagonal. Every nonvanishing permutation term walks one block chain, so
// det = (-1)^(n+1) * sum_i prod_j a(i,j) when unit = 1, and picks up an
// extra unit^(size-n) otherwise.
//
// Degenerate n = 1: a plain 1x1 matrix for m = 1; for m > 1 the sum routes
// through the n = 2 layout with second factors fixed to the unit, and the
// first two rows swapped so the reported value keeps the positive sign of
// the n = 1 formula.
template <class R>
GadgetWitness<R> build_gadget_with_unit(
    const R& ring, const Assignment<R>& asg, const typename R::Elem& unit,
    std::optional<ElemSet<R>> entry_pool = {}) {
  asg.validate();
  const std::size_t m = asg.m, n = asg.n;
  typename R::Elem sum = ring.zero();
  for (std::size_t i = 0; i < m; ++i) {
    typename R::Elem prod = ring.one();
    for (std::size_t j = 0; j < n; ++j) prod = ring.mul(prod, asg.at(i, j));
    sum = ring.add(sum, prod);
  }
  typename R::Elem value = ring.mul(gadget_unit_factor(ring, m, n, unit), sum);

  if (n == 1 && m == 1) {
    Matrix<R> mat(ring, 1, 1);
    mat.at(0, 0) = asg.at(0, 0);
    return GadgetWitness<R>(std::move(mat), value, asg, ring.one(),
                            std::move(entry_pool));
  }

  const Assignment<R>* layout = &asg;
  Assignment<R> routed;
  bool swap_rows = false;
  if (n == 1) {
    routed = Assignment<R>{m, 2, {}};
    routed.entries.resize(m * 2, ring.zero());
    for (std::size_t i = 0; i < m; ++i) {
      routed.at(i, 0) = asg.at(i, 0);
      routed.at(i, 1) = unit;
    }
    layout = &routed;
    swap_rows = true;
  }

  const std::size_t en = layout->n;
  const std::size_t size = m * (en - 1) + 1;
  Matrix<R> mat(ring, size, size);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t o = 1 + i * (en - 1);
    for (std::size_t r = 0; r + 1 < en; ++r) mat.at(o + r, o + r) = unit;
    for (std::size_t r = 0; r + 2 < en; ++r)
      mat.at(o + r, o + r + 1) = layout->at(i, en - 2 - r);
    mat.at(0, o) = layout->at(i, en - 1);
    mat.at(o + en - 2, 0) = layout->at(i, 0);
  }
  if (swap_rows) {
    for (std::size_t j = 0; j < size; ++j)
      std::swap(mat.at(0, j), mat.at(1, j));
  }
  return GadgetWitness<R>(std::move(mat), value, asg, ring.one(),
                          std::move(entry_pool));
}

template <class R>
GadgetWitness<R> build_gadget(const R& ring, const Assignment<R>& asg,
                              std::optional<ElemSet<R>> entry_pool = {}) {
  return build_gadget_with_unit(ring, asg, ring.one(), std::move(entry_pool));
}

// One matrix realizing several sum-of-products gadgets that share the corner
// row and column; size = sum of m_l(n_l - 1) + 1. The per-part sign
// (-1)^(n_l + 1) is folded into the reported value.
template <class R>
GadgetWitness<R> build_combined(const R& ring,
                                const std::vector<Assignment<R>>& parts,
                                std::optional<ElemSet<R>> entry_pool = {}) {
  if (parts.empty()) raise(Errc::usage, "combined gadget needs parts");
  if (parts.size() == 1)
    return build_gadget(ring, parts[0], std::move(entry_pool));
  for (const auto& p : parts) p.validate();

  // n = 1 parts embed through the n = 2 layout with second factor one; the
  // shared corner forbids the row swap, so those parts contribute with a
  // negative sign, folded into the value like every other part.
  std::vector<Assignment<R>> eff;
  eff.reserve(parts.size());
  for (const auto& p : parts) {
    if (p.n >= 2) {
      eff.push_back(p);
      continue;
    }
    Assignment<R> e{p.m, 2, {}};
    e.entries.resize(p.m * 2, ring.zero());
    for (std::size_t i = 0; i < p.m; ++i) {
      e.at(i, 0) = p.at(i, 0);
      e.at(i, 1) = ring.one();
    }
    eff.push_back(std::move(e));
  }

  std::size_t size = 1;
  for (const auto& p : eff) size += p.m * (p.n - 1);
  Matrix<R> mat(ring, size, size);
  typename R::Elem value = ring.zero();
  std::size_t off = 1;
  for (const auto& p : eff) {
    for (std::size_t i = 0; i < p.m; ++i) {
      std::size_t o = off + i * (p.n - 1);
      for (std::size_t r = 0; r + 1 < p.n; ++r)
        mat.at(o + r, o + r) = ring.one();
      for (std::size_t r = 0; r + 2 < p.n; ++r)
        mat.at(o + r, o + r + 1) = p.at(i, p.n - 2 - r);
      mat.at(0, o) = p.at(i, p.n - 1);
      mat.at(o + p.n - 2, 0) = p.at(i, 0);
    }
    typename R::Elem part_sum = ring.zero();
    for (std::size_t i = 0; i < p.m; ++i) {
      typename R::Elem prod = ring.one();
      for (std::size_t j = 0; j < p.n; ++j) prod = ring.mul(prod, p.at(i, j));
      part_sum = ring.add(part_sum, prod);
    }
    if (p.n % 2 == 0) part_sum = ring.neg(part_sum);
    value = ring.add(value, part_sum);
    off += p.m * (p.n - 1);
  }
  return GadgetWitness<R>(std::move(mat), value, Assignment<R>{}, ring.one(),
                          std::move(entry_pool));
}

// Builds a verified gadget whose determinant equals target, with all matrix
// entries drawn from A; requires {0,1} in A, and the sign-adjusted target
// must lie in the m-fold sumset of n-fold products of A.
template <class R>
GadgetWitness<R> synthesize_witness(const ElemSet<R>& a, std::size_t m,
                                    std::size_t n,
                                    const typename R::Elem& target) {
  const R& ring = a.ring();
  if (m == 0 || n == 0) raise(Errc::usage, "need m, n >= 1");
  if (!a.contains(ring.zero()) || !a.contains(ring.one()))
    raise(Errc::missing_zero_one, "entry set must contain 0 and 1");
  typename R::Elem f = gadget_unit_factor(ring, m, n, ring.one());
  typename R::Elem s = ring.eq(f, ring.one()) ? target : ring.neg(target);
  TraceSet<R> products = traced_iter_productset(n, a);
  TraceSet<R> sums = traced_iter_sumset(m, products.as_set());
  if (!sums.contains(s))
    raise(Errc::not_a_member, "target is not realizable with these m, n");
  std::vector<typename R::Elem> terms = sums.decode(s);
  Assignment<R> asg{m, n, {}};
  asg.entries.reserve(m * n);
  for (const auto& t : terms) {
    std::vector<typename R::Elem> factors = products.decode(t);
    for (const auto& x : factors) asg.entries.push_back(x);
  }
  GadgetWitness<R> w = build_gadget(ring, asg, std::optional<ElemSet<R>>(a));
  if (!ring.eq(w.value(), target))
    raise(Errc::degenerate, "synthesized witness value mismatch");
  return w;
}

// Certified matrix with entries in A whose determinant is scale * d, for any
// d in the m-fold sumset of k-fold products of A - A. Chains the unit-scaled
// sum-of-products gadget over A - A with the difference split and the
// doubled block layout; works over both rings.
template <class R>
GadgetWitness<R> constructive_membership_witness(const ElemSet<R>& a,
                                                 std::size_t m, std::size_t k,
                                                 const typename R::Elem& d) {
  const R& ring = a.ring();
  if (a.size() < 2) raise(Errc::set_too_small, "need at least two elements");
  ElemSet<R> diff = difference_set(a);
  typename R::Elem unit = detail::least_nonzero(diff);
  TraceSet<R> products = traced_iter_productset(k, diff);
  TraceSet<R> sums = traced_iter_sumset(m, products.as_set());
  if (!sums.contains(d))
    raise(Errc::not_a_member, "value is not realizable with these m, k");
  std::vector<typename R::Elem> terms = sums.decode(d);
  Assignment<R> asg{m, k, {}};
  for (const auto& t : terms) {
    std::vector<typename R::Elem> factors = products.decode(t);
    for (const auto& x : factors) asg.entries.push_back(x);
  }
  GadgetWitness<R> inner =
      build_gadget_with_unit(ring, asg, unit, std::optional<ElemSet<R>>(diff));
  typename R::Elem b = detail::least_nonzero(a);
  typename R::Elem det_m0 =
      det_m0_formula(ring, detail::least_other(a, b), b, inner.size());
  typename R::Elem scale =
      ring.mul(det_m0, gadget_unit_factor(ring, m, k, unit));
  return detail::lift_through_difference(a, inner.matrix(),
                                         ring.mul(scale, d),
                                         inner.assignment(), scale);
}

// Constructive proof that some D_size(A) covers the whole field: parameters
// (m, n) such that the m-fold sumset of n-fold products of the normalized
// difference set is all of F_p, plus a per-element witness builder.
template <class R>
struct CoverageCertificate {
  using Elem = typename R::Elem;

  std::size_t m = 0, n = 0;
  std::size_t gadget_size = 0;  // m(n-1)+1, or 1 in the whole-field shortcut
  std::size_t matrix_size = 0;  // 2 * gadget_size, or 1
  bool direct = false;          // A is the whole field: 1x1 witnesses
  Elem a0{};                    // normalization dilation of A - A
  Elem det_m0{};
  Elem scale{};  // det(M0) * a0^gadget_size
  ElemSet<R> base;
  ElemSet<R> sym;  // normalized difference set A'

  // concrete matrix with entries in A and determinant t, rebuilt and
  // re-verified on every call
  GadgetWitness<R> witness_for(const Elem& t) const {
    const R& ring = base.ring();
    if (direct) {
      Matrix<R> mat(ring, 1, 1);
      mat.at(0, 0) = t;
      return GadgetWitness<R>(std::move(mat), t, Assignment<R>{1, 1, {t}},
                              ring.one(), base);
    }
    Elem tprime = ring.mul(ring.inv(scale), t);
    GadgetWitness<R> inner = synthesize_witness(sym, m, n, tprime);
    Matrix<R> w = scale_matrix(a0, inner.matrix());
    return detail::lift_through_difference(base, w, t, inner.assignment(),
                                           scale);
  }
};

// Searches (m, n) by increasing doubled matrix size 2(m(n-1)+1), then
// smallest n, for coverage of the whole field within the size budget.
template <class R>
CoverageCertificate<R> coverage_certificate(const ElemSet<R>& a,
                                            std::size_t budget) {
  static_assert(is_prime_field_v<R>, "coverage needs a prime field");
  const R& ring = a.ring();
  if (a.size() < 2) raise(Errc::set_too_small, "need at least two elements");
  ElemSet<R> full = ElemSet<R>::full(ring);

  CoverageCertificate<R> cert{.base = a, .sym = ElemSet<R>(ring)};
  if (a == full && budget >= 1) {
    cert.direct = true;
    cert.m = cert.n = 1;
    cert.gadget_size = cert.matrix_size = 1;
    cert.scale = ring.one();
    cert.sym = a;
    return cert;
  }

  auto [sym, a0] = normalize_symmetric(a);

  struct Candidate {
    std::size_t total, n, m;
  };
  std::optional<Candidate> best;
  auto consider = [&](std::size_t total, std::size_t n, std::size_t m) {
    if (!best || total < best->total || (total == best->total && n < best->n))
      best = Candidate{total, n, m};
  };

  if (budget >= 2 && sym == full) consider(2, 1, 1);
  ElemSet<R> powers = sym;
  for (std::size_t n = 2; 2 * n <= budget; ++n) {
    powers = productset(powers, sym);
    std::size_t m_max = (budget / 2 - 1) / (n - 1);
    auto covers = [&](std::size_t m) {
      return iter_sumset(m, powers) == full;
    };
    // doubling to bracket the least covering m, then binary search
    std::optional<std::size_t> hit;
    std::size_t lo = 0, hi = 1;
    while (hi <= m_max && !covers(hi)) {
      lo = hi;
      hi *= 2;
    }
    if (hi > m_max) {
      if (lo >= m_max || !covers(m_max)) {
        continue;
      }
      hi = m_max;
    }
    while (lo + 1 < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (covers(mid))
        hi = mid;
      else
        lo = mid;
    }
    hit = hi;
    consider(2 * (*hit * (n - 1) + 1), n, *hit);
  }

  if (!best)
    raise(Errc::insufficient_budget,
          "no coverage within matrix size budget " + std::to_string(budget));

  cert.m = best->m;
  cert.n = best->n;
  cert.gadget_size = best->m * (best->n - 1) + 1;
  cert.matrix_size = 2 * cert.gadget_size;
  cert.a0 = a0;
  cert.sym = sym;
  typename R::Elem b = detail::least_nonzero(a);
  cert.det_m0 = det_m0_formula(ring, detail::least_other(a, b), b,
                               cert.gadget_size);
  cert.scale = ring.mul(
      cert.det_m0, ring.pow(a0, static_cast<std::uint64_t>(cert.gadget_size)));
  return cert;
}

}  // namespace detset
