#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detset/ring.hpp"

namespace detset {

namespace bits {

inline constexpr std::uint64_t low_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

// Fixed-universe bitset with one spare guard word so unaligned 64-bit reads
// and writes inside [0, universe) never run off the array.
class DenseBits {
public:
  DenseBits() = default;
  explicit DenseBits(std::size_t universe)
      : n_(universe), w_(universe / 64 + 2, 0) {}

  std::size_t universe() const { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  void or_with(const DenseBits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }

  // dst bit (i + shift) mod n_ |= src bit i, for all i
  void or_rotated(const DenseBits& src, std::size_t shift) {
    if (shift == 0) {
      or_with(src);
      return;
    }
    or_range(shift, src, 0, n_ - shift);
    or_range(0, src, n_ - shift, shift);
  }

  bool subset_of(const DenseBits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  friend bool operator==(const DenseBits& a, const DenseBits& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  template <class F>
  void for_each(F f) const {
    for (std::size_t q = 0; q < w_.size(); ++q) {
      std::uint64_t w = w_[q];
      while (w) {
        unsigned b = static_cast<unsigned>(std::countr_zero(w));
        f(q * 64 + b);
        w &= w - 1;
      }
    }
  }

private:
  // OR len bits of src starting at bit s0 into *this starting at bit d0.
  // Ranges must stay inside [0, n_).
  void or_range(std::size_t d0, const DenseBits& src, std::size_t s0,
                std::size_t len) {
    while (len > 0) {
      std::size_t c = len < 64 ? len : 64;
      std::size_t q = s0 >> 6, r = s0 & 63;
      std::uint64_t v = src.w_[q] >> r;
      if (r) v |= src.w_[q + 1] << (64 - r);
      v &= low_mask(c);
      std::size_t q2 = d0 >> 6, r2 = d0 & 63;
      w_[q2] |= v << r2;
      if (r2) w_[q2 + 1] |= v >> (64 - r2);
      s0 += c;
      d0 += c;
      len -= c;
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace bits

// A finite subset of the ring with canonical representatives. Over F_p with
// p <= 2^20 the storage is a dense bitset of length p; otherwise (and always
// over the integers) a sorted duplicate-free vector. Treat values as
// immutable once built when sharing across threads.
template <class R>
class ElemSet {
public:
  using Elem = typename R::Elem;
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 20;

  explicit ElemSet(R ring) : ring_(std::move(ring)) {
    if constexpr (is_prime_field_v<R>) {
      if (ring_.modulus() <= kDenseLimit) {
        dense_ = true;
        bitsv_ = bits::DenseBits(ring_.modulus());
      }
    }
  }

  static ElemSet of(R ring, const std::vector<Elem>& elems) {
    ElemSet s(std::move(ring));
    for (const Elem& e : elems) s.insert(e);
    return s;
  }

  static ElemSet of_ints(R ring, const std::vector<std::int64_t>& vals) {
    ElemSet s(ring);
    for (std::int64_t v : vals) s.insert(ring.from_int(v));
    return s;
  }

  // the whole field, F_p only
  static ElemSet full(const Fp& ring) {
    static_assert(is_prime_field_v<R>);
    ElemSet s{ring};
    for (std::uint64_t v = 0; v < ring.modulus(); ++v) s.insert(v);
    return s;
  }

  const R& ring() const { return ring_; }

  void insert(const Elem& e) {
    if (dense_) {
      bitsv_.set(static_cast<std::size_t>(e));
      count_dirty_ = true;
      return;
    }
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e,
                               [&](const Elem& a, const Elem& b) {
                                 return ring_.less(a, b);
                               });
    if (it == sorted_.end() || !ring_.eq(*it, e)) sorted_.insert(it, e);
  }

  std::size_t size() const {
    if (dense_) {
      if (count_dirty_) {
        count_ = bitsv_.count();
        count_dirty_ = false;
      }
      return count_;
    }
    return sorted_.size();
  }

  bool empty() const { return size() == 0; }

  bool contains(const Elem& e) const {
    if (dense_) return bitsv_.test(static_cast<std::size_t>(e));
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e,
                               [&](const Elem& a, const Elem& b) {
                                 return ring_.less(a, b);
                               });
    return it != sorted_.end() && ring_.eq(*it, e);
  }

  // ascending canonical order
  template <class F>
  void for_each(F f) const {
    if (dense_) {
      bitsv_.for_each([&](std::size_t i) { f(static_cast<Elem>(i)); });
      return;
    }
    for (const Elem& e : sorted_) f(e);
  }

  std::vector<Elem> elems() const {
    std::vector<Elem> out;
    out.reserve(size());
    for_each([&](const Elem& e) { out.push_back(e); });
    return out;
  }

  bool subset_of(const ElemSet& o) const {
    require_same_ring(ring_, o.ring_);
    if (dense_ && o.dense_) return bitsv_.subset_of(o.bitsv_);
    bool ok = true;
    for_each([&](const Elem& e) { ok = ok && o.contains(e); });
    return ok;
  }

  friend bool operator==(const ElemSet& a, const ElemSet& b) {
    if (a.ring_.spec() != b.ring_.spec()) return false;
    if (a.dense_ && b.dense_) return a.bitsv_ == b.bitsv_;
    return a.elems() == b.elems();
  }
  friend bool operator!=(const ElemSet& a, const ElemSet& b) {
    return !(a == b);
  }

  bool dense() const { return dense_; }
  const bits::DenseBits& raw_bits() const { return bitsv_; }
  bits::DenseBits& raw_bits() {
    count_dirty_ = true;
    return bitsv_;
  }

private:
  R ring_;
  bool dense_ = false;
  bits::DenseBits bitsv_;
  std::vector<Elem> sorted_;
  mutable std::size_t count_ = 0;
  mutable bool count_dirty_ = true;
};

namespace detail {

template <class R, class Op>
ElemSet<R> pairwise(const ElemSet<R>& a, const ElemSet<R>& b, Op op) {
  ElemSet<R> out(a.ring());
  a.for_each([&](const typename R::Elem& x) {
    b.for_each(
        [&](const typename R::Elem& y) { out.insert(op(x, y)); });
  });
  return out;
}

}  // namespace detail

// {a + b : a in A, b in B}
template <class R>
ElemSet<R> sumset(const ElemSet<R>& a, const ElemSet<R>& b) {
  require_same_ring(a.ring(), b.ring());
  if constexpr (is_prime_field_v<R>) {
    if (a.dense() && b.dense()) {
      ElemSet<R> out(a.ring());
      a.for_each([&](typename R::Elem x) {
        out.raw_bits().or_rotated(b.raw_bits(), static_cast<std::size_t>(x));
      });
      return out;
    }
  }
  const R& ring = a.ring();
  return detail::pairwise(a, b, [&](const auto& x, const auto& y) {
    return ring.add(x, y);
  });
}

// {a * b : a in A, b in B}
template <class R>
ElemSet<R> productset(const ElemSet<R>& a, const ElemSet<R>& b) {
  require_same_ring(a.ring(), b.ring());
  const R& ring = a.ring();
  return detail::pairwise(a, b, [&](const auto& x, const auto& y) {
    return ring.mul(x, y);
  });
}

// {a0 * a : a in A}; a0 = 0 collapses to {0} for nonempty A
template <class R>
ElemSet<R> dilate(const typename R::Elem& a0, const ElemSet<R>& a) {
  ElemSet<R> out(a.ring());
  a.for_each([&](const typename R::Elem& x) {
    out.insert(a.ring().mul(a0, x));
  });
  return out;
}

template <class R>
ElemSet<R> negate(const ElemSet<R>& a) {
  ElemSet<R> out(a.ring());
  a.for_each(
      [&](const typename R::Elem& x) { out.insert(a.ring().neg(x)); });
  return out;
}

// m-fold iterated sumset mA, m >= 1, via double-and-add (hA + kA = (h+k)A)
template <class R>
ElemSet<R> iter_sumset(std::size_t m, const ElemSet<R>& a) {
  if (m == 0) raise(Errc::usage, "iterated sumset needs m >= 1");
  int top = 63 - std::countl_zero(static_cast<std::uint64_t>(m));
  ElemSet<R> acc = a;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = sumset(acc, acc);
    if ((m >> bit) & 1) acc = sumset(acc, a);
  }
  return acc;
}

// m-fold iterated product set A^m, m >= 1
template <class R>
ElemSet<R> iter_productset(std::size_t m, const ElemSet<R>& a) {
  if (m == 0) raise(Errc::usage, "iterated product set needs m >= 1");
  int top = 63 - std::countl_zero(static_cast<std::uint64_t>(m));
  ElemSet<R> acc = a;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = productset(acc, acc);
    if ((m >> bit) & 1) acc = productset(acc, a);
  }
  return acc;
}

// A - A; always symmetric and containing 0 for nonempty A
template <class R>
ElemSet<R> difference_set(const ElemSet<R>& a) {
  return sumset(a, negate(a));
}

template <class R>
ElemSet<R> set_union(const ElemSet<R>& a, const ElemSet<R>& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.dense() && b.dense()) {
    ElemSet<R> out = a;
    out.raw_bits().or_with(b.raw_bits());
    return out;
  }
  ElemSet<R> out = a;
  b.for_each([&](const typename R::Elem& e) { out.insert(e); });
  return out;
}

// Rescales A - A by the inverse of its least nonzero element a0, yielding a
// symmetric set containing {0, 1} of size >= |A|. Prime fields only.
template <class R>
std::pair<ElemSet<R>, typename R::Elem> normalize_symmetric(
    const ElemSet<R>& a) {
  if (a.size() <= 1)
    raise(Errc::set_too_small, "normalization needs at least two elements");
  if constexpr (!is_prime_field_v<R>) {
    raise(Errc::no_inverse_in_integer_ring,
          "normalization requires a field; the integer ring has no inverses");
  } else {
    const R& ring = a.ring();
    ElemSet<R> d = difference_set(a);
    typename R::Elem a0 = 0;
    bool found = false;
    d.for_each([&](typename R::Elem e) {
      if (!found && !ring.is_zero(e)) {
        a0 = e;
        found = true;
      }
    });
    ElemSet<R> prime = dilate(ring.inv(a0), d);
    if (prime != negate(prime) || !prime.contains(ring.zero()) ||
        !prime.contains(ring.one()) || prime.size() < a.size())
      raise(Errc::degenerate, "normalization postcondition failed");
    return {prime, a0};
  }
}

struct ParsedSet {
  std::size_t tokens = 0;  // literals seen, before canonical collapse
};

// Comma-separated integer literal, e.g. "0,1,3"; values reduce into the ring.
template <class R>
ElemSet<R> parse_set(const R& ring, std::string_view text,
                     ParsedSet* info = nullptr) {
  ElemSet<R> out(ring);
  std::size_t tokens = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t'))
      tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t'))
      tok.remove_suffix(1);
    if (!tok.empty()) {
      Int v;
      try {
        v = Int(std::string(tok));
      } catch (const std::exception&) {
        raise(Errc::usage, "bad set literal element: '" + std::string(tok) +
                               "'");
      }
      out.insert(ring.from_integer(v));
      ++tokens;
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  if (info) info->tokens = tokens;
  return out;
}

template <class R>
std::string format_set(const ElemSet<R>& a) {
  std::string out = "{";
  bool first = true;
  a.for_each([&](const typename R::Elem& e) {
    if (!first) out += ",";
    out += a.ring().str(e);
    first = false;
  });
  out += "}";
  return out;
}

}  // namespace detset
