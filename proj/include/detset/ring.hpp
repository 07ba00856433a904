#pragma once

#include <cstdint>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "detset/errors.hpp"

namespace detset {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

enum class RingKind { PrimeField, Integers };

// Runtime descriptor of the ambient ring. Immutable once built; a prime
// modulus is validated by trial division at construction.
class RingSpec {
public:
  static RingSpec prime_field(std::uint64_t p) {
    if (!is_prime_u64(p))
      raise(Errc::composite_modulus,
            "modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 32))
      raise(Errc::unsupported, "prime moduli above 2^32 are not supported");
    return RingSpec(RingKind::PrimeField, p);
  }

  static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }

  RingKind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == RingKind::PrimeField; }

  std::uint64_t p() const {
    if (kind_ != RingKind::PrimeField)
      raise(Errc::usage, "integer ring has no modulus");
    return p_;
  }

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const RingSpec& a, const RingSpec& b) {
    return !(a == b);
  }

  std::string str() const {
    return kind_ == RingKind::PrimeField ? "F_" + std::to_string(p_) : "Z";
  }

private:
  RingSpec(RingKind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  RingKind kind_;
  std::uint64_t p_;
};

inline RingSpec make_ring(RingKind kind, std::uint64_t p = 0) {
  return kind == RingKind::PrimeField ? RingSpec::prime_field(p)
                                      : RingSpec::integers();
}

// Arithmetic context for F_p. Elements are least non-negative residues;
// every operation keeps them canonical in [0, p).
class Fp {
public:
  using Elem = std::uint64_t;

  explicit Fp(std::uint64_t p) : p_(RingSpec::prime_field(p).p()) {}
  explicit Fp(const RingSpec& spec) : p_(spec.p()) {}

  std::uint64_t modulus() const { return p_; }
  RingSpec spec() const { return RingSpec::prime_field(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }

  Elem inv(Elem a) const {
    if (a == 0) raise(Errc::division_by_zero, "inverse of zero");
    // extended Euclid; p prime so the inverse exists
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_);
    std::int64_t new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    Elem base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool less(Elem a, Elem b) const { return a < b; }

  Elem from_int(std::int64_t v) const {
    std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<Elem>(r);
  }

  Elem from_integer(const Int& v) const {
    Int r = v % Int(p_);
    if (r < 0) r += Int(p_);
    return r.convert_to<Elem>();
  }

  Int to_integer(Elem a) const { return Int(a); }
  std::string str(Elem a) const { return std::to_string(a); }

private:
  std::uint64_t p_;
};

// The integer ring. Elements are arbitrary-precision, so arithmetic can
// never silently overflow.
class ZRing {
public:
  using Elem = Int;

  RingSpec spec() const { return RingSpec::integers(); }

  Elem zero() const { return Int(0); }
  Elem one() const { return Int(1); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }

  Elem inv(const Elem& a) const {
    if (a == 0) raise(Errc::division_by_zero, "inverse of zero");
    if (a == 1 || a == -1) return a;
    raise(Errc::no_inverse_in_integer_ring,
          "only units +1/-1 are invertible over the integers");
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r *= a;
      a *= a;
      e >>= 1;
    }
    return r;
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool less(const Elem& a, const Elem& b) const { return a < b; }

  Elem from_int(std::int64_t v) const { return Int(v); }
  Elem from_integer(const Int& v) const { return v; }
  Int to_integer(const Elem& a) const { return a; }
  std::string str(const Elem& a) const { return a.str(); }
};

template <class R>
inline constexpr bool is_prime_field_v = std::is_same_v<R, Fp>;

template <class R>
void require_same_ring(const R& a, const R& b) {
  if (a.spec() != b.spec())
    raise(Errc::ring_mismatch,
          "operands live in different rings: " + a.spec().str() + " vs " +
              b.spec().str());
}

// Runtime ring selection into templated code. Both branches must yield the
// same type.
template <class F>
decltype(auto) with_ring(const RingSpec& spec, F&& f) {
  if (spec.is_prime_field()) return std::forward<F>(f)(Fp(spec));
  return std::forward<F>(f)(ZRing());
}

}  // namespace detset
