#pragma once

#include <cstdint>

#include "detset/gadgets.hpp"
#include "detset/matrix.hpp"
#include "detset/ring.hpp"

namespace detset {

// Deterministic generator for reproducible randomized suites; identical
// output on every platform for a given seed.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// Per-item generator derived from (seed, stream, index) so parallel sweeps
// see the same values regardless of scheduling.
inline SplitMix64 derive_rng(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t index) {
  SplitMix64 g(seed ^ (stream * 0x9e3779b97f4a7c15ULL));
  g.state ^= g.next() + index * 0xbf58476d1ce4e5b9ULL;
  g.next();
  return g;
}

template <class R>
typename R::Elem random_elem(const R& ring, SplitMix64& rng,
                             std::int64_t int_lo = -9,
                             std::int64_t int_hi = 9) {
  if constexpr (is_prime_field_v<R>) {
    return rng.below(ring.modulus());
  } else {
    return ring.from_int(rng.in_range(int_lo, int_hi));
  }
}

template <class R>
Matrix<R> random_matrix(const R& ring, std::size_t n, SplitMix64& rng,
                        std::int64_t int_lo = -9, std::int64_t int_hi = 9) {
  Matrix<R> m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = random_elem(ring, rng, int_lo, int_hi);
  return m;
}

template <class R>
Assignment<R> random_assignment(const R& ring, std::size_t m, std::size_t n,
                                SplitMix64& rng, std::int64_t int_lo = -9,
                                std::int64_t int_hi = 9) {
  Assignment<R> asg{m, n, {}};
  asg.entries.reserve(m * n);
  for (std::size_t i = 0; i < m * n; ++i)
    asg.entries.push_back(random_elem(ring, rng, int_lo, int_hi));
  return asg;
}

}  // namespace detset
