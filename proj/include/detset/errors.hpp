#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace detset {

enum class Errc {
  composite_modulus,
  division_by_zero,
  no_inverse_in_integer_ring,
  ring_mismatch,
  set_too_small,
  not_square,
  shape_mismatch,
  bad_pivot_pair,
  singular_block,
  not_a_member,
  missing_zero_one,
  insufficient_budget,
  budget_exceeded,
  degenerate,
  unsupported,
  usage,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string what)
      : std::runtime_error(std::move(what)), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

// Process exit codes: 0 ok, 1 check failure, 2 budget, 3 non-membership,
// 4 insufficient coverage, 5 usage or validation error.
inline int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::budget_exceeded:
      return 2;
    case Errc::not_a_member:
      return 3;
    case Errc::insufficient_budget:
      return 4;
    default:
      return 5;
  }
}

}  // namespace detset
