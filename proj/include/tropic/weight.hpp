#pragma once

#include <string>

#include "tropic/error.hpp"

namespace tropic {

// Extended value: finite T or bottom (-inf), the neutral element of max.
// Bottom is an explicit flag, never a sentinel of T, so integer weights stay
// exact.
template <typename T>
class extended {
 public:
  constexpr extended() : finite_(false), value_{} {}
  constexpr extended(T v) : finite_(true), value_(v) {}

  static constexpr extended bottom() { return extended{}; }

  constexpr bool is_bottom() const { return !finite_; }

  constexpr T value() const {
    if (!finite_) throw invalid_input("extended: value() of -inf");
    return value_;
  }

  // Numeric addition with absorbing bottom (tropical multiplication).
  friend constexpr extended operator+(const extended& a, const extended& b) {
    if (a.is_bottom() || b.is_bottom()) return bottom();
    return extended(a.value_ + b.value_);
  }

  // Bottom sorts below every finite value, so std::max implements tropical
  // addition.
  friend constexpr bool operator<(const extended& a, const extended& b) {
    if (a.is_bottom()) return !b.is_bottom();
    if (b.is_bottom()) return false;
    return a.value_ < b.value_;
  }

  friend constexpr bool operator==(const extended& a, const extended& b) {
    if (a.is_bottom() || b.is_bottom()) return a.is_bottom() == b.is_bottom();
    return a.value_ == b.value_;
  }

  std::string to_string() const {
    if (!finite_) return "-inf";
    return std::to_string(value_);
  }

 private:
  bool finite_;
  T value_;
};

using ext_int = extended<long long>;
using ext_real = extended<double>;

}  // namespace tropic
