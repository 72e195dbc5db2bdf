#pragma once

#include "a3pi/integer.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace a3pi {

// A 2-exponent: a natural number or infinity. Z_{2^e} with e = inf is the
// free group Z_(2), and 2^inf as a relation coefficient is the integer 0.
class Exp {
 public:
  constexpr Exp() = default;
  constexpr Exp(std::uint64_t value) : value_(value) {}  // NOLINT(implicit)

  static constexpr Exp infinity() {
    Exp e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  // Throws InvalidArgument on infinity.
  std::uint64_t value() const;

  // 2^e, with 2^inf = 0.
  Integer power() const;

  // Natural subtraction: inf - k = inf; throws if the result would be negative.
  Exp minus(std::uint64_t k) const;

  friend constexpr Exp operator+(Exp a, Exp b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Exp(a.value_ + b.value_);
  }
  friend constexpr bool operator==(Exp a, Exp b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Exp a, Exp b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;  // "inf" or decimal

  // Accepts decimal, "inf" or "∞".
  static Exp parse(std::string_view text);

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

inline constexpr Exp min(Exp a, Exp b) { return b < a ? b : a; }
inline constexpr Exp max(Exp a, Exp b) { return a < b ? b : a; }

// The indicator that is 1 exactly when r = 1.
inline constexpr int epsilon(Exp r) { return r == Exp(1) ? 1 : 0; }

}  // namespace a3pi
