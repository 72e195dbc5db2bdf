#include "a3pi/exp.hpp"

#include "a3pi/errors.hpp"

#include <charconv>

namespace a3pi {

std::uint64_t Exp::value() const {
  if (infinite_) throw InvalidArgument("exponent is infinite");
  return value_;
}

Integer Exp::power() const {
  if (infinite_) return Integer(0);
  return pow2(value_);
}

Exp Exp::minus(std::uint64_t k) const {
  if (infinite_) return *this;
  if (k > value_) throw InvalidArgument("negative exponent " + std::to_string(value_) + " - " + std::to_string(k));
  return Exp(value_ - k);
}

std::string Exp::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

Exp Exp::parse(std::string_view text) {
  if (text == "inf" || text == "∞" || text == "infinity") return infinity();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidArgument("not an exponent: '" + std::string(text) + "'");
  return Exp(v);
}

}  // namespace a3pi
