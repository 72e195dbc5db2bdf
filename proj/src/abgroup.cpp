#include "a3pi/abgroup.hpp"

#include <algorithm>
#include <charconv>

namespace a3pi {

CanonicalGroup CanonicalGroup::cyclic(Exp e) {
  if (e.is_infinite()) return free(1);
  return from(0, {e.value()});
}

CanonicalGroup CanonicalGroup::from(std::uint64_t free_rank, std::vector<std::uint64_t> exponents) {
  std::erase(exponents, 0u);
  std::sort(exponents.begin(), exponents.end());
  return {free_rank, std::move(exponents)};
}

std::uint64_t CanonicalGroup::log2_order() const {
  if (free_rank != 0) throw InvalidArgument("infinite group has no finite order");
  std::uint64_t total = 0;
  for (auto e : torsion_exponents) total += e;
  return total;
}

std::uint64_t CanonicalGroup::max_exponent() const {
  return torsion_exponents.empty() ? 0 : torsion_exponents.back();
}

std::string CanonicalGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank > 0) out = "Z(2)^" + std::to_string(free_rank);
  for (auto e : torsion_exponents) {
    if (!out.empty()) out += " + ";
    out += "Z/2^" + std::to_string(e);
  }
  return out;
}

namespace {

std::uint64_t parse_count(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("malformed group string '" + std::string(whole) + "'");
  return v;
}

}  // namespace

CanonicalGroup CanonicalGroup::parse(std::string_view text) {
  if (text == "0") return trivial();
  CanonicalGroup g;
  std::vector<std::uint64_t> exps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(" + ", pos);
    std::string_view part = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (part.starts_with("Z(2)^")) {
      g.free_rank += parse_count(part.substr(5), text);
    } else if (part.starts_with("Z/2^")) {
      auto e = parse_count(part.substr(4), text);
      if (e == 0) throw InvalidArgument("zero exponent in '" + std::string(text) + "'");
      exps.push_back(e);
    } else {
      throw InvalidArgument("malformed group string '" + std::string(text) + "'");
    }
    if (next == std::string_view::npos) break;
    pos = next + 3;
  }
  return from(g.free_rank, std::move(exps));
}

CanonicalGroup direct_sum(const CanonicalGroup& a, const CanonicalGroup& b) {
  auto exps = a.torsion_exponents;
  exps.insert(exps.end(), b.torsion_exponents.begin(), b.torsion_exponents.end());
  return CanonicalGroup::from(a.free_rank + b.free_rank, std::move(exps));
}

CanonicalGroup direct_sum(std::initializer_list<CanonicalGroup> parts) {
  CanonicalGroup out;
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

CanonicalGroup cancel_summand(const CanonicalGroup& g, const CanonicalGroup& s) {
  if (s.free_rank > g.free_rank)
    throw NotASummand(s.to_string() + " is not a summand of " + g.to_string());
  auto exps = g.torsion_exponents;
  for (auto e : s.torsion_exponents) {
    auto it = std::find(exps.begin(), exps.end(), e);
    if (it == exps.end()) throw NotASummand(s.to_string() + " is not a summand of " + g.to_string());
    exps.erase(it);
  }
  return CanonicalGroup::from(g.free_rank - s.free_rank, std::move(exps));
}

SplitVerdict splitting_check(const CanonicalGroup& b1, std::uint64_t s, bool bottom_split) {
  if (!b1.is_finite()) throw InvalidArgument("characteristic of " + b1.to_string() + " is undefined");
  return (bottom_split && b1.max_exponent() <= s) ? SplitVerdict::Split : SplitVerdict::Inconclusive;
}

}  // namespace a3pi
