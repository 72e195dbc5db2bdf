#include "a3pi/spheres.hpp"

#include "a3pi/errors.hpp"

#include <bit>
#include <cctype>
#include <map>
#include <sstream>

namespace a3pi::spheres {

namespace detail {
extern const std::string_view kSphereTable;
}

namespace {

struct Line {
  int number;
  std::string kind;
  int n;
  int m;
  std::vector<std::string> fields;
};

struct Groups {
  std::map<std::pair<int, int>, SphereGroup> groups;
  std::map<std::string, SphereGenerator, std::less<>> generators;
  std::vector<Line> other_lines;
};

struct Fact {
  SphereElement value;
  std::string citation;
};

struct Relations {
  std::map<std::string, SphereElement, std::less<>> suspensions;
  std::map<std::string, std::string, std::less<>> desuspensions;
  std::map<std::string, SphereElement, std::less<>> hopf;
  std::map<std::string, Fact, std::less<>> facts;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void bad_line(int line_no, const std::string& why) {
  throw Error("sphere table line " + std::to_string(line_no) + ": " + why);
}

// The file lists group orders ("4", "inf"); generators carry 2-exponents.
Exp parse_order(const std::string& text, int line_no) {
  if (text == "inf") return Exp::infinity();
  const unsigned long long order = std::stoull(text);
  if (order < 2 || (order & (order - 1)) != 0) bad_line(line_no, "order " + text + " is not a power of 2");
  return Exp(static_cast<std::uint64_t>(std::countr_zero(order)));
}

Groups load_groups() {
  Groups t;
  // Trivial groups below the bottom cell.
  for (int n = 1; n <= 24; ++n)
    for (int m = 0; m < n; ++m) t.groups[{n, m}] = SphereGroup{n, m, {}, "below the bottom cell"};

  std::istringstream in{std::string(detail::kSphereTable)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto body = trim(raw);
    if (body.empty() || body[0] == '#') continue;
    auto fields = split(body, '|');
    if (fields.size() != 3) bad_line(line_no, "expected 3 fields");
    auto head = words(fields[0]);
    if (head.size() != 3) bad_line(line_no, "expected 'kind n m'");
    Line line{line_no, head[0], std::stoi(head[1]), std::stoi(head[2]), fields};
    if (line.kind != "group") {
      t.other_lines.push_back(std::move(line));
      continue;
    }
    SphereGroup g{line.n, line.m, {}, fields[2]};
    for (const auto& entry : words(fields[1])) {
      auto colon = entry.rfind(':');
      if (colon == std::string::npos) bad_line(line_no, "generator without order: " + entry);
      SphereGenerator gen{entry.substr(0, colon), g.sphere, g.degree, parse_order(entry.substr(colon + 1), line_no)};
      if (t.generators.count(gen.name)) bad_line(line_no, "duplicate generator " + gen.name);
      t.generators.emplace(gen.name, gen);
      g.basis.push_back(std::move(gen));
    }
    t.groups[{g.sphere, g.degree}] = std::move(g);
  }
  return t;
}

const Groups& groups() {
  static const Groups t = load_groups();
  return t;
}

SphereElement parse_element(const std::string& text, int n, int m, int line_no) {
  SphereElement out(n, m);
  if (text == "0") return out;
  Integer sign = 1;
  Integer coeff = 1;
  bool have_coeff = false;
  for (const auto& w : words(text)) {
    if (w == "+") {
      sign = 1;
    } else if (w == "-") {
      sign = -1;
    } else if (std::isdigit(static_cast<unsigned char>(w[0]))) {
      coeff = Integer(w);
      have_coeff = true;
    } else {
      out.add(w, sign * coeff);
      sign = 1;
      coeff = 1;
      have_coeff = false;
    }
  }
  if (have_coeff) bad_line(line_no, "dangling coefficient in '" + text + "'");
  return out;
}

Relations load_relations() {
  Relations t;
  for (const auto& line : groups().other_lines) {
    const auto& body = line.fields[1];
    auto eq = body.find('=');
    if (eq == std::string::npos) bad_line(line.number, "missing '='");
    const std::string lhs = trim(std::string_view(body).substr(0, eq));
    const std::string rhs = trim(std::string_view(body).substr(eq + 1));
    if (line.kind == "susp") {
      if (!has_generator(lhs)) bad_line(line.number, "unknown generator " + lhs);
      auto img = parse_element(rhs, line.n + 1, line.m + 1, line.number);
      int nonzero = 0;
      std::string unit_target;
      for (std::size_t i = 0; i < img.coefficients().size(); ++i) {
        if (img.coefficients()[i] != 0) ++nonzero;
        if (img.coefficients()[i] == 1) unit_target = img.group().basis[i].name;
      }
      if (nonzero == 1 && !unit_target.empty()) {
        if (t.desuspensions.count(unit_target)) bad_line(line.number, "two desuspensions of " + unit_target);
        t.desuspensions.emplace(unit_target, lhs);
      }
      t.suspensions.emplace(lhs, std::move(img));
    } else if (line.kind == "hopf") {
      if (!has_generator(lhs)) bad_line(line.number, "unknown generator " + lhs);
      t.hopf.emplace(lhs, parse_element(rhs, 2 * line.n - 1, line.m, line.number));
    } else if (line.kind == "fact") {
      t.facts.emplace(lhs, Fact{parse_element(rhs, line.n, line.m, line.number), line.fields[2]});
    } else {
      bad_line(line.number, "unknown record kind " + line.kind);
    }
  }
  return t;
}

const Relations& relations() {
  static const Relations t = load_relations();
  return t;
}

const char* const kSubscripts[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

}  // namespace

CanonicalGroup SphereGroup::group() const {
  std::uint64_t free_rank = 0;
  std::vector<std::uint64_t> exps;
  for (const auto& g : basis) {
    if (g.order.is_infinite())
      ++free_rank;
    else
      exps.push_back(g.order.value());
  }
  return CanonicalGroup::from(free_rank, std::move(exps));
}

std::size_t SphereGroup::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].name == name) return i;
  throw UnknownRelation("generator '" + std::string(name) + "' is not in pi_" + std::to_string(degree) + "(S^" +
                        std::to_string(sphere) + ")");
}

const SphereGroup& pi_sphere(int n, int m) {
  const auto& g = groups().groups;
  auto it = g.find({n, m});
  if (it == g.end())
    throw OutOfRange("pi_" + std::to_string(m) + "(S^" + std::to_string(n) + ") is outside the stored table");
  return it->second;
}

bool has_generator(std::string_view name) { return groups().generators.find(name) != groups().generators.end(); }

const SphereGenerator& generator(std::string_view name) {
  auto it = groups().generators.find(name);
  if (it == groups().generators.end()) throw UnknownRelation("unknown sphere generator '" + std::string(name) + "'");
  return it->second;
}

std::string iota(int n) {
  std::string out = "ι";
  for (char c : std::to_string(n)) out += kSubscripts[c - '0'];
  return out;
}

std::string_view table_source() { return detail::kSphereTable; }

SphereElement::SphereElement(int sphere, int degree)
    : sphere_(sphere), degree_(degree), coeffs_(pi_sphere(sphere, degree).basis.size(), Integer(0)) {}

SphereElement SphereElement::of(std::string_view name, const Integer& c) {
  const auto& g = generator(name);
  SphereElement out(g.sphere, g.degree);
  out.add(name, c);
  return out;
}

const SphereGroup& SphereElement::group() const { return pi_sphere(sphere_, degree_); }

Integer SphereElement::coefficient(std::string_view name) const { return coeffs_[group().index_of(name)]; }

bool SphereElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

SphereElement& SphereElement::add(std::string_view name, const Integer& c) {
  coeffs_[group().index_of(name)] += c;
  reduce();
  return *this;
}

void SphereElement::reduce() {
  const auto& basis = group().basis;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (basis[i].order.is_finite()) coeffs_[i] = mod_floor(coeffs_[i], basis[i].order.power());
}

SphereElement& SphereElement::operator+=(const SphereElement& other) {
  if (other.sphere_ != sphere_ || other.degree_ != degree_)
    throw DimensionMismatch("adding elements of different groups");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  reduce();
  return *this;
}

SphereElement& SphereElement::operator-=(const SphereElement& other) {
  if (other.sphere_ != sphere_ || other.degree_ != degree_)
    throw DimensionMismatch("subtracting elements of different groups");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  reduce();
  return *this;
}

SphereElement operator*(const Integer& k, const SphereElement& a) {
  SphereElement out = a;
  for (auto& c : out.coeffs_) c *= k;
  out.reduce();
  return out;
}

bool operator==(const SphereElement& a, const SphereElement& b) {
  return a.sphere_ == b.sphere_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

std::string SphereElement::to_string() const {
  const auto& basis = group().basis;
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Integer c = coeffs_[i];
    if (c == 0) continue;
    if (basis[i].order.is_finite()) {
      const Integer ord = basis[i].order.power();
      if (2 * c > ord) c -= ord;
    }
    const bool neg = c < 0;
    const Integer mag = abs(c);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mag != 1) out += mag.get_str();
    out += basis[i].name;
  }
  return out.empty() ? "0" : out;
}

SphereElement suspend(const SphereElement& x) {
  SphereElement out(x.sphere() + 1, x.degree() + 1);
  const auto& basis = x.group().basis;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (x.coefficients()[i] == 0) continue;
    auto it = relations().suspensions.find(basis[i].name);
    if (it == relations().suspensions.end())
      throw UnknownRelation("no stored suspension of " + basis[i].name);
    out += x.coefficients()[i] * it->second;
  }
  return out;
}

std::optional<std::string> desuspension(std::string_view name) {
  auto it = relations().desuspensions.find(name);
  if (it == relations().desuspensions.end()) return std::nullopt;
  return it->second;
}

bool is_suspension(std::string_view name) { return desuspension(name).has_value(); }

SphereElement hopf_invariant(std::string_view name) {
  const auto& g = generator(name);
  auto it = relations().hopf.find(name);
  if (it != relations().hopf.end()) return it->second;
  if (is_suspension(name)) return SphereElement(2 * g.sphere - 1, g.degree);
  throw UnknownRelation("Hopf invariant of " + std::string(name) + " is not stored");
}

SphereElement hopf_invariant(const SphereElement& x) {
  SphereElement out(2 * x.sphere() - 1, x.degree());
  const auto& basis = x.group().basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (x.coefficients()[i] != 0) out += x.coefficients()[i] * hopf_invariant(basis[i].name);
  return out;
}

SphereElement relation_lookup(std::string_view expr) {
  auto it = relations().facts.find(expr);
  if (it == relations().facts.end()) throw UnknownRelation("no stored relation for '" + std::string(expr) + "'");
  return it->second.value;
}

std::string relation_citation(std::string_view expr) {
  auto it = relations().facts.find(expr);
  if (it == relations().facts.end()) throw UnknownRelation("no stored relation for '" + std::string(expr) + "'");
  return it->second.citation;
}

namespace {

SphereElement compose_generators(const SphereGenerator& outer, const SphereGenerator& inner) {
  if (outer.degree != inner.sphere)
    throw DimensionMismatch(outer.name + "∘" + inner.name + ": source and target spheres differ");
  if (outer.name == iota(outer.sphere)) return SphereElement::of(inner.name);
  if (inner.name == iota(inner.sphere)) return SphereElement::of(outer.name);
  SphereElement zero(outer.sphere, inner.degree);
  if (zero.coefficients().empty()) return zero;
  return relation_lookup(outer.name + "∘" + inner.name);
}

}  // namespace

SphereElement compose(std::string_view outer, const SphereElement& inner) {
  const auto& o = generator(outer);
  if (o.degree != inner.sphere())
    throw DimensionMismatch(std::string(outer) + " cannot be composed with an element of pi_" +
                            std::to_string(inner.degree()) + "(S^" + std::to_string(inner.sphere()) + ")");
  SphereElement out(o.sphere, inner.degree());
  const auto& basis = inner.group().basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (inner.coefficients()[i] != 0) out += inner.coefficients()[i] * compose_generators(o, basis[i]);
  return out;
}

SphereElement compose(const SphereElement& outer, std::string_view inner) {
  const auto& in = generator(inner);
  if (in.sphere != outer.degree())
    throw DimensionMismatch("cannot compose with " + std::string(inner) + ": sphere mismatch");
  if (in.name != iota(in.sphere) && !is_suspension(inner))
    throw UnsupportedShape("right composition with the non-suspension " + std::string(inner) + " is not additive");
  SphereElement out(outer.sphere(), in.degree);
  const auto& basis = outer.group().basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (outer.coefficients()[i] != 0) out += outer.coefficients()[i] * compose_generators(basis[i], in);
  return out;
}

}  // namespace a3pi::spheres
