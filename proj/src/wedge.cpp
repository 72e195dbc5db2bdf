#include "a3pi/wedge.hpp"

#include "a3pi/errors.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace a3pi::wedge {

using spheres::SphereElement;

BasicProduct BasicProduct::bracket(int i, int k) {
  if (i >= k) throw InvalidArgument("basic brackets are written [j_i, j_k] with i < k");
  return {Kind::Bracket, i, k};
}

int BasicProduct::dimension(const Wedge& w) const {
  if (kind == Kind::Inclusion) return w.dims.at(static_cast<std::size_t>(i));
  return w.dims.at(static_cast<std::size_t>(i)) + w.dims.at(static_cast<std::size_t>(k)) - 1;
}

std::string BasicProduct::name(const Wedge& w) const {
  if (kind == Kind::Inclusion) return w.labels.at(static_cast<std::size_t>(i));
  return "[" + w.labels.at(static_cast<std::size_t>(i)) + "," + w.labels.at(static_cast<std::size_t>(k)) + "]";
}

namespace {

// Brackets drop a trailing identity: "[j₁,j₂]" rather than "[j₁,j₂]ι₆".
std::string symbol_name(const Wedge& w, const BasicProduct& p, const spheres::SphereGenerator& g) {
  if (p.kind == BasicProduct::Kind::Bracket && g.name == spheres::iota(g.sphere)) return p.name(w);
  return p.name(w) + g.name;
}

void check_guard(const Wedge& w, int n) {
  if (w.size() == 1) return;
  const int p = w.dims[0], q = w.dims[1];
  // A basic product with a copies of j₁ and b of j₂ lives on S^{a(p-1)+b(q-1)+1}.
  for (int weight = 3;; ++weight) {
    bool any_in_range = false;
    for (int a = 1; a < weight; ++a) {
      const int b = weight - a;
      const int dim = a * (p - 1) + b * (q - 1) + 1;
      if (dim > n) continue;
      any_in_range = true;
      bool zero = false;
      try {
        zero = spheres::pi_sphere(dim, n).basis.empty();
      } catch (const OutOfRange&) {
        zero = false;
      }
      if (!zero)
        throw GuardViolation("weight-" + std::to_string(weight) + " basic products on S^" + std::to_string(dim) +
                             " contribute to pi_" + std::to_string(n) + " of the wedge");
    }
    if (!any_in_range) return;
  }
}

std::string cache_key(const Wedge& w, int n) {
  std::string key = std::to_string(n);
  for (std::size_t i = 0; i < w.size(); ++i) key += "|" + std::to_string(w.dims[i]) + ":" + w.labels[i];
  return key;
}

std::shared_ptr<const HiltonBasis> cached_basis(const Wedge& w, int n) {
  static std::shared_mutex mutex;
  static std::map<std::string, std::shared_ptr<const HiltonBasis>> cache;
  const auto key = cache_key(w, n);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto basis = std::make_shared<const HiltonBasis>(hilton_basis(w, n));
  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(basis)).first->second;
}

}  // namespace

CanonicalGroup HiltonBasis::group() const { return canonicalize(presentation()); }

Presentation HiltonBasis::presentation() const {
  std::vector<Generator> gens;
  for (const auto& s : symbols) gens.push_back({s.name, s.generator.order});
  return Presentation(std::move(gens));
}

std::size_t HiltonBasis::index_of(const BasicProduct& p, std::string_view generator) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].product == p && symbols[i].generator.name == generator) return i;
  throw UnknownRelation("no basis symbol " + p.name(wedge) + "∘" + std::string(generator) + " in degree " +
                        std::to_string(degree));
}

std::size_t HiltonBasis::index_of(std::string_view symbol_name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == symbol_name) return i;
  throw UnknownRelation("no basis symbol " + std::string(symbol_name) + " in degree " + std::to_string(degree));
}

HiltonBasis hilton_basis(const Wedge& w, int n) {
  if (w.size() < 1 || w.size() > 2 || w.labels.size() != w.size())
    throw UnsupportedShape("wedges of one or two labelled spheres only");
  check_guard(w, n);
  HiltonBasis basis{w, n, {}};
  std::vector<BasicProduct> products;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) products.push_back(BasicProduct::inclusion(i));
  if (w.size() == 2) products.push_back(BasicProduct::bracket(0, 1));
  for (const auto& p : products) {
    const int dim = p.dimension(w);
    if (dim > n) continue;
    for (const auto& g : spheres::pi_sphere(dim, n).basis) basis.symbols.push_back({p, g, symbol_name(w, p, g)});
  }
  return basis;
}

Element::Element(const Wedge& w, int n) : basis_(cached_basis(w, n)), coeffs_(basis_->symbols.size(), Integer(0)) {}

Element Element::of(const Wedge& w, const BasicProduct& p, const SphereElement& x) {
  Element out(w, x.degree());
  out.add(p, x);
  return out;
}

Integer Element::coefficient(std::string_view symbol_name) const { return coeffs_[basis_->index_of(symbol_name)]; }

IntVector Element::vector() const {
  IntVector v(static_cast<Eigen::Index>(coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v(static_cast<Eigen::Index>(i)) = coeffs_[i];
  return v;
}

bool Element::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

Element& Element::add(const BasicProduct& p, const SphereElement& x) {
  if (x.degree() != degree()) throw DimensionMismatch("element degree differs from the wedge degree");
  if (x.sphere() != p.dimension(wedge()))
    throw DimensionMismatch(p.name(wedge()) + " is defined on S^" + std::to_string(p.dimension(wedge())) +
                            ", not S^" + std::to_string(x.sphere()));
  const auto& gens = x.group().basis;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (x.coefficients()[g] != 0) coeffs_[basis_->index_of(p, gens[g].name)] += x.coefficients()[g];
  reduce();
  return *this;
}

void Element::reduce() {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& order = basis_->symbols[i].generator.order;
    if (order.is_finite()) coeffs_[i] = mod_floor(coeffs_[i], order.power());
  }
}

void Element::check_same_group(const Element& other) const {
  if (!(other.wedge() == wedge()) || other.degree() != degree())
    throw DimensionMismatch("elements live in different homotopy groups");
}

Element& Element::operator+=(const Element& other) {
  check_same_group(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  reduce();
  return *this;
}

Element& Element::operator-=(const Element& other) {
  check_same_group(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  reduce();
  return *this;
}

Element operator*(const Integer& k, const Element& a) {
  Element out = a;
  for (auto& c : out.coeffs_) c *= k;
  out.reduce();
  return out;
}

bool operator==(const Element& a, const Element& b) {
  return a.wedge() == b.wedge() && a.degree() == b.degree() && a.coeffs_ == b.coeffs_;
}

std::string Element::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Integer c = coeffs_[i];
    if (c == 0) continue;
    const auto& order = basis_->symbols[i].generator.order;
    if (order.is_finite() && 2 * c > order.power()) c -= order.power();
    const bool neg = c < 0;
    const Integer mag = abs(c);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mag != 1) out += mag.get_str();
    out += basis_->symbols[i].name;
  }
  return out.empty() ? "0" : out;
}

Element inclusion(const Wedge& w, int i, const SphereElement& x) {
  return Element::of(w, BasicProduct::inclusion(i), x);
}

namespace {

SphereElement suspend_times(SphereElement x, int times) {
  for (int t = 0; t < times; ++t) x = spheres::suspend(x);
  return x;
}

bool is_identity(const spheres::SphereGenerator& g) { return g.name == spheres::iota(g.sphere); }

// x ∘ g for x in pi_d(S^n) and g a generator that is ι or a suspension.
SphereElement right_compose(const SphereElement& x, const spheres::SphereGenerator& g) {
  return spheres::compose(x, g.name);
}

// [j_i ι, j_k β] = [j_i, j_k]∘E^{d_i - 1}β, with i != k ordered by symmetry,
// and [j_i, j_i] = j_i∘[ι, ι].
Element bracket_with_identity(const Wedge& w, int i, const SphereElement& beta, int k) {
  const int di = w.dims[static_cast<std::size_t>(i)];
  const SphereElement moved = suspend_times(beta, di - 1);
  if (i == k) {
    const std::string fact = "[" + spheres::iota(di) + "," + spheres::iota(di) + "]";
    const SphereElement self = spheres::relation_lookup(fact);
    SphereElement composite(di, moved.degree());
    const auto& gens = moved.group().basis;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (moved.coefficients()[g] != 0 && !self.is_zero())
        composite += moved.coefficients()[g] * right_compose(self, gens[g]);
    return Element::of(w, BasicProduct::inclusion(i), composite);
  }
  if (i < k) return Element::of(w, BasicProduct::bracket(i, k), moved);
  // [j_i, j_k] = (-1)^{d_i d_k} [j_k, j_i] for i > k.
  const int dk = w.dims[static_cast<std::size_t>(k)];
  const Integer sign = ((di * dk) % 2 == 0) ? 1 : -1;
  return sign * Element::of(w, BasicProduct::bracket(k, i), moved);
}

// [j_i g, j_k h] for basis generators g in pi_p(S^{d_i}), h in pi_q(S^{d_k}).
Element bracket_generators(const Wedge& w, int i, const spheres::SphereGenerator& g, int k,
                           const spheres::SphereGenerator& h) {
  if (is_identity(g)) return bracket_with_identity(w, i, SphereElement::of(h.name), k);
  if (is_identity(h)) {
    const Integer sign = ((g.degree * h.degree) % 2 == 0) ? 1 : -1;
    return sign * bracket_with_identity(w, k, SphereElement::of(g.name), i);
  }
  throw UnsupportedShape("Whitehead product [" + w.labels[static_cast<std::size_t>(i)] + g.name + ", " +
                         w.labels[static_cast<std::size_t>(k)] + h.name + "] needs a smash product of non-identity maps");
}

}  // namespace

Element whitehead_expand(const Element& left, const Element& right) {
  if (!(left.wedge() == right.wedge())) throw DimensionMismatch("brackets of elements in different wedges");
  const Wedge& w = left.wedge();
  Element out(w, left.degree() + right.degree() - 1);
  const auto& ls = left.basis().symbols;
  const auto& rs = right.basis().symbols;
  for (std::size_t a = 0; a < ls.size(); ++a) {
    if (left.coefficients()[a] == 0) continue;
    if (ls[a].product.kind != BasicProduct::Kind::Inclusion)
      throw UnsupportedShape("bracket arguments must be inclusions composed with sphere maps");
    for (std::size_t b = 0; b < rs.size(); ++b) {
      if (right.coefficients()[b] == 0) continue;
      if (rs[b].product.kind != BasicProduct::Kind::Inclusion)
        throw UnsupportedShape("bracket arguments must be inclusions composed with sphere maps");
      out += (left.coefficients()[a] * right.coefficients()[b]) *
             bracket_generators(w, ls[a].product.i, ls[a].generator, rs[b].product.i, rs[b].generator);
    }
  }
  return out;
}

Element compose(const Element& x, const SphereElement& beta) {
  const Wedge& w = x.wedge();
  const int d = x.degree();
  if (beta.sphere() != d) throw DimensionMismatch("cannot compose pi_" + std::to_string(d) + " with a map into S^" +
                                                  std::to_string(beta.sphere()));
  Element out(w, beta.degree());
  const auto& syms = x.basis().symbols;
  std::vector<std::size_t> terms;
  for (std::size_t a = 0; a < syms.size(); ++a)
    if (x.coefficients()[a] != 0) terms.push_back(a);

  for (auto a : terms) {
    // (c·P∘g)∘β = P∘g∘((cι)∘β)
    const auto& s = syms[a];
    SphereElement inner = degree_compose(x.coefficients()[a], beta);
    if (!is_identity(s.generator)) inner = spheres::compose(s.generator.name, inner);
    out.add(s.product, inner);
  }
  if (terms.size() < 2) return out;

  const SphereElement h = spheres::hopf_invariant(beta);
  if (h.is_zero()) return out;
  if (3 * d - 2 <= beta.degree())
    throw UnsupportedShape("weight-3 Hopf terms of a map into S^" + std::to_string(d) + " are not modelled");
  for (std::size_t p = 0; p < terms.size(); ++p) {
    for (std::size_t q = p + 1; q < terms.size(); ++q) {
      Element a(w, d), b(w, d);
      a.add(syms[terms[p]].product, x.coefficients()[terms[p]] * SphereElement::of(syms[terms[p]].generator.name));
      b.add(syms[terms[q]].product, x.coefficients()[terms[q]] * SphereElement::of(syms[terms[q]].generator.name));
      const Element cross = whitehead_expand(a, b);
      if (!cross.is_zero()) out += compose(cross, h);
    }
  }
  return out;
}

namespace {

std::atomic<int> g_sign{0};
std::mutex g_sign_mutex;

SphereElement degree_compose_generator(const Integer& k, const spheres::SphereGenerator& g, int sign) {
  const int n = g.sphere;
  if (is_identity(g) || spheres::is_suspension(g.name)) return SphereElement::of(g.name, k);
  const std::string fact = "[" + spheres::iota(n) + "," + spheres::iota(n) + "]";
  SphereElement self(n, 2 * n - 1);
  bool have_self = false;
  try {
    self = spheres::relation_lookup(fact);
    have_self = true;
  } catch (const UnknownRelation&) {
  }
  if (have_self && self.is_zero()) return SphereElement::of(g.name, k);
  const SphereElement h = spheres::hopf_invariant(g.name);
  if (h.is_zero()) return SphereElement::of(g.name, k);
  if (!have_self) throw UnknownRelation("distributivity on S^" + std::to_string(n) + " needs " + fact);
  if (sign == 0) throw SignUnresolved("the sign of the distributivity law has not been resolved");
  const Integer binom = k * (k - 1) / 2;
  SphereElement correction(n, g.degree);
  const auto& hs = h.group().basis;
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (h.coefficients()[i] != 0) correction += h.coefficients()[i] * spheres::compose(self, hs[i].name);
  return SphereElement::of(g.name, k) + (Integer(sign) * binom) * correction;
}

}  // namespace

SphereElement degree_compose(const Integer& k, const SphereElement& alpha, int sign) {
  if (sign != 1 && sign != -1 && sign != 0) throw InvalidArgument("sign must be ±1");
  SphereElement out(alpha.sphere(), alpha.degree());
  const auto& gens = alpha.group().basis;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (alpha.coefficients()[i] != 0) out += alpha.coefficients()[i] * degree_compose_generator(k, gens[i], sign);
  return out;
}

SphereElement degree_compose(const Integer& k, const SphereElement& alpha) {
  return degree_compose(k, alpha, g_sign.load(std::memory_order_acquire));
}

void set_distributivity_sign(int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be ±1");
  std::lock_guard lock(g_sign_mutex);
  const int current = g_sign.load();
  if (current != 0 && current != sign) throw InvalidArgument("distributivity sign already fixed to the other value");
  g_sign.store(sign, std::memory_order_release);
}

std::optional<int> distributivity_sign() {
  const int s = g_sign.load(std::memory_order_acquire);
  if (s == 0) return std::nullopt;
  return s;
}

}  // namespace a3pi::wedge
