#include "a3pi/les.hpp"

#include "a3pi/derivations.hpp"
#include "a3pi/errors.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <utility>

namespace a3pi::les {

using spheres::SphereElement;
using wedge::BasicProduct;
using wedge::Element;
using wedge::Wedge;

Family Family::chang(int epsilon) {
  if (epsilon != 0 && epsilon != 1) throw InvalidArgument("ε must be 0 or 1");
  return {FamilyKind::ChangEps, epsilon};
}

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::M3: return "M3";
    case FamilyKind::M4: return "M4";
    case FamilyKind::ChangEps: return "ChangEps(" + std::to_string(epsilon) + ")";
  }
  return "?";
}

namespace {

// A cell S^d of the fibre's 8-skeleton attached by g in pi_d(W). Split cells
// have g = 0 identically and carry a section, so they sit as wedge summands.
struct Cell {
  int dim = 0;
  Element attach;
  bool split = false;
};

struct Model {
  Family family;
  Params params;
  Wedge base;
  Wedge source;
  std::vector<Element> f;  // f∘j_i
  std::vector<Cell> cells;
  std::string split_label;
};

std::string key_of(const Family& family, const Params& p, int n) {
  return family.name() + "|" + p.r.to_string() + "|" + p.s.to_string() + "|" + std::to_string(n);
}

Element multiple_of_identity(const Wedge& w, int i, const Integer& k) {
  return wedge::inclusion(w, i, SphereElement::of(spheres::iota(w.dims[static_cast<std::size_t>(i)]), k));
}

Model build_model(const Family& family, const Params& p) {
  Model m{family, p, {}, {}, {}, {}, {}};
  switch (family.kind) {
    case FamilyKind::M3:
      m.base = {{3}, {"j"}};
      m.source = {{4}, {""}};
      m.f = {multiple_of_identity(m.base, 0, p.r.power())};
      m.split_label = "j⁶";
      break;
    case FamilyKind::M4:
      m.base = {{4}, {"j"}};
      m.source = {{5}, {""}};
      m.f = {multiple_of_identity(m.base, 0, p.r.power())};
      m.split_label = "j⁸";
      break;
    case FamilyKind::ChangEps: {
      m.base = {{4, 3}, {"j₁", "j₂"}};
      m.source = {{5, 4}, {"j₁⁵", "j₂⁴"}};
      Element f1 = multiple_of_identity(m.base, 0, p.s.power());
      if (family.epsilon == 1) f1 += wedge::inclusion(m.base, 1, SphereElement::of("η₃"));
      m.f = {f1, multiple_of_identity(m.base, 1, p.r.power())};
      m.split_label = "j_S⁶";
      break;
    }
  }
  // γ = [id, f] restricted to S^{d_a} ∧ S^{d_b - 1}: the bracket [j_a, f j_b].
  const int k = static_cast<int>(m.base.size());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const Element ja = multiple_of_identity(m.base, a, 1);
      Element g = wedge::whitehead_expand(ja, m.f[static_cast<std::size_t>(b)]);
      const int dim = g.degree();
      // Self-brackets that vanish for every parameter split off.
      bool split = false;
      if (a == b && g.is_zero()) {
        const int d = m.base.dims[static_cast<std::size_t>(a)];
        split = spheres::relation_lookup("[" + spheres::iota(d) + "," + spheres::iota(d) + "]").is_zero();
      }
      m.cells.push_back({dim, std::move(g), split});
    }
  }
  return m;
}

const Model& model(const Family& family, const Params& p) {
  static std::shared_mutex mutex;
  static std::map<std::string, std::unique_ptr<const Model>> cache;
  const auto key = key_of(family, p, 0);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<const Model>(build_model(family, p));
  std::unique_lock lock(mutex);
  return *cache.emplace(key, std::move(built)).first->second;
}

IntMatrix columns_of(const std::vector<Element>& images, Eigen::Index rows) {
  IntMatrix M = IntMatrix::Zero(rows, static_cast<Eigen::Index>(images.size()));
  for (std::size_t j = 0; j < images.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = images[j].vector();
  return M;
}

// Images of pi_n(S^d) under the non-split cells.
std::pair<Presentation, IntMatrix> cell_map(const Model& m, int n) {
  std::vector<Generator> gens;
  std::vector<Element> images;
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const Cell& cell = m.cells[c];
    if (cell.split) continue;
    for (const auto& beta : spheres::pi_sphere(cell.dim, n).basis) {
      gens.push_back({"cell" + std::to_string(c) + ":" + beta.name, beta.order});
      images.push_back(wedge::compose(cell.attach, SphereElement::of(beta.name)));
    }
  }
  const auto rows = static_cast<Eigen::Index>(wedge::hilton_basis(m.base, n).symbols.size());
  return {Presentation(std::move(gens)), columns_of(images, rows)};
}

// pi_n(F) = Coker γ_n  +  split summands pi_n(S^{d+1})  +  Ker γ_{n-1}.
// The last two come with sections from the cofibre sequence of the skeleton.
Presentation build_fibre(const Model& m, int n) {
  const auto basis = wedge::hilton_basis(m.base, n);
  const Presentation wedge_group = basis.presentation();
  auto [cells_n, gamma_n] = cell_map(m, n);
  const Presentation coker = cokernel(gamma_n, wedge_group);

  std::vector<Generator> split_gens;
  for (const auto& cell : m.cells) {
    if (!cell.split) continue;
    for (const auto& b : m.base.dims)
      if (cell.dim + b <= n)
        throw GuardViolation("split cell S^" + std::to_string(cell.dim + 1) + " meets the wedge in degree " +
                             std::to_string(n));
    for (const auto& g : spheres::pi_sphere(cell.dim + 1, n).basis) split_gens.push_back({m.split_label + g.name, g.order});
  }

  auto [cells_prev, gamma_prev] = cell_map(m, n - 1);
  const Presentation prev_target = wedge::hilton_basis(m.base, n - 1).presentation();
  Presentation ker = kernel(gamma_prev, cells_prev, prev_target);

  std::vector<Generator> gens = coker.generators();
  gens.insert(gens.end(), split_gens.begin(), split_gens.end());
  for (std::size_t i = 0; i < ker.generators().size(); ++i) {
    std::string name = ker.generators().size() == 1 ? "ρ̃" : "ρ̃" + std::to_string(i + 1);
    gens.push_back({std::move(name), ker.generators()[i].order});
  }
  const auto total = static_cast<Eigen::Index>(gens.size());
  const auto nc = coker.size();
  const auto ns = static_cast<Eigen::Index>(split_gens.size());
  IntMatrix rel = IntMatrix::Zero(total, coker.relations().cols() + ker.relations().cols());
  rel.block(0, 0, nc, coker.relations().cols()) = coker.relations();
  rel.block(nc + ns, coker.relations().cols(), ker.size(), ker.relations().cols()) = ker.relations();
  return Presentation(std::move(gens), std::move(rel));
}

struct Skeleton {
  Presentation fibre;
  Presentation source;
  IntMatrix matrix;  // cited columns left zero
  std::vector<BoundaryColumn> columns;
};

const char* kSuspensionCitation = "suspension square: ∂(Σx) = j∘f∘x";

Skeleton build_skeleton(const Model& m, int n) {
  Skeleton sk;
  sk.fibre = build_fibre(m, n);
  const auto src = wedge::hilton_basis(m.source, n + 1);
  sk.source = src.presentation();
  sk.matrix = IntMatrix::Zero(sk.fibre.size(), sk.source.size());
  const auto base_rows = static_cast<Eigen::Index>(wedge::hilton_basis(m.base, n).symbols.size());
  for (std::size_t j = 0; j < src.symbols.size(); ++j) {
    const auto& sym = src.symbols[j];
    BoundaryColumn col{sym.name, "", true};
    if (sym.product.kind == BasicProduct::Kind::Inclusion) {
      if (auto down = spheres::desuspension(sym.generator.name)) {
        const Element image = wedge::compose(m.f[static_cast<std::size_t>(sym.product.i)], SphereElement::of(*down));
        sk.matrix.col(static_cast<Eigen::Index>(j)).head(base_rows) = image.vector();
        col.citation = kSuspensionCitation;
        col.cited = false;
      }
    }
    sk.columns.push_back(std::move(col));
  }
  return sk;
}

const Skeleton& skeleton(const Family& family, const Params& p, int n) {
  static std::shared_mutex mutex;
  static std::map<std::string, std::unique_ptr<const Skeleton>> cache;
  const auto key = key_of(family, p, n);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<const Skeleton>(build_skeleton(model(family, p), n));
  std::unique_lock lock(mutex);
  return *cache.emplace(key, std::move(built)).first->second;
}

Integer pow2_exp(Exp e) { return e.power(); }

using Terms = std::vector<std::pair<std::string, Integer>>;

struct CitedColumn {
  Terms terms;
  std::string citation;
};

// Columns the suspension square cannot reach, as derived by hand.
std::optional<CitedColumn> cited_column(const Family& family, const Params& p, int n, const std::string& symbol,
                                        const Options& o) {
  const auto& nu = o.nuisance;
  const Integer two_r = pow2_exp(p.r);
  const Integer y = nu.y.value_or(tabulated_y(p.r));
  switch (family.kind) {
    case FamilyKind::M3:
      if (n == 6 && symbol == "ν₄")
        return CitedColumn{{{"jν′", y}, {"j⁶ι₆", two_r}},
                           "P₁φ comparison with (-2^r ι₄)ν₄; y solves h·y + 2^r·t against its Σν′ coefficient"};
      if (n == 7 && symbol == "ν₄η₇")
        return CitedColumn{{{"jν′η₆", epsilon(p.r)}, {"j⁶η₆", 0}},
                           "H′ square forces b = 0; P₁φ comparison forces a = ε_r"};
      break;
    case FamilyKind::M4:
      break;
    case FamilyKind::ChangEps:
      if (n == 6 && symbol == "j₂⁴ν₄")
        return CitedColumn{{{"j₂ν′", y + two_r * nu.m}, {"j_S⁶ι₆", Integer(nu.sign) * two_r}},
                           "θ-ladder from M³: θ(j⁶) = m j₂ν′ ± j_S⁶ι₆ + (terms killed by 2^r)"};
      if (n == 7 && symbol == "j₂⁴ν₄η₇")
        return CitedColumn{{{"j₂ν′η₆", epsilon(p.r)}}, "θ-ladder from M³ applied to ∂₇(ν₄η₇) = ε_r jν′η₆"};
      if (n == 7 && symbol == "[j₁⁵,j₂⁴]") {
        const Exp mrs = min(p.r, p.s);
        if (family.epsilon == 1) {
          const Exp ls = min(p.s.minus(1), Exp(1));
          return CitedColumn{{{"ρ̃", mrs.power() * nu.t},
                              {"j_S⁶η₆", 1},
                              {"j₁ν₄", mrs.power() * nu.k_prime},
                              {"j₁Σν′", ls.power() * nu.l_prime},
                              {"j₂ν′η₆", nu.u}},
                             "comparison with the trivial cone fixes x = 2^{min(r,s)}t and the j_S⁶η₆ "
                             "coefficient 1; the map to the ε = 0 cone gives k = 2^{min(r,s)}k′, "
                             "l = 2^{min(s-1,1)}l′"};
        }
        const auto& e0 = o.eps_zero;
        return CitedColumn{{{"ρ̃", p.s.power() * nu.t},
                            {"j_S⁶η₆", 0},
                            {"j₁ν₄", e0.v},
                            {"j₁Σν′", e0.w},
                            {"j₂ν′η₆", e0.u_prime},
                            {"[j₁,j₂]η₆", e0.z}},
                           "comparison with the trivial cone fixes t′ = 2^s t and y′ = 0; v, w, u′, z are inputs"};
      }
      break;
  }
  return std::nullopt;
}

std::size_t fibre_index(const Presentation& fibre, const std::string& name) {
  for (std::size_t i = 0; i < fibre.generators().size(); ++i)
    if (fibre.generators()[i].name == name) return i;
  throw UnknownRelation("fibre has no generator " + name);
}

BoundaryData build_boundary(const Family& family, const Params& p, int n, const Options& o, bool check) {
  const Skeleton& sk = skeleton(family, p, n);
  BoundaryData bd{family, p, n, sk.fibre, sk.source, sk.matrix, sk.columns, o.nuisance};
  for (std::size_t j = 0; j < bd.columns.size(); ++j) {
    auto& col = bd.columns[j];
    if (!col.cited) continue;
    auto cited = cited_column(family, p, n, col.source, o);
    if (!cited)
      throw UnsupportedCase("no boundary formula for " + col.source + " in degree " + std::to_string(n + 1) + " of " +
                            family.name());
    col.citation = cited->citation;
    for (const auto& [name, coeff] : cited->terms)
      bd.matrix(static_cast<Eigen::Index>(fibre_index(bd.fibre, name)), static_cast<Eigen::Index>(j)) = coeff;
  }
  if (check) detail::check_well_defined(bd.matrix, bd.source, bd.fibre);
  if (o.tamper) o.tamper(bd);
  return bd;
}

void ensure_sign() {
  if (!wedge::distributivity_sign()) derivations::resolve_signs();
}

}  // namespace

Integer tabulated_y(Exp r) {
  if (r == Exp(1)) return 1;
  if (r == Exp(2)) return 2;
  return 0;
}

void validate(const Family& family, const Params& p, int n) {
  if (n < 5 || n > 7) throw InvalidArgument("degree must be 5, 6 or 7");
  auto at_least_one = [](Exp e, const char* name) {
    if (e.is_finite() && e.value() < 1) throw InvalidArgument(std::string(name) + " must be at least 1");
    if (e.is_finite() && e.value() > 62) throw InvalidArgument(std::string(name) + " is out of range");
  };
  at_least_one(p.r, "r");
  switch (family.kind) {
    case FamilyKind::M3:
      break;
    case FamilyKind::M4:
      if (p.r.is_infinite()) throw InvalidArgument("M4 needs a finite r");
      break;
    case FamilyKind::ChangEps:
      at_least_one(p.s, "s");
      if (family.epsilon == 1 && p.r.is_infinite() && p.s.is_infinite())
        throw InvalidArgument("r and s cannot both be infinite");
      if (family.epsilon == 0 && (p.r.is_finite() || p.s.is_infinite()))
        throw InvalidArgument("ε = 0 is modelled only for r = ∞ and finite s");
      break;
  }
}

Presentation fibre_group(const Family& family, const Params& params, int n) {
  validate(family, params, n);
  ensure_sign();
  return skeleton(family, params, n).fibre;
}

BoundaryData boundary_data(const Family& family, const Params& params, int n, const Options& options) {
  validate(family, params, n);
  ensure_sign();
  return build_boundary(family, params, n, options, true);
}

IntMatrix boundary_matrix(const Family& family, const Params& params, int n, const NuisanceParams& nuisance) {
  Options o;
  o.nuisance = nuisance;
  return boundary_data(family, params, n, o).matrix;
}

SplitLedgerEntry split_ledger(const Family& family, const Params& p, int n) {
  switch (family.kind) {
    case FamilyKind::M3:
      if (n == 6)
        return {SplitFlag::Split,
                "Wu's π₆(M₂³) = Z₄⊕Z₂ gives an order-2 lift of η₄η₅; Mukai's lifting lemma carries it to every r"};
      if (n == 7 && p.r == Exp(1)) return {SplitFlag::Split, "Wu: π₇(M₂³) = Z₂⊕Z₂"};
      if (n == 7)
        return {SplitFlag::Split,
                "comparison ladder with M₂³ (bottom row split) plus the exponent criterion on Coker ∂₇"};
      break;
    case FamilyKind::M4:
      if (n == 7) return {SplitFlag::Split, "Wu: π₇(M₂⁴) = Z₂⊕Z₄, carried along the same comparison ladder"};
      break;
    case FamilyKind::ChangEps:
      if (family.epsilon == 1 && n == 6)
        return {SplitFlag::Split, "θ̄ς_r is an order-2 lift of j₂⁴η₄η₅"};
      if (family.epsilon == 1 && n == 7)
        return {SplitFlag::Split,
                "order-4 lift of the Ker ∂₆ generator: θ̄α for r ≥ 2, Mukai's lifting through M₂³ for r = 1"};
      if (family.epsilon == 0 && n == 7)
        return {SplitFlag::Split, "π₇(S⁵) splits off π₇(M⁴_{2^s}) and the S³, S⁴ summands split off the wedge"};
      break;
  }
  return {SplitFlag::Unknown, "no splitting argument recorded"};
}

namespace {

CanonicalGroup coker_of(const BoundaryData& bd) { return canonicalize(cokernel(bd.matrix, bd.fibre)); }
CanonicalGroup ker_of(const BoundaryData& bd) { return canonicalize(kernel(bd.matrix, bd.source, bd.fibre)); }

SplitLedgerEntry resolve_ledger(const Family& family, const Params& p, int n, const CanonicalGroup& coker) {
  SplitLedgerEntry entry = split_ledger(family, p, n);
  if (entry.flag == SplitFlag::Unknown)
    throw LedgerUnknown("extension for π_" + std::to_string(n) + " of " + family.name() + " is not recorded");
  if (family.kind == FamilyKind::M3 && n == 7 && p.r != Exp(1) &&
      splitting_check(coker, 1, true) != SplitVerdict::Split)
    throw LedgerUnknown("exponent criterion inconclusive for " + coker.to_string());
  return entry;
}

}  // namespace

PiParts compute_parts(const Family& family, const Params& p, int n, const Options& options) {
  if (n != 6 && n != 7) throw InvalidArgument("homotopy groups are computed in degrees 6 and 7");
  validate(family, p, n);
  ensure_sign();
  PiParts parts;
  parts.coker = coker_of(build_boundary(family, p, n, options, true));
  parts.ledger = resolve_ledger(family, p, n, parts.coker);
  parts.ker = ker_of(build_boundary(family, p, n - 1, options, true));
  parts.total = direct_sum(parts.coker, parts.ker);
  return parts;
}

CanonicalGroup compute_pi(const Family& family, const Params& params, int n, const Options& options) {
  return compute_parts(family, params, n, options).total;
}

NuisanceRanges NuisanceRanges::full() {
  NuisanceRanges r;
  r.m = {0, 1, 2, 3};
  r.t = {1, 3};
  r.k_prime = {0, 1, 2, 3};
  r.l_prime = {0, 1, 2, 3};
  r.u = {0, 1};
  r.sign = {1, -1};
  r.every_y = true;
  return r;
}

std::size_t NuisanceRanges::size(std::size_t y_count) const {
  return m.size() * t.size() * k_prime.size() * l_prime.size() * u.size() * sign.size() * y_count;
}

namespace {

std::string matrix_key(const IntMatrix& M) {
  std::string key = std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + ":";
  for (Eigen::Index i = 0; i < M.size(); ++i) key += M.data()[i].get_str() + ",";
  return key;
}

}  // namespace

bool coker_invariance_sweep(const Family& family, const Params& p, int n, const NuisanceRanges& ranges) {
  if (n != 6 && n != 7) throw InvalidArgument("homotopy groups are computed in degrees 6 and 7");
  validate(family, p, n);
  ensure_sign();
  std::vector<std::optional<Integer>> ys{std::nullopt};
  if (ranges.every_y) {
    ys.clear();
    for (const auto& y : derivations::derive_y(p.r).values) ys.emplace_back(y);
  }
  for (const auto& t : ranges.t)
    if (t % 2 == 0) throw InvalidArgument("t must be odd");
  // Identical matrices give identical groups, so each distinct matrix is
  // reduced once.
  std::map<std::string, CanonicalGroup> cokers, kers;
  std::optional<CanonicalGroup> first;
  for (const auto& y : ys)
    for (const auto& m : ranges.m)
      for (const auto& t : ranges.t)
        for (const auto& k : ranges.k_prime)
          for (const auto& l : ranges.l_prime)
            for (int u : ranges.u)
              for (int sign : ranges.sign) {
                Options o;
                o.nuisance = {m, t, k, l, u, sign, y};
                const BoundaryData top = build_boundary(family, p, n, o, false);
                const BoundaryData low = build_boundary(family, p, n - 1, o, false);
                auto ck = matrix_key(top.matrix);
                auto it = cokers.find(ck);
                if (it == cokers.end()) {
                  detail::check_well_defined(top.matrix, top.source, top.fibre);
                  it = cokers.emplace(ck, coker_of(top)).first;
                }
                auto kk = matrix_key(low.matrix);
                auto jt = kers.find(kk);
                if (jt == kers.end()) jt = kers.emplace(kk, ker_of(low)).first;
                resolve_ledger(family, p, n, it->second);
                const CanonicalGroup total = direct_sum(it->second, jt->second);
                if (!first)
                  first = total;
                else if (!(total == *first))
                  return false;
              }
  return true;
}

}  // namespace a3pi::les
