// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include "a3pi/catalog.hpp"
#include "a3pi/derivations.hpp"
#include "a3pi/les.hpp"
#include "a3pi/smith.hpp"
#include "a3pi/wedge.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace a3pi;
using spheres::SphereElement;

namespace {

CanonicalGroup G(std::string_view s) { return CanonicalGroup::parse(s); }
const Exp inf = Exp::infinity();

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (out.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << secs << " s)";
  if (!out.detail.empty()) line << ": " << out.detail;
  std::cout << line.str() << std::endl;
  if (!out.ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void full_sweep(Outcome& out) {
  std::vector<Exp> grid;
  for (unsigned v = 1; v <= 10; ++v) grid.push_back(Exp(v));
  grid.push_back(inf);
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = catalog::verify_sweep(grid, grid, {6, 7}, {}, 1);
  const double secs = seconds_since(t0);
  for (const auto& c : report.cells)
    out.require(c.status != catalog::Status::Fail, c.spec.name() + " n=" + std::to_string(c.n) + " disagrees");
  out.require(report.count(catalog::Status::Pass) > 0, "no cell compared");
  out.require(secs < 60, "single-threaded sweep took longer than 60 s");
  if (out.ok)
    out.detail = std::to_string(report.count(catalog::Status::Pass)) + " cells equal, " +
                 std::to_string(report.count(catalog::Status::Skip)) + " outside the catalog";
}

void snf_suite(Outcome& out) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 1000 && out.ok; ++trial) {
    const IntMatrix M = oracle::random_matrix(rng, dim(rng), dim(rng), 64);
    const auto snf = smith_normal_form(M);
    out.require(snf.U * M * snf.V == snf.D, "U M V != D");
    out.require(abs(oracle::leibniz_det(snf.U)) == 1 && abs(oracle::leibniz_det(snf.V)) == 1, "not unimodular");
    const auto d = snf.diagonal();
    for (Eigen::Index i = 0; i < snf.D.rows(); ++i)
      for (Eigen::Index j = 0; j < snf.D.cols(); ++j)
        if (i != j) out.require(snf.D(i, j) == 0, "off-diagonal entry");
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      out.require(d[i] >= 0 && (d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0), "divisibility chain broken");
    if (M.rows() == M.cols()) {
      const Integer det = oracle::leibniz_det(M);
      if (det != 0) {
        Integer prod = 1;
        for (const auto& x : d) prod *= x;
        out.require(prod == abs(det), "product of invariant factors != |det|");
      }
    }
  }
  std::uniform_int_distribution<int> gens(1, 4), extra(0, 3);
  int compared = 0;
  for (int trial = 0; trial < 1000 && out.ok; ++trial) {
    const int m = gens(rng);
    const IntMatrix R = oracle::random_matrix(rng, m, m + extra(rng), 6);
    const auto brute = oracle::enumerate_quotient(R, 4096);
    if (!brute) continue;
    ++compared;
    std::vector<Generator> g(static_cast<std::size_t>(m), Generator{"x", inf});
    out.require(canonicalize(Presentation(g, R)) == *brute, "canonical form disagrees with coset enumeration");
  }
  out.require(compared >= 100, "too few finite presentations sampled");
  if (out.ok) out.detail = "1000 matrices, " + std::to_string(compared) + " presentations enumerated";
}

void distributivity(Outcome& out) {
  derivations::resolve_signs();
  const auto nu = SphereElement::of("ν₄");
  for (unsigned r = 1; r <= 8; ++r) {
    const Integer k = pow2(r);
    out.require(wedge::degree_compose(k, nu) ==
                    SphereElement::of("ν₄", k * k) - SphereElement::of("Σν′", pow2(r - 1) * (k - 1)),
                "(2^r ι₄)ν₄ at r = " + std::to_string(r));
    out.require(wedge::degree_compose(-k, nu) ==
                    SphereElement::of("ν₄", k * k) - SphereElement::of("Σν′", pow2(r - 1) * (k + 1)),
                "(-2^r ι₄)ν₄ at r = " + std::to_string(r));
    SphereElement iterated = nu;
    for (unsigned i = 0; i < r; ++i) iterated = wedge::degree_compose(2, iterated);
    out.require(iterated == wedge::degree_compose(k, nu), "iterated doubling at r = " + std::to_string(r));
  }
}

void coefficient_tables(Outcome& out) {
  std::vector<Exp> rs;
  for (unsigned r = 1; r <= 10; ++r) rs.push_back(Exp(r));
  rs.push_back(inf);
  for (const auto& r : rs) {
    const auto y = derivations::derive_y(r).values;
    const std::vector<Integer> want = r == Exp(1) ? std::vector<Integer>{1, 3}
                                      : r == Exp(2) ? std::vector<Integer>{2}
                                                    : std::vector<Integer>{0};
    out.require(y == want, "y at r = " + r.to_string());
    const auto ab = derivations::derive_ab(r);
    out.require(ab.a == epsilon(r) && ab.b == 0, "(a, b) at r = " + r.to_string());
  }
  const auto signs = derivations::search_signs();
  out.require(signs.rejected.size() == 1 && derivations::resolve_signs().sign == signs.sign,
              "sign assignment not unique");
}

void elimination(Outcome& out) {
  for (int s = 1; s <= 4; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = derivations::lemma45_elimination(s);
    const auto tag = " at s = " + std::to_string(s);
    out.require(!res.survivors.empty(), "no survivors" + tag);
    out.require(res.forced, "constraints not forced" + tag);
    for (const auto& x : res.survivors)
      out.require(x.u_prime == 0 && x.z == 0 && x.alpha >= std::min(2, s - 1) && x.beta >= s, "survivor" + tag);
    const auto control = derivations::lemma45_elimination(s, std::nullopt, direct_sum(res.target, G("Z/2^1")));
    out.require(control.survivors.empty(), "negative control survived" + tag);
    out.require(seconds_since(t0) < 10, "over 10 s" + tag);
  }
}

void nuisance(Outcome& out) {
  const auto ranges = les::NuisanceRanges::full();
  for (unsigned r = 1; r <= 6; ++r)
    for (unsigned s = 1; s <= 6; ++s)
      for (int n : {6, 7})
        out.require(les::coker_invariance_sweep(les::Family::chang(1), {Exp(r), Exp(s)}, n, ranges),
                    "group varies at r = " + std::to_string(r) + ", s = " + std::to_string(s) + ", n = " +
                        std::to_string(n));
}

void wedge_checks(Outcome& out) {
  derivations::resolve_signs();
  using namespace wedge;
  const Wedge w43{{4, 3}, {"j₁", "j₂"}};
  const Wedge w54{{5, 4}, {"j₁⁵", "j₂⁴"}};
  struct Row {
    const Wedge* w;
    int n;
    const char* group;
    std::size_t count;
  };
  for (const auto& row : {Row{&w43, 6, "Z(2)^1 + Z/2^1 + Z/2^2", 3}, Row{&w43, 7, "Z(2)^1 + Z/2^1 + Z/2^1 + Z/2^2", 4},
                          Row{&w54, 7, "Z(2)^1 + Z/2^1 + Z/2^2", 3}, Row{&w54, 8, "Z(2)^1 + Z/2^1 + Z/2^1 + Z/2^3", 4}}) {
    const auto b = hilton_basis(*row.w, row.n);
    out.require(b.group() == G(row.group) && b.symbols.size() == row.count,
                "π_" + std::to_string(row.n) + " of the wedge is " + b.group().to_string());
  }
  auto j1 = [&](const SphereElement& x) { return inclusion(w43, 0, x); };
  auto j2 = [&](const SphereElement& x) { return inclusion(w43, 1, x); };
  for (int p = 1; p <= 5; ++p)
    for (int eps = 0; eps <= 1; ++eps) {
      const Integer two = pow2(static_cast<unsigned long>(p));
      const Element f1 = j1(SphereElement::of("ι₄", two)) + j2(SphereElement::of("η₃", eps));
      const Element f2 = j2(SphereElement::of("ι₃", two));
      Element bracket(w43, 6);
      bracket.add(BasicProduct::bracket(0, 1), SphereElement::of("ι₆", two));
      Element top = j1(SphereElement::of("ν₄", 2 * two) - SphereElement::of("Σν′", two));
      top.add(BasicProduct::bracket(0, 1), SphereElement::of("η₆", eps));
      const auto tag = " at exponent " + std::to_string(p);
      out.require(whitehead_expand(j2(SphereElement::of("ι₃")), f1) == bracket, "[j₂, j₁(2^s ι₄) + ε j₂η₃]" + tag);
      out.require(whitehead_expand(j1(SphereElement::of("ι₄")), f1) == top, "[j₁, j₁(2^s ι₄) + ε j₂η₃]" + tag);
      out.require(whitehead_expand(j2(SphereElement::of("ι₃")), f2).is_zero(), "[j₂, j₂(2^r ι₃)]" + tag);
      out.require(whitehead_expand(j1(SphereElement::of("ι₄")), f2) == bracket, "[j₁, j₂(2^r ι₃)]" + tag);
    }
}

void anchors(Outcome& out) {
  using catalog::ComplexSpec;
  out.require(catalog::compute(ComplexSpec::moore(3, Exp(1)), 7) == G("Z/2^1 + Z/2^1"), "π₇(M₂³)");
  out.require(catalog::compute(ComplexSpec::moore(4, Exp(1)), 7) == G("Z/2^1 + Z/2^2"), "π₇(M₂⁴)");
  out.require(catalog::compute(ComplexSpec::chang_eta(), 6) == G("Z/2^1"), "π₆(C_η)");
  out.require(catalog::compute(ComplexSpec::chang_eta(), 7) == CanonicalGroup::free(1), "π₇(C_η)");
}

}  // namespace

int main() {
  run(1, "closed forms reproduced over r, s in 1..10 and inf, n = 6, 7", full_sweep);
  run(2, "Smith normal form properties and coset enumeration", snf_suite);
  run(3, "degree maps composed with ν₄ for r = 1..8", distributivity);
  run(4, "coefficient tables for y, (a, b) and the distributivity sign", coefficient_tables);
  run(5, "elimination of u′, z, α, β for s = 1..4 with negative control", elimination);
  run(6, "nuisance independence for ChangEps(1), r, s in 1..6", nuisance);
  run(7, "wedge groups and the four γ restrictions", wedge_checks);
  run(8, "external anchors: π₇ of M₂³ and M₂⁴, π₆ and π₇ of C_η", anchors);
  return failures == 0 ? 0 : 1;
}
