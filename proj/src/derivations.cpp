#include "a3pi/derivations.hpp"

#include "a3pi/errors.hpp"
#include "a3pi/les.hpp"
#include "a3pi/spheres.hpp"
#include "a3pi/wedge.hpp"

#include <algorithm>
#include <set>

namespace a3pi::derivations {

using spheres::SphereElement;

namespace {

const int kOddUnits[] = {1, 3, 5, 7};

Integer mod4(const Integer& x) { return mod_floor(x, 4); }

std::string exp_name(Exp r) { return r.is_infinite() ? "∞" : r.to_string(); }

}  // namespace

CoefficientSolution derive_y(Exp r) {
  resolve_signs();
  CoefficientSolution out{"y", {}, {}};
  const Integer two_r = r.power();
  const SphereElement rhs_el = wedge::degree_compose(-two_r, SphereElement::of("ν₄"));
  const Integer rhs = mod4(rhs_el.coefficient("Σν′"));
  out.trace.push_back("r = " + exp_name(r) + ": (-2^r ι₄)ν₄ = " + rhs_el.to_string() + ", so P₁ gives " +
                      rhs.get_str() + "Σν′ (mod 4)");
  out.trace.push_back("solve h·y + 2^r·t ≡ " + rhs.get_str() + " (mod 4) over odd h, t ∈ {1,3,5,7}");
  std::set<Integer> values;
  for (int h : kOddUnits) {
    for (int t : kOddUnits) {
      std::vector<Integer> local;
      for (int y = 0; y < 4; ++y)
        if (mod4(h * Integer(y) + two_r * t) == rhs) local.push_back(y);
      if (local.size() != 1)
        throw InvalidArgument("congruence for y is not uniquely solvable at h = " + std::to_string(h));
      values.insert(local.front());
      out.trace.push_back("  h = " + std::to_string(h) + ", t = " + std::to_string(t) + " -> y = " +
                          local.front().get_str());
    }
  }
  out.values.assign(values.begin(), values.end());
  // Different odd units may only flip the sign of y.
  for (const auto& v : out.values)
    if (mod4(v + out.values.front()) != 0 && v != out.values.front())
      throw InvalidArgument("solutions for y disagree beyond a sign");
  std::string set = "{";
  for (std::size_t i = 0; i < out.values.size(); ++i) set += (i ? ", " : "") + out.values[i].get_str();
  out.trace.push_back("solution set " + set + "}");
  return out;
}

AbSolution derive_ab(Exp r) {
  resolve_signs();
  AbSolution out;
  const Integer two_r = r.power();
  const SphereElement h = spheres::hopf_invariant(SphereElement::of("ν₄η₇"));
  const Integer b = mod_floor(two_r * h.coefficient("η₇"), 2);
  out.b = static_cast<int>(b.get_si());
  out.trace.push_back("r = " + exp_name(r) + ": H(ν₄η₇) = " + h.to_string() + "; the H′ square gives bη₇ = 2^r·" +
                      h.to_string() + ", so b = " + b.get_str());
  const SphereElement image = wedge::degree_compose(-two_r, SphereElement::of("ν₄η₇"));
  const Integer a = mod_floor(image.coefficient("Σν′η₇"), 2);
  out.a = static_cast<int>(a.get_si());
  out.trace.push_back("(-2^r ι₄)(ν₄η₇) = " + image.to_string() + "; P₁φ sends jν′η₆ to hΣν′η₇ with h odd, so a = " +
                      a.get_str());
  return out;
}

SignResolution search_signs() {
  SignResolution out;
  std::vector<int> consistent;
  const SphereElement nu = SphereElement::of("ν₄");
  for (int sigma : {1, -1}) {
    bool ok = true;
    const SphereElement twice = wedge::degree_compose(2, nu, sigma);
    const SphereElement doubled = wedge::degree_compose(2, twice, sigma);
    const SphereElement direct = wedge::degree_compose(4, nu, sigma);
    out.trace.push_back("σ = " + std::to_string(sigma) + ": (2ι₄)ν₄ = " + twice.to_string() + "; (2ι₄)((2ι₄)ν₄) = " +
                        doubled.to_string() + ", (4ι₄)ν₄ = " + direct.to_string());
    if (!(doubled == direct)) {
      ok = false;
      out.trace.push_back("  doubling identity fails");
    }
    for (unsigned r = 1; ok && r <= 8; ++r) {
      const Integer k = pow2(r);
      const SphereElement via = wedge::degree_compose(-1, wedge::degree_compose(k, nu, sigma), sigma);
      const SphereElement straight = wedge::degree_compose(-k, nu, sigma);
      if (!(via == straight)) {
        ok = false;
        out.trace.push_back("  r = " + std::to_string(r) + ": (-ι₄)((2^r ι₄)ν₄) = " + via.to_string() +
                            " but (-2^r ι₄)ν₄ = " + straight.to_string());
      }
    }
    if (ok) {
      consistent.push_back(sigma);
      out.trace.push_back("  consistent");
    } else {
      out.rejected.push_back(sigma);
    }
  }
  if (consistent.empty()) throw NoConsistentSign("no sign satisfies the distributivity checks");
  if (consistent.size() > 1) throw MultipleConsistentSigns("both signs satisfy the distributivity checks");
  out.sign = consistent.front();
  return out;
}

const SignResolution& resolve_signs() {
  static const SignResolution resolved = [] {
    SignResolution r = search_signs();
    wedge::set_distributivity_sign(r.sign);
    return r;
  }();
  return resolved;
}

CanonicalGroup lemma45_target(int s) {
  const int alpha_s = std::min(2, s - 1);
  return CanonicalGroup::from(0, {static_cast<std::uint64_t>(s + 1), static_cast<std::uint64_t>(alpha_s),
                                  static_cast<std::uint64_t>(s), 1, 1});
}

namespace {

// Z{a,b,c,d,e} modulo the relations L′_s.
CanonicalGroup relation_quotient(int s, const Lemma45Tuple& x) {
  std::vector<Generator> gens;
  for (const char* n : {"a", "b", "c", "d", "e"}) gens.push_back({n, Exp::infinity()});
  const Integer two_s = pow2(static_cast<unsigned long>(s));
  IntMatrix R = IntMatrix::Zero(5, 7);
  R(1, 0) = 2 * two_s;
  R(2, 0) = -two_s;
  R(1, 1) = two_s * two_s;
  R(2, 1) = -pow2(static_cast<unsigned long>(s - 1)) * (two_s - 1);
  R(0, 2) = two_s;
  R(1, 2) = pow2(static_cast<unsigned long>(x.beta));
  R(2, 2) = pow2(static_cast<unsigned long>(x.alpha));
  R(3, 2) = x.u_prime;
  R(4, 2) = x.z;
  R(1, 3) = 2 * two_s;
  R(2, 4) = 4;
  R(3, 5) = 2;
  R(4, 6) = 2;
  return canonicalize(Presentation(std::move(gens), std::move(R)));
}

std::string tuple_name(const Lemma45Tuple& x) {
  return "(α=" + std::to_string(x.alpha) + ", β=" + std::to_string(x.beta) + ", u′=" + std::to_string(x.u_prime) +
         ", z=" + std::to_string(x.z) + ")";
}

}  // namespace

Lemma45Result lemma45_elimination(int s, std::optional<int> bound, std::optional<CanonicalGroup> target) {
  if (s < 1 || s > 30) throw InvalidArgument("s must lie in 1..30");
  resolve_signs();
  const int top = bound.value_or(s + 2);
  Lemma45Result out;
  out.s = s;
  out.alpha_s = std::min(2, s - 1);
  out.target = target.value_or(lemma45_target(s));
  const CanonicalGroup engine_target = direct_sum(out.target, CanonicalGroup::cyclic(Exp(1)));
  out.trace.push_back("s = " + std::to_string(s) + ", target H^s = " + out.target.to_string() + ", α_s = " +
                      std::to_string(out.alpha_s));
  out.trace.push_back("sweep α, β ∈ 0.." + std::to_string(top) + ", u′, z ∈ {0,1} with w = 2^α, v = 2^β");
  for (int alpha = 0; alpha <= top; ++alpha)
    for (int beta = 0; beta <= top; ++beta)
      for (int u = 0; u <= 1; ++u)
        for (int z = 0; z <= 1; ++z) {
          const Lemma45Tuple x{alpha, beta, u, z};
          if (relation_quotient(s, x) == out.target) out.survivors.push_back(x);
          les::Options o;
          o.eps_zero = {pow2(static_cast<unsigned long>(beta)), pow2(static_cast<unsigned long>(alpha)), u, z};
          const auto parts = les::compute_parts(les::Family::chang(0), {Exp::infinity(), Exp(s)}, 7, o);
          if (parts.coker == engine_target) out.engine_survivors.push_back(x);
        }
  out.forced = std::all_of(out.survivors.begin(), out.survivors.end(), [&](const Lemma45Tuple& x) {
    return x.u_prime == 0 && x.z == 0 && x.alpha >= out.alpha_s && x.beta >= s;
  });
  out.trace.push_back(std::to_string(out.survivors.size()) + " survivors in the quotient, " +
                      std::to_string(out.engine_survivors.size()) + " through the exact sequence");
  for (const auto& x : out.survivors) out.trace.push_back("  survivor " + tuple_name(x));
  if (!out.survivors.empty()) {
    int min_alpha = top, min_beta = top;
    for (const auto& x : out.survivors) {
      min_alpha = std::min(min_alpha, x.alpha);
      min_beta = std::min(min_beta, x.beta);
    }
    out.trace.push_back("forced: u′ = z = 0, α ≥ " + std::to_string(min_alpha) + ", β ≥ " + std::to_string(min_beta));
  }
  return out;
}

CanonicalGroup lemma47_closed_form(Exp r, Exp s) {
  const Exp first = min(s.minus(static_cast<std::uint64_t>(epsilon(r))), Exp(2));
  const Exp second = min(s, r) + Exp(1);
  const Exp third = s + Exp(2);
  return direct_sum({CanonicalGroup::cyclic(first), CanonicalGroup::cyclic(second), CanonicalGroup::cyclic(third)});
}

Lemma47Result lemma47_check(Exp r, Exp s) {
  Lemma47Result out;
  out.expected = lemma47_closed_form(r, s);
  out.computed = les::compute_parts(les::Family::chang(1), {r, s}, 7).coker;
  out.holds = out.computed == out.expected;
  out.trace.push_back("r = " + exp_name(r) + ", s = " + exp_name(s));
  out.trace.push_back("Coker ∂₇ from the engine: " + out.computed.to_string());
  out.trace.push_back("closed form: " + out.expected.to_string());
  out.trace.push_back(out.holds ? "match" : "MISMATCH");
  return out;
}

}  // namespace a3pi::derivations
