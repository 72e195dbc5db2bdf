#pragma once

#include "a3pi/abgroup.hpp"
#include "a3pi/exp.hpp"
#include "a3pi/integer.hpp"

#include <optional>
#include <string>
#include <vector>

// Brute-force re-derivations of the coefficients the boundary data relies on.
// Each result carries a readable trace of the congruences and sweeps.
namespace a3pi::derivations {

struct CoefficientSolution {
  std::string parameter;
  std::vector<Integer> values;  // sorted, reduced to the stated modulus
  std::vector<std::string> trace;
};

// y ∈ Z₄ with h·y + 2^r·t ≡ Σν′-coefficient of (-2^r ι₄)ν₄ (mod 4) for some
// odd h, t ∈ {1,3,5,7}. Odd units up to 7 cover every residue mod 8.
CoefficientSolution derive_y(Exp r);

struct AbSolution {
  int a = 0;
  int b = 0;
  std::vector<std::string> trace;
};

// ∂₇(ν₄η₇) = a jν′η₆ + b j⁶η₆: b from the H′ square, a from P₁φ.
AbSolution derive_ab(Exp r);

struct SignResolution {
  int sign = 0;
  std::vector<int> rejected;
  std::vector<std::string> trace;
};

// Tests both signs of the distributivity law against the doubling identity
// and the two routes to (-2^r ι₄)ν₄. Pure; throws NoConsistentSign or
// MultipleConsistentSigns.
SignResolution search_signs();

// search_signs() once per process, installing the sign for degree_compose.
const SignResolution& resolve_signs();

struct Lemma45Tuple {
  int alpha = 0;
  int beta = 0;
  int u_prime = 0;
  int z = 0;
  friend bool operator==(const Lemma45Tuple&, const Lemma45Tuple&) = default;
  friend auto operator<=>(const Lemma45Tuple&, const Lemma45Tuple&) = default;
};

struct Lemma45Result {
  int s = 0;
  int alpha_s = 0;
  CanonicalGroup target;
  std::vector<Lemma45Tuple> survivors;         // quotient of Z{a,b,c,d,e}
  std::vector<Lemma45Tuple> engine_survivors;  // same sweep through the exact-sequence engine
  bool forced = false;                         // every survivor has u′ = z = 0, α ≥ α_s, β ≥ s
  std::vector<std::string> trace;
};

// Z_{2^{s+1}} + Z_{2^{α_s}} + Z_{2^s} + Z₂ + Z₂ with α_s = min(2, s-1).
CanonicalGroup lemma45_target(int s);

// Enumerates u′, z ∈ Z₂ and α, β ∈ 0..bound (default s+2): w = 2^α, v = 2^β,
// odd parts fixed to 1. A target override serves as a negative control.
Lemma45Result lemma45_elimination(int s, std::optional<int> bound = std::nullopt,
                                  std::optional<CanonicalGroup> target = std::nullopt);

// Z_{2^{min(s-ε_r,2)}} + Z_{2^{min(s+1,r+1)}} + Z_{2^{s+2}}
CanonicalGroup lemma47_closed_form(Exp r, Exp s);

struct Lemma47Result {
  bool holds = false;
  CanonicalGroup computed;
  CanonicalGroup expected;
  std::vector<std::string> trace;
};

// Compares Coker ∂₇ of ChangEps(1) with the closed form.
Lemma47Result lemma47_check(Exp r, Exp s);

}  // namespace a3pi::derivations
