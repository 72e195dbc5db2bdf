#pragma once

#include "a3pi/abgroup.hpp"
#include "a3pi/exp.hpp"
#include "a3pi/integer.hpp"
#include "a3pi/wedge.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

// pi_n of a two-cell-layer complex C = cofibre(f: W -> W) from the fibration
// F -> C -> ΣW. The fibre's 8-skeleton is W with cells attached along
// γ = [id, f]; ∂ on suspensions is read off f, the rest are cited columns.
namespace a3pi::les {

enum class FamilyKind { M3, M4, ChangEps };

// M3: M^3_{2^r}.  M4: M^4_{2^r}.  ChangEps(ε): the cone of
// (j₁(2^s ι₄) + ε j₂η₃, j₂(2^r ι₃)) on S⁴ v S³.
struct Family {
  FamilyKind kind = FamilyKind::M3;
  int epsilon = 1;

  static Family m3() { return {FamilyKind::M3, 0}; }
  static Family m4() { return {FamilyKind::M4, 0}; }
  static Family chang(int epsilon);

  std::string name() const;
  friend bool operator==(const Family&, const Family&) = default;
};

struct Params {
  Exp r = Exp::infinity();
  Exp s = Exp::infinity();
};

// Coefficients the derivation leaves undetermined. t must be odd.
struct NuisanceParams {
  Integer m = 0;
  Integer t = 1;
  Integer k_prime = 0;
  Integer l_prime = 0;
  int u = 0;
  int sign = 1;
  std::optional<Integer> y;  // overrides the tabulated y
};

// Unknown coefficients of ∂₇[j₁⁵, j₂⁴] when ε = 0.
struct EpsZeroOptions {
  Integer v = 0;
  Integer w = 0;
  int u_prime = 0;
  int z = 0;
};

struct BoundaryData;

struct Options {
  NuisanceParams nuisance;
  EpsZeroOptions eps_zero;
  // Runs on every boundary matrix before use; negative controls only.
  std::function<void(BoundaryData&)> tamper;
};

struct BoundaryColumn {
  std::string source;    // source basis symbol
  std::string citation;  // how the column was obtained
  bool cited = false;    // true when taken from the derivation rather than computed
};

// ∂_n : pi_{n+1}(ΣW) -> pi_n(F). Rows index fibre generators, columns
// index the Hilton basis of the source.
struct BoundaryData {
  Family family;
  Params params;
  int n = 0;
  Presentation fibre;
  Presentation source;
  IntMatrix matrix;
  std::vector<BoundaryColumn> columns;
  NuisanceParams nuisance;
};

// pi_n(F) for n in 5..7 with named generators.
Presentation fibre_group(const Family& family, const Params& params, int n);

BoundaryData boundary_data(const Family& family, const Params& params, int n, const Options& options = {});
IntMatrix boundary_matrix(const Family& family, const Params& params, int n, const NuisanceParams& nuisance = {});

// Tabulated y with ∂₆(ν₄) = y·jν′ + 2^r j⁶ι₆ (±1 at r = 1 stored as 1).
Integer tabulated_y(Exp r);

enum class SplitFlag { Split, Unknown };

struct SplitLedgerEntry {
  SplitFlag flag = SplitFlag::Unknown;
  std::string citation;
};

// How 0 -> Coker ∂_n -> pi_n(C) -> Ker ∂_{n-1} -> 0 is resolved.
// Never guesses: anything not recorded is Unknown.
SplitLedgerEntry split_ledger(const Family& family, const Params& params, int n);

struct PiParts {
  CanonicalGroup coker;  // Coker ∂_n
  CanonicalGroup ker;    // Ker ∂_{n-1}
  CanonicalGroup total;
  SplitLedgerEntry ledger;
};

// Throws LedgerUnknown when the extension is not recorded as split.
PiParts compute_parts(const Family& family, const Params& params, int n, const Options& options = {});
CanonicalGroup compute_pi(const Family& family, const Params& params, int n, const Options& options = {});

// Throws InvalidArgument for parameters outside the supported range.
void validate(const Family& family, const Params& params, int n);

struct NuisanceRanges {
  std::vector<Integer> m{0};
  std::vector<Integer> t{1};
  std::vector<Integer> k_prime{0};
  std::vector<Integer> l_prime{0};
  std::vector<int> u{0};
  std::vector<int> sign{1};
  bool every_y = false;  // also range y over derive_y(r)

  static NuisanceRanges singleton() { return {}; }
  // t ∈ {1,3}; m, k′, l′ ∈ 0..3; u ∈ {0,1}; sign ±1; every admissible y.
  static NuisanceRanges full();
  std::size_t size(std::size_t y_count) const;
};

// True iff compute_pi is the same group for every nuisance tuple in range.
bool coker_invariance_sweep(const Family& family, const Params& params, int n, const NuisanceRanges& ranges);

}  // namespace a3pi::les
