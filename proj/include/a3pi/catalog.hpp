#pragma once

#include "a3pi/abgroup.hpp"
#include "a3pi/exp.hpp"
#include "a3pi/les.hpp"

#include <optional>
#include <string>
#include <vector>

// The indecomposable 2-connected complexes of dimension <= 5, their closed
// forms for pi_6 and pi_7, and the mechanical computation of the same groups.
namespace a3pi::catalog {

enum class Kind { Sphere, Moore, ChangEta, ChangCr, ChangCs, ChangCrs };

struct ComplexSpec {
  Kind kind = Kind::Sphere;
  int n_sphere = 0;  // S^n
  int moore_k = 0;   // M^k_{2^r}, k ∈ {3, 4}
  Exp r = Exp::infinity();
  Exp s = Exp::infinity();

  static ComplexSpec sphere(int n) { return {Kind::Sphere, n, 0, Exp::infinity(), Exp::infinity()}; }
  static ComplexSpec moore(int k, Exp r) { return {Kind::Moore, 0, k, r, Exp::infinity()}; }
  static ComplexSpec chang_eta() { return {Kind::ChangEta, 0, 0, Exp::infinity(), Exp::infinity()}; }
  static ComplexSpec chang_cr(Exp r) { return {Kind::ChangCr, 0, 0, r, Exp::infinity()}; }
  static ComplexSpec chang_cs(Exp s) { return {Kind::ChangCs, 0, 0, Exp::infinity(), s}; }
  static ComplexSpec chang_crs(Exp r, Exp s) { return {Kind::ChangCrs, 0, 0, r, s}; }

  // "S^4", "M^3(r=2)", "C_eta", "C_r(r=1)", "C^s(s=3)", "C_r^s(r=1,s=inf)"
  std::string name() const;
};

inline constexpr std::uint64_t kDefaultCap = 30;

// Throws InvalidArgument when the spec or degree is outside the catalog.
void validate(const ComplexSpec& spec, int n, std::uint64_t cap = kDefaultCap);

// The published group, written out case by case.
CanonicalGroup closed_form(const ComplexSpec& spec, int n);

// The group assembled from the exact-sequence engine and cited wedge data.
CanonicalGroup compute(const ComplexSpec& spec, int n, const les::Options& options = {});

// Cited wedge summands: pi_n of the cross-term complexes C_r^8 and C^{8,s}.
CanonicalGroup cross_term_cr(Exp r, int n);
CanonicalGroup cross_term_cs(Exp s, int n);

enum class Status { Pass, Fail, Skip };

struct VerifyCell {
  ComplexSpec spec;
  int n = 0;
  Status status = Status::Skip;
  std::optional<CanonicalGroup> computed;
  std::optional<CanonicalGroup> expected;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCell> cells;
  bool ok() const;
  std::size_t count(Status s) const;
};

// Every catalog family over the given parameter values and degrees. Cells
// that validate() rejects come back as Skip, e.g. M^4 in degree 6.
// threads = 0 picks the hardware concurrency.
VerifyReport verify_sweep(const std::vector<Exp>& r_values, const std::vector<Exp>& s_values,
                          const std::vector<int>& dims, const les::Options& options = {}, unsigned threads = 0);

std::string status_name(Status s);

}  // namespace a3pi::catalog
