#pragma once

#include "a3pi/abgroup.hpp"
#include "a3pi/integer.hpp"
#include "a3pi/spheres.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Homotopy of a wedge of one or two spheres through weight 2 of the Hilton
// decomposition, plus the Whitehead-product calculus on top of it.
namespace a3pi::wedge {

// S^{dims[0]} v S^{dims[1]}; labels name the inclusions ("j₁", "j₂").
struct Wedge {
  std::vector<int> dims;
  std::vector<std::string> labels;

  std::size_t size() const { return dims.size(); }
  friend bool operator==(const Wedge&, const Wedge&) = default;
};

// Inclusion j_i, or the Whitehead product [j_i, j_k] with i < k.
struct BasicProduct {
  enum class Kind { Inclusion, Bracket };
  Kind kind = Kind::Inclusion;
  int i = 0;
  int k = 0;

  static BasicProduct inclusion(int i) { return {Kind::Inclusion, i, i}; }
  static BasicProduct bracket(int i, int k);

  int weight() const { return kind == Kind::Inclusion ? 1 : 2; }
  // Sphere the product is defined on: d_i, or d_i + d_k - 1.
  int dimension(const Wedge& w) const;
  std::string name(const Wedge& w) const;

  friend bool operator==(const BasicProduct&, const BasicProduct&) = default;
};

// product ∘ generator
struct Symbol {
  BasicProduct product;
  spheres::SphereGenerator generator;
  std::string name;
};

struct HiltonBasis {
  Wedge wedge;
  int degree = 0;
  std::vector<Symbol> symbols;

  CanonicalGroup group() const;
  Presentation presentation() const;
  std::size_t index_of(const BasicProduct& p, std::string_view generator) const;
  std::size_t index_of(std::string_view symbol_name) const;
};

// Basis of pi_n(wedge) = sum over basic products P of P∘pi_n(S^{dim P}).
// Throws GuardViolation when a weight >= 3 basic product could contribute.
HiltonBasis hilton_basis(const Wedge& w, int n);

// Element of pi_n(wedge) in the Hilton basis, reduced modulo symbol orders.
class Element {
 public:
  Element(const Wedge& w, int n);

  // product ∘ x, with x in pi_n(S^{dim product}).
  static Element of(const Wedge& w, const BasicProduct& p, const spheres::SphereElement& x);

  const Wedge& wedge() const { return basis_->wedge; }
  int degree() const { return basis_->degree; }
  const HiltonBasis& basis() const { return *basis_; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient(std::string_view symbol_name) const;
  IntVector vector() const;
  bool is_zero() const;

  Element& add(const BasicProduct& p, const spheres::SphereElement& x);
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Integer& k, const Element& a);
  friend bool operator==(const Element& a, const Element& b);

  std::string to_string() const;

 private:
  void reduce();
  void check_same_group(const Element& other) const;

  std::shared_ptr<const HiltonBasis> basis_;
  std::vector<Integer> coeffs_;
};

Element inclusion(const Wedge& w, int i, const spheres::SphereElement& x);

// Whitehead product of two elements whose terms are inclusions composed
// with a multiple of ι or with a suspension. Bilinear; uses graded symmetry
// [a, b] = (-1)^{pq} [b, a] and the stored [ι_n, ι_n] for self-brackets.
Element whitehead_expand(const Element& left, const Element& right);

// x ∘ β for x in pi_d(wedge), β in pi_m(S^d), by the Hilton formula
// (a + b)∘β = a∘β + b∘β + [a, b]∘H(β). Needs 3d - 2 > m.
Element compose(const Element& x, const spheres::SphereElement& beta);

// (kι_n)∘α = kα + σ·C(k,2)·[ι_n, ι_n]∘H(α). The sign σ is the one fixed by
// set_distributivity_sign; throws SignUnresolved when it is needed but unset.
spheres::SphereElement degree_compose(const Integer& k, const spheres::SphereElement& alpha);
// Same law with an explicit sign, for the sign-resolution search itself.
spheres::SphereElement degree_compose(const Integer& k, const spheres::SphereElement& alpha, int sign);

// Written once, before concurrent use. Rewriting with a different value throws.
void set_distributivity_sign(int sign);
std::optional<int> distributivity_sign();

}  // namespace a3pi::wedge
