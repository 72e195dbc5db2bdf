#pragma once

#include "a3pi/abgroup.hpp"
#include "a3pi/exp.hpp"
#include "a3pi/integer.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// 2-local pi_m(S^n) for 2 <= n <= 8 and stems 0..4, read from the embedded
// table in data/sphere_groups.txt. Nothing here is computed; every value
// is a cited table entry.
namespace a3pi::spheres {

struct SphereGenerator {
  std::string name;
  int sphere = 0;  // n
  int degree = 0;  // m
  Exp order;
};

struct SphereGroup {
  int sphere = 0;
  int degree = 0;
  std::vector<SphereGenerator> basis;
  std::string citation;

  CanonicalGroup group() const;
  // Position of a basis generator; throws UnknownRelation if absent.
  std::size_t index_of(std::string_view name) const;
};

// Element of pi_m(S^n) in the table basis. Coefficients are kept reduced
// modulo each generator's order.
class SphereElement {
 public:
  SphereElement(int sphere, int degree);

  // c times the named generator.
  static SphereElement of(std::string_view generator, const Integer& c = 1);

  int sphere() const { return sphere_; }
  int degree() const { return degree_; }
  const SphereGroup& group() const;
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient(std::string_view generator) const;
  bool is_zero() const;

  SphereElement& add(std::string_view generator, const Integer& c);
  SphereElement& operator+=(const SphereElement& other);
  SphereElement& operator-=(const SphereElement& other);

  friend SphereElement operator+(SphereElement a, const SphereElement& b) { return a += b; }
  friend SphereElement operator-(SphereElement a, const SphereElement& b) { return a -= b; }
  friend SphereElement operator*(const Integer& k, const SphereElement& a);
  friend bool operator==(const SphereElement& a, const SphereElement& b);

  // Signed representatives, e.g. "4ν₄ - Σν′"; "0" for zero.
  std::string to_string() const;

 private:
  void reduce();

  int sphere_;
  int degree_;
  std::vector<Integer> coeffs_;
};

// Throws OutOfRange outside the stored range; m < n gives the trivial group.
const SphereGroup& pi_sphere(int n, int m);

bool has_generator(std::string_view name);
const SphereGenerator& generator(std::string_view name);

// Suspension E: pi_m(S^n) -> pi_{m+1}(S^{n+1}).
SphereElement suspend(const SphereElement& x);
// The generator whose suspension is exactly this generator, if any.
std::optional<std::string> desuspension(std::string_view generator);
bool is_suspension(std::string_view generator);

// Second James-Hopf invariant H: pi_m(S^n) -> pi_m(S^{2n-1}). Zero on
// suspensions; otherwise only stored values are known.
SphereElement hopf_invariant(std::string_view generator);
SphereElement hopf_invariant(const SphereElement& x);

// Stored composite such as "η₃∘ν₄" or "[ι₄,ι₄]". Throws UnknownRelation.
SphereElement relation_lookup(std::string_view expr);
std::string relation_citation(std::string_view expr);

// outer ∘ inner where outer is a generator of pi_m(S^n) and inner lies in
// pi_k(S^m). Left composition is additive, so this is linear in inner.
SphereElement compose(std::string_view outer, const SphereElement& inner);
// outer ∘ inner with inner a suspension generator (right composition with a
// suspension is additive). Throws UnsupportedShape otherwise.
SphereElement compose(const SphereElement& outer, std::string_view inner);

// Name of the identity class of S^n, e.g. "ι₄".
std::string iota(int n);

// Raw text of the embedded table.
std::string_view table_source();

}  // namespace a3pi::spheres
