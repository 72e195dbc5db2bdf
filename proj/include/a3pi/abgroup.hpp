#pragma once

#include "a3pi/errors.hpp"
#include "a3pi/exp.hpp"
#include "a3pi/integer.hpp"
#include "a3pi/smith.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace a3pi {

// Isomorphism type of a finitely generated 2-local abelian group:
// Z_(2)^free_rank plus Z/2^e for each torsion exponent (ascending, e >= 1).
struct CanonicalGroup {
  std::uint64_t free_rank = 0;
  std::vector<std::uint64_t> torsion_exponents;

  static CanonicalGroup trivial() { return {}; }
  static CanonicalGroup free(std::uint64_t rank) { return {rank, {}}; }
  // Z_{2^e}: trivial for e = 0, Z_(2) for e = inf.
  static CanonicalGroup cyclic(Exp e);
  // Sorts and drops zero exponents.
  static CanonicalGroup from(std::uint64_t free_rank, std::vector<std::uint64_t> exponents);

  bool is_trivial() const { return free_rank == 0 && torsion_exponents.empty(); }
  bool is_finite() const { return free_rank == 0; }
  // log2 of the order; throws on infinite groups.
  std::uint64_t log2_order() const;
  // Largest torsion exponent, 0 for torsion-free groups.
  std::uint64_t max_exponent() const;

  // "Z(2)^k + Z/2^e + ..." or "0".
  std::string to_string() const;
  static CanonicalGroup parse(std::string_view text);

  friend bool operator==(const CanonicalGroup&, const CanonicalGroup&) = default;
};

CanonicalGroup direct_sum(const CanonicalGroup& a, const CanonicalGroup& b);
CanonicalGroup direct_sum(std::initializer_list<CanonicalGroup> parts);

// G with the summands of S removed, by multiset difference of cyclic factors
// (Krull-Schmidt). Throws NotASummand when S does not occur in G.
CanonicalGroup cancel_summand(const CanonicalGroup& g, const CanonicalGroup& s);

enum class SplitVerdict { Split, Inconclusive };

// Split when every element of the finite group b1 has order <= 2^s and the
// comparison sequence is known to split; the test is one-directional.
SplitVerdict splitting_check(const CanonicalGroup& b1, std::uint64_t s, bool bottom_split);

struct Generator {
  std::string name;
  Exp order;  // inf for a free generator
};

// Generators with orders plus extra relations, one relation per column.
template <typename Scalar>
class BasicPresentation {
 public:
  BasicPresentation() = default;
  explicit BasicPresentation(std::vector<Generator> generators)
      : generators_(std::move(generators)), relations_(generators_.size(), 0) {}
  BasicPresentation(std::vector<Generator> generators, Matrix<Scalar> relations)
      : generators_(std::move(generators)), relations_(std::move(relations)) {
    if (relations_.rows() != static_cast<Eigen::Index>(generators_.size()))
      throw DimensionMismatch("relation length " + std::to_string(relations_.rows()) + " != generator count " +
                              std::to_string(generators_.size()));
  }

  Eigen::Index size() const { return static_cast<Eigen::Index>(generators_.size()); }
  const std::vector<Generator>& generators() const { return generators_; }
  const Matrix<Scalar>& relations() const { return relations_; }

  void add_relation(const Vector<Scalar>& column) {
    if (column.rows() != size())
      throw DimensionMismatch("relation length " + std::to_string(column.rows()) + " != generator count " +
                              std::to_string(size()));
    relations_.conservativeResize(size(), relations_.cols() + 1);
    relations_.col(relations_.cols() - 1) = column;
  }

  // Order relations 2^e * g first, then the explicit relations.
  Matrix<Scalar> relation_matrix() const {
    std::vector<Eigen::Index> finite;
    for (Eigen::Index i = 0; i < size(); ++i)
      if (generators_[i].order.is_finite()) finite.push_back(i);
    Matrix<Scalar> R = Matrix<Scalar>::Zero(size(), static_cast<Eigen::Index>(finite.size()) + relations_.cols());
    for (std::size_t k = 0; k < finite.size(); ++k)
      R(finite[k], static_cast<Eigen::Index>(k)) = two_to<Scalar>(generators_[finite[k]].order.value());
    R.rightCols(relations_.cols()) = relations_;
    return R;
  }

  template <typename S>
  static S two_to(std::uint64_t e) {
    if constexpr (std::is_same_v<S, Integer>) {
      return pow2(e);
    } else {
      if (e >= 8 * sizeof(S) - 1) throw OutOfRange("2^" + std::to_string(e) + " overflows the scalar");
      return S(1) << e;
    }
  }

 private:
  std::vector<Generator> generators_;
  Matrix<Scalar> relations_;
};

using Presentation = BasicPresentation<Integer>;

template <typename Scalar>
CanonicalGroup canonicalize(const BasicPresentation<Scalar>& p) {
  const auto diag = smith_diagonal(p.relation_matrix());
  std::uint64_t nonzero = 0;
  std::vector<std::uint64_t> exps;
  for (const auto& d : diag) {
    if (is_zero(d)) continue;
    ++nonzero;
    exps.push_back(two_adic_valuation(d));  // odd part is a unit 2-locally
  }
  return CanonicalGroup::from(static_cast<std::uint64_t>(p.size()) - nonzero, std::move(exps));
}

// Target with the columns of f added as relations.
template <typename Scalar>
BasicPresentation<Scalar> cokernel(const Matrix<Scalar>& f, const BasicPresentation<Scalar>& target) {
  if (f.rows() != target.size())
    throw DimensionMismatch("map has " + std::to_string(f.rows()) + " rows, target has " +
                            std::to_string(target.size()) + " generators");
  Matrix<Scalar> rel(target.size(), target.relations().cols() + f.cols());
  rel << target.relations(), f;
  return BasicPresentation<Scalar>(target.generators(), std::move(rel));
}

namespace detail {

template <typename Scalar>
void check_well_defined(const Matrix<Scalar>& f, const BasicPresentation<Scalar>& source,
                        const BasicPresentation<Scalar>& target) {
  if (f.rows() != target.size() || f.cols() != source.size())
    throw DimensionMismatch("map is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + ", expected " +
                            std::to_string(target.size()) + "x" + std::to_string(source.size()));
  const Matrix<Scalar> Rt = target.relation_matrix();
  const Matrix<Scalar> image = f * source.relation_matrix();
  for (Eigen::Index j = 0; j < image.cols(); ++j) {
    if (Rt.cols() == 0 ? !image.col(j).isZero() : !solve_integer(Rt, image.col(j)).has_value())
      throw IllDefinedMap("map does not respect source relation " + std::to_string(j));
  }
}

template <typename Scalar>
std::string combination_name(const Vector<Scalar>& v, const std::vector<Generator>& gens) {
  std::string out;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    if (is_zero(v(i))) continue;
    const bool neg = sign_of(v(i)) < 0;
    const Scalar mag = abs_value(v(i));
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mag != Scalar(1)) {
      if constexpr (std::is_same_v<Scalar, Integer>)
        out += mag.get_str();
      else
        out += std::to_string(mag);
    }
    out += gens[static_cast<std::size_t>(i)].name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

// Columns: integer vectors over the source generators whose classes
// generate the kernel of the induced map source -> target.
template <typename Scalar>
Matrix<Scalar> kernel_basis(const Matrix<Scalar>& f, const BasicPresentation<Scalar>& source,
                            const BasicPresentation<Scalar>& target) {
  detail::check_well_defined(f, source, target);
  const Matrix<Scalar> Rt = target.relation_matrix();
  Matrix<Scalar> A(f.rows(), f.cols() + Rt.cols());
  A << f, -Rt;
  const Matrix<Scalar> solutions = integer_kernel(A);
  const Matrix<Scalar> preimages = solutions.topRows(f.cols());
  if (preimages.cols() == 0) return Matrix<Scalar>(f.cols(), 0);
  return lattice_basis(preimages);
}

// Presentation of {x in source : f(x) = 0 in target}.
template <typename Scalar>
BasicPresentation<Scalar> kernel(const Matrix<Scalar>& f, const BasicPresentation<Scalar>& source,
                                 const BasicPresentation<Scalar>& target) {
  const Matrix<Scalar> B = kernel_basis(f, source, target);
  std::vector<Generator> gens;
  for (Eigen::Index j = 0; j < B.cols(); ++j)
    gens.push_back({detail::combination_name<Scalar>(B.col(j), source.generators()), Exp::infinity()});
  // The source relations lie in the kernel lattice; rewrite them in its basis.
  const Matrix<Scalar> Rs = source.relation_matrix();
  Matrix<Scalar> rel(B.cols(), Rs.cols());
  for (Eigen::Index j = 0; j < Rs.cols(); ++j) {
    auto c = B.cols() == 0 ? std::optional<Vector<Scalar>>(Vector<Scalar>(0)) : solve_integer(B, Rs.col(j));
    if (!c) throw IllDefinedMap("source relation outside the kernel lattice");
    rel.col(j) = *c;
  }
  return BasicPresentation<Scalar>(std::move(gens), std::move(rel));
}

}  // namespace a3pi
