#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <string>

// mpz_class as an Eigen scalar. Only the ring operations are used, so
// Eigen never needs division or sqrt for it.
namespace Eigen {
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen

namespace a3pi {

using Integer = mpz_class;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

// Scalar helpers. Overloads exist for mpz_class and the builtin integers
// so every algorithm stays generic in its scalar.
inline Integer abs_value(const Integer& x) { return abs(x); }
inline long long abs_value(long long x) { return x < 0 ? -x : x; }

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(long long x) { return x == 0; }

inline int sign_of(const Integer& x) { return sgn(x); }
inline int sign_of(long long x) { return (x > 0) - (x < 0); }

// Exponent of 2 in a nonzero integer.
inline unsigned long two_adic_valuation(const Integer& x) {
  return mpz_scan1(x.get_mpz_t(), 0);
}
inline unsigned long two_adic_valuation(long long x) {
  return static_cast<unsigned long>(__builtin_ctzll(static_cast<unsigned long long>(x)));
}

inline Integer pow2(unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

// Least non-negative residue; modulus must be positive.
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }

template <typename Scalar>
Scalar scalar_from(long long v) {
  return Scalar(static_cast<long>(v));
}
template <>
inline long long scalar_from<long long>(long long v) {
  return v;
}

}  // namespace a3pi
