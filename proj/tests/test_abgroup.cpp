#include "a3pi/abgroup.hpp"
#include "a3pi/errors.hpp"
#include "a3pi/exp.hpp"
#include "a3pi/smith.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace a3pi;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

std::vector<Integer> diag(const IntMatrix& M) { return smith_normal_form(M).diagonal(); }

CanonicalGroup G(std::string_view s) { return CanonicalGroup::parse(s); }

Presentation pres(std::vector<Exp> orders, IntMatrix rel) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < orders.size(); ++i) gens.push_back({"g" + std::to_string(i), orders[i]});
  return Presentation(std::move(gens), std::move(rel));
}

void check_decomposition(const IntMatrix& M) {
  const auto snf = smith_normal_form(M);
  CHECK(snf.U * M * snf.V == snf.D);
  CHECK(abs(oracle::leibniz_det(snf.U)) == 1);
  CHECK(abs(oracle::leibniz_det(snf.V)) == 1);
  CHECK(snf.U * snf.U_inv == IntMatrix::Identity(M.rows(), M.rows()));
  CHECK(snf.V * snf.V_inv == IntMatrix::Identity(M.cols(), M.cols()));
  for (Eigen::Index i = 0; i < snf.D.rows(); ++i)
    for (Eigen::Index j = 0; j < snf.D.cols(); ++j)
      if (i != j) CHECK(snf.D(i, j) == 0);
  const auto d = snf.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size()) {
      if (d[i] == 0)
        CHECK(d[i + 1] == 0);
      else
        CHECK(d[i + 1] % d[i] == 0);
    }
  }
}

}  // namespace

TEST_CASE("exp arithmetic") {
  CHECK(Exp::infinity().power() == 0);
  CHECK(Exp(5).power() == 32);
  CHECK(Exp(3) + Exp::infinity() == Exp::infinity());
  CHECK(min(Exp(3), Exp::infinity()) == Exp(3));
  CHECK(Exp::infinity().minus(4) == Exp::infinity());
  CHECK(Exp(3).minus(1) == Exp(2));
  CHECK_THROWS_AS(Exp(1).minus(2), InvalidArgument);
  CHECK(epsilon(Exp(1)) == 1);
  CHECK(epsilon(Exp(2)) == 0);
  CHECK(epsilon(Exp::infinity()) == 0);
  CHECK(Exp::parse("inf") == Exp::infinity());
  CHECK(Exp::parse("∞") == Exp::infinity());
  CHECK(Exp::parse("17") == Exp(17));
  CHECK_THROWS_AS(Exp::parse("x"), InvalidArgument);
  CHECK_THROWS_AS(Exp::infinity().value(), InvalidArgument);
}

TEST_CASE("smith normal form fixed examples") {
  CHECK(diag(mat({{0}})) == std::vector<Integer>{0});
  CHECK(diag(mat({{2, 4}, {6, 8}})) == std::vector<Integer>{2, 4});
  CHECK(diag(mat({{4, 0}, {2, 4}})) == std::vector<Integer>{2, 8});
  // Values below were produced by sympy's smith_normal_form.
  CHECK(diag(mat({{12, 18, 6}, {30, -6, 24}, {0, 9, 3}})) == std::vector<Integer>{3, 6, 156});
  CHECK(diag(mat({{3, 5, 7, 11}, {2, 4, 6, 8}, {1, 1, 1, 1}})) == std::vector<Integer>{1, 2, 2});
  CHECK(diag(mat({{64, -64}, {32, 96}, {0, 16}})) == std::vector<Integer>{16, 32});
  CHECK(diag(mat({{0, 0}, {0, 0}})) == std::vector<Integer>{0, 0});
  for (const auto& M : {mat({{0}}), mat({{2, 4}, {6, 8}}), mat({{12, 18, 6}, {30, -6, 24}, {0, 9, 3}}),
                        mat({{3, 5, 7, 11}, {2, 4, 6, 8}, {1, 1, 1, 1}}), mat({{64, -64}, {32, 96}, {0, 16}})})
    check_decomposition(M);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(20261015);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix M = oracle::random_matrix(rng, dim(rng), dim(rng), 64);
    check_decomposition(M);
    if (M.rows() == M.cols()) {
      const Integer det = oracle::leibniz_det(M);
      Integer prod = 1;
      for (const auto& d : smith_diagonal(M)) prod *= d;
      CHECK(abs(det) == prod);
    }
  }
}

TEST_CASE("smith normal form over long long agrees with mpz") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix M = oracle::random_matrix(rng, 4, 5, 20);
    Matrix<long long> L(4, 5);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 5; ++j) L(i, j) = M(i, j).get_si();
    const auto a = smith_diagonal(M);
    const auto b = smith_diagonal(L);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Integer(static_cast<long>(b[i])));
  }
}

TEST_CASE("group strings") {
  CHECK(CanonicalGroup::trivial().to_string() == "0");
  CHECK(CanonicalGroup::from(1, {3, 1, 1}).to_string() == "Z(2)^1 + Z/2^1 + Z/2^1 + Z/2^3");
  CHECK(CanonicalGroup::from(2, {}).to_string() == "Z(2)^2");
  CHECK(CanonicalGroup::from(0, {2}).to_string() == "Z/2^2");
  CHECK(CanonicalGroup::from(0, {0, 0, 2}) == CanonicalGroup::from(0, {2}));
  for (const auto& g : {CanonicalGroup::trivial(), CanonicalGroup::from(3, {1, 4}), CanonicalGroup::from(0, {2, 2})})
    CHECK(G(g.to_string()) == g);
  CHECK_THROWS_AS(G("Z/3"), InvalidArgument);
  CHECK(CanonicalGroup::cyclic(Exp(0)).is_trivial());
  CHECK(CanonicalGroup::cyclic(Exp::infinity()) == CanonicalGroup::free(1));
}

TEST_CASE("canonicalize examples") {
  // a of order 4, b free; relations (2,4) and (4,0)
  CHECK(canonicalize(pres({Exp(2), Exp::infinity()}, mat({{2, 4}, {4, 0}}))) == G("Z/2^1 + Z/2^3"));
  CHECK(canonicalize(pres({Exp::infinity(), Exp::infinity()}, mat({{4, -8, -28}, {0, 16, 64}}))) ==
        G("Z/2^2 + Z/2^4"));
  CHECK(canonicalize(pres({Exp::infinity()}, IntMatrix(1, 0))) == CanonicalGroup::free(1));
  // odd torsion disappears 2-locally
  CHECK(canonicalize(pres({Exp::infinity()}, mat({{12}}))) == G("Z/2^2"));
  CHECK(canonicalize(pres({Exp::infinity()}, mat({{15}}))).is_trivial());
}

TEST_CASE("cokernel examples") {
  const Presentation target = pres({Exp(2), Exp::infinity()}, IntMatrix(2, 0));
  auto coker = [&](long y, long two_r) {
    return canonicalize(cokernel(IntMatrix(mat({{two_r, y}, {0, two_r}})), target));
  };
  CHECK(coker(1, 2) == G("Z/2^2"));
  CHECK(coker(2, 4) == G("Z/2^1 + Z/2^3"));
  CHECK(coker(0, 8) == G("Z/2^2 + Z/2^3"));
  CHECK(coker(0, 32) == G("Z/2^2 + Z/2^5"));
  const Presentation free2 = pres({Exp::infinity(), Exp::infinity()}, IntMatrix(2, 0));
  CHECK(canonicalize(cokernel(IntMatrix(IntMatrix::Identity(2, 2)), free2)).is_trivial());
  CHECK_THROWS_AS(cokernel(IntMatrix(IntMatrix::Identity(3, 3)), free2), DimensionMismatch);
}

TEST_CASE("kernel examples") {
  // ∂₆ with source Z₂ + Z₄ + Z and target Z₄{a₂} + Z{a₄}, r = 1, y = 1
  const Presentation source = pres({Exp(1), Exp(2), Exp::infinity()}, IntMatrix(3, 0));
  const Presentation target = pres({Exp(2), Exp::infinity()}, IntMatrix(2, 0));
  const Presentation k = kernel(IntMatrix(mat({{2, 2, 1}, {0, 0, 2}})), source, target);
  CHECK(canonicalize(k) == G("Z/2^2"));
  const IntMatrix B = kernel_basis(IntMatrix(mat({{2, 2, 1}, {0, 0, 2}})), source, target);
  // (1, 1, 0) lies in the kernel lattice
  IntVector v(3);
  v << 1, 1, 0;
  IntMatrix A(3, B.cols() + 3);
  A << B, source.relation_matrix();
  CHECK(solve_integer(A, v).has_value());

  // M³ at r ≥ 2: source Z₄{Σν′} + Z{ν₄}
  const Presentation m3_source = pres({Exp(2), Exp::infinity()}, IntMatrix(2, 0));
  CHECK(canonicalize(kernel(IntMatrix(mat({{4, 2}, {0, 4}})), m3_source, target)) == G("Z/2^2"));
  CHECK(canonicalize(kernel(IntMatrix(mat({{8, 0}, {0, 8}})), m3_source, target)) == G("Z/2^2"));
  CHECK(canonicalize(kernel(IntMatrix(IntMatrix::Zero(2, 3)), source, target)) == canonicalize(source));
  CHECK_THROWS_AS(kernel(IntMatrix(mat({{1, 0, 0}, {0, 0, 0}})), source, target), IllDefinedMap);
}

TEST_CASE("direct sum and cancellation") {
  CHECK(direct_sum(G("Z/2^1"), G("Z/2^2")) == G("Z/2^1 + Z/2^2"));
  CHECK(direct_sum(CanonicalGroup::trivial(), G("Z/2^3")) == G("Z/2^3"));
  CHECK(direct_sum(G("Z(2)^1 + Z/2^2"), G("Z/2^2")) == G("Z(2)^1 + Z/2^2 + Z/2^2"));
  CHECK(cancel_summand(G("Z(2)^1 + Z/2^2 + Z/2^2 + Z/2^4"), G("Z(2)^1 + Z/2^2")) == G("Z/2^2 + Z/2^4"));
  CHECK(cancel_summand(G("Z/2^2"), CanonicalGroup::trivial()) == G("Z/2^2"));
  CHECK_THROWS_AS(cancel_summand(G("Z/2^2"), G("Z/2^1")), NotASummand);
  CHECK_THROWS_AS(cancel_summand(G("Z/2^2"), G("Z(2)^1")), NotASummand);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(0, 5), k(0, 2);
  for (int i = 0; i < 200; ++i) {
    const auto a = CanonicalGroup::from(k(rng), {std::uint64_t(e(rng)), std::uint64_t(e(rng))});
    const auto b = CanonicalGroup::from(k(rng), {std::uint64_t(e(rng)), std::uint64_t(e(rng)), std::uint64_t(e(rng))});
    CHECK(cancel_summand(direct_sum(a, b), b) == a);
  }
}

TEST_CASE("splitting criterion") {
  CHECK(splitting_check(G("Z/2^1"), 2, true) == SplitVerdict::Split);
  CHECK(splitting_check(G("Z/2^3"), 1, true) == SplitVerdict::Inconclusive);
  CHECK(splitting_check(G("Z/2^1"), 2, false) == SplitVerdict::Inconclusive);
  CHECK(splitting_check(CanonicalGroup::trivial(), 0, true) == SplitVerdict::Split);
  CHECK_THROWS(splitting_check(G("Z(2)^1"), 3, true));
}

TEST_CASE("canonical form agrees with coset enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> gens(1, 4), extra(0, 3);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int m = gens(rng);
    const IntMatrix R = oracle::random_matrix(rng, m, m + extra(rng), 6);
    const auto brute = oracle::enumerate_quotient(R, 4096);
    if (!brute) continue;
    ++compared;
    std::vector<Generator> g(static_cast<std::size_t>(m), Generator{"x", Exp::infinity()});
    CHECK(canonicalize(Presentation(g, R)) == *brute);
  }
  CHECK(compared > 100);
}

TEST_CASE("canonical form is invariant under unimodular moves") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix R = oracle::random_matrix(rng, 4, 5, 16);
    std::vector<Generator> g(4, Generator{"x", Exp::infinity()});
    const auto before = canonicalize(Presentation(g, R));
    for (int step = 0; step < 10; ++step) {
      const int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
      if (i != j) R.row(i) += coef(rng) * R.row(j);  // change of generators
      R.row(0).swap(R.row(static_cast<int>(rng() % 4)));
      R.col(0).swap(R.col(static_cast<int>(rng() % 5)));
    }
    CHECK(canonicalize(Presentation(g, R)) == before);
  }
}

TEST_CASE("orders multiply along kernel and image") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> e(1, 4), c(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Exp> so{Exp(e(rng)), Exp(e(rng)), Exp(e(rng))}, to{Exp(e(rng)), Exp(e(rng))};
    IntMatrix f(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto need = to[i].value() > so[j].value() ? to[i].value() - so[j].value() : 0;
        f(i, j) = c(rng) * pow2(need);
      }
    const auto source = pres(so, IntMatrix(3, 0));
    const auto target = pres(to, IntMatrix(2, 0));
    const auto ker = canonicalize(kernel(f, source, target));
    const auto coker = canonicalize(cokernel(f, target));
    const auto image_log = oracle::log2_order(canonicalize(target)) - oracle::log2_order(coker);
    CHECK(oracle::log2_order(canonicalize(source)) == oracle::log2_order(ker) + image_log);
  }
}
