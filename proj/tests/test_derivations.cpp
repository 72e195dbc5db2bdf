#include "a3pi/derivations.hpp"
#include "a3pi/wedge.hpp"

#include <doctest.h>

using namespace a3pi;
using namespace a3pi::derivations;

namespace {
CanonicalGroup G(std::string_view s) { return CanonicalGroup::parse(s); }
}  // namespace

TEST_CASE("y table") {
  CHECK(derive_y(Exp(1)).values == std::vector<Integer>{1, 3});
  CHECK(derive_y(Exp(2)).values == std::vector<Integer>{2});
  for (unsigned r = 3; r <= 10; ++r) CHECK(derive_y(Exp(r)).values == std::vector<Integer>{0});
  CHECK(derive_y(Exp::infinity()).values == std::vector<Integer>{0});
  CHECK(derive_y(Exp(2)).parameter == "y");
  CHECK(derive_y(Exp(2)).trace.size() > 2);
}

TEST_CASE("a and b") {
  CHECK(derive_ab(Exp(1)).a == 1);
  CHECK(derive_ab(Exp(1)).b == 0);
  for (unsigned r = 2; r <= 10; ++r) {
    CHECK(derive_ab(Exp(r)).a == 0);
    CHECK(derive_ab(Exp(r)).b == 0);
  }
  CHECK(derive_ab(Exp::infinity()).a == 0);
  CHECK(derive_ab(Exp::infinity()).b == 0);
}

TEST_CASE("distributivity sign") {
  const auto res = search_signs();
  CHECK(res.sign == 1);
  CHECK(res.rejected == std::vector<int>{-1});
  CHECK(resolve_signs().sign == 1);
  CHECK(&resolve_signs() == &resolve_signs());
  // The rejected branch gives (2ι₄)ν₄ = Σν′ and fails the doubling identity.
  const auto nu = spheres::SphereElement::of("ν₄");
  CHECK(wedge::degree_compose(2, nu, -1) == spheres::SphereElement::of("Σν′"));
  CHECK_FALSE(wedge::degree_compose(2, wedge::degree_compose(2, nu, -1), -1) == wedge::degree_compose(4, nu, -1));
}

TEST_CASE("elimination of the unknown coefficients") {
  CHECK(lemma45_target(3) == G("Z/2^1 + Z/2^1 + Z/2^2 + Z/2^3 + Z/2^4"));
  const std::size_t expected_survivors[] = {12, 12, 12, 15};
  const int min_alpha[] = {0, 1, 2, 2};
  for (int s = 1; s <= 4; ++s) {
    const auto res = lemma45_elimination(s);
    CHECK(res.alpha_s == std::min(2, s - 1));
    CHECK(res.survivors.size() == expected_survivors[s - 1]);
    CHECK(res.survivors == res.engine_survivors);
    CHECK(res.forced);
    int lo = 100;
    for (const auto& t : res.survivors) {
      CHECK(t.u_prime == 0);
      CHECK(t.z == 0);
      CHECK(t.beta >= s);
      lo = std::min(lo, t.alpha);
    }
    CHECK(lo == min_alpha[s - 1]);
    const auto wrong = lemma45_elimination(s, std::nullopt, direct_sum(lemma45_target(s), G("Z/2^1")));
    CHECK(wrong.survivors.empty());
  }
}

TEST_CASE("closed form for the top cokernel") {
  CHECK(lemma47_closed_form(Exp(1), Exp(1)) == G("Z/2^2 + Z/2^3"));
  CHECK(lemma47_closed_form(Exp(3), Exp(2)) == G("Z/2^2 + Z/2^3 + Z/2^4"));
  CHECK(lemma47_closed_form(Exp::infinity(), Exp(2)) == G("Z/2^2 + Z/2^3 + Z/2^4"));
  for (unsigned r = 1; r <= 6; ++r)
    for (unsigned s = 1; s <= 6; ++s) CHECK(lemma47_check(Exp(r), Exp(s)).holds);
  CHECK(lemma47_check(Exp::infinity(), Exp(3)).holds);
  CHECK(lemma47_check(Exp(3), Exp::infinity()).holds);
}
