#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "combi/lstructure.hpp"

#include <numeric>

using namespace cqe;

TEST_CASE("universe construction for n = 3") {
  LStructure X = build_X(3);
  CHECK(X.universe == std::vector<std::uint32_t>{0b001, 0b010, 0b100, 0b111});
  LStructure Y = build_Y(3);
  CHECK(Y.universe == std::vector<std::uint32_t>{0b000, 0b011, 0b101, 0b110});
}

TEST_CASE("sizes are 2^(n-1)") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(build_X(n).size() == (size_t{1} << (n - 1)));
    CHECK(build_Y(n).size() == (size_t{1} << (n - 1)));
  }
}

TEST_CASE("both families are symmetric with recorded witnesses") {
  for (int n = 2; n <= 6; ++n) {
    SymmetryReport rx = is_symmetric(build_X(n));
    CHECK(rx.symmetric);
    SymmetryReport ry = is_symmetric(build_Y(n));
    CHECK(ry.symmetric);
  }
  CHECK(is_symmetric(build_Y(4)).symmetric);
}

TEST_CASE("asymmetric structures are refuted") {
  LStructure s;
  s.n = 2;
  s.universe = {0, 1};
  s.profile = {0b01, 0b00};  // P1 = {e0}, P2 = {}
  CHECK_FALSE(is_symmetric(s).symmetric);
}

TEST_CASE("the toggle map witnesses the (n-1)-reduct isomorphism") {
  LStructure X = build_X(3), Y = build_Y(3);
  auto phi = find_reduct_iso(X, Y, {1, 2});
  REQUIRE(phi.has_value());
  // Expected toggle-top-bit images: {1}->{1,3}, {2}->{2,3}, {3}->{}, {1,2,3}->{1,2}.
  std::vector<std::uint32_t> expected{0b101, 0b110, 0b000, 0b011};
  for (size_t e = 0; e < X.size(); ++e) CHECK(Y.universe[(*phi)[e]] == expected[e]);
}

TEST_CASE("reducts are isomorphic for every (n-1)-subset of indices") {
  for (int n = 2; n <= 6; ++n) {
    LStructure X = build_X(n), Y = build_Y(n);
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    for (int drop = 1; drop <= n; ++drop) {
      std::vector<int> keep;
      for (int i : all)
        if (i != drop) keep.push_back(i);
      CHECK(find_reduct_iso(X, Y, keep).has_value());
    }
  }
}

TEST_CASE("the full signatures are not isomorphic") {
  LStructure X = build_X(3), Y = build_Y(3);
  CHECK_FALSE(find_reduct_iso(X, Y, {1, 2, 3}).has_value());
  IsoCertificate c3 = full_iso_certificate(X, Y);
  CHECK_FALSE(c3.isomorphic);
  CHECK(c3.by_intersection);
  IsoCertificate c4 = full_iso_certificate(build_X(4), build_Y(4));
  CHECK_FALSE(c4.isomorphic);
  CHECK(c4.by_intersection);
  IsoCertificate self = full_iso_certificate(X, X);
  CHECK(self.isomorphic);
  REQUIRE(self.witness.has_value());
}

TEST_CASE("exhaustive search agrees with the certificates for n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    LStructure X = build_X(n), Y = build_Y(n);
    CHECK_FALSE(brute_force_iso(X, Y).has_value());
    CHECK(brute_force_iso(X, X).has_value());
  }
}

TEST_CASE("the toggle map is an involution on subsets") {
  for (int n = 2; n <= 6; ++n) {
    std::uint32_t top = 1u << (n - 1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
      CHECK(((mask ^ top) ^ top) == mask);
  }
}
