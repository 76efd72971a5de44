#include <gtest/gtest.h>

#include <algorithm>

#include "catalog_fixture.hpp"
#include "fhknot/invariants.hpp"
#include "oracles/braid_codes.hpp"
#include "oracles/jones.hpp"

using namespace fhknot;

namespace {

std::vector<SignedGaussCode> all_resolutions(const SignedGaussCode& c) {
  std::vector<SignedGaussCode> out;
  const int n = c.crossing_count();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::map<int, Sign> asg;
    for (int k = 0; k < n; ++k) asg[k + 1] = (mask >> k) & 1u ? -1 : 1;
    out.push_back(resolve(c, asg));
  }
  return out;
}

}  // namespace

TEST(CountMatchings, Basics) {
  const ArrowPattern empty{CanonicalWord{}, {}};
  EXPECT_EQ(count_matchings(fixture::trefoil(), empty), 1);
  EXPECT_EQ(count_matchings(parse_gauss_code(""), formulas::v2().terms[0].pattern), 0);
  EXPECT_EQ(count_matchings(fixture::trefoil(), formulas::v2().terms[0].pattern), 1);
  // Crossings 1 and 3 are met over first, crossing 2 under.
  EXPECT_EQ(count_matchings(fixture::trefoil(), make_pattern({1, 1}, "O")), 2);
  EXPECT_EQ(count_matchings(fixture::trefoil(), make_pattern({1, 1}, "U")), 1);
  EXPECT_THROW(make_pattern({1, 2, 1, 2}, "O"), Error);
}

TEST(CountMatchings, WeightsBySignProduct) {
  EXPECT_EQ(count_matchings(fixture::left_trefoil(), make_pattern({1, 1}, "O")), -2);
  EXPECT_EQ(count_matchings(fixture::left_trefoil(), make_pattern({1, 1}, "U")), -1);
  EXPECT_EQ(count_matchings(fixture::left_trefoil(), formulas::v2().terms[0].pattern), 1);
}

TEST(V2V3, KnownValues) {
  EXPECT_EQ(v2(fixture::trefoil()), 1);
  EXPECT_EQ(v2(fixture::left_trefoil()), 1);
  EXPECT_EQ(v2(fixture::figure_eight()), -1);
  EXPECT_EQ(v2(fixture::knot("unknot")), 0);
  EXPECT_EQ(v3(fixture::trefoil()), 1);
  EXPECT_EQ(v3(fixture::left_trefoil()), -1);
  EXPECT_EQ(v3(fixture::figure_eight()), 0);
  EXPECT_EQ(v3(fixture::knot("unknot")), 0);
}

TEST(V2V3, CatalogExpectedValues) {
  for (const auto& e : fixture::catalog()) {
    EXPECT_EQ(v2(e.code), e.expected_v2) << e.name;
    EXPECT_EQ(v3(e.code), e.expected_v3) << e.name;
  }
}

TEST(V2V3, JonesOracleOnCatalogResolutions) {
  for (const auto& e : fixture::catalog()) {
    for (const auto& c : all_resolutions(e.code)) {
      const auto j = oracle::jones_v2_v3(c);
      EXPECT_EQ(v2(c), j.v2) << serialize(c);
      EXPECT_EQ(v3(c), j.v3) << serialize(c);
    }
  }
}

TEST(V2V3, JonesOracleOnRandomBraids) {
  for (const auto& c : oracle::random_knot_codes(400, 41, 4, 9)) {
    const auto j = oracle::jones_v2_v3(c);
    EXPECT_EQ(v2(c), j.v2) << serialize(c);
    EXPECT_EQ(v3(c), j.v3) << serialize(c);
  }
}

TEST(V2V3, JonesOracleSanity) {
  // V(right trefoil) = t + t^3 - t^4.
  EXPECT_EQ(oracle::jones(fixture::trefoil()), (oracle::Laurent{{1, 1}, {3, 1}, {4, -1}}));
  EXPECT_EQ(oracle::jones(fixture::figure_eight()), (oracle::Laurent{{-2, 1}, {-1, -1}, {0, 1}, {1, -1}, {2, 1}}));
}

TEST(V2V3, MirrorParity) {
  for (const auto& c : oracle::random_knot_codes(200, 42)) {
    EXPECT_EQ(v2(mirror(c)), v2(c));
    EXPECT_EQ(v3(mirror(c)), -v3(c));
  }
}

TEST(V2V3, InvariantAlongFHCycle) {
  for (const auto& c : oracle::random_knot_codes(100, 43)) {
    auto x = c;
    for (int k = 0; k < 2 * c.crossing_count(); ++k) {
      x = fh_move_on_code(x);
      EXPECT_EQ(v2(x), v2(c)) << serialize(x);
      EXPECT_EQ(v3(x), v3(c)) << serialize(x);
    }
  }
}

TEST(Conway, Values) {
  EXPECT_EQ(conway_a2(fixture::trefoil()), 1);
  EXPECT_EQ(conway_a2(fixture::knot("unknot")), 0);
  EXPECT_EQ(conway_a2(fixture::figure_eight()), -1);
  EXPECT_EQ(conway_polynomial(fixture::trefoil()), (ZPolynomial{1, 0, 1}));
  EXPECT_EQ(conway_polynomial(fixture::figure_eight()), (ZPolynomial{1, 0, -1}));
  EXPECT_EQ(conway_polynomial(fixture::knot("5_1")), (ZPolynomial{1, 0, 3, 0, 1}));
}

TEST(Conway, EqualsV2OnCatalogResolutions) {
  for (const auto& e : fixture::catalog()) {
    for (const auto& c : all_resolutions(e.code)) EXPECT_EQ(conway_a2(c), v2(c)) << serialize(c);
  }
}

TEST(Conway, EqualsV2OnRandomBraids) {
  for (const auto& c : oracle::random_knot_codes(300, 44, 4, 9)) EXPECT_EQ(conway_a2(c), v2(c)) << serialize(c);
}

TEST(Conway, Budget) {
  try {
    conway_a2(fixture::knot("5_2_kinked"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::recursion_budget_exceeded);
  }
}

TEST(VInvariant, Examples) {
  const auto t = v_invariant(fixture::trefoil());
  EXPECT_EQ(t, (InvariantReport{1, 1, 3, 3}));
  EXPECT_EQ(v_invariant(fixture::knot("unknot")).v, 0);
  EXPECT_EQ(v_invariant(fixture::left_trefoil()).v, -3);
  EXPECT_EQ(v_invariant(fixture::figure_eight()).v, 0);
  for (const auto& c : oracle::random_knot_codes(50, 45)) {
    const auto r = v_invariant(c);
    EXPECT_EQ(r.v, 6 * r.v3 - r.w * r.v2);
  }
}

TEST(Dnv, WorkedAnchors) {
  EXPECT_EQ(dnv(fixture::trefoil(), {1, 2, 3}), 6);
  EXPECT_EQ(dnv(fixture::figure_eight(), fixture::figure_eight_chosen), 2);
  EXPECT_EQ(d3v_predicted(fixture::trefoil(), {1, 2, 3}), 6);
  EXPECT_EQ(d3v_predicted(fixture::figure_eight(), fixture::figure_eight_chosen), 2);
}

TEST(Dnv, TypeIAnchorOnKinkedTwistKnot) {
  const auto& k = fixture::knot("5_2_kinked");
  EXPECT_TRUE(respects(k, std::vector<int>{1, 2, 3}, anchors::type_i));
  EXPECT_EQ(cycle_type(k, std::vector<int>{1, 2, 3}), CycleType::type_i);
  EXPECT_EQ(dnv(k, {1, 2, 3}), -2);
  EXPECT_EQ(d3v_predicted(k, {1, 2, 3}), -2);
}

TEST(Dnv, FourCrossingsVanishOnCatalog) {
  for (const auto& e : fixture::catalog()) {
    for (const auto& L : label_subsets(e.code.crossing_count(), 4)) EXPECT_EQ(dnv(e.code, L), 0) << e.name;
  }
}

TEST(Dnv, SymmetricUnderPermutation) {
  const auto& k = fixture::knot("5_2_kinked");
  for (const auto& L : label_subsets(k.crossing_count(), 3)) {
    auto p = L;
    const auto base = dnv(k, p);
    while (std::next_permutation(p.begin(), p.end())) EXPECT_EQ(dnv(k, p), base);
  }
}

TEST(Dnv, MatchesPredictionOnEveryCatalogSubset) {
  for (const auto& e : fixture::catalog()) {
    for (const auto& L : label_subsets(e.code.crossing_count(), 3)) {
      EXPECT_EQ(dnv(e.code, L), d3v_predicted(e.code, L)) << e.name << " {" << L[0] << L[1] << L[2] << "}";
    }
  }
}

TEST(Dnv, MatchesPredictionOnRandomBraids) {
  std::map<CycleType, int> seen;
  for (const auto& c : oracle::random_knot_codes(120, 46, 4, 7)) {
    for (const auto& L : label_subsets(c.crossing_count(), 3)) {
      ++seen[cycle_type(c, L)];
      ASSERT_EQ(dnv(c, L), d3v_predicted(c, L)) << serialize(c);
    }
    for (const auto& L : label_subsets(std::min(c.crossing_count(), 6), 4)) ASSERT_EQ(dnv(c, L), 0) << serialize(c);
  }
  for (auto t : {CycleType::type_i, CycleType::type_ii, CycleType::type_iii, CycleType::other}) {
    EXPECT_GT(seen[t], 0) << to_string(t);
  }
}

TEST(Dnv, Errors) {
  try {
    dnv(fixture::trefoil(), {1, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_label);
  }
  EXPECT_THROW(dnv(fixture::trefoil(), {1, 1}), Error);
  try {
    d3v_predicted(fixture::trefoil(), {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::wrong_chord_count);
  }
  EXPECT_EQ(dnv(fixture::trefoil(), std::vector<int>{}), v_invariant(fixture::trefoil()).v);
}
