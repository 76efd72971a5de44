#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "catalog_fixture.hpp"
#include "fhknot/codes.hpp"
#include "oracles/braid_codes.hpp"

using namespace fhknot;

namespace {

Errc error_of(std::string_view text) {
  try {
    parse_gauss_code(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return Errc::malformed_input;
}

}  // namespace

TEST(Parse, Trefoil) {
  const auto c = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(c.crossing_count(), 3);
  EXPECT_EQ(c.size(), 6u);
  EXPECT_EQ(c[0], (Passage{Strand::over, 1, +1}));
  EXPECT_EQ(c[3], (Passage{Strand::under, 1, +1}));
  EXPECT_EQ(c.positions(2), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(c.first_strand(2), Strand::under);
}

TEST(Parse, EmptyIsTrivialKnot) {
  const auto c = parse_gauss_code("");
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(c.crossing_count(), 0);
  EXPECT_EQ(serialize(c), "");
  EXPECT_EQ(writhe(c), 0);
}

TEST(Parse, WhitespaceCommentsAndUnicodeMinus) {
  const auto c = parse_gauss_code("  O1\xE2\x88\x92\tU1\xE2\x88\x92  # a kink-free test\n");
  EXPECT_EQ(serialize(c), "O1- U1-");
}

TEST(Parse, LabelsAreNormalizedByFirstAppearance) {
  const auto c = parse_gauss_code("U7- O42+ O7- U42+");
  EXPECT_EQ(serialize(c), "U1- O2+ O1- U2+");
  EXPECT_EQ(c, parse_gauss_code("U1- O2+ O1- U2+"));
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_of("O1+ X2+"), Errc::malformed_token);
  EXPECT_EQ(error_of("O1* U1+"), Errc::malformed_token);
  EXPECT_EQ(error_of("O+ U+"), Errc::malformed_token);
  EXPECT_EQ(error_of("O0+ U0+"), Errc::malformed_token);
  EXPECT_EQ(error_of("O1a+ U1+"), Errc::malformed_token);
  EXPECT_EQ(error_of("O1+"), Errc::label_count_not_two);
  EXPECT_EQ(error_of("O1+ U1+ O1+ U1+"), Errc::label_count_not_two);
  EXPECT_EQ(error_of("O1+ U2+ U1+"), Errc::label_count_not_two);
  EXPECT_EQ(error_of("O1+ O1+"), Errc::over_under_mismatch);
  EXPECT_EQ(error_of("U1- U1-"), Errc::over_under_mismatch);
  EXPECT_EQ(error_of("O1+ U1-"), Errc::sign_mismatch);
}

TEST(Parse, ErrorMessageNamesTheToken) {
  try {
    parse_gauss_code("O1+ Q1+");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("Q1+"), std::string::npos);
    EXPECT_EQ(std::string(e.what()).rfind("MalformedToken", 0), 0u);
  }
}

TEST(Serialize, RoundTripOnCatalog) {
  for (const auto& e : fixture::catalog()) {
    const auto text = serialize(e.code);
    EXPECT_EQ(parse_gauss_code(text), e.code) << e.name;
    EXPECT_EQ(serialize(parse_gauss_code(text)), text) << e.name;
  }
  EXPECT_EQ(serialize(fixture::trefoil()), "O1+ U2+ O3+ U1+ O2+ U3+");
}

TEST(Serialize, RoundTripOnRandomCodes) {
  for (const auto& c : oracle::random_knot_codes(200, 11)) {
    EXPECT_EQ(parse_gauss_code(serialize(c)), c);
  }
}

TEST(Writhe, StandardFramings) {
  EXPECT_EQ(writhe(fixture::trefoil()), 3);
  EXPECT_EQ(writhe(fixture::left_trefoil()), -3);
  EXPECT_EQ(writhe(fixture::figure_eight()), 0);
}

TEST(CrossingChange, TrefoilDropsWritheByTwo) {
  EXPECT_EQ(writhe(crossing_change(fixture::trefoil(), 1)), 1);
}

TEST(CrossingChange, InvolutionAndCommutation) {
  for (const auto& c : oracle::random_knot_codes(100, 12)) {
    for (int a = 1; a <= c.crossing_count(); ++a) {
      EXPECT_EQ(crossing_change(crossing_change(c, a), a), c);
      EXPECT_EQ(writhe(crossing_change(c, a)), writhe(c) - 2 * c.sign(a));
      for (int b = a + 1; b <= c.crossing_count(); ++b) {
        EXPECT_EQ(crossing_change(crossing_change(c, a), b), crossing_change(crossing_change(c, b), a));
      }
    }
  }
}

TEST(CrossingChange, UnknownLabel) {
  try {
    crossing_change(fixture::trefoil(), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_label);
  }
  EXPECT_THROW(crossing_change(fixture::trefoil(), 0), Error);
}

TEST(Resolve, Trefoil) {
  const auto& t = fixture::trefoil();
  EXPECT_EQ(resolve(t, {{1, +1}, {2, +1}, {3, +1}}), t);
  const auto left = resolve(t, {{1, -1}, {2, -1}, {3, -1}});
  EXPECT_EQ(writhe(left), -3);
  EXPECT_EQ(left, mirror(t));
}

TEST(Resolve, FigureEightAllChosenNegative) {
  const auto& f = fixture::figure_eight();
  std::map<int, Sign> neg;
  for (int l : fixture::figure_eight_chosen) neg[l] = -1;
  EXPECT_EQ(writhe(resolve(f, neg)), -4);
}

TEST(Resolve, RejectsUnknownLabelAndBadSign) {
  EXPECT_THROW(resolve(fixture::trefoil(), {{7, +1}}), Error);
  EXPECT_THROW(resolve(fixture::trefoil(), {{1, 0}}), Error);
}

TEST(Catalog, ShippedEntries) {
  std::set<std::string> names;
  for (const auto& e : fixture::catalog()) names.insert(e.name);
  for (const auto* required : {"unknot", "3_1+", "3_1-", "4_1", "5_2"}) EXPECT_TRUE(names.count(required)) << required;
}

TEST(Catalog, ParseErrorsCarryLineNumbers) {
  try {
    parse_catalog("# header\nok\tO1+ U1+\t0\t0\nbad\tO1+ U1-\t0\t0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::sign_mismatch);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_catalog("x\tO1+ U1+\t0\n"), Error);
  EXPECT_THROW(parse_catalog("x\tO1+ U1+\tzero\t0\n"), Error);
}
