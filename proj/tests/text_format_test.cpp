#include <gtest/gtest.h>

#include "asyncbool/text_format.hpp"
#include "test_support.hpp"

using namespace asyncbool;
using namespace testing_support;

namespace {

ParseErrorCode code_of(void (*fn)(std::string_view), std::string_view text) {
  try {
    fn(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseErrorCode::kSyntax;
}

void table(std::string_view t) { parse_truth_table(t); }
void rho(std::string_view t) { parse_rho(t); }
void bijection(std::string_view t) { parse_bijection(t); }
void fam(std::string_view t) { parse_family(t); }
void witness(std::string_view t) { parse_witness(t); }

}  // namespace

TEST(TruthTableFormat, DocumentedExampleParses) {
  EXPECT_EQ(parse_truth_table("n=2\n00 -> 00\n10 -> 11\n01 -> 10\n11 -> 11\n"), two_fixed_points());
  EXPECT_EQ(parse_truth_table(slurp(data_path("two_fixed_points.tt"))), two_fixed_points());
  EXPECT_EQ(render_truth_table(two_fixed_points()), "n=2\n00 -> 00\n10 -> 11\n01 -> 10\n11 -> 11\n");
}

TEST(TruthTableFormat, RowsInAnyOrderAndComments) {
  EXPECT_EQ(parse_truth_table("# c\nn=2\n\n11->11\n00 -> 00 # x\n01 -> 10\n10 -> 11\n"), two_fixed_points());
}

TEST(TruthTableFormat, RoundTripAllB2Tables) {
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto phi = table_from_index(2, idx);
    ASSERT_EQ(parse_truth_table(render_truth_table(phi)), phi);
  }
  EXPECT_EQ(parse_truth_table(render_truth_table(TruthTable::negation(4))), TruthTable::negation(4));
}

TEST(TruthTableFormat, Diagnostics) {
  try {
    parse_truth_table("n=2\n00 -> 00\n10 -> 11\n01 -> 10\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ParseErrorCode::kMissingRow);
    EXPECT_NE(std::string(e.what()).find("missing input 11"), std::string::npos);
  }
  try {
    parse_truth_table("n=2\n00 -> 00\n10 -> 11\n10 -> 10\n01 -> 10\n11 -> 11\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ParseErrorCode::kDuplicateRow);
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_EQ(code_of(table, "n=2\n00 -> 00\n10 -> 1\n01 -> 10\n11 -> 11\n"), ParseErrorCode::kWidthMismatch);
  EXPECT_EQ(code_of(table, "n=2\n00 -> 00\n10 -> 11\n01 10\n11 -> 11\n"), ParseErrorCode::kSyntax);
  EXPECT_EQ(code_of(table, "m=2\n"), ParseErrorCode::kBadHeader);
  EXPECT_EQ(code_of(table, ""), ParseErrorCode::kBadHeader);
  EXPECT_EQ(code_of(table, "n=0\n"), ParseErrorCode::kBadHeader);
}

TEST(BijectionFormat, RoundTripAndDiagnostics) {
  EXPECT_EQ(parse_bijection(slurp(data_path("swap2.bij"))), swap2());
  EXPECT_EQ(parse_bijection(render_bijection(four_cycle_h())), four_cycle_h());
  EXPECT_EQ(code_of(bijection, "n=1\n0 -> 1\n1 -> 1\n"), ParseErrorCode::kNotBijective);
}

TEST(RhoFormat, ParseAndRender) {
  const auto r = parse_rho("times: 0,1/2,1; prefix: 10; cycle: 01,11; period: 2");
  EXPECT_EQ(r.times(), (std::vector<Time>{Time(0), Time(1, 2), Time(1)}));
  EXPECT_EQ(r.masks(), LassoMaskSequence({mk("10")}, {mk("01"), mk("11")}));
  EXPECT_EQ(r.period(), Time(2));
  EXPECT_EQ(parse_rho(render_rho(r)), r);
  EXPECT_EQ(parse_rho("times: 0; cycle: 1; period: 1"), ProgressiveFunction::full_update(1));
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_rho(rng, 1 + trial % 3);
    ASSERT_EQ(parse_rho(render_rho(x)), x);
  }
}

TEST(RhoFormat, Diagnostics) {
  try {
    parse_rho("times: 0; cycle: 00; period: 1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ParseErrorCode::kNotProgressive);
    EXPECT_NE(std::string(e.what()).find("cycle not progressive"), std::string::npos);
  }
  EXPECT_EQ(code_of(rho, "times: 1,0; cycle: 1,1; period: 3"), ParseErrorCode::kNonIncreasingTimes);
  EXPECT_EQ(code_of(rho, "times: 0,1; cycle: 1,1; period: 1"), ParseErrorCode::kBadPeriod);
  EXPECT_EQ(code_of(rho, "times: 0,1; cycle: 1; period: 1"), ParseErrorCode::kCountMismatch);
  EXPECT_EQ(code_of(rho, "times: 0; cycle: 10,1; period: 1"), ParseErrorCode::kWidthMismatch);
  EXPECT_EQ(code_of(rho, "times: 0; cycle: 1"), ParseErrorCode::kSyntax);
  EXPECT_EQ(code_of(rho, "times: 0; cycle: 1; period: 0"), ParseErrorCode::kBadPeriod);
}

TEST(FamilyFormat, RoundTripAndDiagnostics) {
  const auto f = parse_family(slurp(data_path("identity_negation.fam")));
  EXPECT_EQ(f.state_width(), 1u);
  EXPECT_EQ(f.param_width(), 1u);
  EXPECT_EQ(f.member(0), TruthTable::identity(1));
  EXPECT_EQ(f.member(1), TruthTable::negation(1));
  EXPECT_EQ(parse_family(render_family(f)), f);
  EXPECT_EQ(code_of(fam, "n=1 m=1\nlambda=0\n0 -> 0\n1 -> 1\n"), ParseErrorCode::kMissingRow);
  EXPECT_EQ(code_of(fam, "n=1 m=1\nlambda=0\n0 -> 0\n1 -> 1\nlambda=0\n0 -> 0\n1 -> 1\n"),
            ParseErrorCode::kDuplicateRow);
  EXPECT_EQ(code_of(fam, "n=1\nlambda=0\n0 -> 0\n1 -> 1\n"), ParseErrorCode::kBadHeader);
}

TEST(WitnessFormat, RoundTrip) {
  const ConjugacyWitness w{four_cycle_h(), swap2()};
  EXPECT_EQ(parse_witness(slurp(data_path("four_cycle.witness"))), w);
  EXPECT_EQ(parse_witness(render_witness(w)), w);
  EXPECT_EQ(code_of(witness, "[h]\nn=1\n0 -> 0\n1 -> 1\n"), ParseErrorCode::kSyntax);
}

TEST(ParseError, MessageNamesLineAndColumn) {
  try {
    parse_truth_table("n=2\n00 -> 00\n10 -> 1x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
    EXPECT_EQ(std::string(e.what()).rfind("line 3, column ", 0), 0u);
  }
}
