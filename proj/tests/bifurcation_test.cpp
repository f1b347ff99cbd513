#include <gtest/gtest.h>

#include "asyncbool/bifurcation.hpp"
#include "asyncbool/state_graph.hpp"
#include "test_support.hpp"

using namespace asyncbool;
using namespace testing_support;

namespace {

ParamFamily family(unsigned n, unsigned m, std::vector<TruthTable> members) {
  return ParamFamily(n, m, std::move(members));
}

ParamFamily identity_negation() { return family(1, 1, {TruthTable::identity(1), TruthTable::negation(1)}); }

// negation on B^2 against the four-cycle map; neither has a fixed point
ParamFamily fixed_point_free() { return family(2, 1, {TruthTable::negation(2), four_cycle_phi()}); }

}  // namespace

TEST(ParamFamily, Validation) {
  EXPECT_THROW(family(1, 1, {TruthTable::identity(1)}), UsageError);
  EXPECT_THROW(family(1, 1, {TruthTable::identity(1), TruthTable::identity(2)}), UsageError);
  EXPECT_THROW(family(1, 0, {TruthTable::identity(1)}), UsageError);
}

TEST(StructuralStability, Examples) {
  EXPECT_TRUE(family_structurally_stable(family(2, 1, {two_fixed_points(), two_fixed_points()})));
  EXPECT_FALSE(family_structurally_stable(identity_negation()));
  EXPECT_TRUE(family_structurally_stable(family(2, 1, {four_cycle_phi(), four_cycle_psi()})));
  EXPECT_FALSE(family_structurally_stable(fixed_point_free()));
  EXPECT_THROW(family_structurally_stable(family(4, 1, {TruthTable::identity(4), TruthTable::identity(4)})),
               CapabilityError);
}

TEST(BifurcationDiagram, IdentityNegation) {
  const auto d = bifurcation_diagram(identity_negation());
  EXPECT_EQ(d.classes, (std::vector<std::vector<std::uint32_t>>{{0}, {1}}));
  EXPECT_EQ(d.representatives, (std::vector<std::uint32_t>{0, 1}));
  ASSERT_EQ(d.portraits.size(), 2u);
  EXPECT_EQ(d.portraits[1], export_portrait(TruthTable::negation(1)));
  EXPECT_TRUE(d.within_class.empty());
  EXPECT_EQ(d.inequivalent, (std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}}));
}

TEST(BifurcationDiagram, ConstantFamilyHasOneClass) {
  const auto d = bifurcation_diagram(family(2, 2, std::vector<TruthTable>(4, two_fixed_points())));
  EXPECT_EQ(d.classes, (std::vector<std::vector<std::uint32_t>>{{0, 1, 2, 3}}));
  EXPECT_EQ(d.representatives, std::vector<std::uint32_t>{0});
}

TEST(BifurcationDiagram, TwoCopiesOfTwoTables) {
  const auto id = TruthTable::identity(1);
  const auto neg = TruthTable::negation(1);
  const auto d = bifurcation_diagram(family(1, 2, {neg, id, id, neg}));
  EXPECT_EQ(d.classes, (std::vector<std::vector<std::uint32_t>>{{0, 3}, {1, 2}}));
  EXPECT_EQ(d.representatives, (std::vector<std::uint32_t>{0, 1}));
}

TEST(BifurcationDiagram, WithinClassWitnessesVerify) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TruthTable> members;
    const auto base = random_table(rng, 2);
    for (int k = 0; k < 4; ++k) {
      if (rng() % 2) {
        members.push_back(random_table(rng, 2));
      } else {
        members.push_back(conjugate_table(base, random_relabelling(rng, 2).h));
      }
    }
    const auto f = family(2, 2, members);
    const auto d = bifurcation_diagram(f);
    std::size_t covered = 0;
    for (const auto& c : d.classes) covered += c.size();
    EXPECT_EQ(covered, 4u);
    for (const auto& p : d.within_class) {
      EXPECT_TRUE(check_conjugacy(f.member(p.lambda), f.member(p.lambda_prime), p.witness).equivalent);
    }
    for (const auto& [a, b] : d.inequivalent) EXPECT_FALSE(find_equivalence(f.member(a), f.member(b)).equivalent);
    EXPECT_EQ(family_structurally_stable(f), d.classes.size() == 1);
  }
}

TEST(FixedPointDiagram, Examples) {
  const auto a = fixed_point_diagram(identity_negation());
  EXPECT_EQ(a.fixed_points[0], (std::vector<State>{st("0"), st("1")}));
  EXPECT_TRUE(a.fixed_points[1].empty());
  EXPECT_FALSE(a.uninformative);

  const auto b = fixed_point_diagram(family(2, 1, {two_fixed_points(), two_fixed_points()}));
  for (const auto& fps : b.fixed_points) EXPECT_EQ(fps, (std::vector<State>{st("00"), st("11")}));
  EXPECT_FALSE(b.uninformative);

  const auto c = fixed_point_diagram(family(1, 1, {TruthTable::negation(1), TruthTable::negation(1)}));
  EXPECT_TRUE(c.fixed_points[0].empty() && c.fixed_points[1].empty());
  EXPECT_TRUE(c.uninformative);
}

TEST(FixedPointDiagram, SilentAboutAFixedPointFreeBifurcation) {
  const auto f = fixed_point_free();
  EXPECT_FALSE(family_structurally_stable(f));
  const auto d = fixed_point_diagram(f);
  EXPECT_TRUE(d.uninformative);
  EXPECT_EQ(bifurcation_diagram(f).classes.size(), 2u);
}

TEST(FamiliesEquivalent, Examples) {
  const auto f = identity_negation();
  EXPECT_EQ(families_equivalent(f, f), StateBijection::identity(1));
  const auto g = family(1, 1, {TruthTable::negation(1), TruthTable::identity(1)});
  EXPECT_EQ(families_equivalent(f, g), StateBijection(1, {1, 0}));
  const auto all_neg = family(1, 1, {TruthTable::negation(1), TruthTable::negation(1)});
  EXPECT_FALSE(families_equivalent(f, all_neg).has_value());
  EXPECT_THROW(families_equivalent(f, family(2, 1, {two_fixed_points(), two_fixed_points()})), UsageError);
}

TEST(FamiliesEquivalent, ReflexiveAndSymmetric) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<TruthTable> members;
    for (int k = 0; k < 4; ++k) members.push_back(random_table(rng, 2));
    const auto f = family(2, 2, members);
    // relabel the parameter with a random bijection and conjugate every member
    const auto relabel = random_bijection(rng, 2);
    std::vector<TruthTable> relabelled(4, TruthTable::identity(2));
    for (std::uint32_t l = 0; l < 4; ++l) {
      relabelled[relabel(l)] = conjugate_table(members[l], random_relabelling(rng, 2).h);
    }
    const auto g = family(2, 2, relabelled);
    EXPECT_TRUE(families_equivalent(f, f).has_value());
    const auto fg = families_equivalent(f, g);
    const auto gf = families_equivalent(g, f);
    ASSERT_TRUE(fg.has_value());
    ASSERT_TRUE(gf.has_value());
    for (std::uint32_t l = 0; l < 4; ++l) {
      EXPECT_TRUE(find_equivalence(f.member(l), g.member((*fg)(l))).equivalent);
      EXPECT_TRUE(find_equivalence(g.member(l), f.member((*gf)(l))).equivalent);
    }
    // the inverse of fg also relates g back to f
    const auto back = invert(*fg);
    for (std::uint32_t l = 0; l < 4; ++l) EXPECT_TRUE(find_equivalence(g.member(l), f.member(back(l))).equivalent);
  }
}
