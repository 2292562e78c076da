#include "support.hpp"

#include "pmcone/peaking.hpp"
#include "pmcone/random.hpp"

#include <gtest/gtest.h>

using namespace pmcone;
using namespace pmcone::test;

namespace {

ProbeSet random_probes(Rng &rng, const SpacePtr &x, const SpacePtr &y, std::size_t count,
                       const ConeFamily &family = ConeFamily::pm()) {
  ProbeSet probes;
  for (std::size_t i = 0; i < count; ++i) {
    probes.domain.push_back(family.is_lpmk() ? random_lpmk_member(rng, x, family.k())
                                             : random_pseudometric(rng, x));
    probes.codomain.push_back(family.is_lpmk() ? random_lpmk_member(rng, y, family.k())
                                               : random_pseudometric(rng, y));
  }
  return probes;
}

Pseudometric peaked(const Pseudometric &seed, PointId x, PointId y) {
  return seed + build_peaking(seed, x, y).rho;
}

} // namespace

TEST(ConeFamily, ParseAndMembership) {
  EXPECT_EQ(ConeFamily::parse("pm"), ConeFamily::pm());
  EXPECT_EQ(ConeFamily::parse("lpm"), ConeFamily::lpm());
  EXPECT_EQ(ConeFamily::parse("lpmk:3/2").k(), Rational(3, 2));
  EXPECT_EQ(ConeFamily::parse("lpmk:3/2").to_string(), "lpmk:3/2");
  EXPECT_THROW(ConeFamily::parse("lpmk:0"), Error);
  EXPECT_THROW(ConeFamily::parse("lpmk:x"), Error);
  EXPECT_THROW(ConeFamily::parse("upm"), Error);

  const SpacePtr s = path3();
  EXPECT_TRUE(ConeFamily::lpmk(Rational(2)).contains(Pseudometric::base(s)));
  EXPECT_FALSE(ConeFamily::lpmk(Rational(1)).contains(Pseudometric::base(s)));
  EXPECT_TRUE(ConeFamily::pm().contains(Pseudometric::base(s).scaled(Rational(100))));
}

TEST(Bijection, Validation) {
  EXPECT_THROW(Bijection::create({0, 0}), Error);
  EXPECT_THROW(Bijection::create({0, 2}), Error);
  const Bijection b = Bijection::create({2, 0, 1});
  EXPECT_EQ(b.preimage(2), 0u);
  EXPECT_EQ(b.inverted().images(), (std::vector<PointId>{1, 2, 0}));
}

TEST(Compose, IdentityIsIdentity) {
  const SpacePtr s = path3();
  auto oracle = compose(s, s, Bijection::identity(3), ConeFamily::pm());
  const Pseudometric d = pm(s, mat({{"0", "1/2", "1"}, {"1/2", "0", "1"}, {"1", "1", "0"}}));
  EXPECT_EQ(oracle.forward(d), d);
  EXPECT_EQ(oracle.inverse(d), d);
  EXPECT_EQ(oracle.queries_used(), 2u);
}

TEST(Compose, ReflectionOfThePath) {
  const SpacePtr s = path3();
  auto oracle = compose(s, s, Bijection::create({2, 1, 0}), ConeFamily::lpmk(Rational(2)));
  const Pseudometric d = pm(s, mat({{"0", "1/2", "1"}, {"1/2", "0", "1"}, {"1", "1", "0"}}));
  const Pseudometric image = oracle.forward(d);
  EXPECT_EQ(image.values(), mat({{"0", "1", "1"}, {"1", "0", "1/2"}, {"1", "1/2", "0"}}));
  EXPECT_EQ(lip_constant(image), lip_constant(d));
  EXPECT_EQ(oracle.inverse(image), d);
}

TEST(Compose, LpmkMismatchIsLazy) {
  const SpacePtr y = path3();
  const SpacePtr x = space({"a", "b", "c"}, mat({{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}}));
  // phi sends the path's end points to a pair at distance 1
  auto oracle = compose(x, y, Bijection::identity(3), ConeFamily::lpmk(Rational(1)));
  const Pseudometric in_cone = Pseudometric::base(x).scaled(Rational(9, 10));
  EXPECT_NO_THROW(oracle.forward(Pseudometric::zero(x)));
  EXPECT_NO_THROW(oracle.forward(in_cone)); // 9/10 everywhere, lip 9/10 on the path
  EXPECT_THROW(oracle.inverse(Pseudometric::base(y).scaled(Rational(9, 10))), FamilyMismatch);
  EXPECT_THROW(oracle.forward(Pseudometric::base(x)), NotInCone);
}

TEST(Compose, RejectsMismatchedSizes) {
  EXPECT_THROW(compose(discrete(2), discrete(3), Bijection::identity(3), ConeFamily::pm()), SpaceMismatch);
}

TEST(Oracle, BudgetIsEnforced) {
  const SpacePtr s = discrete(2);
  auto oracle = compose(s, s, Bijection::identity(2), ConeFamily::pm(), 2);
  oracle.forward(Pseudometric::zero(s));
  oracle.forward(Pseudometric::zero(s));
  EXPECT_THROW(oracle.forward(Pseudometric::zero(s)), BudgetExhausted);
  EXPECT_THROW(check_norm_preserving(oracle, {}), BudgetExhausted);
}

TEST(Oracle, WrongSpaceIsRejected) {
  auto oracle = compose(discrete(3), path3(), Bijection::identity(3), ConeFamily::pm());
  EXPECT_THROW(oracle.forward(Pseudometric::zero(path3())), SpaceMismatch);
}

TEST(Checks, CompositionPassesEverything) {
  Rng rng(7);
  const SpacePtr y = random_space(rng, 5, 16, "y");
  const SpacePtr x = random_space(rng, 5, 16, "x");
  auto oracle = compose(x, y, random_bijection(rng, 5), ConeFamily::pm());
  const ProbeSet probes = random_probes(rng, x, y, 20);
  EXPECT_TRUE(check_norm_preserving(oracle, probes).passed());
  EXPECT_TRUE(check_scalar_preserving(oracle, probes, {Rational(0), Rational(1, 2), Rational(1)}).passed());

  ProbeSet pp;
  for (std::size_t i = 0; i < 5; ++i) {
    pp.domain.push_back(peaked(probes.domain[i], 0, i == 0 ? 1 : i));
    pp.codomain.push_back(peaked(probes.codomain[i], 0, i == 0 ? 1 : i));
  }
  pp.domain.push_back(Pseudometric::zero(x));
  const CheckReport r = check_pp_preserving(oracle, pp);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.evaluations, 10u);
  EXPECT_EQ(r.skipped.size(), 1u); // the zero probe is not in Pp
}

TEST(Checks, ScalarsOutsideUnitIntervalAreRejected) {
  const SpacePtr s = discrete(2);
  auto oracle = compose(s, s, Bijection::identity(2), ConeFamily::pm());
  EXPECT_THROW(check_scalar_preserving(oracle, {}, {Rational(2)}), Error);
  EXPECT_THROW(check_scalar_preserving(oracle, {}, {Rational(-1, 2)}), Error);
}

TEST(BrokenOracles, Names) {
  for (const char *n : {"constant-shift", "squaring", "probe-permutation", "peak-flattening"})
    EXPECT_EQ(std::string(to_string(*parse_broken_kind(n))), n);
  EXPECT_FALSE(parse_broken_kind("honest").has_value());
}

TEST(BrokenOracles, ConstantShiftFailsNorm) {
  const SpacePtr s = path3();
  auto oracle = make_broken_oracle(BrokenKind::ConstantShift, s, s, Bijection::identity(3), ConeFamily::pm());
  const CheckReport r = check_norm_preserving(*oracle, {{Pseudometric::base(s)}, {}});
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations.front().probe, 0u); // already T(0) != 0
  EXPECT_EQ(r.violations.front().observed, Rational(1));
}

TEST(BrokenOracles, SquaringFailsScalar) {
  // on the path the square of d_Z breaks the triangle inequality; discrete stays valid
  const SpacePtr s = discrete(3);
  auto oracle = make_broken_oracle(BrokenKind::Squaring, s, s, Bijection::identity(3), ConeFamily::pm());
  const CheckReport r = check_scalar_preserving(*oracle, {{Pseudometric::base(s)}, {}}, {Rational(1, 2)});
  ASSERT_FALSE(r.passed());
  EXPECT_TRUE(r.violations.front().pair.has_value());
  EXPECT_EQ(r.violations.front().observed, Rational(1, 4)); // (1/2)^2
  EXPECT_EQ(r.violations.front().expected, Rational(1, 2));
}

TEST(BrokenOracles, SquaringOnThePathIsAnOracleFault) {
  const SpacePtr s = path3();
  auto oracle = make_broken_oracle(BrokenKind::Squaring, s, s, Bijection::identity(3), ConeFamily::pm());
  EXPECT_THROW(oracle->forward(Pseudometric::base(s)), OracleFault);
}

TEST(BrokenOracles, ProbePermutationFailsScalar) {
  Rng rng(3);
  const SpacePtr s = random_space(rng, 5);
  auto oracle = make_broken_oracle(BrokenKind::ProbePermutation, s, s, Bijection::identity(5), ConeFamily::pm());
  const ProbeSet probes = random_probes(rng, s, s, 10);
  EXPECT_TRUE(check_norm_preserving(*oracle, probes).passed());
  EXPECT_FALSE(check_scalar_preserving(*oracle, probes, {Rational(1, 3), Rational(1, 2)}).passed());
}

TEST(BrokenOracles, PeakFlatteningFailsPp) {
  const SpacePtr s = path3();
  auto oracle = make_broken_oracle(BrokenKind::PeakFlattening, s, s, Bijection::identity(3), ConeFamily::pm());
  const Pseudometric p = peaked(Pseudometric::zero(s), 0, 1);
  const CheckReport r = check_pp_preserving(*oracle, {{p}, {p}});
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.violations.size(), 2u);
}

class OperatorProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(OperatorProperties, CompositionRoundTripsAndPreserves) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(2, 6));
    const SpacePtr y = random_space(rng, n, 16, "y");
    const SpacePtr x = random_space(rng, n, 16, "x");
    auto oracle = compose(x, y, random_bijection(rng, n), ConeFamily::pm());
    const ProbeSet probes = random_probes(rng, x, y, 6);
    for (const auto &d : probes.domain) EXPECT_EQ(oracle.inverse(oracle.forward(d)), d);
    for (const auto &r : probes.codomain) EXPECT_EQ(oracle.forward(oracle.inverse(r)), r);
    EXPECT_TRUE(check_norm_preserving(oracle, probes).passed());
    EXPECT_TRUE(check_scalar_preserving(oracle, probes, {Rational(1, 4), Rational(2, 3)}).passed());
    ProbeSet pp;
    for (const auto &d : probes.domain) pp.domain.push_back(peaked(d, 0, 1));
    for (const auto &r : probes.codomain) pp.codomain.push_back(peaked(r, 0, n - 1));
    EXPECT_TRUE(check_pp_preserving(oracle, pp).passed());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OperatorProperties, ::testing::Values(31u, 32u, 33u, 34u, 35u));
