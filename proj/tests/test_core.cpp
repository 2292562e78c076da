#include "support.hpp"

#include "pmcone/random.hpp"

#include <gtest/gtest.h>

using namespace pmcone;
using namespace pmcone::test;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
  EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
  EXPECT_EQ(Rational(4, 2).to_string(), "2");
  EXPECT_EQ(Rational::parse("-6/8"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("17"), Rational(17));
  EXPECT_EQ(Rational(6, 8).numerator(), "3");
  EXPECT_EQ(Rational(6, 8).denominator(), "4");
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char *bad : {"", "1/", "/2", "1/0", "1.5", "a", "1/-2", "1//2", " 1"})
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, ExactArithmetic) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1) / Rational(3) - third, Rational(0));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational::inverse_power_of_two(10), Rational(1, 1024));
  EXPECT_EQ(abs(Rational(-5, 7)), Rational(5, 7));
}

TEST(Rational, FingerprintIsStable) {
  EXPECT_EQ(Rational(1, 2).fingerprint(), Rational(2, 4).fingerprint());
  EXPECT_NE(Rational(1, 2).fingerprint(), Rational(1, 3).fingerprint());
}

TEST(Space, RejectsInvalidBaseMetrics) {
  EXPECT_THROW(space({"a", "b"}, mat({{"0", "0"}, {"0", "0"}})), AxiomViolation);
  EXPECT_THROW(space({"a", "b"}, mat({{"0", "1"}, {"2", "0"}})), AxiomViolation);
  EXPECT_THROW(space({"a", "a"}, mat({{"0", "1"}, {"1", "0"}})), Error);
  EXPECT_THROW(space({}, Matrix(0)), Error);
  EXPECT_THROW(space({"a", "b", "c"}, mat({{"0", "1"}, {"1", "0"}})), AxiomViolation);
  EXPECT_THROW(space({"a", "b", "c"}, mat({{"0", "1", "3"}, {"1", "0", "1"}, {"3", "1", "0"}})),
               AxiomViolation);
}

TEST(Space, LookupAndDescribe) {
  const SpacePtr s = path3();
  EXPECT_EQ(s->index_of("q"), 1u);
  EXPECT_FALSE(s->find("zz").has_value());
  EXPECT_THROW(s->index_of("zz"), Error);
  EXPECT_EQ(s->diameter(), Rational(2));
  EXPECT_EQ(s->describe(Doubleton(2, 0)), "{p,r}");
}

TEST(Doubleton, CanonicalOrder) {
  EXPECT_EQ(Doubleton(3, 1), Doubleton(1, 3));
  EXPECT_EQ(Doubleton(3, 1).first(), 1u);
  EXPECT_THROW(Doubleton(2, 2), DegeneratePair);
  EXPECT_EQ(all_doubletons(4).size(), 6u);
}

TEST(ValidatePseudometric, DiscreteIsValid) {
  const SpacePtr s = discrete(3);
  const Pseudometric d = pm(s, s->base_metric());
  EXPECT_EQ(sup_norm(d), Rational(1));
}

TEST(ValidatePseudometric, TriangleWitness) {
  const SpacePtr s = discrete(3);
  try {
    validate_pseudometric(s, mat({{"0", "1", "3"}, {"1", "0", "1"}, {"3", "1", "0"}}));
    FAIL() << "expected a triangle violation";
  } catch (const AxiomViolation &v) {
    EXPECT_EQ(v.kind(), AxiomKind::Triangle);
    EXPECT_EQ(v.witness(), (std::array<PointId, 3>{0, 1, 2}));
  }
}

TEST(ValidatePseudometric, ZeroMatrixIsValid) {
  const SpacePtr s = discrete(4);
  EXPECT_TRUE(validate_pseudometric(s, Matrix(4)).is_zero());
}

TEST(ValidatePseudometric, EachAxiomKind) {
  const SpacePtr s = discrete(2);
  auto kind_of = [&](const Matrix &m) {
    try {
      validate_pseudometric(s, m);
    } catch (const AxiomViolation &v) {
      return v.kind();
    }
    ADD_FAILURE() << "no violation";
    return AxiomKind::Dimension;
  };
  EXPECT_EQ(kind_of(mat({{"1", "0"}, {"0", "0"}})), AxiomKind::NonzeroDiagonal);
  EXPECT_EQ(kind_of(mat({{"0", "1"}, {"2", "0"}})), AxiomKind::Asymmetry);
  EXPECT_EQ(kind_of(mat({{"0", "-1"}, {"-1", "0"}})), AxiomKind::Negative);
  EXPECT_EQ(kind_of(Matrix(3)), AxiomKind::Dimension);
}

TEST(SupNorm, Examples) {
  const SpacePtr s = path3();
  EXPECT_EQ(sup_norm(Pseudometric::zero(s)), Rational(0));
  const Pseudometric d = pm(s, mat({{"0", "2", "1"}, {"2", "0", "2"}, {"1", "2", "0"}}));
  EXPECT_EQ(sup_norm(d), Rational(2));
  EXPECT_EQ(sup_norm(d.scaled(Rational(3, 7))), Rational(6, 7));
}

TEST(LipConstant, Examples) {
  const SpacePtr s = path3();
  EXPECT_EQ(lip_constant(Pseudometric::base(s)), Rational(1));
  EXPECT_EQ(lip_constant(pm(s, mat({{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}}))), Rational(1));
  EXPECT_EQ(lip_constant(Pseudometric::zero(s)), Rational(0));
  const SpacePtr single = space({"a"}, mat({{"0"}}));
  EXPECT_THROW(lip_constant(Pseudometric::zero(single)), DegenerateSpace);
}

TEST(Maximizers, Examples) {
  const SpacePtr s = discrete(3);
  const Pseudometric two = pm(s, mat({{"0", "2", "1"}, {"2", "0", "2"}, {"1", "2", "0"}}));
  EXPECT_EQ(maximizer_doubletons(two), (std::set<Doubleton>{{0, 1}, {1, 2}}));
  const Pseudometric one = pm(s, mat({{"0", "2", "1"}, {"2", "0", "1"}, {"1", "1", "0"}}));
  EXPECT_EQ(maximizer_doubletons(one), (std::set<Doubleton>{{0, 1}}));
  EXPECT_EQ(maximizer_doubletons(one.scaled(Rational(5, 3))), maximizer_doubletons(one));
  EXPECT_THROW(maximizer_doubletons(Pseudometric::zero(s)), ZeroPseudometric);
}

TEST(ConeReport, Examples) {
  const SpacePtr s = path3();
  const ConeReport base = cone_report(Pseudometric::base(s), Rational(2));
  EXPECT_EQ(base.lip, Rational(1));
  EXPECT_TRUE(base.in_lpmk);
  EXPECT_TRUE(base.is_admissible);
  EXPECT_TRUE(base.in_pp); // unique diameter pair {p,r}

  const ConeReport boundary = cone_report(Pseudometric::base(s).scaled(Rational(3)), Rational(3));
  EXPECT_FALSE(boundary.in_lpmk);
  EXPECT_TRUE(boundary.in_lpmk_closure);

  const ConeReport zero = cone_report(Pseudometric::zero(s), Rational(1));
  EXPECT_TRUE(zero.maximizers.empty());
  EXPECT_FALSE(zero.in_pp);
  EXPECT_FALSE(zero.is_admissible);
  EXPECT_THROW(cone_report(Pseudometric::zero(s), Rational(0)), Error);
}

TEST(DOfF, Examples) {
  const SpacePtr s = path3();
  const Pseudometric d = d_of_F(s, {{Rational(0), Rational(1), Rational(3)}});
  EXPECT_EQ(d.values(), mat({{"0", "1", "3"}, {"1", "0", "2"}, {"3", "2", "0"}}));
  EXPECT_TRUE(d_of_F(s, {{Rational(5), Rational(5), Rational(5)}}).is_zero());
  const std::vector<Rational> f{Rational(1, 2), Rational(-2), Rational(7, 3)};
  std::vector<Rational> neg;
  for (const auto &v : f) neg.push_back(-v);
  EXPECT_EQ(d_of_F(s, {f, neg}), d_of_F(s, {f}));
  EXPECT_THROW(d_of_F(s, {}), EmptyFamily);
  EXPECT_THROW(d_of_F(s, {{Rational(1)}}), Error);
}

TEST(PerturbToAdmissible, Example) {
  const SpacePtr s = path3(); // ‖d_Z‖ = 2
  const Perturbation p = perturb_to_admissible(Pseudometric::zero(s), Rational(1), Rational(1));
  EXPECT_EQ(p.delta, Rational(1, 4));
  EXPECT_EQ(p.result, Pseudometric::base(s).scaled(Rational(1, 4)));
  EXPECT_THROW(perturb_to_admissible(Pseudometric::base(s), Rational(1), Rational(1)), NotInLPMk);
  EXPECT_THROW(perturb_to_admissible(Pseudometric::zero(s), Rational(1), Rational(0)), Error);
}

TEST(ShrinkIntoLpmk, Example) {
  const SpacePtr s = path3();
  const Perturbation p = shrink_into_lpmk(Pseudometric::base(s), Rational(1));
  EXPECT_EQ(p.delta, Rational(1, 4));
  EXPECT_EQ(p.result, Pseudometric::base(s).scaled(Rational(3, 4)));
  EXPECT_EQ(lip_constant(p.result), Rational(3, 4));
  EXPECT_THROW(shrink_into_lpmk(Pseudometric::zero(s), Rational(1)), ZeroPseudometric);
}

TEST(SeparationRadius, Example) {
  const SpacePtr s = path3();
  const SeparationWitness w = separation_radius(Pseudometric::base(s).scaled(Rational(2)), Rational(1));
  EXPECT_EQ(w.pair, Doubleton(0, 2));
  EXPECT_EQ(w.radius, s->distance(0, 2));
  EXPECT_THROW(separation_radius(Pseudometric::base(s), Rational(1)), InClosure);
}

// Property tests over generated instances.

class CoreProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CoreProperties, FunctionalsAgreeWithBruteForce) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    const SpacePtr s = random_space(rng, static_cast<std::size_t>(rng.between(2, 7)));
    const Pseudometric d = random_pseudometric(rng, s);
    ASSERT_TRUE(brute_is_pseudometric(d.values()));
    EXPECT_EQ(sup_norm(d), brute_sup(d.values()));
    EXPECT_EQ(lip_constant(d), brute_lip(d));
    if (!d.is_zero()) {
      EXPECT_EQ(maximizer_doubletons(d).size(), brute_count_maximizers(d.values()));
      const Rational t(rng.between(1, 20), rng.between(1, 20));
      EXPECT_EQ(maximizer_doubletons(d.scaled(t)), maximizer_doubletons(d));
    }
    const Rational t(rng.between(0, 20), rng.between(1, 20));
    EXPECT_EQ(sup_norm(d.scaled(t)), t * sup_norm(d));
    EXPECT_EQ(lip_constant(d.scaled(t)), t * lip_constant(d));

    // lip <= k  <=>  d <= k·d_Z everywhere
    const Rational k(rng.between(1, 30), rng.between(1, 10));
    bool dominated = true;
    for (PointId i = 0; i < s->size(); ++i)
      for (PointId j = 0; j < s->size(); ++j) dominated = dominated && d(i, j) <= k * s->distance(i, j);
    EXPECT_EQ(lip_constant(d) <= k, dominated);

    const Pseudometric e = random_pseudometric(rng, s);
    EXPECT_TRUE(brute_is_pseudometric((d + e).values()));
    EXPECT_TRUE(brute_is_pseudometric(d.pointwise_max(e).values()));
    EXPECT_TRUE(brute_is_pseudometric(d.truncated(t).values()));
  }
}

TEST_P(CoreProperties, DOfFIsAlwaysAPseudometric) {
  Rng rng(GetParam() + 1000);
  for (int trial = 0; trial < 40; ++trial) {
    const SpacePtr s = random_space(rng, static_cast<std::size_t>(rng.between(1, 7)));
    std::vector<std::vector<Rational>> family(static_cast<std::size_t>(rng.between(1, 4)));
    for (auto &f : family)
      for (std::size_t p = 0; p < s->size(); ++p) f.emplace_back(rng.between(-30, 30), rng.between(1, 16));
    const Pseudometric d = d_of_F(s, family);
    EXPECT_TRUE(brute_is_pseudometric(d.values()));
    EXPECT_NO_THROW(validate_pseudometric(s, d.values()));
  }
}

TEST_P(CoreProperties, DensityConstructions) {
  Rng rng(GetParam() + 2000);
  for (int trial = 0; trial < 40; ++trial) {
    const SpacePtr s = random_space(rng, static_cast<std::size_t>(rng.between(2, 6)));
    const Pseudometric d = random_pseudometric(rng, s);
    const Rational eps(rng.between(1, 10), rng.between(1, 10));
    const Rational lip = lip_constant(d);

    const Rational k = lip + Rational(rng.between(1, 5), rng.between(1, 5));
    const Perturbation p = perturb_to_admissible(d, k, eps);
    EXPECT_TRUE(is_admissible(p.result));
    EXPECT_LT(lip_constant(p.result), k);
    EXPECT_LE(lip_constant(p.result), (k + lip) / Rational(2));
    EXPECT_LE(sup_abs(difference(p.result, d)), eps);

    if (!d.is_zero()) {
      const Perturbation q = shrink_into_lpmk(d, eps);
      EXPECT_LT(lip_constant(q.result), lip);
      EXPECT_LT(sup_abs(difference(q.result, d)), eps);
      EXPECT_EQ(lip_constant(q.result), (Rational(1) - q.delta) * lip);

      const Rational below = lip * Rational(rng.between(1, 9), 10);
      const SeparationWitness w = separation_radius(d, below);
      EXPECT_GT(w.radius, Rational(0));
      EXPECT_EQ(w.radius, d(w.pair) - below * s->distance(w.pair.first(), w.pair.second()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CoreProperties, ::testing::Values(1u, 2u, 3u, 4u, 5u));
