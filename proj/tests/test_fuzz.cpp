#include "pmcone/fuzz.hpp"
#include "pmcone/random.hpp"

#include <gtest/gtest.h>

using namespace pmcone;

TEST(Fuzz, ZeroTrialsPass) {
  FuzzOptions opt;
  opt.trials = 0;
  const FuzzSummary s = run_fuzz(opt);
  EXPECT_TRUE(s.passed());
  EXPECT_EQ(s.peaking.passed, 0u);
}

TEST(Fuzz, AllSuitesPassOnHonestInputs) {
  for (const char *family : {"pm", "lpmk:1", "lpmk:5/2"}) {
    FuzzOptions opt;
    opt.trials = 40;
    opt.max_points = 6;
    opt.seed = 123;
    opt.family = ConeFamily::parse(family);
    const FuzzSummary s = run_fuzz(opt);
    EXPECT_TRUE(s.passed()) << family << "\n" << s.report();
    EXPECT_EQ(s.peaking.passed, 40u);
    EXPECT_EQ(s.extension.passed, 40u);
    EXPECT_EQ(s.reconstruction.passed, 40u);
  }
}

TEST(Fuzz, ReportIndependentOfJobCount) {
  FuzzOptions opt;
  opt.trials = 24;
  opt.max_points = 5;
  opt.seed = 5;
  opt.break_extension = true;
  const std::string one = run_fuzz(opt).report();
  opt.jobs = 4;
  EXPECT_EQ(run_fuzz(opt).report(), one);
}

TEST(Fuzz, FaultInjectionIsCaught) {
  FuzzOptions opt;
  opt.trials = 50;
  opt.max_points = 6;
  opt.break_extension = true;
  const FuzzSummary s = run_fuzz(opt);
  EXPECT_FALSE(s.passed());
  EXPECT_GT(s.extension.failed, 0u);
  EXPECT_EQ(s.reconstruction.failed, 0u);
  EXPECT_NE(s.report().find("fault injection"), std::string::npos);
}

TEST(Fuzz, RejectsTinySpaces) {
  FuzzOptions opt;
  opt.max_points = 1;
  EXPECT_THROW(run_fuzz(opt), Error);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, BelowStaysInRange) {
  Rng rng(3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
  for (int i = 0; i < 200; ++i) {
    const auto v = rng.between(-3, 4);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 4);
  }
}

TEST(Generators, ProduceValidObjects) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(2, 8));
    const SpacePtr s = random_space(rng, n);
    EXPECT_EQ(s->size(), n);
    const Pseudometric d = random_pseudometric(rng, s);
    EXPECT_TRUE(ConeFamily::pm().contains(d));
    const Rational k(static_cast<long>(rng.between(1, 4)), 2);
    EXPECT_TRUE(ConeFamily::lpmk(k).contains(random_lpmk_member(rng, s, k)));
    const Bijection b = random_bijection(rng, n);
    const SpacePtr x = transport_space(*s, b, "x");
    for (PointId i = 0; i < n; ++i)
      for (PointId j = 0; j < n; ++j) EXPECT_EQ(x->distance(b(i), b(j)), s->distance(i, j));
    const auto sub = random_subset(rng, n);
    EXPECT_FALSE(sub.empty());
    EXPECT_TRUE(std::is_sorted(sub.begin(), sub.end()));
  }
  EXPECT_EQ(all_bijections(4).size(), 24u);
}
