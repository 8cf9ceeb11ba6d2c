#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "phc/codes.hpp"
#include "phc/montecarlo.hpp"

using namespace phc;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.m = 3;
  cfg.q = 3;
  cfg.N = 22;
  cfg.M = 16;
  cfg.trials = 400;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST(SplitMix, ReferenceOutput) {
  // first outputs of the published SplitMix64 generator seeded with 0
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(g.next(), 0x6E789E6AA1B965F4ull);
}

TEST(SplitMix, Deterministic) {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_EQ(SplitMix64::derive(5, 3), SplitMix64::derive(5, 3));
  EXPECT_NE(SplitMix64::derive(5, 3), SplitMix64::derive(5, 4));
}

TEST(SplitMix, BelowStaysInRangeAndCoversIt) {
  SplitMix64 g(9);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = g.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW(g.below(0), InvalidArgument);
}

TEST(Family, RejectsEmptyAndMalformed) {
  EXPECT_THROW(SubsetFamily(3, 3, {}), InvalidArgument);
  EXPECT_THROW(SubsetFamily(4, 3, {0b0011}), InvalidArgument);
  EXPECT_THROW(SubsetFamily(4, 3, {0b110001}), InvalidArgument);
  EXPECT_THROW(SubsetFamily::all(30, 3), InvalidArgument);
}

TEST(Family, AllSubsets) {
  const SubsetFamily a = SubsetFamily::all(6, 3);
  EXPECT_EQ(a.size(), 20u);
  EXPECT_TRUE(a.contains(0b000111));
  EXPECT_FALSE(a.contains(0b001111));
}

TEST(Family, SeparatedSetsOfSumCode) {
  const SubsetFamily a = SubsetFamily::separated_sets(parse_code_spec("sum:z3"));
  EXPECT_EQ(a.m(), 9u);
  EXPECT_EQ(a.size(), 66u);
}

TEST(MonteCarlo, SingleSetFamilyMeetsBound) {
  const ExperimentConfig cfg = small_config();
  const MonteCarloReport r = mc_friendly_check(cfg, SubsetFamily(3, 3, {0b111}));
  EXPECT_EQ(r.friendly_probability, Rational(2, 9));
  EXPECT_EQ(r.subsets, 560);
  EXPECT_EQ(r.expected, Rational(560) * rpow(Rational(7, 9), 22));
  EXPECT_TRUE(r.bound_condition);
  EXPECT_TRUE(r.variance_exact);
  EXPECT_LE(r.empirical_mean, static_cast<double>(r.expected) + kMcStandardErrors * r.standard_error);
  EXPECT_TRUE(r.within_3se);
  EXPECT_EQ(r.target_size, 6u);
}

TEST(MonteCarlo, SingleCodeword) {
  // N = 1, A = all subsets: unfriendly means some symbol repeats among the q words
  ExperimentConfig cfg;
  cfg.m = 5;
  cfg.q = 3;
  cfg.N = 1;
  cfg.M = 12;
  cfg.trials = 300;
  cfg.seed = 11;
  const MonteCarloReport r = mc_friendly_check(cfg, SubsetFamily::all(5, 3));
  const Rational distinct(5 * 4 * 3, 125);
  EXPECT_EQ(r.expected, Rational(binomial(12, 3)) * (1 - distinct));
  EXPECT_TRUE(r.within_3se) << "z = " << r.z_score;
  // with M > m every trial repeats some symbol
  for (auto u : r.unfriendly_per_trial) EXPECT_GT(u, 0u);
}

TEST(MonteCarlo, AnalyticVarianceMatchesSample) {
  ExperimentConfig cfg = small_config();
  cfg.N = 8;
  cfg.trials = 2000;
  const MonteCarloReport r = mc_friendly_check(cfg, SubsetFamily(3, 3, {0b111}));
  ASSERT_TRUE(r.variance_exact);
  EXPECT_NEAR(r.sample_standard_error / r.standard_error, 1.0, 0.15);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  ExperimentConfig cfg = small_config();
  const SubsetFamily a(3, 3, {0b111});
  const MonteCarloReport one = mc_friendly_check(cfg, a);
  cfg.threads = 3;
  const MonteCarloReport three = mc_friendly_check(cfg, a);
  EXPECT_EQ(one.unfriendly_per_trial, three.unfriendly_per_trial);
  EXPECT_EQ(one.min_size_after_deletion, three.min_size_after_deletion);
}

TEST(MonteCarlo, SeedChangesSamples) {
  ExperimentConfig cfg = small_config();
  cfg.N = 5;
  const SubsetFamily a(3, 3, {0b111});
  const MonteCarloReport r1 = mc_friendly_check(cfg, a);
  cfg.seed = 8;
  const MonteCarloReport r2 = mc_friendly_check(cfg, a);
  EXPECT_NE(r1.unfriendly_per_trial, r2.unfriendly_per_trial);
}

TEST(MonteCarlo, DeletionKeepsEnoughWords) {
  const ExperimentConfig cfg = small_config();
  const MonteCarloReport r = mc_friendly_check(cfg, SubsetFamily(3, 3, {0b111}));
  const auto worst = *std::max_element(r.unfriendly_per_trial.begin(), r.unfriendly_per_trial.end());
  // each deletion removes at least one unfriendly set
  EXPECT_GE(static_cast<double>(r.min_size_after_deletion), static_cast<double>(cfg.M) - static_cast<double>(worst));
  EXPECT_LE(r.min_size_after_deletion, cfg.M);
  EXPECT_GE(r.mean_size_after_deletion, r.min_size_after_deletion);
  EXPECT_GT(r.trials_reaching_target, cfg.trials / 2);
}

TEST(MonteCarlo, RejectsInfeasibleConfigs) {
  ExperimentConfig cfg = small_config();
  cfg.M = 65;
  EXPECT_THROW(mc_friendly_check(cfg, SubsetFamily(3, 3, {0b111})), InvalidArgument);
  cfg = small_config();
  cfg.m = 4;
  EXPECT_THROW(mc_friendly_check(cfg, SubsetFamily(3, 3, {0b111})), InvalidArgument);
  cfg = small_config();
  cfg.M = 64;
  cfg.max_subsets = 1000;
  EXPECT_ANY_THROW(mc_friendly_check(cfg, SubsetFamily(3, 3, {0b111})));
}
