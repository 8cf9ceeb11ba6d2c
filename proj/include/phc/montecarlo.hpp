/**
 * @file montecarlo.hpp
 * @brief Empirical check of the expected number of unfriendly q-subsets in a random code.
 *
 * M codewords are drawn uniformly and independently from [m]^N. A q-subset of them
 * is friendly when some coordinate projects it onto a member of the family A, and
 * each q-subset is unfriendly with probability (1 - q!|A|/m^q)^N.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "phc/bigint.hpp"
#include "phc/codes.hpp"
#include "phc/errors.hpp"
#include "phc/parallel.hpp"
#include "phc/separation.hpp"

namespace phc {

/// Tolerance of the empirical mean, in standard errors.
inline constexpr double kMcStandardErrors = 3.0;

/// SplitMix64: counter-based, so any trial's stream is reproducible from (seed, trial).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection, identical on every platform.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      const std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (stream * 0xD1B54A32D192ED03ull));
    g.next();
    return g.next();
  }

 private:
  std::uint64_t state_;
};

struct ExperimentConfig {
  unsigned m = 9;
  unsigned q = 3;
  unsigned N = 20;
  unsigned M = 64;
  unsigned trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t max_subsets = 1'000'000;   ///< cap on binomial(M, q)
  std::uint64_t max_variance_work = 100'000'000;  ///< cap on m^{2q-1} for the exact variance
};

/// A family of q-subsets of [m], each stored as a bitmask.
class SubsetFamily {
 public:
  static constexpr unsigned kMaxPoints = 24;

  SubsetFamily(unsigned m, unsigned q, std::vector<std::uint32_t> masks) : m_(m), q_(q), masks_(std::move(masks)) {
    if (m_ > kMaxPoints) throw InvalidArgument("family ground set above " + std::to_string(kMaxPoints) + " points");
    if (q_ < 2 || q_ > m_) throw InvalidArgument("need 2 <= q <= m");
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
    if (masks_.empty()) throw InvalidArgument("the family A must be nonempty");
    member_.assign(std::size_t{1} << m_, 0);
    for (auto s : masks_) {
      if (static_cast<unsigned>(std::popcount(s)) != q_ || s >> m_)
        throw InvalidArgument("family member is not a q-subset of [m]");
      member_[s] = 1;
    }
  }

  /// All binomial(m, q) subsets.
  static SubsetFamily all(unsigned m, unsigned q) {
    if (m > kMaxPoints) throw InvalidArgument("family ground set above " + std::to_string(kMaxPoints) + " points");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s)
      if (static_cast<unsigned>(std::popcount(s)) == q) masks.push_back(s);
    return {m, q, std::move(masks)};
  }

  /// The separated q-subsets of an inner code, over its codeword indices.
  static SubsetFamily separated_sets(const Code& code) {
    const unsigned m = static_cast<unsigned>(code.size()), q = code.q();
    if (m > kMaxPoints) throw InvalidArgument("code too large to serve as a subset family");
    std::vector<std::uint32_t> masks;
    std::vector<std::size_t> pick(q);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
      if (static_cast<unsigned>(std::popcount(s)) != q) continue;
      std::uint32_t rest = s;
      for (auto& p : pick) {
        p = static_cast<std::size_t>(std::countr_zero(rest));
        rest &= rest - 1;
      }
      if (is_separated(code, pick)) masks.push_back(s);
    }
    if (masks.empty()) throw InvalidArgument("code has no separated q-subsets");
    return {m, q, std::move(masks)};
  }

  unsigned m() const noexcept { return m_; }
  unsigned q() const noexcept { return q_; }
  std::size_t size() const noexcept { return masks_.size(); }
  bool contains(std::uint32_t mask) const { return mask < member_.size() && member_[mask]; }

 private:
  unsigned m_, q_;
  std::vector<std::uint32_t> masks_;
  std::vector<char> member_;
};

struct MonteCarloReport {
  ExperimentConfig config;
  std::size_t family_size = 0;
  BigInt subsets;                 ///< binomial(M, q)
  Rational friendly_probability;  ///< q!|A|/m^q, per coordinate
  Rational expected;              ///< binomial(M, q) (1 - q!|A|/m^q)^N
  bool variance_exact = false;
  Rational variance;              ///< exact Var of the unfriendly count (when computed)
  double standard_error = 0;      ///< of the mean over trials; analytic when available
  double sample_standard_error = 0;
  double empirical_mean = 0;
  double z_score = 0;             ///< (empirical - expected) / standard_error
  bool within_3se = false;
  bool bound_condition = false;   ///< expected <= M / (2q)
  unsigned min_size_after_deletion = 0;
  double mean_size_after_deletion = 0;
  unsigned target_size = 0;       ///< ceil(M / 3)
  unsigned trials_reaching_target = 0;
  std::vector<std::uint64_t> unfriendly_per_trial;
};

namespace detail {

// P(neither of two q-subsets sharing j points is friendly at one coordinate).
inline Rational joint_unfriendly_probability(const SubsetFamily& a, unsigned j) {
  const unsigned m = a.m(), q = a.q(), slots = 2 * q - j;
  std::vector<unsigned> v(slots, 0);
  std::uint64_t both = 0, total = 0;
  for (;;) {
    std::uint32_t s1 = 0, s2 = 0;
    bool d1 = true, d2 = true;
    for (unsigned i = 0; i < q; ++i) {
      const std::uint32_t b = std::uint32_t{1} << v[i];
      d1 = d1 && !(s1 & b);
      s1 |= b;
    }
    // the second subset shares slots 0..j-1 with the first
    for (unsigned i = 0; i < q; ++i) {
      const unsigned slot = i < j ? i : q + (i - j);
      const std::uint32_t b = std::uint32_t{1} << v[slot];
      d2 = d2 && !(s2 & b);
      s2 |= b;
    }
    const bool f1 = d1 && a.contains(s1), f2 = d2 && a.contains(s2);
    both += !f1 && !f2;
    ++total;
    unsigned i = 0;
    while (i < slots && ++v[i] == m) v[i++] = 0;
    if (i == slots) break;
  }
  return Rational(both, total);
}

}  // namespace detail

/// Runs the experiment; counts are independent of the thread count.
inline MonteCarloReport mc_friendly_check(const ExperimentConfig& cfg, const SubsetFamily& family) {
  if (cfg.m != family.m() || cfg.q != family.q()) throw InvalidArgument("family does not match (m, q)");
  if (cfg.q > cfg.m || cfg.M < cfg.q || cfg.N == 0 || cfg.trials == 0)
    throw InvalidArgument("need q <= m, M >= q, N >= 1 and trials >= 1");
  if (cfg.M > 64) throw InvalidArgument("M above 64 is not supported");
  MonteCarloReport rep;
  rep.config = cfg;
  rep.family_size = family.size();
  rep.subsets = binomial(cfg.M, cfg.q);
  if (rep.subsets > cfg.max_subsets)
    throw FeasibilityError("binomial(" + std::to_string(cfg.M) + "," + std::to_string(cfg.q) +
                               ") subsets per trial exceeds the cap " + std::to_string(cfg.max_subsets),
                           rep.subsets.str() + " subset checks per trial");
  const unsigned q = cfg.q, M = cfg.M, N = cfg.N;
  rep.friendly_probability = Rational(factorial(q) * family.size(), ipow(BigInt(cfg.m), q));
  const Rational p0 = 1 - rep.friendly_probability;
  rep.expected = Rational(rep.subsets) * rpow(p0, static_cast<int>(N));

  if (ipow(BigInt(cfg.m), 2 * q - 1) <= cfg.max_variance_work) {
    rep.variance_exact = true;
    const Rational indep = rpow(p0, 2 * static_cast<int>(N));
    for (unsigned j = 1; j <= q; ++j) {
      const Rational pj = j == q ? p0 : detail::joint_unfriendly_probability(family, j);
      const BigInt pairs = rep.subsets * binomial(q, j) * binomial(M - q, q - j);
      rep.variance += Rational(pairs) * (rpow(pj, static_cast<int>(N)) - indep);
    }
  }

  // subsets as index lists, shared by every trial
  std::vector<std::uint64_t> subsets;
  {
    std::vector<unsigned> idx(q);
    for (unsigned i = 0; i < q; ++i) idx[i] = i;
    for (;;) {
      std::uint64_t mask = 0;
      for (auto i : idx) mask |= std::uint64_t{1} << i;
      subsets.push_back(mask);
      int i = static_cast<int>(q) - 1;
      while (i >= 0 && idx[i] == M - q + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (unsigned k = static_cast<unsigned>(i) + 1; k < q; ++k) idx[k] = idx[k - 1] + 1;
    }
  }

  rep.target_size = (M + 2) / 3;
  rep.unfriendly_per_trial.assign(cfg.trials, 0);
  std::vector<unsigned> kept(cfg.trials, 0);
  run_tasks(cfg.trials, cfg.threads, [&](std::size_t t) {
    SplitMix64 rng(SplitMix64::derive(cfg.seed, t));
    std::vector<std::uint8_t> word(std::size_t{M} * N);
    for (auto& s : word) s = static_cast<std::uint8_t>(rng.below(cfg.m));
    std::uint64_t deleted = 0, unfriendly = 0;
    for (const std::uint64_t s : subsets) {
      bool friendly = false;
      for (unsigned c = 0; c < N && !friendly; ++c) {
        std::uint32_t proj = 0;
        for (std::uint64_t r = s; r; r &= r - 1) proj |= std::uint32_t{1} << word[std::countr_zero(r) * N + c];
        friendly = static_cast<unsigned>(std::popcount(proj)) == q && family.contains(proj);
      }
      if (friendly) continue;
      ++unfriendly;
      if (!(s & deleted)) deleted |= std::uint64_t{1} << (63 - std::countl_zero(s));
    }
    rep.unfriendly_per_trial[t] = unfriendly;
    kept[t] = M - static_cast<unsigned>(std::popcount(deleted));
  });

  double sum = 0, sum2 = 0, kept_sum = 0;
  rep.min_size_after_deletion = M;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const double x = static_cast<double>(rep.unfriendly_per_trial[t]);
    sum += x;
    sum2 += x * x;
    kept_sum += kept[t];
    rep.min_size_after_deletion = std::min(rep.min_size_after_deletion, kept[t]);
    rep.trials_reaching_target += kept[t] >= rep.target_size;
  }
  const double n = cfg.trials;
  rep.empirical_mean = sum / n;
  rep.mean_size_after_deletion = kept_sum / n;
  const double sample_var = cfg.trials > 1 ? std::max(0.0, (sum2 - sum * sum / n) / (n - 1)) : 0.0;
  rep.sample_standard_error = std::sqrt(sample_var / n);
  rep.standard_error =
      rep.variance_exact ? std::sqrt(static_cast<double>(rep.variance) / n) : rep.sample_standard_error;
  const double expected = static_cast<double>(rep.expected);
  const double diff = rep.empirical_mean - expected;
  rep.z_score = rep.standard_error > 0 ? diff / rep.standard_error : (diff == 0 ? 0.0 : INFINITY);
  rep.within_3se = std::abs(rep.z_score) <= kMcStandardErrors;
  rep.bound_condition = rep.expected <= Rational(M, 2 * q);
  return rep;
}

}  // namespace phc
