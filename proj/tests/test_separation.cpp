#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "phc/separation.hpp"

using namespace phc;

namespace {

Code code(const char* spec) { return parse_code_spec(spec); }

std::vector<CoordinateSet> all_subsets(unsigned n) {
  std::vector<CoordinateSet> out;
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    CoordinateSet t;
    for (unsigned i = 0; i < n; ++i)
      if (bits >> i & 1u) t.push_back(i);
    out.push_back(t);
  }
  return out;
}

std::size_t row_of(const Code& c, std::vector<unsigned> word) {
  for (std::size_t r = 0; r < c.size(); ++r) {
    bool eq = true;
    for (unsigned i = 0; i < c.n(); ++i) eq = eq && c.symbol(r, i) == word[i];
    if (eq) return r;
  }
  throw std::logic_error("word not in code");
}

// A random code over [q]^n with m distinct words.
Code random_code(oracle::Rng& rng, unsigned q, unsigned n, unsigned m) {
  std::set<std::vector<std::uint8_t>> words;
  while (words.size() < m) {
    std::vector<std::uint8_t> w(n);
    for (auto& s : w) s = static_cast<std::uint8_t>(rng.below(q));
    words.insert(w);
  }
  std::vector<std::uint8_t> sym;
  for (const auto& w : words) sym.insert(sym.end(), w.begin(), w.end());
  // shuffle rows so codeword order is arbitrary
  const std::size_t rows = m;
  for (std::size_t i = rows; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap_ranges(sym.begin() + (i - 1) * n, sym.begin() + i * n, sym.begin() + j * n);
  }
  return Code(q, n, std::move(sym), Construction::imported);
}

}  // namespace

TEST(Separation, IsSeparatedExamples) {
  const Code s3 = code("sum:z3");
  std::vector<std::size_t> a{row_of(s3, {0, 0, 0}), row_of(s3, {1, 1, 2}), row_of(s3, {2, 2, 1})};
  EXPECT_TRUE(is_separated(s3, a));
  std::vector<std::size_t> b{row_of(s3, {0, 0, 0}), row_of(s3, {0, 1, 1}), row_of(s3, {0, 2, 2})};
  EXPECT_TRUE(is_separated(s3, b));
  const Code sh = code("shift:3");
  std::vector<std::size_t> c{row_of(sh, {0, 0, 0}), row_of(sh, {1, 1, 1}), row_of(sh, {0, 1, 2})};
  EXPECT_TRUE(is_separated(sh, c));
  std::vector<std::size_t> d{row_of(s3, {0, 0, 0}), row_of(s3, {0, 1, 1}), row_of(s3, {1, 0, 1})};
  EXPECT_FALSE(is_separated(s3, d));
  std::vector<std::size_t> wrong{0, 1};
  EXPECT_THROW(is_separated(s3, wrong), InvalidArgument);
  std::vector<std::size_t> repeated{0, 0, 1};
  EXPECT_THROW(is_separated(s3, repeated), InvalidArgument);
}

TEST(Separation, BruteForceGoldenValues) {
  EXPECT_EQ(count_separated_bruteforce(code("fourcol:z3")).s_count, 84);
  EXPECT_EQ(count_separated_bruteforce(code("mds52f4")).s_count, 1100);
  EXPECT_EQ(count_separated_bruteforce(code("shift:5")).s_count, 152);
  EXPECT_EQ(count_separated_bruteforce(code("shift:3")).s_count, 20);
  EXPECT_EQ(count_separated_bruteforce(code("shift:7")).s_count, 884);
  EXPECT_EQ(count_separated_bruteforce(code("sum:z5")).s_count, 9030);
}

TEST(Separation, BruteForceMatchesNaiveOracle) {
  for (const char* s : {"sum:z3", "sum:z4", "sum:gf4", "fourcol:z3", "mds52f4", "shift:5", "parity:z3:4", "fourcol:gf4:3"}) {
    const Code c = code(s);
    const auto rep = count_separated_bruteforce(c);
    EXPECT_EQ(rep.s_count, oracle::count_separated(c)) << s;
    EXPECT_LE(rep.s_count, binomial(c.size(), c.q()));
  }
}

TEST(Separation, BruteForceSingleCoordinateCounts) {
  const Code c = code("sum:z5");
  const auto rep = count_separated_bruteforce(c);
  for (unsigned i = 0; i < 3; ++i) EXPECT_EQ(rep.a_single[i], 3125) << i;
}

TEST(Separation, BruteForceCap) {
  CountOptions tight;
  tight.max_subsets = 1000;
  EXPECT_THROW(count_separated_bruteforce(code("sum:z5"), tight), FeasibilityError);
  EXPECT_THROW(count_separated_bruteforce(code("sum:z9")), FeasibilityError);
}

TEST(Separation, CountAtExamples) {
  EXPECT_EQ(count_at(code("sum:z5"), {0, 1, 2}), 15);
  EXPECT_EQ(count_at(code("sum:z5"), {0}), 3125);
  EXPECT_EQ(count_at(code("parity:z3:3"), {0, 1}), 6);
  EXPECT_EQ(count_at(code("sum:z5"), {2, 0, 1}), 15);
  EXPECT_THROW(count_at(code("sum:z5"), {}), InvalidArgument);
  EXPECT_THROW(count_at(code("sum:z5"), {3}), InvalidArgument);
  EXPECT_THROW(count_at(code("sum:z5"), {1, 1}), InvalidArgument);
}

TEST(Separation, CountAtMatchesOrderedTupleOracle) {
  for (const char* s : {"sum:z3", "sum:z4", "sum:gf4", "fourcol:z3", "mds52f4", "shift:3", "shift:5", "parity:z3:4"}) {
    const Code c = code(s);
    for (const auto& t : all_subsets(c.n())) EXPECT_EQ(count_at(c, t), oracle::count_at_ordered(c, t)) << s;
  }
}

TEST(Separation, CountAtOnRandomCodes) {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned q = 2 + static_cast<unsigned>(rng.below(3));
    const unsigned n = 1 + static_cast<unsigned>(rng.below(4));
    const unsigned max_m = std::min<unsigned>(12, static_cast<unsigned>(std::pow(q, n)));
    if (max_m < q) continue;
    const unsigned m = q + static_cast<unsigned>(rng.below(max_m - q + 1));
    const Code c = random_code(rng, q, n, m);
    for (const auto& t : all_subsets(n)) ASSERT_EQ(count_at(c, t), oracle::count_at_ordered(c, t));
    ASSERT_EQ(count_separated_ix(c).s_count, oracle::count_separated(c));
    ASSERT_EQ(count_separated_bruteforce(c).s_count, oracle::count_separated(c));
  }
}

TEST(Separation, InclusionExclusionExamples) {
  const auto rep = count_separated_ix(code("sum:z5"));
  EXPECT_EQ(rep.s_count, 9030);
  EXPECT_EQ(rep.s_count, 3 * 3125 - 3 * 120 + 15);
  EXPECT_EQ(inclusion_exclusion_sum(rep.a_by_t), rep.s_count);
  EXPECT_EQ(rep.a_by_t.size(), 7u);
  EXPECT_EQ(count_separated_ix(code("fourcol:z3")).s_count, 84);
  EXPECT_EQ(count_separated_ix(code("parity:z2:2")).s_count, 1);
  CountOptions tight;
  tight.max_ix_coords = 4;
  EXPECT_THROW(count_separated_ix(code("mds52f4"), tight), FeasibilityError);
}

TEST(Separation, EnginesAgreeOnConstructions) {
  for (const char* s : {"sum:z3", "sum:z4", "sum:z5", "sum:gf4", "parity:z3:2", "parity:z3:4", "parity:z4:4",
                        "parity:gf4:4", "fourcol:z3", "fourcol:z5", "fourcol:gf4:2", "mds52f4", "shift:5", "shift:7"}) {
    const Code c = code(s);
    EXPECT_EQ(count_separated_bruteforce(c).s_count, count_separated_ix(c).s_count) << s;
  }
}

TEST(Separation, SmallSetLaw) {
  // |A_T| = (q!)^{|T|-1} q^{q(k-|T|)} whenever |T| is below the dual distance
  for (const char* s : {"sum:z3", "sum:gf4", "sum:z5", "fourcol:z3", "fourcol:gf4:2", "fourcol:z5", "parity:z3:4",
                        "parity:gf4:4", "parity:z3:5", "mds52f4"}) {
    const Code c = code(s);
    const unsigned q = c.q();
    const unsigned k = static_cast<unsigned>(std::lround(std::log(c.size()) / std::log(q)));
    const unsigned dperp = *c.dual_distance_hint();
    EXPECT_EQ(dperp, orthogonal_array_strength(c) + 1) << s;
    for (const auto& t : all_subsets(c.n())) {
      if (t.size() >= dperp) continue;
      const auto j = static_cast<unsigned>(t.size());
      EXPECT_EQ(count_at(c, t), ipow(factorial(q), j - 1) * ipow(BigInt(q), q * (k - j))) << s;
    }
  }
}

TEST(Separation, Monotonicity) {
  for (const char* s : {"mds52f4", "fourcol:z5", "parity:z3:4", "shift:5"}) {
    const auto rep = count_separated_ix(code(s));
    for (const auto& [t, a] : rep.a_by_t)
      for (const auto& [t2, a2] : rep.a_by_t)
        if (std::includes(t2.begin(), t2.end(), t.begin(), t.end())) EXPECT_LE(a2, a) << s;
  }
}

TEST(Separation, SymbolRelabelingInvariance) {
  oracle::Rng rng(11);
  for (const char* s : {"sum:z5", "fourcol:z5", "mds52f4", "shift:5"}) {
    const Code c = code(s);
    const auto base = count_separated_ix(c);
    for (unsigned coord = 0; coord < c.n(); ++coord) {
      std::vector<std::uint8_t> perm(c.q());
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      std::vector<std::uint8_t> sym(c.symbols().begin(), c.symbols().end());
      for (std::size_t r = 0; r < c.size(); ++r) sym[r * c.n() + coord] = perm[sym[r * c.n() + coord]];
      const auto rel = count_separated_ix(Code(c.q(), c.n(), sym, Construction::imported));
      EXPECT_EQ(rel.s_count, base.s_count) << s;
      EXPECT_EQ(rel.a_by_t, base.a_by_t) << s;
    }
  }
}

TEST(Separation, CoordinateSymmetryOfSumCode) {
  // swapping the message columns maps {(x, y, x+y)} to itself
  const Code c = code("sum:z7");
  EXPECT_EQ(count_at(c, {0, 2}), count_at(c, {1, 2}));
  EXPECT_EQ(count_at(c, {0}), count_at(c, {1}));
}

TEST(Separation, ThreadCountDoesNotChangeCounts) {
  const Code c = code("fourcol:z5");
  CountOptions one, four;
  four.threads = 4;
  EXPECT_EQ(count_separated_bruteforce(c, one).s_count, count_separated_bruteforce(c, four).s_count);
  EXPECT_EQ(count_separated_bruteforce(c, one).a_single, count_separated_bruteforce(c, four).a_single);
  EXPECT_EQ(count_separated_ix(c, one).a_by_t, count_separated_ix(c, four).a_by_t);
}

TEST(Separation, ParityClosedForm) {
  EXPECT_EQ(parity_closed_form(5, 3, 15), 9030);
  EXPECT_EQ(parity_closed_form(9, 3, 2025), count_separated_ix(code("sum:z9")).s_count);
  EXPECT_EQ(parity_closed_form(8, 3, 384), 50211072);
  EXPECT_EQ(parity_closed_form(5, 3, 16), 9031);  // linear in A_n
  for (const char* s : {"parity:z3:2", "parity:z3:4", "parity:z3:5", "parity:gf4:4", "parity:z4:4", "parity:z5:4"}) {
    const Code c = code(s);
    CoordinateSet all(c.n());
    std::iota(all.begin(), all.end(), 0u);
    EXPECT_EQ(parity_closed_form(c.q(), c.n(), count_at(c, all)), count_separated_ix(c).s_count) << s;
  }
}

TEST(Separation, FourColumnLowerBound) {
  EXPECT_EQ(fourcol_lower_bound(3, 3), 81);
  EXPECT_EQ(fourcol_lower_bound(5, 15), 11825);
  EXPECT_LE(fourcol_lower_bound(3, 3), 84);
  EXPECT_LE(fourcol_lower_bound(5, 15), count_separated_bruteforce(code("fourcol:z5")).s_count);
  EXPECT_LE(fourcol_lower_bound(7, 133), count_separated_ix(code("fourcol:z7")).s_count);
  EXPECT_LE(fourcol_lower_bound(4, 8), count_separated_ix(code("fourcol:gf4:2")).s_count);
}

TEST(Separation, ShiftUnionClosedForm) {
  EXPECT_EQ(shift_union_closed_form(3), 20);
  EXPECT_EQ(shift_union_closed_form(5), 152);
  EXPECT_EQ(shift_union_closed_form(7), 884);
  EXPECT_EQ(shift_union_closed_form(11), count_separated_bruteforce(code("shift:11")).s_count);
  EXPECT_THROW(shift_union_closed_form(6), InvalidArgument);
}
