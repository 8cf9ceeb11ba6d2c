/**
 * @file separation.hpp
 * @brief Exact counts of separated q-element subsets of a code.
 *
 * A q-subset of codewords is separated when some coordinate carries q pairwise
 * distinct symbols. A_i is the family of q-subsets separated at coordinate i and
 * A_T the intersection over T; |S(C)| = |A_1 u ... u A_n|. Three engines are
 * provided and cross-checked in the tests:
 *
 *  - count_separated_bruteforce: enumerates every q-subset;
 *  - count_separated_ix: inclusion-exclusion over |A_T|, each counted by
 *    backtracking (count_at);
 *  - closed forms for the parity and shift-union families, and a certified
 *    lower bound for four-column codes.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "phc/bigint.hpp"
#include "phc/codes.hpp"
#include "phc/errors.hpp"
#include "phc/parallel.hpp"

namespace phc {

/// Zero-based coordinate indices, sorted ascending.
using CoordinateSet = std::vector<unsigned>;

enum class CountMethod {
  brute_force,
  inclusion_exclusion,
  closed_form_parity,
  closed_form_shift,
  lower_bound_fourcol
};

inline std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::brute_force: return "brute-force";
    case CountMethod::inclusion_exclusion: return "inclusion-exclusion";
    case CountMethod::closed_form_parity: return "closed-form-parity";
    case CountMethod::closed_form_shift: return "closed-form-shift";
    case CountMethod::lower_bound_fourcol: return "lower-bound-fourcol";
  }
  return "unknown";
}

struct CountOptions {
  std::uint64_t max_subsets = 1'000'000'000;  ///< cap on binomial(m, q) for brute force
  unsigned max_ix_coords = 8;                 ///< cap on n for inclusion-exclusion
  unsigned threads = 1;                       ///< 0 = hardware concurrency
};

struct SeparationReport {
  CodeSummary code;
  std::vector<BigInt> a_single;           ///< |A_i| per coordinate
  std::map<CoordinateSet, BigInt> a_by_t;  ///< |A_T|, inclusion-exclusion only
  BigInt s_count;
  CountMethod method = CountMethod::brute_force;
  bool exact = true;
  std::string note;
};

/// sum over T of (-1)^{|T|-1} |A_T|, recomputed from a report's stored terms.
inline BigInt inclusion_exclusion_sum(const std::map<CoordinateSet, BigInt>& a_by_t) {
  BigInt s = 0;
  for (const auto& [t, a] : a_by_t) {
    if (t.size() % 2) s += a;
    else s -= a;
  }
  return s;
}

/// True iff some coordinate carries pairwise distinct symbols on the q given codewords.
inline bool is_separated(const Code& code, std::span<const std::size_t> subset) {
  if (subset.size() != code.q())
    throw InvalidArgument("subset must have exactly q = " + std::to_string(code.q()) + " codewords");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= code.size()) throw InvalidArgument("codeword index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (subset[i] == subset[j]) throw InvalidArgument("subset has repeated codewords");
  }
  for (unsigned c = 0; c < code.n(); ++c) {
    std::uint64_t mask = 0;
    bool distinct = true;
    for (auto r : subset) {
      const std::uint64_t bit = std::uint64_t{1} << code.symbol(r, c);
      if (mask & bit) {
        distinct = false;
        break;
      }
      mask |= bit;
    }
    if (distinct) return true;
  }
  return false;
}

namespace detail {

// Subsets are chosen in increasing index order; coordinates that already saw a
// repeated symbol are dropped, and a branch with no live coordinate is pruned.
class SubsetEnumerator {
 public:
  explicit SubsetEnumerator(const Code& code)
      : code_(code), q_(code.q()), n_(code.n()), m_(code.size()),
        masks_(q_ + 1, std::vector<std::uint64_t>(n_, 0)), alive_(q_ + 1) {}

  void run_from(std::size_t first, std::uint64_t& s, std::vector<std::uint64_t>& a_single) {
    s_ = &s;
    a_single_ = &a_single;
    alive_[0].resize(n_);
    for (unsigned c = 0; c < n_; ++c) alive_[0][c] = c;
    extend(0, first);
  }

 private:
  void extend(unsigned depth, std::size_t r) {
    auto& next = alive_[depth + 1];
    next.clear();
    const auto row = code_.row(r);
    for (unsigned c : alive_[depth]) {
      const std::uint64_t bit = std::uint64_t{1} << row[c];
      if (!(masks_[depth][c] & bit)) {
        masks_[depth + 1][c] = masks_[depth][c] | bit;
        next.push_back(c);
      }
    }
    if (next.empty()) return;
    if (depth + 1 == q_) {
      ++*s_;
      for (unsigned c : next) ++(*a_single_)[c];
      return;
    }
    const std::size_t last = m_ - (q_ - depth - 1);
    for (std::size_t r2 = r + 1; r2 <= last; ++r2) extend(depth + 1, r2);
  }

  const Code& code_;
  unsigned q_, n_;
  std::size_t m_;
  std::vector<std::vector<std::uint64_t>> masks_;
  std::vector<std::vector<unsigned>> alive_;
  std::uint64_t* s_ = nullptr;
  std::vector<std::uint64_t>* a_single_ = nullptr;
};

}  // namespace detail

/// Exact |S(C)| by enumerating all binomial(m, q) subsets; also fills |A_i|.
inline SeparationReport count_separated_bruteforce(const Code& code, const CountOptions& opt = {}) {
  const unsigned q = code.q(), n = code.n();
  const std::size_t m = code.size();
  const BigInt work = binomial(m, q);
  if (work > opt.max_subsets)
    throw FeasibilityError("brute-force enumeration of binomial(" + std::to_string(m) + "," +
                               std::to_string(q) + ") subsets exceeds --max-subsets " +
                               std::to_string(opt.max_subsets),
                           work.str() + " subset checks");
  SeparationReport rep;
  rep.code = code.summary();
  rep.method = CountMethod::brute_force;
  rep.a_single.assign(n, 0);
  if (m < q) return rep;

  const std::size_t tasks = m - q + 1;  // one task per smallest member
  std::vector<std::uint64_t> s_part(tasks, 0);
  std::vector<std::vector<std::uint64_t>> a_part(tasks, std::vector<std::uint64_t>(n, 0));
  run_tasks(tasks, opt.threads, [&](std::size_t first) {
    detail::SubsetEnumerator e(code);
    e.run_from(first, s_part[first], a_part[first]);
  });
  for (std::size_t t = 0; t < tasks; ++t) {
    rep.s_count += s_part[t];
    for (unsigned c = 0; c < n; ++c) rep.a_single[c] += a_part[t][c];
  }
  return rep;
}

namespace detail {

inline CoordinateSet normalize(const Code& code, CoordinateSet t) {
  if (t.empty()) throw InvalidArgument("coordinate set must be nonempty");
  std::sort(t.begin(), t.end());
  if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw InvalidArgument("repeated coordinate");
  if (t.back() >= code.n()) throw InvalidArgument("coordinate out of range");
  return t;
}

// Counts q-subsets in A_T. Each such subset carries every symbol exactly once at
// t0 = min T, so listing its members by their t0 symbol gives a canonical order:
// level s picks the codeword with symbol s at t0. The count is the number of
// ordered tuples divided by q!, without enumerating the q! orderings.
class TupleCounter {
 public:
  TupleCounter(const Code& code, const CoordinateSet& t) : q_(code.q()), k_(t.size() - 1) {
    const unsigned t0 = t[0];
    buckets_.resize(q_);
    for (std::size_t r = 0; r < code.size(); ++r) {
      auto& b = buckets_[code.symbol(r, t0)];
      for (std::size_t j = 1; j < t.size(); ++j) b.push_back(code.symbol(r, t[j]));
    }
  }

  std::size_t bucket_rows(unsigned s) const { return k_ ? buckets_[s].size() / k_ : 0; }

  std::uint64_t count_with_first(std::size_t first_row) const {
    std::vector<std::uint64_t> masks(k_ * (q_ + 1), 0);
    const std::uint8_t* sym = buckets_[0].data() + first_row * k_;
    for (std::size_t j = 0; j < k_; ++j) masks[k_ + j] = std::uint64_t{1} << sym[j];
    return q_ == 1 ? 1 : descend(1, masks);
  }

 private:
  std::uint64_t descend(unsigned level, std::vector<std::uint64_t>& masks) const {
    const std::uint64_t* cur = masks.data() + std::size_t{level} * k_;
    std::uint64_t* nxt = masks.data() + std::size_t{level + 1} * k_;
    const auto& bucket = buckets_[level];
    const std::size_t rows = bucket.size() / k_;
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::uint8_t* sym = bucket.data() + r * k_;
      bool ok = true;
      for (std::size_t j = 0; j < k_; ++j)
        if (cur[j] >> sym[j] & 1u) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (level + 1 == q_) {
        ++total;
        continue;
      }
      for (std::size_t j = 0; j < k_; ++j) nxt[j] = cur[j] | (std::uint64_t{1} << sym[j]);
      total += descend(level + 1, masks);
    }
    return total;
  }

  unsigned q_;
  std::size_t k_;
  std::vector<std::vector<std::uint8_t>> buckets_;  // symbols at T \ {t0}, grouped by symbol at t0
};

}  // namespace detail

/// |A_T|: q-subsets whose symbols cover the whole alphabet at every coordinate in T.
inline BigInt count_at(const Code& code, CoordinateSet t, unsigned threads = 1) {
  t = detail::normalize(code, std::move(t));
  const unsigned q = code.q();
  if (code.size() < q) return 0;
  std::vector<std::size_t> bucket_size(q, 0);
  for (std::size_t r = 0; r < code.size(); ++r) ++bucket_size[code.symbol(r, t[0])];
  if (t.size() == 1) {
    BigInt prod = 1;
    for (auto b : bucket_size) prod *= b;
    return prod;
  }
  for (auto b : bucket_size)
    if (b == 0) return 0;
  const detail::TupleCounter counter(code, t);
  std::vector<std::uint64_t> part(bucket_size[0], 0);
  run_tasks(part.size(), threads, [&](std::size_t r) { part[r] = counter.count_with_first(r); });
  BigInt total = 0;
  for (auto p : part) total += p;
  return total;
}

/// Exact |S(C)| = sum over nonempty T of (-1)^{|T|-1} |A_T|; stores every |A_T|.
inline SeparationReport count_separated_ix(const Code& code, const CountOptions& opt = {}) {
  const unsigned n = code.n();
  if (n > opt.max_ix_coords || n > 30)
    throw FeasibilityError("inclusion-exclusion over " + std::to_string(n) +
                               " coordinates exceeds --max-ix-coords " + std::to_string(opt.max_ix_coords),
                           std::to_string((std::uint64_t{1} << std::min(n, 63u)) - 1) + " A_T counts");
  SeparationReport rep;
  rep.code = code.summary();
  rep.method = CountMethod::inclusion_exclusion;
  rep.a_single.assign(n, 0);
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
    CoordinateSet t;
    for (unsigned c = 0; c < n; ++c)
      if (bits >> c & 1u) t.push_back(c);
    BigInt a = count_at(code, t, opt.threads);
    if (t.size() == 1) rep.a_single[t[0]] = a;
    rep.a_by_t.emplace(std::move(t), std::move(a));
  }
  rep.s_count = inclusion_exclusion_sum(rep.a_by_t);
  if (rep.s_count < 0 || rep.s_count > binomial(code.size(), code.q()))
    throw InconsistencyError("inclusion-exclusion total out of range: " + rep.s_count.str());
  return rep;
}

/// |S(C)| for the parity code of length n over any abelian group of order q,
/// given A_n (for n = 3, the complete-mapping count):
///   q^{q(n-1)}/q! (1 - (1 - q!/q^q)^n) - (-1)^{n-1} (q!)^{n-1}/q^q + (-1)^{n-1} A_n.
inline BigInt parity_closed_form(unsigned q, unsigned n, const BigInt& a_n) {
  if (q < 2 || n < 2) throw InvalidArgument("parity closed form needs q >= 2 and n >= 2");
  const BigInt qf = factorial(q);
  const Rational t(qf, ipow(BigInt(q), q));
  const int sign = (n % 2 == 1) ? 1 : -1;  // (-1)^{n-1}
  Rational s = Rational(ipow(BigInt(q), q * (n - 1)), qf) * (1 - rpow(1 - t, static_cast<int>(n)));
  s -= sign * Rational(ipow(qf, n - 1), ipow(BigInt(q), q));
  s += sign * Rational(a_n);
  if (!is_integral(s))
    throw InconsistencyError("parity closed form is not an integer (" + to_string(s) + ")");
  return boost::multiprecision::numerator(s);
}

/// Certified lower bound 4 q^q - 6 q! + 3 cm on |S(C)| for four-column [4,2] MDS codes.
inline BigInt fourcol_lower_bound(unsigned q, const BigInt& cm) {
  return 4 * ipow(BigInt(q), q) - 6 * factorial(q) + 3 * cm;
}

/// |S(C)| = 2^q q - 2(q-1) for the prime-q shift-union code.
inline BigInt shift_union_closed_form(unsigned q) {
  if (!is_prime(q)) throw InvalidArgument("shift-union closed form needs a prime q");
  return ipow(BigInt(2), q) * q - 2 * BigInt(q - 1);
}

}  // namespace phc
