/**
 * @file mappings.hpp
 * @brief Exact counts of complete mappings of finite abelian groups.
 *
 * A complete mapping of G is a bijection theta with x -> x + theta(x) also a
 * bijection. Their number cm equals |A_{1,2,3}| for the code {(x, y, x+y)},
 * and the number s_G of pairs of bijections [q] -> G whose pointwise sum is a
 * bijection is q! * cm.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "phc/algebra.hpp"
#include "phc/bigint.hpp"
#include "phc/errors.hpp"
#include "phc/parallel.hpp"
#include "phc/precision.hpp"

namespace phc {

struct MappingOptions {
  unsigned max_order = 15;  ///< refuse larger groups; 16 and 17 run for minutes to hours
  unsigned threads = 1;
  /// theta -> theta + c permutes complete mappings freely, so counting those with
  /// theta(0) = 0 and multiplying by q is exact.
  bool use_translation_symmetry = true;
};

struct MappingCount {
  GroupSpec group;
  BigInt cm;       ///< number of complete mappings (A_3 of the sum code)
  BigInt s_value;  ///< q! * cm
};

namespace detail {

// theta(x) is assigned for x in index order; values in index order.
class CompleteMappingSearch {
 public:
  explicit CompleteMappingSearch(const GroupSpec& g) : q_(g.order()), add_(std::size_t{q_} * q_) {
    const CayleyTables t(g);
    for (std::uint32_t x = 0; x < q_; ++x)
      for (std::uint32_t v = 0; v < q_; ++v) add_[x * q_ + v] = t.add(x, v);
    full_ = q_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q_) - 1;
  }

  struct Prefix {
    std::uint32_t next;  // first unassigned x
    std::uint64_t used_values;
    std::uint64_t used_sums;
  };

  // All consistent prefixes one assignment beyond `base`.
  std::vector<Prefix> expand(const Prefix& base) const {
    std::vector<Prefix> out;
    if (base.next == q_) return {base};
    const std::uint8_t* row = add_.data() + std::size_t{base.next} * q_;
    for (std::uint32_t v = 0; v < q_; ++v) {
      if (base.used_values >> v & 1u) continue;
      const std::uint64_t sbit = std::uint64_t{1} << row[v];
      if (base.used_sums & sbit) continue;
      out.push_back({base.next + 1, base.used_values | (std::uint64_t{1} << v), base.used_sums | sbit});
    }
    return out;
  }

  std::uint64_t count(const Prefix& p) const { return descend(p.next, p.used_values, p.used_sums); }

  std::uint32_t order() const { return q_; }

 private:
  std::uint64_t descend(std::uint32_t x, std::uint64_t values, std::uint64_t sums) const {
    if (x == q_) return 1;
    const std::uint8_t* row = add_.data() + std::size_t{x} * q_;
    std::uint64_t free = ~values & full_;
    std::uint64_t total = 0;
    if (x + 1 == q_) {
      // exactly one value left
      return (sums >> row[std::countr_zero(free)] & 1u) ? 0 : 1;
    }
    while (free) {
      const unsigned v = static_cast<unsigned>(std::countr_zero(free));
      free &= free - 1;
      const std::uint64_t sbit = std::uint64_t{1} << row[v];
      if (sums & sbit) continue;
      total += descend(x + 1, values | (std::uint64_t{1} << v), sums | sbit);
    }
    return total;
  }

  std::uint32_t q_;
  std::vector<std::uint8_t> add_;
  std::uint64_t full_ = 0;
};

}  // namespace detail

/// Exact number of complete mappings of g by backtracking.
inline MappingCount complete_mapping_count(const GroupSpec& g, const MappingOptions& opt = {}) {
  const std::uint32_t q = g.order();
  if (q > opt.max_order || q > 64)
    throw FeasibilityError("complete-mapping search over " + g.name() + " (order " + std::to_string(q) +
                               ") exceeds the order cap " + std::to_string(opt.max_order),
                           "about " + std::to_string(q) + "! search nodes");
  const detail::CompleteMappingSearch search(g);
  using Prefix = detail::CompleteMappingSearch::Prefix;
  Prefix root{0, 0, 0};
  if (opt.use_translation_symmetry) root = {1, 1, std::uint64_t{1} << g.add(Element(0), Element(0)).index};
  // Split on the next one or two assignments.
  std::vector<Prefix> tasks = search.expand(root);
  if (tasks.size() < 4 * resolve_threads(opt.threads)) {
    std::vector<Prefix> deeper;
    for (const auto& p : tasks)
      for (const auto& c : search.expand(p)) deeper.push_back(c);
    tasks = std::move(deeper);
  }
  std::vector<std::uint64_t> part(tasks.size(), 0);
  run_tasks(tasks.size(), opt.threads, [&](std::size_t i) { part[i] = search.count(tasks[i]); });
  BigInt cm = 0;
  for (auto c : part) cm += c;
  if (opt.use_translation_symmetry) cm *= q;
  return {g, cm, factorial(q) * cm};
}

/// (1/sqrt(e)) (q!)^2 / q^{q-1}: the leading asymptotic term for cm with the
/// o(1) correction dropped. A heuristic estimate, not a bound.
inline Real asymptotic_cm_estimate(unsigned q, unsigned bits = 128) {
  if (q < 3) throw InvalidArgument("asymptotic estimate needs q >= 3");
  const Rational c = inv_sqrt_e(bits + 32).to_rational();
  const Rational v = c * Rational(ipow(factorial(q), 2), ipow(BigInt(q), q - 1));
  return Real::from_rational(v, bits);
}

}  // namespace phc
