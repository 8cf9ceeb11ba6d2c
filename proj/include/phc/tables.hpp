/**
 * @file tables.hpp
 * @brief The complete-mapping comparison table and the rate comparison table.
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "phc/bounds.hpp"
#include "phc/pipeline.hpp"

namespace phc {

struct Table1Row {
  unsigned q = 0;
  BigInt cm;
  Rational threshold;           ///< (q!)^2 / q^q
  std::string threshold_1dp;    ///< threshold to one decimal
  std::string ratio;            ///< cm / threshold_1dp, two decimals
  std::string ratio_exact;      ///< cm / threshold, two decimals
  Real estimate;                ///< asymptotic cm estimate (heuristic)
  bool beats = false;           ///< cm > threshold
};

/// Rows for odd q from 5 to max_q; cm by exhaustive search.
inline std::vector<Table1Row> make_table1(unsigned max_q = 13, const MappingOptions& opt = {}) {
  std::vector<Table1Row> rows;
  for (unsigned q = 5; q <= max_q; q += 2) {
    Table1Row r;
    r.q = q;
    r.cm = complete_mapping_count(GroupSpec::cyclic(q), opt).cm;
    r.threshold = sum_code_threshold(q);
    r.threshold_1dp = format_fixed(r.threshold, 1);
    const Rational shown = round_to_decimals(r.threshold, 1);
    r.ratio = format_fixed(Rational(r.cm) / shown, 2);
    r.ratio_exact = format_fixed(Rational(r.cm) / r.threshold, 2);
    r.estimate = asymptotic_cm_estimate(q);
    r.beats = Rational(r.cm) > r.threshold;
    rows.push_back(std::move(r));
  }
  return rows;
}

struct Table2Candidate {
  std::string label;
  SeparationReport report;
  RateBound bound;
  BeatsCertificate beats;
};

struct Table2Row {
  unsigned q = 0;
  unsigned digits = 0;                 ///< significant digits printed
  std::vector<Table2Candidate> candidates;
  std::size_t winner = 0;              ///< index of the best candidate
  RateBound r_ran;
  Decimal r_new_printed;
  Decimal r_ran_printed;
  bool stable = false;                 ///< printed digits survive precision doubling

  const RateBound& r_new() const { return candidates[winner].bound; }
};

/// Significant digits of the printed rate comparison, per q.
inline unsigned table2_default_digits(unsigned q) {
  static const std::map<unsigned, unsigned> d{{4, 3}, {5, 4}, {7, 4}, {8, 6}, {9, 7}, {11, 9}};
  const auto it = d.find(q);
  return it == d.end() ? 6 : it->second;
}

struct Table2Options {
  unsigned digits = 0;                 ///< 0: per-q default
  Rounding rounding = Rounding::truncate;
  PipelineOptions pipeline;
};

/// Candidates per q: the [5,2] code over GF(4) and sum codes for q = 4; shift-union
/// and sum codes for q = 5, 7; sum codes over GF(8), GF(9), Z_9 and Z_11 otherwise.
inline std::vector<std::pair<std::string, std::string>> table2_candidates(unsigned q) {
  switch (q) {
    case 4: return {{"mds52f4", "mds52f4"}, {"sum gf4", "sum:gf4"}};
    case 5: return {{"shift 5", "shift:5"}, {"sum z5", "sum:z5"}};
    case 7: return {{"shift 7", "shift:7"}, {"sum z7", "sum:z7"}};
    case 8: return {{"sum gf8", "sum:gf8"}};
    case 9: return {{"sum gf9", "sum:gf9"}, {"sum z9", "sum:z9"}};
    case 11: return {{"sum z11", "sum:z11"}};
    default: throw InvalidArgument("no rate table entry for q = " + std::to_string(q));
  }
}

inline Table2Row make_table2_row(unsigned q, const Table2Options& opt = {}) {
  Table2Row row;
  row.q = q;
  row.digits = opt.digits ? opt.digits : table2_default_digits(q);
  const unsigned bits = opt.pipeline.precision_bits;
  for (const auto& [label, spec] : table2_candidates(q)) {
    const Code code = parse_code_spec(spec);
    Table2Candidate c;
    c.label = label;
    c.report = count_separated(code, MethodRequest::automatic, opt.pipeline);
    c.bound = rate_for(c.report, bits);
    c.beats = beats_for(c.report);
    row.candidates.push_back(std::move(c));
  }
  for (std::size_t i = 1; i < row.candidates.size(); ++i)
    if (row.candidates[i].bound.rate > row.candidates[row.winner].bound.rate) row.winner = i;
  row.r_ran = rate_probabilistic(q, bits);
  row.r_new_printed = row.r_new().digits(row.digits, opt.rounding);
  row.r_ran_printed = row.r_ran.digits(row.digits, opt.rounding);
  row.stable = row.r_new().stable(row.digits, opt.rounding) && row.r_ran.stable(row.digits, opt.rounding);
  return row;
}

inline std::vector<Table2Row> make_table2(const Table2Options& opt = {}) {
  std::vector<Table2Row> rows;
  for (unsigned q : {4u, 5u, 7u, 8u, 9u, 11u}) rows.push_back(make_table2_row(q, opt));
  return rows;
}

}  // namespace phc
