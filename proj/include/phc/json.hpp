/**
 * @file json.hpp
 * @brief JSON documents for reports. Big integers are decimal strings, rationals "p/q".
 */
#pragma once

#include <string>

#include <json.hpp>

#include "phc/bounds.hpp"
#include "phc/mappings.hpp"
#include "phc/montecarlo.hpp"
#include "phc/separation.hpp"
#include "phc/tables.hpp"

namespace phc {

using Json = nlohmann::ordered_json;

inline constexpr unsigned kJsonRateDigits = 30;

inline std::string coords_string(const CoordinateSet& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + "}";
}

inline Json to_json(const CodeSummary& c) {
  return Json{{"q", c.q}, {"n", c.n}, {"m", std::to_string(c.m)}, {"construction", c.construction}};
}

inline Json to_json(const SeparationReport& r) {
  Json j;
  j["code"] = to_json(r.code);
  j["method"] = to_string(r.method);
  j["exact"] = r.exact;
  j["s_count"] = r.s_count.str();
  Json single = Json::array();
  for (const auto& a : r.a_single) single.push_back(a.str());
  j["a_single"] = single;
  if (!r.a_by_t.empty()) {
    Json at = Json::object();
    for (const auto& [t, a] : r.a_by_t) at[coords_string(t)] = a.str();
    j["a_by_t"] = at;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const MappingCount& c) {
  return Json{{"group", c.group.name()}, {"order", c.group.order()}, {"cm", c.cm.str()}, {"s_value", c.s_value.str()}};
}

inline Json to_json(const RateBound& b) {
  Json j;
  j["q"] = b.q;
  j["n"] = b.n;
  j["m"] = b.m.str();
  j["defect"] = to_string(b.defect);
  j["rate"] = b.rate.to_decimal(kJsonRateDigits).scientific();
  j["precision_bits"] = b.precision_bits;
  j["provenance"] = b.provenance;
  j["heuristic"] = b.heuristic;
  return j;
}

inline Json to_json(const BeatsCertificate& c) {
  return Json{{"beats", c.beats},
              {"n", c.n},
              {"code_defect", to_string(c.code_defect)},
              {"probabilistic_defect", to_string(c.probabilistic_defect)},
              {"probabilistic_defect_pow_n", to_string(c.probabilistic_power)}};
}

inline Json to_json(const Table1Row& r) {
  return Json{{"q", r.q},
              {"cm", r.cm.str()},
              {"threshold", to_string(r.threshold)},
              {"threshold_1dp", r.threshold_1dp},
              {"ratio", r.ratio},
              {"ratio_exact", r.ratio_exact},
              {"estimate", r.estimate.to_decimal(8).scientific()},
              {"beats", r.beats}};
}

inline Json to_json(const Table2Row& r) {
  Json j;
  j["q"] = r.q;
  j["digits"] = r.digits;
  j["r_new"] = r.r_new_printed.scientific();
  j["r_ran"] = r.r_ran_printed.scientific();
  j["winner"] = r.candidates[r.winner].label;
  j["stable"] = r.stable;
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    Json cj;
    cj["label"] = c.label;
    cj["s_count"] = c.report.s_count.str();
    cj["method"] = to_string(c.report.method);
    cj["bound"] = to_json(c.bound);
    cj["beats"] = to_json(c.beats);
    cands.push_back(cj);
  }
  j["candidates"] = cands;
  j["r_ran_bound"] = to_json(r.r_ran);
  return j;
}

inline Json to_json(const MonteCarloReport& r) {
  Json j;
  j["config"] = Json{{"m", r.config.m},   {"q", r.config.q},           {"N", r.config.N},
                     {"M", r.config.M},   {"trials", r.config.trials}, {"seed", std::to_string(r.config.seed)},
                     {"rng", "splitmix64"}};
  j["family_size"] = r.family_size;
  j["subsets"] = r.subsets.str();
  j["friendly_probability"] = to_string(r.friendly_probability);
  j["expected"] = to_string(r.expected);
  j["expected_approx"] = static_cast<double>(r.expected);
  j["variance_exact"] = r.variance_exact;
  if (r.variance_exact) j["variance"] = to_string(r.variance);
  j["standard_error"] = r.standard_error;
  j["sample_standard_error"] = r.sample_standard_error;
  j["empirical_mean"] = r.empirical_mean;
  j["z_score"] = r.z_score;
  j["within_3se"] = r.within_3se;
  j["bound_condition"] = r.bound_condition;
  j["target_size"] = r.target_size;
  j["min_size_after_deletion"] = r.min_size_after_deletion;
  j["mean_size_after_deletion"] = r.mean_size_after_deletion;
  j["trials_reaching_target"] = r.trials_reaching_target;
  return j;
}

}  // namespace phc
