/**
 * @file cli.hpp
 * @brief The `phc` command line: argument grammar, dispatch and output.
 *
 * Exit status: 0 on success, 1 on usage or validation errors, 2 when a
 * feasibility cap refuses the computation. With --json exactly one JSON
 * document is written to the output stream; diagnostics go to the error stream.
 */
#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phc/json.hpp"
#include "phc/pipeline.hpp"
#include "phc/repro.hpp"
#include "phc/tables.hpp"

namespace phc {

namespace detail {

struct GlobalFlags {
  bool json = false;
  std::string threads = "1";
  std::uint64_t max_subsets = CountOptions{}.max_subsets;
  unsigned max_ix_coords = CountOptions{}.max_ix_coords;
  unsigned max_order = MappingOptions{}.max_order;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::uint64_t seed = ReproOptions{}.seed;

  unsigned thread_count() const {
    if (threads == "auto") return 0;
    const unsigned t = parse_u32(threads, "thread count");
    if (t == 0) throw InvalidArgument("--threads must be positive or 'auto'");
    return t;
  }

  PipelineOptions pipeline() const {
    PipelineOptions p;
    p.count.threads = p.mapping.threads = thread_count();
    p.count.max_subsets = max_subsets;
    p.count.max_ix_coords = max_ix_coords;
    p.mapping.max_order = max_order;
    p.precision_bits = precision_bits;
    return p;
  }
};

inline std::string rate_text(const RateBound& b, unsigned digits) { return b.digits(digits).scientific(); }

inline Rounding parse_rounding(const std::string& s) {
  if (s == "truncate") return Rounding::truncate;
  if (s == "nearest") return Rounding::nearest;
  throw InvalidArgument("rounding must be 'truncate' or 'nearest'");
}

inline AsymptoticVariant parse_variant(const std::string& s) {
  if (s == "three-col") return AsymptoticVariant::three_col;
  if (s == "four-col") return AsymptoticVariant::four_col;
  throw InvalidArgument("variant must be 'three-col' or 'four-col'");
}

inline CoordinateSet parse_coords(const std::string& s) {
  CoordinateSet t;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const unsigned c = parse_u32(tok, "coordinate");
    if (c == 0) throw InvalidArgument("coordinates are numbered from 1");
    t.push_back(c - 1);
  }
  return t;
}

}  // namespace detail

/// Runs the command line; returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::GlobalFlags g;
  CLI::App app{"Lower bounds on the rate of perfect hash codes"};
  app.name("phc");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", g.json, "emit one JSON document");
  app.add_option("--threads", g.threads, "worker threads, or 'auto'");
  app.add_option("--max-subsets", g.max_subsets, "brute-force cap on binomial(m,q)")->check(CLI::PositiveNumber);
  app.add_option("--max-ix-coords", g.max_ix_coords, "inclusion-exclusion cap on n")->check(CLI::PositiveNumber);
  app.add_option("--max-order", g.max_order, "complete-mapping cap on the group order")->check(CLI::PositiveNumber);
  app.add_option("--precision-bits", g.precision_bits, "logarithm working precision")->check(CLI::Range(32u, 1u << 16));
  app.add_option("--seed", g.seed, "random seed");
  app.set_config("--config", "", "read flags from a TOML file; subcommand flags go under [<subcommand>]");

  std::string group, code_spec, method = "auto", s_text, variant, at_text, out_path, family = "all";
  std::string rounding = "nearest";
  bool estimate = false, probabilistic = false;
  unsigned q = 0, digits = 10, max_q = 13, t2_digits = 0;
  ExperimentConfig mc;

  auto* cm_cmd = app.add_subcommand("cm", "count complete mappings of a group");
  cm_cmd->add_option("--group", group, "group spec, e.g. z5, gf9, prod(gf4,z3)")->required();
  cm_cmd->add_flag("--estimate", estimate, "also print the asymptotic estimate");

  auto* count_cmd = app.add_subcommand("count", "count separated q-subsets of a code");
  count_cmd->add_option("--code", code_spec, "code spec")->required();
  count_cmd->add_option("--method", method, "auto, brute, ix or closed");
  count_cmd->add_option("--at", at_text, "only |A_T| for comma-separated coordinates (1-based)");

  auto* rate_cmd = app.add_subcommand("rate", "evaluate a rate lower bound");
  rate_cmd->add_flag("--probabilistic", probabilistic, "the random-code bound");
  rate_cmd->add_option("-q,--q", q, "alphabet size");
  rate_cmd->add_option("--code", code_spec, "inner code spec");
  rate_cmd->add_option("--s", s_text, "use this |S| instead of counting");
  rate_cmd->add_option("--method", method, "auto, brute, ix or closed");
  rate_cmd->add_option("--asymptotic", variant, "three-col or four-col (heuristic)");
  rate_cmd->add_option("--digits", digits, "significant digits")->check(CLI::Range(1u, 200u));
  rate_cmd->add_option("--rounding", rounding, "nearest or truncate");

  auto* beats_cmd = app.add_subcommand("beats", "compare an inner code with the probabilistic bound");
  beats_cmd->add_option("--code", code_spec, "inner code spec")->required();
  beats_cmd->add_option("--s", s_text, "use this |S| instead of counting");
  beats_cmd->add_option("--method", method, "auto, brute, ix or closed");

  auto* t1_cmd = app.add_subcommand("table1", "complete mappings against (q!)^2/q^q");
  t1_cmd->add_option("--max-q", max_q, "largest odd q")->check(CLI::Range(5u, 64u));

  auto* t2_cmd = app.add_subcommand("table2", "best inner-code rates against the random bound");
  t2_cmd->add_option("--digits", t2_digits, "significant digits (default per q)")->check(CLI::Range(1u, 200u));
  std::string t2_rounding = "truncate";
  t2_cmd->add_option("--rounding", t2_rounding, "truncate or nearest");

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo count of unfriendly q-subsets");
  mc_cmd->add_option("--m", mc.m, "inner alphabet size")->check(CLI::PositiveNumber);
  mc_cmd->add_option("-q,--q", mc.q, "subset size")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--N", mc.N, "code length")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--M", mc.M, "codewords sampled")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--trials", mc.trials, "independent trials")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--family", family, "'all' or 'code:<spec>' (separated sets of a code)");

  auto* repro_cmd = app.add_subcommand("repro", "run the acceptance suite");
  unsigned repro_trials = ReproOptions{}.mc_trials;
  repro_cmd->add_option("--trials", repro_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);

  auto* export_cmd = app.add_subcommand("export", "write a code to a file");
  export_cmd->add_option("--code", code_spec, "code spec")->required();
  export_cmd->add_option("--out", out_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "phc: " << e.what() << "\n";
    return 1;
  }

  try {
    const PipelineOptions po = g.pipeline();
    auto count_for = [&](const Code& code) {
      if (!s_text.empty()) {
        SeparationReport r;
        r.code = code.summary();
        r.s_count = parse_bigint(s_text);
        r.note = "|S| supplied";
        return r;
      }
      return count_separated(code, parse_method(method), po);
    };

    if (cm_cmd->parsed()) {
      const GroupSpec gs = parse_group_spec(group);
      if (gs.order() > 15 && gs.order() <= g.max_order)
        err << "phc: warning: complete-mapping search over order " << gs.order() << " may run for hours\n";
      const MappingCount c = complete_mapping_count(gs, po.mapping);
      Json j = to_json(c);
      std::optional<Real> est;
      if (estimate) {
        est = asymptotic_cm_estimate(gs.order(), g.precision_bits);
        j["estimate"] = est->to_decimal(10).scientific();
        j["ratio"] = c.cm == 0 ? "0" : Real::from_rational(Rational(c.cm) / est->to_rational(), 64).to_decimal(6).positional();
        j["heuristic"] = true;
      }
      if (g.json) out << j.dump() << "\n";
      else {
        out << "group " << gs.name() << " (order " << gs.order() << ")\ncm " << c.cm << "\ns_value " << c.s_value << "\n";
        if (est) out << "estimate " << j["estimate"].get<std::string>() << " (heuristic), cm/estimate "
                     << j["ratio"].get<std::string>() << "\n";
      }
      return 0;
    }

    if (count_cmd->parsed()) {
      const Code code = parse_code_spec(code_spec);
      if (!at_text.empty()) {
        const CoordinateSet t = detail::parse_coords(at_text);
        const BigInt a = count_at(code, t, po.count.threads);
        if (g.json) out << Json{{"code", to_json(code.summary())}, {"T", coords_string(t)}, {"a_t", a.str()}}.dump() << "\n";
        else out << "|A_" << coords_string(t) << "| = " << a << "\n";
        return 0;
      }
      const SeparationReport r = count_separated(code, parse_method(method), po);
      if (g.json) out << to_json(r).dump() << "\n";
      else {
        out << "code " << r.code.construction << " q=" << r.code.q << " n=" << r.code.n << " m=" << r.code.m << "\n";
        out << "|S| " << r.s_count << (r.exact ? "" : " (lower bound)") << " via " << to_string(r.method) << "\n";
        for (std::size_t i = 0; i < r.a_single.size(); ++i) out << "|A_" << i + 1 << "| " << r.a_single[i] << "\n";
        for (const auto& [t, a] : r.a_by_t)
          if (t.size() > 1) out << "|A_" << coords_string(t) << "| " << a << "\n";
        if (!r.note.empty()) out << "note: " << r.note << "\n";
      }
      return 0;
    }

    if (rate_cmd->parsed()) {
      const Rounding mode = detail::parse_rounding(rounding);
      const int modes = int(probabilistic) + int(!code_spec.empty()) + int(!variant.empty());
      if (modes != 1) throw InvalidArgument("rate needs exactly one of --probabilistic, --code, --asymptotic");
      RateBound b;
      std::optional<SeparationReport> rep;
      if (probabilistic || !variant.empty()) {
        if (q == 0) throw InvalidArgument("-q is required");
        b = probabilistic ? rate_probabilistic(q, g.precision_bits)
                          : rate_asymptotic(q, detail::parse_variant(variant), g.precision_bits);
      } else {
        rep = count_for(parse_code_spec(code_spec));
        b = rate_for(*rep, g.precision_bits);
        if (!s_text.empty()) b.provenance = rep->code.construction + "/supplied";
      }
      if (g.json) {
        Json j = to_json(b);
        j["rate_digits"] = b.digits(digits, mode).scientific();
        j["stable"] = b.stable(digits, mode);
        if (rep && rep->s_count != 0) j["s_count"] = rep->s_count.str();
        out << j.dump() << "\n";
      } else {
        out << "rate " << b.digits(digits, mode).scientific() << (b.heuristic ? " (heuristic)" : "") << "\n";
        out << "defect " << to_string(b.defect) << "\n";
        out << "q=" << b.q << " n=" << b.n << " m=" << b.m << " provenance " << b.provenance << "\n";
      }
      return 0;
    }

    if (beats_cmd->parsed()) {
      const SeparationReport rep = count_for(parse_code_spec(code_spec));
      const BeatsCertificate cert = beats_for(rep);
      if (g.json) {
        Json j = to_json(cert);
        j["s_count"] = rep.s_count.str();
        j["code"] = to_json(rep.code);
        out << j.dump() << "\n";
      } else {
        out << (cert.beats ? "beats" : "does not beat") << " the probabilistic bound\n";
        out << "code defect          " << to_string(cert.code_defect) << "\n";
        out << "(random defect)^" << cert.n << "   " << to_string(cert.probabilistic_power) << "\n";
      }
      return 0;
    }

    if (t1_cmd->parsed()) {
      const auto rows = make_table1(max_q, po.mapping);
      if (g.json) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        out << Json{{"rows", arr}}.dump() << "\n";
      } else {
        out << std::left << std::setw(5) << "q" << std::setw(12) << "cm" << std::setw(14) << "(q!)^2/q^q"
            << std::setw(8) << "ratio" << "exact ratio\n";
        for (const auto& r : rows)
          out << std::setw(5) << r.q << std::setw(12) << r.cm.str() << std::setw(14) << r.threshold_1dp
              << std::setw(8) << r.ratio << r.ratio_exact << "\n";
      }
      return 0;
    }

    if (t2_cmd->parsed()) {
      Table2Options to;
      to.digits = t2_digits;
      to.rounding = detail::parse_rounding(t2_rounding);
      to.pipeline = po;
      const auto rows = make_table2(to);
      if (g.json) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        out << Json{{"rounding", t2_rounding}, {"rows", arr}}.dump() << "\n";
      } else {
        out << std::left << std::setw(5) << "q" << std::setw(18) << "R_new" << std::setw(18) << "R_ran"
            << "construction\n";
        for (const auto& r : rows)
          out << std::setw(5) << r.q << std::setw(18) << r.r_new_printed.scientific() << std::setw(18)
              << r.r_ran_printed.scientific() << r.candidates[r.winner].label << "\n";
      }
      return 0;
    }

    if (mc_cmd->parsed()) {
      mc.seed = g.seed;
      mc.threads = po.count.threads;
      std::optional<SubsetFamily> fam;
      if (family == "all") fam = SubsetFamily::all(mc.m, mc.q);
      else if (family.rfind("code:", 0) == 0) fam = SubsetFamily::separated_sets(parse_code_spec(family.substr(5)));
      else throw InvalidArgument("--family must be 'all' or 'code:<spec>'");
      const MonteCarloReport r = mc_friendly_check(mc, *fam);
      if (g.json) out << to_json(r).dump() << "\n";
      else {
        out << "seed " << mc.seed << " (splitmix64), trials " << mc.trials << ", |A| " << r.family_size << "\n";
        out << "expected " << static_cast<double>(r.expected) << " (" << to_string(r.expected) << ")\n";
        out << "empirical mean " << r.empirical_mean << ", standard error " << r.standard_error
            << (r.variance_exact ? " (exact variance)" : " (sample)") << ", z " << r.z_score << "\n";
        out << "expected <= M/(2q): " << (r.bound_condition ? "yes" : "no") << "\n";
        out << "size after deletion: min " << r.min_size_after_deletion << ", mean " << r.mean_size_after_deletion
            << ", target " << r.target_size << " reached in " << r.trials_reaching_target << " trials\n";
      }
      return 0;
    }

    if (repro_cmd->parsed()) {
      ReproOptions ro;
      ro.threads = po.count.threads;
      ro.seed = g.seed;
      ro.mc_trials = repro_trials;
      ro.precision_bits = g.precision_bits;
      const auto results = run_acceptance(ro);
      bool all = true;
      for (const auto& r : results) all = all && r.passed;
      if (g.json) {
        Json arr = Json::array();
        for (const auto& r : results)
          arr.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"details", r.details}});
        out << Json{{"passed", all}, {"criteria", arr}}.dump() << "\n";
      } else {
        for (const auto& r : results) {
          out << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.title << "\n";
          for (const auto& d : r.details)
            if (d.rfind("FAIL", 0) == 0) out << "     " << d << "\n";
        }
      }
      return all ? 0 : 1;
    }

    if (export_cmd->parsed()) {
      const Code code = parse_code_spec(code_spec);
      export_code(out_path, code);
      if (g.json) out << Json{{"path", out_path}, {"code", to_json(code.summary())}}.dump() << "\n";
      else out << "wrote " << code.size() << " codewords to " << out_path << "\n";
      return 0;
    }
  } catch (const FeasibilityError& e) {
    err << "phc: infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "phc: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace phc
