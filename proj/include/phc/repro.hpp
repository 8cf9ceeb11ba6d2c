/**
 * @file repro.hpp
 * @brief The acceptance suite: every published count and rate, re-derived and checked.
 *
 * Shared by `phc repro` and the acceptance test binary. Each criterion reports
 * pass/fail plus one line per individual check.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "phc/bounds.hpp"
#include "phc/codes.hpp"
#include "phc/mappings.hpp"
#include "phc/montecarlo.hpp"
#include "phc/pipeline.hpp"
#include "phc/separation.hpp"
#include "phc/tables.hpp"

namespace phc {

inline constexpr double kCmTimeLimitSeconds = 10.0;
inline constexpr double kBruteTimeLimitSeconds = 5.0;

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = true;
  std::vector<std::string> details;  ///< "ok: ..." or "FAIL: ..."
  double seconds = 0;
};

struct ReproOptions {
  unsigned threads = 1;
  std::uint64_t seed = 20190601;
  unsigned mc_trials = 200;
  unsigned precision_bits = kDefaultPrecisionBits;
};

namespace detail {

class Checker {
 public:
  explicit Checker(CriterionResult& r) : r_(r) {}

  bool expect(bool ok, const std::string& what) {
    r_.details.push_back((ok ? "ok: " : "FAIL: ") + what);
    if (!ok) r_.passed = false;
    return ok;
  }

  template <class F>
  double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

 private:
  CriterionResult& r_;
};

inline std::string secs(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

inline std::string eq(const BigInt& got, const BigInt& want) { return got.str() + (got == want ? " == " : " != ") + want.str(); }

inline CriterionResult run_criterion(const std::string& id, const std::string& title,
                                     const std::function<void(Checker&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  Checker c(r);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline void check_cm(Checker& c, const std::string& group, const BigInt& want, const MappingOptions& mo) {
  BigInt cm;
  const double s = c.timed([&] { cm = complete_mapping_count(parse_group_spec(group), mo).cm; });
  c.expect(cm == want, "cm(" + group + ") " + eq(cm, want));
  c.expect(s < kCmTimeLimitSeconds, "cm(" + group + ") in " + secs(s));
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(const ReproOptions& opt = {}) {
  using detail::Checker;
  std::vector<CriterionResult> out;
  MappingOptions mo;
  mo.threads = opt.threads;
  CountOptions co;
  co.threads = opt.threads;
  PipelineOptions po{co, mo, opt.precision_bits};

  out.push_back(detail::run_criterion("1", "complete mappings of cyclic groups", [&](Checker& c) {
    detail::check_cm(c, "z5", 15, mo);
    detail::check_cm(c, "z7", 133, mo);
    detail::check_cm(c, "z9", 2025, mo);
    detail::check_cm(c, "z11", 37851, mo);
    const BigInt cm13 = complete_mapping_count(GroupSpec::cyclic(13), mo).cm;
    const Decimal shown = Real::from_rational(Rational(cm13), 64).to_decimal(3);
    c.expect(shown == parse_decimal("1.03e6"), "cm(z13) = " + cm13.str() + " rounds to " + shown.scientific());
  }));

  out.push_back(detail::run_criterion("2", "complete mappings of finite fields", [&](Checker& c) {
    detail::check_cm(c, "gf4", 8, mo);
    detail::check_cm(c, "gf8", 384, mo);
    detail::check_cm(c, "gf9", 2241, mo);
    const BigInt z9 = complete_mapping_count(GroupSpec::cyclic(9), mo).cm;
    const BigInt f9 = complete_mapping_count(GroupSpec::field(3, 2), mo).cm;
    c.expect(z9 != f9, "cm(gf9) = " + f9.str() + " differs from cm(z9) = " + z9.str());
  }));

  out.push_back(detail::run_criterion("3", "even cyclic groups have no complete mapping", [&](Checker& c) {
    for (unsigned q : {4u, 6u, 8u}) {
      const GroupSpec g = GroupSpec::cyclic(q);
      const BigInt cm = complete_mapping_count(g, mo).cm;
      const Element s = g.sum_of_all_elements();
      c.expect(cm == 0 && s.index != 0,
               "cm(" + g.name() + ") = " + cm.str() + ", sum of elements = " + g.format(s));
    }
  }));

  out.push_back(detail::run_criterion("4", "separated-subset golden counts", [&](Checker& c) {
    SeparationReport r;
    double s = c.timed([&] { r = count_separated_bruteforce(four_col_code(GroupSpec::cyclic(3)), co); });
    c.expect(r.s_count == 84, "four-col z3: |S| " + detail::eq(r.s_count, 84) + " in " + detail::secs(s));
    c.expect(s < kBruteTimeLimitSeconds, "four-col z3 within " + detail::secs(kBruteTimeLimitSeconds));
    s = c.timed([&] { r = count_separated_bruteforce(mds52_f4(), co); });
    c.expect(r.s_count == 1100, "mds52f4: |S| " + detail::eq(r.s_count, 1100) + " in " + detail::secs(s));
    c.expect(s < kBruteTimeLimitSeconds, "mds52f4 within " + detail::secs(kBruteTimeLimitSeconds));
  }));

  out.push_back(detail::run_criterion("5", "shift-union closed form against brute force", [&](Checker& c) {
    const std::pair<unsigned, unsigned> cases[] = {{3, 20}, {5, 152}, {7, 884}};
    for (auto [q, want] : cases) {
      const BigInt brute = count_separated_bruteforce(shift_union_code(q), co).s_count;
      const BigInt closed = shift_union_closed_form(q);
      c.expect(brute == closed && closed == want,
               "q=" + std::to_string(q) + ": brute " + brute.str() + ", formula " + closed.str());
    }
  }));

  out.push_back(detail::run_criterion("6", "brute force equals inclusion-exclusion", [&](Checker& c) {
    std::vector<std::pair<std::string, Code>> codes;
    for (const char* spec : {"sum:z3", "sum:z4", "sum:z5", "sum:gf4", "parity:z3:2", "parity:z3:4", "parity:z3:5",
                             "parity:z4:2", "parity:z4:4", "parity:gf4:2", "parity:gf4:4", "parity:z5:2",
                             "fourcol:z3", "fourcol:z5", "fourcol:gf4:2", "mds52f4"})
      codes.emplace_back(spec, parse_code_spec(spec));
    SplitMix64 rng(opt.seed);
    const char* rings[] = {"z3", "gf4", "z4"};
    unsigned made = 0;
    for (unsigned attempt = 0; made < 10 && attempt < 1000; ++attempt) {
      const GroupSpec g = parse_group_spec(rings[rng.below(3)]);
      const unsigned k = 1 + static_cast<unsigned>(rng.below(3));
      const unsigned n = k + static_cast<unsigned>(rng.below(6 - k));
      std::vector<std::vector<Element>> forms(n, std::vector<Element>(k));
      for (auto& f : forms)
        for (auto& e : f) e = g.element(static_cast<std::uint32_t>(rng.below(g.order())));
      try {
        Code code = generic_linear_code(g, k, forms);
        if (binomial(code.size(), code.q()) > 1'000'000) continue;
        codes.emplace_back("random " + g.name() + " k=" + std::to_string(k) + " n=" + std::to_string(n),
                           std::move(code));
        ++made;
      } catch (const InvalidArgument&) {
      }
    }
    c.expect(codes.size() >= 20, std::to_string(codes.size()) + " codes compared");
    for (const auto& [label, code] : codes) {
      const BigInt b = count_separated_bruteforce(code, co).s_count;
      const BigInt x = count_separated_ix(code, co).s_count;
      c.expect(b == x, label + ": brute " + b.str() + ", inclusion-exclusion " + x.str());
    }
  }));

  out.push_back(detail::run_criterion("7", "|A_T| for |T| below the dual distance", [&](Checker& c) {
    for (const char* spec : {"sum:z3", "sum:z5", "fourcol:z3", "fourcol:z5"}) {
      const Code code = parse_code_spec(spec);
      const unsigned q = code.q(), k = 2, dperp = *code.dual_distance_hint();
      for (std::uint32_t bits = 1; bits < (1u << code.n()); ++bits) {
        CoordinateSet t;
        for (unsigned i = 0; i < code.n(); ++i)
          if (bits >> i & 1u) t.push_back(i);
        if (t.size() > dperp - 1) continue;
        const auto j = static_cast<unsigned>(t.size());
        const BigInt want = ipow(factorial(q), j - 1) * ipow(BigInt(q), q * (k - j));
        const BigInt got = count_at(code, t, opt.threads);
        c.expect(got == want, std::string(spec) + " T=" + std::to_string(bits) + ": " + detail::eq(got, want));
      }
    }
  }));

  out.push_back(detail::run_criterion("8", "rate reproduction to the printed digits", [&](Checker& c) {
    Table2Options to;
    to.pipeline = po;
    const std::pair<unsigned, std::pair<const char*, const char*>> printed[] = {
        {4, {"0.0495", "0.0473"}},          {5, {"0.01452", "0.01412"}},
        {7, {"0.001483", "0.001476"}},      {8, {"4.95909e-4", "4.95905e-4"}},
        {9, {"1.689931e-4", "1.689929e-4"}}, {11, {"2.01855746e-5", "2.01855739e-5"}}};
    for (const auto& [q, pr] : printed) {
      const Table2Row row = make_table2_row(q, to);
      const Decimal want_new = parse_decimal(pr.first), want_ran = parse_decimal(pr.second);
      const std::string tag = "q=" + std::to_string(q) + " ";
      c.expect(row.r_new_printed == want_new, tag + "R_new " + row.r_new_printed.scientific() + " vs printed " +
                                                  want_new.scientific() + " (" + row.candidates[row.winner].label +
                                                  ", full " + row.r_new().rate.to_decimal(12).scientific() + ")");
      c.expect(row.r_ran_printed == want_ran, tag + "R_ran " + row.r_ran_printed.scientific() + " vs printed " +
                                                  want_ran.scientific() + " (full " +
                                                  row.r_ran.rate.to_decimal(12).scientific() + ")");
      c.expect(row.stable, tag + "digits stable at doubled precision");
    }
    const RateBound f4 = rate_from_inner(4, 5, 16, 1100, opt.precision_bits);
    c.expect(f4.digits(5) == parse_decimal("0.049586"), "[5,2] code over GF(4): " + f4.digits(8).positional());
    const RateBound r3 = rate_from_inner(3, 4, 9, 84, opt.precision_bits);
    c.expect(r3.defect == Rational(25, 81), "q=3 defect " + to_string(r3.defect) + " == (5/9)^2");
    const Real quarter_log = log2(Rational(9, 5), 2 * opt.precision_bits).divided_by(4, 2 * opt.precision_bits);
    c.expect(r3.digits(30) == quarter_log.to_decimal(30),
             "q=3 rate " + r3.digits(15).positional() + " == log2(9/5)/4");
  }));

  out.push_back(detail::run_criterion("9", "exact comparisons with the probabilistic bound", [&](Checker& c) {
    auto check = [&](const std::string& spec, bool want) {
      const Code code = parse_code_spec(spec);
      const SeparationReport rep = count_separated(code, MethodRequest::automatic, po);
      const BeatsCertificate cert = beats_for(rep);
      c.expect(cert.beats == want, spec + (cert.beats ? " beats" : " does not beat") + " (|S| = " +
                                       rep.s_count.str() + ", " + to_string(rep.method) + ")");
      if (code.construction() == Construction::sum) {
        const BigInt cm = complete_mapping_count(*code.group(), mo).cm;
        const bool sign = parity_beats_condition(code.q(), 3, cm);
        const bool thr = Rational(cm) > sum_code_threshold(code.q());
        c.expect(sign == cert.beats && thr == cert.beats, spec + ": sign condition and cm threshold agree");
      }
    };
    for (const char* s : {"sum:z5", "sum:z7", "sum:z9", "sum:z11", "sum:z13", "sum:gf4", "sum:gf8", "sum:gf9",
                          "shift:5", "shift:7", "mds52f4"})
      check(s, true);
    for (const char* s : {"sum:z4", "sum:z6", "sum:z8"}) check(s, false);
  }));

  out.push_back(detail::run_criterion("10", "Monte Carlo expectation of unfriendly subsets", [&](Checker& c) {
    ExperimentConfig cfg;
    cfg.m = 9;
    cfg.q = 3;
    cfg.N = 20;
    cfg.M = 64;
    cfg.trials = opt.mc_trials;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    const std::pair<const char*, SubsetFamily> families[] = {
        {"all subsets", SubsetFamily::all(9, 3)},
        {"separated sets of sum:z3", SubsetFamily::separated_sets(sum_code(GroupSpec::cyclic(3)))}};
    for (const auto& [label, fam] : families) {
      const MonteCarloReport r = mc_friendly_check(cfg, fam);
      std::ostringstream os;
      os << label << ": |A|=" << fam.size() << " mean " << r.empirical_mean << " vs expected "
         << static_cast<double>(r.expected) << ", SE " << r.standard_error << ", z " << r.z_score;
      c.expect(cfg.trials >= 200 && r.within_3se, os.str());
    }
  }));

  out.push_back(detail::run_criterion("note", "four-column bound exceeds the three-column bound", [&](Checker& c) {
    for (unsigned q : {5u, 7u, 9u, 11u}) {
      const BigInt cm = complete_mapping_count(GroupSpec::cyclic(q), mo).cm;
      const BigInt m = ipow(BigInt(q), 2);
      const RateBound three = rate_from_inner(q, 3, m, parity_closed_form(q, 3, cm), opt.precision_bits);
      const RateBound four = rate_from_inner(q, 4, m, fourcol_lower_bound(q, cm), opt.precision_bits);
      // rate4 > rate3  <=>  defect4^3 < defect3^4
      const bool exact = rpow(four.defect, 3) < rpow(three.defect, 4);
      c.expect(exact && four.rate > three.rate, "q=" + std::to_string(q) + ": four-col " +
                                                    four.digits(10).scientific() + " > three-col " +
                                                    three.digits(10).scientific());
    }
  }));
  return out;
}

}  // namespace phc
