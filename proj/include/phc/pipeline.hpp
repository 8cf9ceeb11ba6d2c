/**
 * @file pipeline.hpp
 * @brief Method selection for |S(C)|: brute force, inclusion-exclusion or closed form.
 */
#pragma once

#include <string>

#include "phc/bounds.hpp"
#include "phc/codes.hpp"
#include "phc/mappings.hpp"
#include "phc/separation.hpp"

namespace phc {

enum class MethodRequest { automatic, brute, ix, closed };

inline MethodRequest parse_method(const std::string& s) {
  if (s == "auto") return MethodRequest::automatic;
  if (s == "brute") return MethodRequest::brute;
  if (s == "ix") return MethodRequest::ix;
  if (s == "closed") return MethodRequest::closed;
  throw InvalidArgument("unknown method '" + s + "' (expected auto, brute, ix or closed)");
}

struct PipelineOptions {
  CountOptions count;
  MappingOptions mapping;
  unsigned precision_bits = kDefaultPrecisionBits;
};

/// Closed forms: parity codes (A_n from complete mappings when n = 3, else counted),
/// shift-union codes, and the four-column lower bound.
inline SeparationReport count_separated_closed(const Code& code, const PipelineOptions& opt = {}) {
  SeparationReport rep;
  rep.code = code.summary();
  const unsigned q = code.q(), n = code.n();
  switch (code.construction()) {
    case Construction::sum:
    case Construction::parity: {
      if (!code.group()) break;
      BigInt a_n;
      if (n == 3) {
        a_n = complete_mapping_count(*code.group(), opt.mapping).cm;
        rep.note = "A_3 = " + a_n.str() + " complete mappings of " + code.group()->name();
      } else {
        CoordinateSet all(n);
        for (unsigned c = 0; c < n; ++c) all[c] = c;
        a_n = count_at(code, all, opt.count.threads);
        rep.note = "A_n = " + a_n.str() + " by backtracking";
      }
      rep.s_count = parity_closed_form(q, n, a_n);
      // every single coordinate set of a parity code has (q!)^0 q^{q(n-2)} members
      rep.a_single.assign(n, ipow(BigInt(q), q * (n - 2)));
      rep.method = CountMethod::closed_form_parity;
      return rep;
    }
    case Construction::shift_union:
      rep.s_count = shift_union_closed_form(q);
      rep.method = CountMethod::closed_form_shift;
      return rep;
    case Construction::four_col: {
      if (!code.group()) break;
      const BigInt cm = complete_mapping_count(*code.group(), opt.mapping).cm;
      rep.s_count = fourcol_lower_bound(q, cm);
      rep.method = CountMethod::lower_bound_fourcol;
      rep.exact = false;
      rep.note = "lower bound 4q^q - 6q! + 3cm with cm = " + cm.str();
      return rep;
    }
    default:
      break;
  }
  throw InvalidArgument("no closed form for a " + to_string(code.construction()) + " code");
}

/// Automatic choice: an exact closed form if one exists, else inclusion-exclusion
/// when n is within the cap, else brute force.
inline SeparationReport count_separated(const Code& code, MethodRequest method, const PipelineOptions& opt = {}) {
  switch (method) {
    case MethodRequest::brute: return count_separated_bruteforce(code, opt.count);
    case MethodRequest::ix: return count_separated_ix(code, opt.count);
    case MethodRequest::closed: return count_separated_closed(code, opt);
    case MethodRequest::automatic: break;
  }
  const auto c = code.construction();
  if ((c == Construction::sum || c == Construction::parity) && code.group()) return count_separated_closed(code, opt);
  if (c == Construction::shift_union) return count_separated_closed(code, opt);
  if (code.n() <= opt.count.max_ix_coords) return count_separated_ix(code, opt.count);
  return count_separated_bruteforce(code, opt.count);
}

inline std::string provenance(const SeparationReport& rep) {
  return rep.code.construction + "/" + to_string(rep.method);
}

inline RateBound rate_for(const SeparationReport& rep, unsigned bits = kDefaultPrecisionBits) {
  return rate_from_inner(rep.code.q, rep.code.n, BigInt(rep.code.m), rep.s_count, bits, provenance(rep));
}

inline BeatsCertificate beats_for(const SeparationReport& rep) {
  return beats_probabilistic(rep.code.q, rep.code.n, BigInt(rep.code.m), rep.s_count);
}

}  // namespace phc
