/**
 * @file codes.hpp
 * @brief Explicit q-ary block codes and the inner-code constructions.
 *
 * A Code is a materialized list of distinct codewords over symbol indices
 * [0, q). Constructions over a GroupSpec use its canonical element indexing,
 * and enumerate messages lexicographically (first message symbol most
 * significant).
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phc/algebra.hpp"
#include "phc/bigint.hpp"
#include "phc/errors.hpp"

namespace phc {

/// Separation engines keep one 64-bit symbol mask per coordinate.
inline constexpr unsigned kMaxAlphabet = 64;

enum class Construction { parity, sum, four_col, mds52_f4, shift_union, generic_linear, imported };

inline std::string to_string(Construction c) {
  switch (c) {
    case Construction::parity: return "parity";
    case Construction::sum: return "sum";
    case Construction::four_col: return "four-col";
    case Construction::mds52_f4: return "mds52-f4";
    case Construction::shift_union: return "shift-union";
    case Construction::generic_linear: return "generic-linear";
    case Construction::imported: return "imported";
  }
  return "unknown";
}

struct CodeLimits {
  std::uint64_t max_codewords = 1'000'000;
};

struct CodeSummary {
  unsigned q = 0;
  unsigned n = 0;
  std::uint64_t m = 0;
  std::string construction;
};

class Code {
 public:
  /// `symbols` is row-major, m rows of n symbols. Validates every invariant.
  Code(unsigned q, unsigned n, std::vector<std::uint8_t> symbols, Construction construction,
       std::optional<GroupSpec> group = std::nullopt,
       std::optional<unsigned> dual_distance_hint = std::nullopt)
      : q_(q), n_(n), symbols_(std::move(symbols)), construction_(construction),
        group_(std::move(group)), dual_distance_hint_(dual_distance_hint) {
    if (q_ < 2) throw InvalidArgument("alphabet size must be at least 2");
    if (q_ > kMaxAlphabet) throw InvalidArgument("alphabet size above " + std::to_string(kMaxAlphabet));
    if (n_ == 0) throw InvalidArgument("block length must be positive");
    if (symbols_.size() % n_) throw InvalidArgument("ragged codeword list");
    for (auto s : symbols_)
      if (s >= q_) throw InvalidArgument("symbol " + std::to_string(s) + " out of range [0," + std::to_string(q_) + ")");
    if (auto dup = find_duplicate()) throw InvalidArgument("duplicate codeword at row " + std::to_string(*dup));
  }

  unsigned q() const noexcept { return q_; }
  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return symbols_.size() / n_; }
  Construction construction() const noexcept { return construction_; }
  const std::optional<GroupSpec>& group() const noexcept { return group_; }
  std::optional<unsigned> dual_distance_hint() const noexcept { return dual_distance_hint_; }

  std::uint8_t symbol(std::size_t row, unsigned coord) const noexcept { return symbols_[row * n_ + coord]; }
  std::span<const std::uint8_t> row(std::size_t i) const noexcept {
    return {symbols_.data() + i * n_, n_};
  }
  std::span<const std::uint8_t> symbols() const noexcept { return symbols_; }

  CodeSummary summary() const { return {q_, n_, size(), to_string(construction_)}; }

  /// Codes compare by alphabet, length and codeword list; metadata is ignored.
  friend bool operator==(const Code& a, const Code& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.symbols_ == b.symbols_;
  }

  /// True when both codes hold the same codewords in any order.
  bool same_codeword_set(const Code& other) const {
    if (q_ != other.q_ || n_ != other.n_ || size() != other.size()) return false;
    return sorted_rows() == other.sorted_rows();
  }

 private:
  std::vector<std::vector<std::uint8_t>> sorted_rows() const {
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) rows.emplace_back(row(i).begin(), row(i).end());
    std::sort(rows.begin(), rows.end());
    return rows;
  }

  std::optional<std::size_t> find_duplicate() const {
    std::vector<std::size_t> idx(size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(row(a).begin(), row(a).end(), row(b).begin(), row(b).end());
    };
    std::sort(idx.begin(), idx.end(), less);
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (std::equal(row(idx[i - 1]).begin(), row(idx[i - 1]).end(), row(idx[i]).begin()))
        return std::max(idx[i - 1], idx[i]);
    return std::nullopt;
  }

  unsigned q_;
  unsigned n_;
  std::vector<std::uint8_t> symbols_;
  Construction construction_;
  std::optional<GroupSpec> group_;
  std::optional<unsigned> dual_distance_hint_;
};

namespace detail {

inline void check_alphabet(const GroupSpec& g) {
  if (g.order() > kMaxAlphabet)
    throw InvalidArgument("group " + g.name() + " has order above " + std::to_string(kMaxAlphabet));
}

inline std::uint64_t message_count(const GroupSpec& g, unsigned k, const CodeLimits& limits) {
  BigInt count = ipow(BigInt(g.order()), k);
  if (count > limits.max_codewords)
    throw FeasibilityError("code over " + g.name() + " with " + std::to_string(k) +
                               " message symbols exceeds the codeword cap " +
                               std::to_string(limits.max_codewords),
                           count.str() + " codewords");
  return static_cast<std::uint64_t>(count);
}

// Message number -> k symbols, first symbol most significant.
inline void unrank(std::uint64_t x, unsigned q, std::vector<std::uint32_t>& msg) {
  for (std::size_t i = msg.size(); i-- > 0;) {
    msg[i] = static_cast<std::uint32_t>(x % q);
    x /= q;
  }
}

}  // namespace detail

/// {(x_1, ..., x_{n-1}, x_1 + ... + x_{n-1})} over the group.
inline Code parity_code(const GroupSpec& g, unsigned n, const CodeLimits& limits = {}) {
  if (n < 2) throw InvalidArgument("parity code length must be at least 2");
  detail::check_alphabet(g);
  const CayleyTables t(g);
  const std::uint64_t m = detail::message_count(g, n - 1, limits);
  std::vector<std::uint8_t> sym;
  sym.reserve(m * n);
  std::vector<std::uint32_t> msg(n - 1);
  for (std::uint64_t x = 0; x < m; ++x) {
    detail::unrank(x, g.order(), msg);
    std::uint32_t s = 0;
    for (auto v : msg) {
      sym.push_back(static_cast<std::uint8_t>(v));
      s = t.add(s, v);
    }
    sym.push_back(static_cast<std::uint8_t>(s));
  }
  return Code(g.order(), n, std::move(sym), n == 3 ? Construction::sum : Construction::parity, g, n);
}

/// {(x, y, x+y)}: the length-3 parity code.
inline Code sum_code(const GroupSpec& g, const CodeLimits& limits = {}) { return parity_code(g, 3, limits); }

/// {(x, y, x+y, x+alpha*y)}. Requires alpha and alpha-1 invertible, which makes it [4,2] MDS.
inline Code four_col_code(const GroupSpec& g, Element alpha, const CodeLimits& limits = {}) {
  detail::check_alphabet(g);
  g.element(alpha.index);
  const Element alpha_minus_one = g.sub(alpha, g.one());
  if (!g.is_invertible(alpha) || !g.is_invertible(alpha_minus_one))
    throw InvalidArgument("multiplier " + g.format(alpha) + " not admissible over " + g.name() +
                          ": alpha and alpha-1 must both be invertible");
  const CayleyTables t(g);
  const std::uint64_t m = detail::message_count(g, 2, limits);
  const std::uint32_t q = g.order();
  std::vector<std::uint8_t> sym;
  sym.reserve(m * 4);
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 0; y < q; ++y) {
      sym.push_back(static_cast<std::uint8_t>(x));
      sym.push_back(static_cast<std::uint8_t>(y));
      sym.push_back(t.add(x, y));
      sym.push_back(t.add(x, t.mul(alpha.index, y)));
    }
  return Code(q, 4, std::move(sym), Construction::four_col, g, 3);
}

/// {(x, y, x+y, x-y)}: the multiplier -1.
inline Code four_col_code(const GroupSpec& g, const CodeLimits& limits = {}) {
  return four_col_code(g, g.neg(g.one()), limits);
}

/// The [5,2] MDS code {(a, b, a+b, a*alpha+b, a*(alpha+1)+b)} over GF(4) = GF(2)[alpha]/(alpha^2+alpha+1).
inline Code mds52_f4() {
  const GroupSpec f4 = GroupSpec::field(2, 2);
  const CayleyTables t(f4);
  constexpr std::uint32_t alpha = 2, alpha1 = 3;
  std::vector<std::uint8_t> sym;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      sym.push_back(static_cast<std::uint8_t>(a));
      sym.push_back(static_cast<std::uint8_t>(b));
      sym.push_back(t.add(a, b));
      sym.push_back(t.add(t.mul(a, alpha), b));
      sym.push_back(t.add(t.mul(a, alpha1), b));
    }
  return Code(4, 5, std::move(sym), Construction::mds52_f4, f4, 3);
}

/// Cyclic shifts of (0, 1, ..., q-1) in increasing shift order, then the q constant words.
inline Code shift_union_code(unsigned q) {
  if (!is_prime(q)) throw InvalidArgument("shift-union code needs a prime q, got " + std::to_string(q));
  if (q > kMaxAlphabet) throw InvalidArgument("alphabet size above " + std::to_string(kMaxAlphabet));
  std::vector<std::uint8_t> sym;
  sym.reserve(std::size_t{2} * q * q);
  for (unsigned s = 0; s < q; ++s)
    for (unsigned j = 0; j < q; ++j) sym.push_back(static_cast<std::uint8_t>((j + s) % q));
  for (unsigned i = 0; i < q; ++i)
    for (unsigned j = 0; j < q; ++j) sym.push_back(static_cast<std::uint8_t>(i));
  return Code(q, q, std::move(sym), Construction::shift_union, GroupSpec::cyclic(q));
}

/// Largest t such that every t coordinates carry every t-tuple equally often
/// (orthogonal-array strength). For linear codes over fields this is d-perp minus one.
inline unsigned orthogonal_array_strength(const Code& code) {
  const unsigned n = code.n(), q = code.q();
  unsigned strength = 0;
  for (unsigned t = 1; t <= n; ++t) {
    BigInt cells = ipow(BigInt(q), t);
    if (cells > code.size() || code.size() % static_cast<std::uint64_t>(cells) != 0) return strength;
    const std::uint64_t ncells = static_cast<std::uint64_t>(cells);
    const std::uint64_t lambda = code.size() / ncells;
    std::vector<unsigned> pick(t);
    for (unsigned i = 0; i < t; ++i) pick[i] = i;
    std::vector<std::uint64_t> hits(ncells);
    for (;;) {
      std::fill(hits.begin(), hits.end(), 0);
      for (std::size_t r = 0; r < code.size(); ++r) {
        std::uint64_t cell = 0;
        for (unsigned c : pick) cell = cell * q + code.symbol(r, c);
        ++hits[cell];
      }
      for (auto h : hits)
        if (h != lambda) return strength;
      int i = static_cast<int>(t) - 1;
      while (i >= 0 && pick[i] == n - t + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
    strength = t;
  }
  return strength;
}

/// Messages x in R^k map to (f_1(x), ..., f_n(x)), f_j(x) = sum_i forms[j][i] * x_i.
/// Rejects forms whose message map is not injective.
inline Code generic_linear_code(const GroupSpec& g, unsigned k,
                                const std::vector<std::vector<Element>>& forms,
                                const CodeLimits& limits = {}) {
  detail::check_alphabet(g);
  const unsigned n = static_cast<unsigned>(forms.size());
  if (k < 1 || n < k) throw InvalidArgument("generic linear code needs n >= k >= 1");
  for (const auto& f : forms) {
    if (f.size() != k) throw InvalidArgument("each linear form needs exactly k coefficients");
    for (auto c : f) g.element(c.index);
  }
  const CayleyTables t(g);
  const std::uint64_t m = detail::message_count(g, k, limits);
  std::vector<std::uint8_t> sym;
  sym.reserve(m * n);
  std::vector<std::uint32_t> msg(k);
  for (std::uint64_t x = 0; x < m; ++x) {
    detail::unrank(x, g.order(), msg);
    for (const auto& f : forms) {
      std::uint32_t v = 0;
      for (unsigned i = 0; i < k; ++i) v = t.add(v, t.mul(f[i].index, msg[i]));
      sym.push_back(static_cast<std::uint8_t>(v));
    }
  }
  try {
    Code probe(g.order(), n, sym, Construction::generic_linear, g);
    const unsigned strength = orthogonal_array_strength(probe);
    return Code(g.order(), n, std::move(sym), Construction::generic_linear, g, strength + 1);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("degenerate linear forms: ") + e.what());
  }
}

/// Maximum number of coordinates on which two distinct codewords agree.
inline unsigned max_pairwise_agreement(const Code& code) {
  unsigned best = 0;
  for (std::size_t a = 0; a < code.size(); ++a)
    for (std::size_t b = a + 1; b < code.size(); ++b) {
      unsigned agree = 0;
      for (unsigned c = 0; c < code.n(); ++c) agree += code.symbol(a, c) == code.symbol(b, c);
      best = std::max(best, agree);
    }
  return best;
}

/// |C| = q^k and no two codewords agree on k or more coordinates.
inline bool is_mds(const Code& code, unsigned k) {
  if (ipow(BigInt(code.q()), k) != code.size()) return false;
  return code.size() < 2 || max_pairwise_agreement(code) + 1 <= k;
}

/// Text format: header `q n m`, then m lines of n symbols; `#` starts a comment.
inline void write_code(std::ostream& os, const Code& code) {
  os << "# construction: " << to_string(code.construction()) << "\n";
  os << code.q() << ' ' << code.n() << ' ' << code.size() << '\n';
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (unsigned c = 0; c < code.n(); ++c) {
      if (c) os << ' ';
      os << static_cast<unsigned>(code.symbol(i, c));
    }
    os << '\n';
  }
}

inline Code read_code(std::istream& is) {
  std::vector<std::uint64_t> values;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::size_t> line_of;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        values.push_back(static_cast<std::uint64_t>(parse_bigint(tok)));
      } catch (const std::exception&) {
        throw InvalidArgument("line " + std::to_string(lineno) + ": malformed number '" + tok + "'");
      }
      line_of.push_back(lineno);
    }
  }
  if (values.size() < 3) throw InvalidArgument("code file: missing header 'q n m'");
  const std::uint64_t q = values[0], n = values[1], m = values[2];
  if (q < 2 || q > kMaxAlphabet || n == 0 || n > 4096)
    throw InvalidArgument("code file: bad header " + std::to_string(q) + " " + std::to_string(n) + " " +
                          std::to_string(m));
  if (values.size() - 3 != m * n)
    throw InvalidArgument("code file: expected " + std::to_string(m * n) + " symbols, found " +
                          std::to_string(values.size() - 3));
  std::vector<std::uint8_t> sym;
  sym.reserve(m * n);
  for (std::size_t i = 3; i < values.size(); ++i) {
    if (values[i] >= q)
      throw InvalidArgument("code file line " + std::to_string(line_of[i]) + ": symbol " +
                            std::to_string(values[i]) + " out of range");
    sym.push_back(static_cast<std::uint8_t>(values[i]));
  }
  return Code(static_cast<unsigned>(q), static_cast<unsigned>(n), std::move(sym), Construction::imported);
}

inline Code import_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open code file '" + path + "'");
  return read_code(in);
}

inline void export_code(const std::string& path, const Code& code) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write code file '" + path + "'");
  write_code(out, code);
}

/// Builds a code from `parity:<g>:<n>`, `sum:<g>`, `fourcol:<g>[:<multiplier-index>]`,
/// `mds52f4`, `shift:<q>` or `file:<path>`.
inline Code parse_code_spec(std::string_view spec, const CodeLimits& limits = {}) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto split_trailing_int = [](std::string_view s) -> std::pair<std::string_view, std::optional<std::uint32_t>> {
    const auto c = s.rfind(':');
    if (c == std::string_view::npos) return {s, std::nullopt};
    const auto tail = s.substr(c + 1);
    if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      return {s, std::nullopt};
    return {s.substr(0, c), detail::parse_u32(tail, "integer")};
  };
  if (kind == "mds52f4") {
    if (!rest.empty()) throw InvalidArgument("mds52f4 takes no arguments");
    return mds52_f4();
  }
  if (rest.empty()) throw InvalidArgument("bad code spec '" + std::string(spec) + "'");
  if (kind == "sum") return sum_code(parse_group_spec(rest), limits);
  if (kind == "parity") {
    auto [g, n] = split_trailing_int(rest);
    if (!n) throw InvalidArgument("parity code spec needs a length: parity:<group>:<n>");
    return parity_code(parse_group_spec(g), *n, limits);
  }
  if (kind == "fourcol") {
    auto [g, mult] = split_trailing_int(rest);
    const GroupSpec group = parse_group_spec(g);
    return mult ? four_col_code(group, group.element(*mult), limits) : four_col_code(group, limits);
  }
  if (kind == "shift") return shift_union_code(detail::parse_u32(rest, "prime"));
  if (kind == "file") return import_code(std::string(rest));
  throw InvalidArgument("unknown code kind '" + std::string(kind) + "'");
}

}  // namespace phc
