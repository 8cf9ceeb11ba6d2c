/**
 * @file algebra.hpp
 * @brief Finite abelian groups and commutative rings used as code alphabets.
 *
 * Three presentations are supported: the cyclic ring Z_q, the finite field
 * GF(p^r) given by a monic irreducible modulus, and finite products of these
 * with componentwise operations. Every element is identified with a symbol
 * index in [0, order):
 *
 *  - Z_q: the residue itself;
 *  - GF(p^r): base-p digits of the coefficient vector, constant term least
 *    significant (so the generator x of GF(4) is index 2 and x+1 is index 3);
 *  - products: mixed radix, the first component most significant.
 *
 * Index 0 is always the additive identity.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "phc/bigint.hpp"
#include "phc/errors.hpp"

namespace phc {

/// A group element, encoded by its canonical symbol index.
struct Element {
  std::uint32_t index = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Largest field order accepted; irreducibility is checked exhaustively below it.
inline constexpr std::uint32_t kMaxFieldOrder = 512;

namespace detail {

using Poly = std::vector<std::uint32_t>;  // coefficients, constant term first

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic polynomial b over Z_p.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
    poly_trim(a);
  }
  return a;
}

inline bool is_irreducible(const Poly& modulus, std::uint32_t p) {
  const std::size_t r = modulus.size() - 1;
  for (std::size_t d = 1; d <= r / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly f(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      f[d] = 1;
      if (poly_mod(modulus, f, p).empty()) return false;
    }
  }
  return true;
}

inline std::uint32_t parse_u32(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("malformed " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// A finite abelian group with a commutative ring structure and canonical indexing.
class GroupSpec {
 public:
  enum class Kind { cyclic, field, product };

  static GroupSpec cyclic(std::uint32_t q) {
    if (q < 2) throw InvalidArgument("cyclic group order must be at least 2");
    GroupSpec g;
    g.kind_ = Kind::cyclic;
    g.order_ = q;
    return g;
  }

  /// GF(p^r) with the built-in modulus: x^2+x+1 for GF(4), x^3+x+1 for GF(8),
  /// x^2+1 for GF(9), and x for prime fields.
  static GroupSpec field(std::uint32_t p, std::uint32_t r) {
    if (r == 1) return field(p, 1, {0, 1});
    if (p == 2 && r == 2) return field(2, 2, {1, 1, 1});
    if (p == 2 && r == 3) return field(2, 3, {1, 1, 0, 1});
    if (p == 3 && r == 2) return field(3, 2, {1, 0, 1});
    throw InvalidArgument("no built-in modulus for GF(" + std::to_string(p) + "^" +
                          std::to_string(r) + "); supply one explicitly");
  }

  /// GF(p^r) modulo the monic irreducible polynomial `modulus` (constant term first).
  static GroupSpec field(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (r == 0) throw InvalidArgument("field degree must be positive");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      order *= p;
      if (order > kMaxFieldOrder)
        throw InvalidArgument("field order exceeds " + std::to_string(kMaxFieldOrder));
    }
    if (modulus.size() != r + 1)
      throw InvalidArgument("modulus of GF(" + std::to_string(order) + ") needs " +
                            std::to_string(r + 1) + " coefficients");
    for (auto c : modulus)
      if (c >= p) throw InvalidArgument("modulus coefficient out of range for p=" + std::to_string(p));
    if (modulus.back() != 1) throw InvalidArgument("modulus must be monic");
    if (!detail::is_irreducible(modulus, p)) throw InvalidArgument("modulus is reducible over Z_p");
    GroupSpec g;
    g.kind_ = Kind::field;
    g.order_ = static_cast<std::uint32_t>(order);
    g.p_ = p;
    g.r_ = r;
    g.modulus_ = std::move(modulus);
    return g;
  }

  static GroupSpec product(std::vector<GroupSpec> components) {
    if (components.empty()) throw InvalidArgument("product needs at least one component");
    std::uint64_t order = 1;
    for (const auto& c : components) {
      order *= c.order();
      if (order > (1u << 20)) throw InvalidArgument("product order too large");
    }
    GroupSpec g;
    g.kind_ = Kind::product;
    g.order_ = static_cast<std::uint32_t>(order);
    g.components_ = std::move(components);
    return g;
  }

  Kind kind() const noexcept { return kind_; }
  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return r_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  const std::vector<GroupSpec>& components() const noexcept { return components_; }

  bool has_builtin_modulus() const {
    if (kind_ != Kind::field) return false;
    try {
      return field(p_, r_).modulus_ == modulus_;
    } catch (const InvalidArgument&) {
      return false;
    }
  }

  /// Canonical spec string, e.g. "z5", "gf9", "gf16:1,1,0,0,1", "prod(gf4,z3)".
  std::string name() const {
    switch (kind_) {
      case Kind::cyclic:
        return "z" + std::to_string(order_);
      case Kind::field: {
        std::string s = "gf" + std::to_string(order_);
        if (!has_builtin_modulus()) {
          s += ':';
          for (std::size_t i = 0; i < modulus_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(modulus_[i]);
          }
        }
        return s;
      }
      case Kind::product: {
        std::string s = "prod(";
        for (std::size_t i = 0; i < components_.size(); ++i) {
          if (i) s += ',';
          s += components_[i].name();
        }
        return s + ")";
      }
    }
    return {};
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.kind_ == b.kind_ && a.order_ == b.order_ && a.p_ == b.p_ && a.r_ == b.r_ &&
           a.modulus_ == b.modulus_ && a.components_ == b.components_;
  }

  Element element(std::uint32_t index) const {
    if (index >= order_)
      throw InvalidElement("element index " + std::to_string(index) + " out of range for " + name());
    return Element(index);
  }

  Element zero() const noexcept { return Element(0); }

  Element one() const {
    switch (kind_) {
      case Kind::cyclic:
      case Kind::field:
        return Element(1);
      case Kind::product: {
        std::vector<Element> parts;
        for (const auto& c : components_) parts.push_back(c.one());
        return compose(parts);
      }
    }
    return Element(0);
  }

  Element add(Element a, Element b) const {
    check(a);
    check(b);
    switch (kind_) {
      case Kind::cyclic:
        return Element((a.index + b.index) % order_);
      case Kind::field: {
        auto da = digits(a), db = digits(b);
        for (std::size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % p_;
        return from_digits(da);
      }
      case Kind::product:
        return componentwise(a, b, [](const GroupSpec& g, Element x, Element y) { return g.add(x, y); });
    }
    return a;
  }

  Element neg(Element a) const {
    check(a);
    switch (kind_) {
      case Kind::cyclic:
        return Element((order_ - a.index) % order_);
      case Kind::field: {
        auto da = digits(a);
        for (auto& d : da) d = (p_ - d) % p_;
        return from_digits(da);
      }
      case Kind::product: {
        auto parts = decompose(a);
        for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = components_[i].neg(parts[i]);
        return compose(parts);
      }
    }
    return a;
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    check(a);
    check(b);
    switch (kind_) {
      case Kind::cyclic:
        return Element(static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a.index) * b.index) % order_));
      case Kind::field: {
        const auto da = digits(a), db = digits(b);
        detail::Poly prod(2 * r_, 0);
        for (std::uint32_t i = 0; i < r_; ++i)
          for (std::uint32_t j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        auto rem = detail::poly_mod(prod, modulus_, p_);
        rem.resize(r_, 0);
        return from_digits(rem);
      }
      case Kind::product:
        return componentwise(a, b, [](const GroupSpec& g, Element x, Element y) { return g.mul(x, y); });
    }
    return a;
  }

  bool is_invertible(Element a) const {
    check(a);
    switch (kind_) {
      case Kind::cyclic:
        return std::gcd(a.index, order_) == 1;
      case Kind::field:
        return a.index != 0;
      case Kind::product: {
        const auto parts = decompose(a);
        for (std::size_t i = 0; i < parts.size(); ++i)
          if (!components_[i].is_invertible(parts[i])) return false;
        return true;
      }
    }
    return false;
  }

  Element sum_of_all_elements() const {
    Element s = zero();
    for (std::uint32_t i = 0; i < order_; ++i) s = add(s, Element(i));
    return s;
  }

  /// Component elements of a product element (a one-element list otherwise).
  std::vector<Element> decompose(Element a) const {
    check(a);
    if (kind_ != Kind::product) return {a};
    std::vector<Element> parts(components_.size());
    std::uint32_t rest = a.index;
    for (std::size_t i = components_.size(); i-- > 0;) {
      parts[i] = Element(rest % components_[i].order());
      rest /= components_[i].order();
    }
    return parts;
  }

  Element compose(const std::vector<Element>& parts) const {
    if (kind_ != Kind::product) {
      if (parts.size() != 1) throw InvalidArgument("expected a single component");
      return element(parts[0].index);
    }
    if (parts.size() != components_.size()) throw InvalidArgument("component count mismatch");
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      components_[i].check(parts[i]);
      idx = idx * components_[i].order() + parts[i].index;
    }
    return Element(idx);
  }

  /// Human-readable element: "3", "a+1" (a is the field generator), "(a,2)".
  std::string format(Element e) const {
    check(e);
    switch (kind_) {
      case Kind::cyclic:
        return std::to_string(e.index);
      case Kind::field: {
        const auto d = digits(e);
        std::string s;
        for (std::size_t i = d.size(); i-- > 0;) {
          if (d[i] == 0) continue;
          if (!s.empty()) s += '+';
          if (i == 0) {
            s += std::to_string(d[i]);
          } else {
            if (d[i] != 1) s += std::to_string(d[i]);
            s += 'a';
            if (i > 1) s += "^" + std::to_string(i);
          }
        }
        return s.empty() ? "0" : s;
      }
      case Kind::product: {
        const auto parts = decompose(e);
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) s += ',';
          s += components_[i].format(parts[i]);
        }
        return s + ")";
      }
    }
    return {};
  }

 private:
  GroupSpec() = default;

  void check(Element a) const {
    if (a.index >= order_)
      throw InvalidElement("element index " + std::to_string(a.index) + " out of range for " + name());
  }

  std::vector<std::uint32_t> digits(Element a) const {
    std::vector<std::uint32_t> d(r_);
    std::uint32_t v = a.index;
    for (std::uint32_t i = 0; i < r_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  }

  Element from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
    return Element(v);
  }

  template <class Op>
  Element componentwise(Element a, Element b, Op op) const {
    auto pa = decompose(a);
    const auto pb = decompose(b);
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = op(components_[i], pa[i], pb[i]);
    return compose(pa);
  }

  Kind kind_ = Kind::cyclic;
  std::uint32_t order_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<GroupSpec> components_;
};

/// Precomputed Cayley tables for the hot loops of the counting engines.
class CayleyTables {
 public:
  static constexpr std::uint32_t kMaxOrder = 256;

  explicit CayleyTables(const GroupSpec& g) : q_(g.order()) {
    if (q_ > kMaxOrder) throw InvalidArgument("group " + g.name() + " too large for table arithmetic");
    add_.resize(std::size_t{q_} * q_);
    mul_.resize(std::size_t{q_} * q_);
    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      neg_[a] = static_cast<std::uint8_t>(g.neg(Element(a)).index);
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<std::uint8_t>(g.add(Element(a), Element(b)).index);
        mul_[a * q_ + b] = static_cast<std::uint8_t>(g.mul(Element(a), Element(b)).index);
      }
    }
  }

  std::uint32_t order() const noexcept { return q_; }
  std::uint8_t add(std::uint32_t a, std::uint32_t b) const noexcept { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint32_t a) const noexcept { return neg_[a]; }
  std::uint8_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }

 private:
  std::uint32_t q_;
  std::vector<std::uint8_t> add_, mul_, neg_;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view s) : s_(s) {}

  GroupSpec parse_all() {
    GroupSpec g = parse();
    if (pos_ != s_.size()) fail("trailing characters");
    return g;
  }

 private:
  GroupSpec parse() {
    if (consume("prod(")) {
      std::vector<GroupSpec> parts{parse()};
      while (consume(",")) parts.push_back(parse());
      if (!consume(")")) fail("expected ')'");
      return GroupSpec::product(std::move(parts));
    }
    if (consume("gf")) {
      const std::uint32_t n = number();
      std::uint32_t p = 0, r = 0;
      if (consume("^")) {
        p = n;
        r = number();
      } else {
        split_prime_power(n, p, r);
      }
      if (consume(":")) {
        std::vector<std::uint32_t> coeffs{number()};
        // exactly r+1 coefficients, so a modulus inside prod(...) is unambiguous
        while (coeffs.size() < r + 1 && consume(",")) coeffs.push_back(number());
        return GroupSpec::field(p, r, std::move(coeffs));
      }
      return GroupSpec::field(p, r);
    }
    if (consume("z")) return GroupSpec::cyclic(number());
    fail("expected 'z', 'gf' or 'prod('");
  }

  static void split_prime_power(std::uint32_t n, std::uint32_t& p, std::uint32_t& r) {
    for (std::uint32_t d = 2; d <= n; ++d) {
      if (n % d) continue;
      p = d;
      r = 0;
      std::uint32_t m = n;
      while (m % d == 0) {
        m /= d;
        ++r;
      }
      if (m != 1) throw InvalidArgument("GF(" + std::to_string(n) + ") does not exist: not a prime power");
      return;
    }
    throw InvalidArgument("GF(" + std::to_string(n) + ") does not exist");
  }

  std::uint32_t number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected a number");
    return parse_u32(s_.substr(start, pos_ - start), "number");
  }

  bool consume(std::string_view tok) {
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("bad group spec '" + std::string(s_) + "' at position " +
                          std::to_string(pos_) + ": " + why);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `z<q>`, `gf<p^r>` (or `gf<p>^<r>`), `gf<p^r>:<c0,...,cr>` and
/// `prod(<spec>,<spec>,...)`. Modulus coefficients are listed constant term first.
inline GroupSpec parse_group_spec(std::string_view s) { return detail::SpecParser(s).parse_all(); }

}  // namespace phc
