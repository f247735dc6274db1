#pragma once
// Exact multivariate Laurent polynomials over the integers.  Variables are
// indexed by a frozen table of arc ids; coefficients are arbitrary-precision
// integers.  Terms live in a lexicographically ordered map, which doubles as
// the canonical form.

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgon/surface.hpp"

namespace pgon {

using BigInt = boost::multiprecision::cpp_int;
using Exponents = std::vector<int>;

/// Frozen variable ordering.  Keys are arc ids (tagged or ordinary,
/// depending on context); boundary edges never appear (their variables are
/// specialized to 1 on construction).
struct VarTable {
  std::vector<ArcId> keys;  // index -> arc id, strictly increasing

  static std::shared_ptr<const VarTable> of(std::vector<ArcId> keys) {
    auto t = std::make_shared<VarTable>();
    t->keys = std::move(keys);
    for (size_t k = 1; k < t->keys.size(); ++k)
      if (t->keys[k - 1] >= t->keys[k])
        throw std::invalid_argument("variable table keys must be strictly increasing");
    return t;
  }

  int size() const { return (int)keys.size(); }
  int index_of(ArcId id) const {
    for (int k = 0; k < size(); ++k)
      if (keys[k] == id) return k;
    return -1;
  }
  bool operator==(const VarTable& o) const { return keys == o.keys; }
};

using VarTableRef = std::shared_ptr<const VarTable>;

struct Monomial {
  Exponents exps;
  BigInt coeff;
};

/// True iff some exponent is negative.
inline bool is_proper_laurent_monomial(const Exponents& e) {
  for (int x : e)
    if (x < 0) return true;
  return false;
}
inline bool is_proper_laurent_monomial(const Monomial& m) {
  return is_proper_laurent_monomial(m.exps);
}

/// Sum of exponents over a subset of variable indices.
inline int degree_wrt(const Exponents& e, const std::vector<int>& subset) {
  int d = 0;
  for (int k : subset) d += e.at(k);
  return d;
}

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(VarTableRef table) : table_(std::move(table)) {}

  static LaurentPoly zero(VarTableRef table) { return LaurentPoly(std::move(table)); }
  static LaurentPoly constant(VarTableRef table, BigInt c) {
    LaurentPoly p(std::move(table));
    if (c != 0) p.terms_[Exponents(p.table_->size(), 0)] = std::move(c);
    return p;
  }
  static LaurentPoly monomial(VarTableRef table, Exponents e, BigInt c) {
    LaurentPoly p(std::move(table));
    if ((int)e.size() != p.table_->size())
      throw std::invalid_argument("monomial exponent size mismatch");
    if (c != 0) p.terms_[std::move(e)] = std::move(c);
    return p;
  }
  static LaurentPoly variable(VarTableRef table, int index, int power = 1) {
    Exponents e(table->size(), 0);
    e.at(index) = power;
    return monomial(std::move(table), std::move(e), 1);
  }

  const VarTableRef& table() const { return table_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  bool is_monomial() const { return terms_.size() == 1; }
  Monomial single_term() const {
    if (!is_monomial()) throw std::logic_error("not a monomial");
    return {terms_.begin()->first, terms_.begin()->second};
  }

  void add_term(const Exponents& e, const BigInt& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly out = a;
    for (auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly out = a;
    for (auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly out(a.table_);
    Exponents e(a.table_->size());
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  LaurentPoly operator*(const BigInt& c) const {
    LaurentPoly out(table_);
    if (c == 0) return out;
    for (auto& [e, v] : terms_) out.terms_[e] = v * c;
    return out;
  }
  LaurentPoly operator-() const { return *this * BigInt(-1); }

  bool operator==(const LaurentPoly& o) const {
    return table_->keys == o.table_->keys && terms_ == o.terms_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly pow(int k) const {
    if (k < 0) {
      if (!is_monomial()) throw std::invalid_argument("negative power of a non-monomial");
      Monomial m = single_term();
      if (m.coeff != 1 && m.coeff != -1)
        throw std::invalid_argument("negative power needs a unit coefficient");
      Exponents e = m.exps;
      for (auto& x : e) x = -x;
      LaurentPoly inv = monomial(table_, e, m.coeff);
      return inv.pow(-k);
    }
    LaurentPoly out = constant(table_, 1);
    for (int x = 0; x < k; ++x) out = out * *this;
    return out;
  }

  /// Multiply by a single Laurent monomial (cheap exponent shift).
  LaurentPoly shifted(const Exponents& shift, const BigInt& coeff = 1) const {
    LaurentPoly out(table_);
    Exponents e(table_->size());
    for (auto& [ea, ca] : terms_) {
      for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + shift[k];
      out.terms_[e] = ca * coeff;
    }
    return out;
  }

  Exponents min_exponents() const {
    Exponents m(table_->size(), 0);
    bool first = true;
    for (auto& [e, c] : terms_) {
      for (size_t k = 0; k < m.size(); ++k) m[k] = first ? e[k] : std::min(m[k], e[k]);
      first = false;
    }
    return m;
  }

  /// All coefficients strictly positive.
  bool all_coefficients_positive() const {
    for (auto& [e, c] : terms_)
      if (c <= 0) return false;
    return true;
  }

  /// Every term is a proper Laurent monomial (some negative exponent).
  bool all_terms_proper() const {
    for (auto& [e, c] : terms_)
      if (!is_proper_laurent_monomial(e)) return false;
    return true;
  }

  BigInt coefficient_of(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

 private:
  void check_same(const LaurentPoly& o) const {
    if (!(table_ == o.table_) && table_->keys != o.table_->keys)
      throw std::invalid_argument("laurent: mixed variable universes");
  }

  VarTableRef table_;
  std::map<Exponents, BigInt> terms_;
};

/// Exact division a / b; throws if the quotient is not a Laurent polynomial.
inline LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  if (a.is_zero()) return LaurentPoly::zero(a.table());
  // Normalize both to genuine polynomials; remember the net shift.
  Exponents sa = a.min_exponents(), sb = b.min_exponents();
  Exponents neg_sa = sa, neg_sb = sb;
  for (auto& x : neg_sa) x = -x;
  for (auto& x : neg_sb) x = -x;
  LaurentPoly rem = a.shifted(neg_sa);
  LaurentPoly den = b.shifted(neg_sb);
  LaurentPoly quo = LaurentPoly::zero(a.table());
  const auto& lead_b = *den.terms().rbegin();
  Exponents e(a.table()->size());
  while (!rem.is_zero()) {
    const auto& lead_r = *rem.terms().rbegin();
    for (size_t k = 0; k < e.size(); ++k) {
      e[k] = lead_r.first[k] - lead_b.first[k];
      if (e[k] < 0) throw std::domain_error("divide_exact: not divisible (exponents)");
    }
    if (lead_r.second % lead_b.second != 0)
      throw std::domain_error("divide_exact: not divisible (coefficients)");
    BigInt c = lead_r.second / lead_b.second;
    quo.add_term(e, c);
    rem = rem - den.shifted(e, c);
  }
  // Undo the normalization: a / b = quo * x^(sa - sb).
  Exponents shift(sa.size());
  for (size_t k = 0; k < shift.size(); ++k) shift[k] = sa[k] - sb[k];
  return quo.shifted(shift);
}

/// Ring-homomorphic substitution.  `image(k)` gives the value of variable k
/// in the target table; keys occurring with negative exponents must map to
/// monomials with unit coefficient.
inline LaurentPoly substitute(const LaurentPoly& p,
                              const std::function<LaurentPoly(int)>& image,
                              VarTableRef target) {
  LaurentPoly out = LaurentPoly::zero(target);
  for (auto& [e, c] : p.terms()) {
    LaurentPoly term = LaurentPoly::constant(target, c);
    for (int k = 0; k < p.table()->size(); ++k) {
      if (e[k] == 0) continue;
      term = term * image(k).pow(e[k]);
    }
    out = out + term;
  }
  return out;
}

/// Key-preserving relabeling: variable with arc id `keys[k]` becomes the
/// variable with arc id `rename(keys[k])` in the target table.
inline LaurentPoly rename_keys(const LaurentPoly& p,
                               const std::function<ArcId(ArcId)>& rename) {
  std::vector<ArcId> new_keys;
  for (ArcId id : p.table()->keys) new_keys.push_back(rename(id));
  std::vector<int> order(new_keys.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = (int)k;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return new_keys[a] < new_keys[b]; });
  std::vector<ArcId> sorted_keys;
  for (int k : order) sorted_keys.push_back(new_keys[k]);
  auto target = VarTable::of(sorted_keys);
  LaurentPoly out = LaurentPoly::zero(target);
  Exponents e(new_keys.size());
  for (auto& [old_e, c] : p.terms()) {
    for (size_t k = 0; k < order.size(); ++k) e[k] = old_e[order[k]];
    out.add_term(e, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: terms over the least common monomial denominator,
// sorted by exponent vector (lexicographically descending).
// ---------------------------------------------------------------------------

using VarNamer = std::function<std::string(int)>;

inline std::string monomial_text(const Exponents& e, const BigInt& c, const VarNamer& name) {
  std::string out;
  bool any_var = false;
  for (size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (any_var) out += "*";
    out += name((int)k);
    if (e[k] != 1) out += "^" + std::to_string(e[k]);
    any_var = true;
  }
  BigInt a = c < 0 ? BigInt(-c) : c;
  if (!any_var) return a.str();
  if (a == 1) return out;
  return a.str() + "*" + out;
}

inline std::string to_text(const LaurentPoly& p, const VarNamer& name) {
  if (p.is_zero()) return "0";
  Exponents mins = p.min_exponents();
  Exponents den(mins.size());
  bool trivial_den = true;
  for (size_t k = 0; k < mins.size(); ++k) {
    den[k] = mins[k] < 0 ? -mins[k] : 0;
    trivial_den = trivial_den && den[k] == 0;
  }
  LaurentPoly num = p.shifted(den);
  std::string out;
  bool first = true;
  for (auto it = num.terms().rbegin(); it != num.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += monomial_text(e, c, name);
    first = false;
  }
  if (trivial_den) return out;
  Exponents zero(mins.size(), 0);
  return "(" + out + ") / (" + monomial_text(den, 1, name) + ")";
}

inline VarNamer xk_namer() {
  return [](int k) { return "x" + std::to_string(k + 1); };
}

// ---------------------------------------------------------------------------
// Parser for the canonical text form.
// ---------------------------------------------------------------------------

inline LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& names,
                                 VarTableRef table) {
  if ((int)names.size() != table->size())
    throw std::invalid_argument("parse_laurent: name/table size mismatch");
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& m) -> void {
    throw std::invalid_argument("polynomial syntax error at " + std::to_string(pos) + ": " + m);
  };
  auto match_name = [&]() -> int {
    skip();
    int best = -1;
    size_t best_len = 0;
    for (size_t k = 0; k < names.size(); ++k)
      if (names[k].size() > best_len && text.substr(pos, names[k].size()) == names[k]) {
        best = (int)k;
        best_len = names[k].size();
      }
    if (best >= 0) pos += best_len;
    return best;
  };
  auto integer = [&]() -> BigInt {
    skip();
    size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) fail("expected a number");
    return BigInt(std::string(text.substr(start, pos - start)));
  };

  auto parse_sum = [&](auto&& self_ref) -> LaurentPoly {
    LaurentPoly out = LaurentPoly::zero(table);
    int sign = 1;
    skip();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
      sign = text[pos++] == '-' ? -1 : 1;
    while (true) {
      // one term: optional coefficient, then factors joined by '*'
      BigInt coeff = 1;
      Exponents e(table->size(), 0);
      bool saw_factor = false;
      while (true) {
        skip();
        if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          coeff *= integer();
          saw_factor = true;
        } else {
          int v = match_name();
          if (v < 0) {
            if (!saw_factor) fail("expected a term");
            break;
          }
          saw_factor = true;
          int power = 1;
          skip();
          if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip();
            int psign = 1;
            if (pos < text.size() && text[pos] == '-') {
              psign = -1;
              ++pos;
            }
            power = psign * (int)integer();
          }
          e[v] += power;
        }
        skip();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          continue;
        }
        break;
      }
      out.add_term(e, sign * coeff);
      skip();
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos++] == '-' ? -1 : 1;
        continue;
      }
      break;
    }
    (void)self_ref;
    return out;
  };

  skip();
  LaurentPoly num = LaurentPoly::zero(table);
  if (pos < text.size() && text[pos] == '(') {
    size_t save = pos;
    ++pos;
    num = parse_sum(parse_sum);
    skip();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      skip();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != '(') fail("expected '(' after '/'");
        ++pos;
        LaurentPoly den = parse_sum(parse_sum);
        skip();
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
        ++pos;
        skip();
        if (pos != text.size()) fail("trailing input");
        return divide_exact(num, den);
      }
      skip();
      if (pos != text.size()) fail("trailing input");
      return num;
    }
    // not a parenthesized form after all
    pos = save;
  }
  num = parse_sum(parse_sum);
  skip();
  if (pos != text.size()) fail("trailing input");
  return num;
}

}  // namespace pgon
