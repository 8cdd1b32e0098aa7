#include "monicdyn/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace monicdyn {

Poly Poly::constant(int nvars, const Rational &c) {
  Poly p(nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

Poly Poly::monomial(const MultiIndex &m, const Rational &c) {
  Poly p(m.size());
  p.add_term(m, c);
  return p;
}

Poly Poly::variable(int nvars, int var) {
  MultiIndex m(nvars);
  m.set(var, 1);
  return monomial(m);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }

int Poly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto &[m, c] : terms_)
    d = std::max(d, m[var]);
  return d;
}

int Poly::min_degree_in(int var) const {
  if (terms_.empty())
    return 0;
  int d = 0xFFFF;
  for (const auto &[m, c] : terms_)
    d = std::min(d, m[var]);
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty())
    return true;
  const int t = terms_.begin()->first.total();
  for (const auto &[m, c] : terms_)
    if (m.total() != t)
      return false;
  return true;
}

Rational Poly::coeff(const MultiIndex &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const MultiIndex &m, const Rational &c) {
  if (m.size() != nvars_)
    throw std::invalid_argument("Poly::add_term: variable count mismatch");
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Poly &Poly::operator+=(const Poly &o) {
  if (o.nvars_ != nvars_)
    throw std::invalid_argument("Poly: variable count mismatch");
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  if (o.nvars_ != nvars_)
    throw std::invalid_argument("Poly: variable count mismatch");
  for (const auto &[m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

Poly &Poly::operator*=(const Rational &c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, v] : terms_)
    v *= c;
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  if (a.nvars_ != b.nvars_)
    throw std::invalid_argument("Poly: variable count mismatch");
  Poly r(a.nvars_);
  Rational prod;
  for (const auto &[ma, ca] : a.terms_) {
    for (const auto &[mb, cb] : b.terms_) {
      prod = ca * cb;
      auto [it, inserted] = r.terms_.try_emplace(ma + mb, prod);
      if (!inserted)
        it->second += prod;
    }
  }
  std::erase_if(r.terms_, [](const auto &kv) { return kv.second == 0; });
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto &[m, c] : r.terms_)
    c = -c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1U)
      result = result * base;
    e >>= 1U;
    if (e)
      base = base * base;
  }
  return result;
}

Poly Poly::shifted(const MultiIndex &m) const {
  Poly r(nvars_);
  for (const auto &[k, c] : terms_)
    r.terms_.emplace_hint(r.terms_.end(), k + m, c);
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto &[m, c] : terms_) {
    if (m[var] == 0)
      continue;
    MultiIndex k = m;
    k.set(var, m[var] - 1);
    r.add_term(k, c * m[var]);
  }
  return r;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("Poly::evaluate: point dimension mismatch");
  Rational sum = 0;
  Rational term;
  for (const auto &[m, c] : terms_) {
    term = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e)
        term *= point[i];
    sum += term;
  }
  return sum;
}

Poly Poly::substitute(int var, const Poly &value) const {
  const int deg = degree_in(var);
  std::vector<Poly> powers;
  powers.reserve(std::max(deg + 1, 1));
  powers.push_back(constant(nvars_, 1));
  for (int e = 1; e <= deg; ++e)
    powers.push_back(powers.back() * value);
  Poly r(nvars_);
  for (const auto &[m, c] : terms_) {
    MultiIndex rest = m;
    rest.set(var, 0);
    r += powers[m[var]].shifted(rest) * c;
  }
  return r;
}

Poly Poly::specialize(int var, const Rational &c) const {
  Poly r(nvars_);
  for (const auto &[m, v] : terms_) {
    MultiIndex k = m;
    k.set(var, 0);
    Rational w = v;
    for (int e = 0; e < m[var]; ++e)
      w *= c;
    r.add_term(k, w);
  }
  return r;
}

Poly Poly::scale_variable(int var, const Rational &c) const {
  Poly r(nvars_);
  for (const auto &[m, v] : terms_) {
    Rational w = v;
    for (int e = 0; e < m[var]; ++e)
      w *= c;
    r.add_term(m, w);
  }
  return r;
}

Poly Poly::remove_variable(int var) const {
  Poly r(nvars_ - 1);
  for (const auto &[m, c] : terms_) {
    if (m[var] != 0)
      throw std::invalid_argument("Poly::remove_variable: variable occurs");
    MultiIndex k(nvars_ - 1);
    for (int i = 0, j = 0; i < nvars_; ++i)
      if (i != var)
        k.set(j++, m[i]);
    r.terms_.emplace(k, c);
  }
  return r;
}

Poly Poly::insert_variable(int pos) const {
  Poly r(nvars_ + 1);
  for (const auto &[m, c] : terms_) {
    MultiIndex k(nvars_ + 1);
    for (int i = 0, j = 0; i <= nvars_; ++i)
      k.set(i, i == pos ? 0 : m[j++]);
    r.terms_.emplace(k, c);
  }
  return r;
}

Poly Poly::dehomogenize_last() const { return specialize(nvars_ - 1, 1).remove_variable(nvars_ - 1); }

Poly Poly::homogenize_last(int degree) const {
  Poly r(nvars_ + 1);
  for (const auto &[m, c] : terms_) {
    const int t = m.total();
    if (t > degree)
      throw std::invalid_argument("Poly::homogenize_last: degree too small");
    MultiIndex k(nvars_ + 1);
    for (int i = 0; i < nvars_; ++i)
      k.set(i, m[i]);
    k.set(nvars_, degree - t);
    r.terms_.emplace(k, c);
  }
  return r;
}

Poly Poly::monic() const {
  if (terms_.empty())
    return *this;
  Rational inv = 1 / leading_coeff();
  Poly r = *this;
  r *= inv;
  return r;
}

std::vector<std::string> default_names(int nvars) {
  if (nvars == 1)
    return {"x"};
  if (nvars == 2)
    return {"x", "y"};
  if (nvars == 3)
    return {"x", "y", "z"};
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i)
    names.push_back("x" + std::to_string(i));
  return names;
}

std::string Poly::to_string(std::span<const std::string> names) const {
  std::vector<std::string> owned;
  if (names.empty()) {
    owned = default_names(nvars_);
    names = owned;
  }
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[m, c] : terms_) {
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    const bool unit = mag == 1;
    bool wrote = false;
    if (!unit || m.total() == 0) {
      os << monicdyn::to_string(mag);
      wrote = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0)
        continue;
      if (wrote)
        os << "*";
      os << names[i];
      if (m[i] > 1)
        os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

} // namespace monicdyn

namespace monicdyn {

namespace {

class PolyParser {
public:
  PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars), names_(default_names(nvars)) {}

  Poly parse() {
    Poly out(nvars_);
    skip();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      out.add_term(m, c * sign);
      skip();
    }
    if (first)
      fail("empty polynomial");
    return out;
  }

private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string &why) const {
    throw ParseError("parse_poly: " + why + " at position " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  std::string digits() {
    std::string s;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      s += text_[pos_++];
    return s;
  }

  std::pair<MultiIndex, Rational> term() {
    Rational c = 1;
    MultiIndex m(nvars_);
    bool need_factor = true;
    while (need_factor) {
      skip();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::string num = digits();
        skip();
        std::string den = "1";
        if (peek() == '/') {
          ++pos_;
          skip();
          den = digits();
          if (den.empty())
            fail("expected denominator");
        }
        c *= parse_rational(num + "/" + den);
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())))
          name += text_[pos_++];
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end())
          fail("unknown variable '" + name + "'");
        int e = 1;
        skip();
        if (peek() == '^') {
          ++pos_;
          skip();
          std::string ds = digits();
          if (ds.empty())
            fail("expected exponent");
          e = std::stoi(ds);
        }
        const int v = static_cast<int>(it - names_.begin());
        m.set(v, m[v] + e);
      } else {
        fail("expected coefficient or variable");
      }
      skip();
      need_factor = peek() == '*';
      if (need_factor)
        ++pos_;
    }
    return {m, c};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int nvars_;
  std::vector<std::string> names_;
};

} // namespace

Poly parse_poly(std::string_view text, int nvars) { return PolyParser(text, nvars).parse(); }

} // namespace monicdyn
