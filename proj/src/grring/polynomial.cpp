#include "grring/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace gformal::grring {

bool monomial_less(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

int monomial_degree(const std::vector<Generator>& gens, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens[i].degree;
  return d;
}

int monomial_product(const std::vector<Generator>& gens, const Monomial& a, const Monomial& b, Monomial& out) {
  out.assign(a.size(), 0);
  int swaps = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool odd = gens[i].degree % 2 != 0;
    if (odd && a[i] && b[i]) return 0;
    out[i] = a[i] + b[i];
    // Moving b's odd generator i left past a's odd generators with index > i.
    if (odd && b[i])
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (a[j] && gens[j].degree % 2 != 0) ++swaps;
  }
  return (swaps & 1) ? -1 : 1;
}

Polynomial Polynomial::constant(std::vector<Generator> gens, const Rational& c) {
  Polynomial p(std::move(gens));
  p.add(Monomial(p.gens_.size(), 0), c);
  return p;
}

Polynomial Polynomial::generator(std::vector<Generator> gens, std::size_t index, const Rational& c) {
  require(index < gens.size(), ErrorCode::InvalidArgument, "generator index out of range");
  Monomial m(gens.size(), 0);
  m[index] = 1;
  return monomial(std::move(gens), std::move(m), c);
}

Polynomial Polynomial::monomial(std::vector<Generator> gens, Monomial m, const Rational& c) {
  Polynomial p(std::move(gens));
  p.add(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::homogeneous() const {
  if (terms_.empty()) return true;
  const int d = monomial_degree(gens_, terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(gens_, m) != d) return false;
  return true;
}

int Polynomial::degree() const {
  require(homogeneous(), ErrorCode::NotHomogeneous, "polynomial is not homogeneous: " + str());
  return terms_.empty() ? 0 : monomial_degree(gens_, terms_.begin()->first);
}

void Polynomial::add(const Monomial& m, const Rational& c) {
  require(m.size() == gens_.size(), ErrorCode::DimensionMismatch, "monomial length differs from generator count");
  for (std::size_t i = 0; i < m.size(); ++i) {
    require(m[i] >= 0, ErrorCode::InvalidArgument, "negative exponent");
    if (gens_[i].degree % 2 != 0 && m[i] > 1) return;  // odd generators square to zero
  }
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require(gens_ == o.gens_, ErrorCode::DimensionMismatch, "polynomials over different generators");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require(gens_ == o.gens_, ErrorCode::DimensionMismatch, "polynomials over different generators");
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require(a.gens_ == b.gens_, ErrorCode::DimensionMismatch, "polynomials over different generators");
  Polynomial r(a.gens_);
  Monomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      int s = monomial_product(a.gens_, ma, mb, out);
      if (s == 0) continue;
      r.add(out, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
    }
  return r;
}

Polynomial Polynomial::pow(int k) const {
  require(k >= 0, ErrorCode::InvalidArgument, "negative power");
  Polynomial r = constant(gens_, Rational(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Largest monomial first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = to_string(c);
    bool neg = cs[0] == '-';
    if (neg) cs.erase(cs.begin());
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += gens_[i].name;
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << mono;
    }
  }
  return os.str();
}

std::vector<Monomial> monomials_of_degree(const std::vector<Generator>& gens, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur(gens.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == gens.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const int d = gens[i].degree;
    const int cap = d % 2 != 0 ? 1 : left / d;
    for (int e = 0; e <= cap && e * d <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e * d);
    }
    cur[i] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<Generator>& gens) : s_(text), gens_(gens) {}

  Polynomial parse() {
    Polynomial lhs = expr();
    skip();
    if (peek() == '=') {
      ++i_;
      Polynomial rhs = expr();
      lhs -= rhs;
    }
    skip();
    if (i_ != s_.size()) error("unexpected character '" + std::string(1, s_[i_]) + "'");
    return lhs;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::InvalidArgument,
         "cannot parse polynomial \"" + std::string(s_) + "\" at position " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  Polynomial expr() {
    Polynomial acc(gens_);
    bool first = true;
    for (;;) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++i_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (sign < 0) t *= Rational(-1);
      acc += t;
      first = false;
      c = peek();
      if (c != '+' && c != '-') break;
    }
    return acc;
  }

  bool starts_factor(char c) {
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '.';
  }

  Polynomial term() {
    Polynomial t = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        t = t * factor();
      } else if (starts_factor(c)) {
        t = t * factor();  // juxtaposition
      } else {
        return t;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++i_;
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) error("expected an exponent");
      base = base.pow(std::stoi(std::string(s_.substr(start, i_ - start))));
    }
    return base;
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++i_;
      Polynomial e = expr();
      if (peek() != ')') error("missing ')'");
      ++i_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' || s_[i_] == '/'))
        ++i_;
      return Polynomial::constant(gens_, parse_rational(s_.substr(start, i_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
        ++i_;
      return identifier(std::string(s_.substr(start, i_ - start)));
    }
    error(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  Polynomial identifier(const std::string& id) {
    Polynomial out = Polynomial::constant(gens_, Rational(1));
    std::size_t pos = 0;
    while (pos < id.size()) {
      std::size_t best = gens_.size(), best_len = 0;
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const auto& n = gens_[g].name;
        if (n.size() > best_len && id.compare(pos, n.size(), n) == 0) {
          best = g;
          best_len = n.size();
        }
      }
      if (best == gens_.size()) error("unknown generator in '" + id + "'");
      out = out * Polynomial::generator(gens_, best);
      pos += best_len;
    }
    return out;
  }

  std::string_view s_;
  const std::vector<Generator>& gens_;
  std::size_t i_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<Generator>& gens) {
  return Parser(text, gens).parse();
}

}  // namespace gformal::grring
