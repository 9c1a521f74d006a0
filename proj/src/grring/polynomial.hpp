#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"
#include "common/rational.hpp"

namespace gformal::grring {

struct Generator {
  std::string name;
  int degree = 2;
  bool operator==(const Generator&) const = default;
};

// Exponent per generator; odd-degree generators have exponent 0 or 1.
using Monomial = std::vector<int>;

// Larger exponent of a later generator wins ("y > x" for generators x, y).
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_less(a, b); }
};

// Polynomial in graded-commutative generators with rational coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Generator> gens = {}) : gens_(std::move(gens)) {}
  static Polynomial constant(std::vector<Generator> gens, const Rational& c);
  static Polynomial generator(std::vector<Generator> gens, std::size_t index, const Rational& c = Rational(1));
  static Polynomial monomial(std::vector<Generator> gens, Monomial m, const Rational& c = Rational(1));

  const std::vector<Generator>& generators() const { return gens_; }
  const std::map<Monomial, Rational, MonomialOrder>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  // Degree if homogeneous; throws NotHomogeneous otherwise (zero has degree 0).
  int degree() const;
  bool homogeneous() const;

  void add(const Monomial& m, const Rational& c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  bool operator==(const Polynomial& o) const { return gens_ == o.gens_ && terms_ == o.terms_; }

  Polynomial pow(int k) const;
  std::string str() const;

 private:
  std::vector<Generator> gens_;
  std::map<Monomial, Rational, MonomialOrder> terms_;
};

int monomial_degree(const std::vector<Generator>& gens, const Monomial& m);

// Product of monomials with the graded sign; sign 0 when an odd generator
// repeats.
int monomial_product(const std::vector<Generator>& gens, const Monomial& a, const Monomial& b, Monomial& out);

// "x*y - y^2 + x^2", "3/2 x1 y2", "x^2 = y^2", "(x+y)^3". Unknown
// identifiers are split greedily into generator names ("xy" -> x*y).
Polynomial parse_polynomial(std::string_view text, const std::vector<Generator>& gens);

// All monomials of the given degree, increasing.
std::vector<Monomial> monomials_of_degree(const std::vector<Generator>& gens, int degree);

}  // namespace gformal::grring
