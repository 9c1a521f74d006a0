#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common/linalg.hpp"
#include "grring/polynomial.hpp"

namespace gformal::grring {

struct RingPresentation {
  std::string name;
  std::vector<Generator> generators;
  std::vector<Polynomial> relations;
  int top = 0;
  // Designated top monomial (volume class); optional.
  std::optional<Monomial> volume;

  // Convenience: generators as "x:2,y:2", relations as strings.
  static RingPresentation parse(std::string name, const std::vector<Generator>& gens,
                                const std::vector<std::string>& relations, int top,
                                const std::string& volume = "");
  Polynomial gen(const std::string& name) const;
  Polynomial poly(const std::string& text) const { return parse_polynomial(text, generators); }
};

class NormalFormTable {
 public:
  explicit NormalFormTable(RingPresentation p);

  const RingPresentation& presentation() const { return p_; }
  const std::vector<Generator>& generators() const { return p_.generators; }
  int top() const { return p_.top; }

  // Quotient basis monomials of degree d, increasing.
  const std::vector<Monomial>& basis(int d) const { return level(d).basis; }
  int dimension(int d) const { return static_cast<int>(level(d).basis.size()); }

  // Quotient coordinates of a homogeneous polynomial. The zero polynomial
  // has degree 0 unless the degree is given.
  QVector reduce(const Polynomial& p) const { return reduce(p, degree_of(p)); }
  QVector reduce(const Polynomial& p, int degree) const;
  int degree_of(const Polynomial& p) const;
  Polynomial from_coordinates(int d, const QVector& coords) const;
  // reduce, then rebuild as a polynomial in the basis monomials.
  Polynomial normal_form(const Polynomial& p) const { return from_coordinates(degree_of(p), reduce(p)); }
  bool is_zero(const Polynomial& p) const;
  bool equal(const Polynomial& a, const Polynomial& b) const { return is_zero(a - b); }

  // Dimension of the ideal in degree d and a basis (rows over monomials).
  const std::vector<Monomial>& monomials(int d) const { return level(d).monomials; }
  const QMatrix& ideal_rref(int d) const { return level(d).ideal; }

 private:
  struct Level {
    std::vector<Monomial> monomials;  // decreasing (largest first) = column order
    std::map<Monomial, std::size_t, MonomialOrder> column;
    QMatrix ideal;                    // rref of the ideal span
    std::vector<std::size_t> pivots;
    std::vector<Monomial> basis;      // non-pivot monomials, increasing
    std::vector<std::size_t> basis_columns;
  };
  const Level& level(int d) const;

  RingPresentation p_;
  std::vector<Level> levels_;
};

std::vector<int> betti_of_ring(const NormalFormTable& t);

// Rewrites the relations in new generators: new_gens[i] = definitions[i]
// (linear in the old generators of the same degree). Generator degrees
// follow the definitions. Relations are reduced modulo the monomial
// relations of the result (for instance x1^2) and otherwise left unscaled.
RingPresentation substitute(const NormalFormTable& t, const std::vector<std::string>& new_names,
                            const std::vector<Polynomial>& definitions);

// Same ideal in every degree <= top (generators must agree).
bool same_ideal(const NormalFormTable& a, const NormalFormTable& b);

// Pairing degree k x degree top-k into the one-dimensional top piece.
QMatrix poincare_pairing(const NormalFormTable& t, int k);
bool is_pd_algebra(const NormalFormTable& t);

enum class PatternTag { None, ProdOdd, P1, Totaro, RankKernel, Lefschetz };
const char* to_string(PatternTag t);

struct PatternMatch {
  PatternTag tag = PatternTag::None;
  std::string detail;
  // RANK_KERNEL: u^3 = 0, v^2 + c u^2 = 0, v^3 != 0.
  std::optional<Polynomial> u, v;
  Rational c;
  // LEFSCHETZ: eta * omega = 0, omega^3 != 0.
  std::optional<Polynomial> omega, eta;
  // TOTARO
  Rational a, b;
  // PROD_ODD / P1
  int p = 0, q = 0, k = 0;
};

PatternMatch pattern_match(const NormalFormTable& t);

// Built-in presentations: "eschenburg-ex1", "eschenburg-ex2", "totaro" (a,b),
// "sphere-bundle" (c), "flag-su3", "wedge" (p,q).
struct RingParams {
  Rational a, b, c;
  int p = 5, q = 7;
};
RingPresentation named_ring(const std::string& name, const RingParams& params = {});
RingPresentation totaro_ring(const Rational& a, const Rational& b);
RingPresentation sphere_bundle_ring(const Rational& c);
RingPresentation wedge_ring(int p, int q);

// Rational roots of sum_i coeffs[i] t^i (all roots if the polynomial is 0
// is not meaningful; returns empty then).
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);

}  // namespace gformal::grring
