#pragma once
// Reference computations for the realization engine, used only by tests.

#include <cmath>
#include <random>
#include <vector>

#include "grring/ring.hpp"
#include "realize/problem.hpp"
#include "support/oracles.hpp"

namespace gformal::testing {

// Polynomial evaluated on exact forms, generators multiplied in index order.
inline QForm eval_polynomial(const grring::Polynomial& p, const std::vector<QForm>& values, int n) {
  QForm r(n);
  for (const auto& [mono, c] : p.terms()) {
    QForm t = QForm::scalar(n, c);
    for (std::size_t g = 0; g < mono.size(); ++g)
      for (int e = 0; e < mono[g]; ++e) t = wedge_oracle(t, values[g]);
    r += t;
  }
  return r;
}

// Relations vanish exactly and the volume monomial is a nonzero multiple of
// e_1^...^e_n; returns that multiple (0 if any relation fails).
inline Rational exact_witness_volume(const realize::RealizationProblem& p, const std::vector<QForm>& values) {
  for (const auto& r : p.relations)
    if (!eval_polynomial(r, values, p.n).is_zero()) return Rational(0);
  auto vol = grring::Polynomial::monomial(p.variables, p.volume);
  return eval_polynomial(vol, values, p.n).coefficient(xalg::full_mask(p.n));
}

inline std::vector<xalg::FForm> to_float(const std::vector<QForm>& forms) {
  std::vector<xalg::FForm> out;
  for (const auto& f : forms) out.push_back(xalg::to_float(f));
  return out;
}

// ||fd - g|| / ||g|| with central differences in every coordinate.
inline double fd_relative_error(const realize::RealizationProblem& p, const std::vector<double>& x, double h = 1e-6) {
  auto g = realize::residual_gradient(p, x);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (realize::residual(p, xp) - realize::residual(p, xm)) / (2 * h);
    num += (fd - g[i]) * (fd - g[i]);
    den += g[i] * g[i];
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

// Directional version: |fd_d - <g,d>| / (||g|| ||d||) for a unit direction d.
inline double fd_directional_error(const realize::RealizationProblem& p, const std::vector<double>& x,
                                   const std::vector<double>& d, double h = 1e-6) {
  auto g = realize::residual_gradient(p, x);
  auto xp = x, xm = x;
  double gd = 0, gn = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] += h * d[i];
    xm[i] -= h * d[i];
    gd += g[i] * d[i];
    gn += g[i] * g[i];
  }
  double fd = (realize::residual(p, xp) - realize::residual(p, xm)) / (2 * h);
  return std::fabs(fd - gd) / (gn == 0 ? 1.0 : std::sqrt(gn));
}

inline std::vector<double> random_point(std::size_t size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(size);
  for (auto& v : x) v = u(rng);
  return x;
}

inline std::vector<double> random_direction(std::size_t size, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> d(size);
  double s = 0;
  for (auto& v : d) {
    v = g(rng);
    s += v * v;
  }
  for (auto& v : d) v /= std::sqrt(s);
  return d;
}

inline QForm two_blade(int n, int i, int j, Rational c = Rational(1)) {
  std::vector<int> idx{i, j};
  return QForm::from_indices(n, idx, std::move(c));
}

// Trivial sphere bundle: x = e12 + e34, y = e56 / 2.
inline std::vector<QForm> trivial_bundle_witness() {
  return {two_blade(6, 0, 1) + two_blade(6, 2, 3), two_blade(6, 4, 5, Rational(1, 2))};
}

// Totaro a = b = 0: x1 = e56, y1 = e12 + e34, y2 = (y1 + e13 - e24) / 2,
// rewritten in x2 = 2 y2 - y1 and x3 = 2 (y1 - y2).
inline std::vector<QForm> totaro_degenerate_model() {
  QForm a = two_blade(6, 0, 1) + two_blade(6, 2, 3);
  QForm b = two_blade(6, 0, 2) - two_blade(6, 1, 3);
  QForm y1 = a, y2 = (a + b) * Rational(1, 2);
  return {two_blade(6, 4, 5), y2 * Rational(2) - y1, (y1 - y2) * Rational(2)};
}

}  // namespace gformal::testing
