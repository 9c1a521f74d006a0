#include <cmath>

#include "xalg/multivector.hpp"

namespace gformal::xalg {

FrameMetric::FrameMetric(QMatrix gram, int orientation) : gram_(std::move(gram)), orientation_(orientation) {
  require(gram_.rows() == gram_.cols(), ErrorCode::InvalidArgument, "Gram matrix must be square");
  require(static_cast<int>(gram_.rows()) <= kMaxDimension, ErrorCode::InvalidArgument, "Gram matrix too large");
  require(orientation == 1 || orientation == -1, ErrorCode::InvalidArgument, "orientation must be +1 or -1");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      require(gram_(i, j) == gram_(j, i), ErrorCode::InvalidArgument, "Gram matrix is not symmetric");
  require(positive_definite(gram_), ErrorCode::InvalidArgument,
          "Gram matrix is not positive definite (a leading principal minor is <= 0)");
}

FrameMetric FrameMetric::diagonal(const std::vector<Rational>& entries, int orientation) {
  QMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return FrameMetric(std::move(g), orientation);
}

bool FrameMetric::is_diagonal() const {
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < gram_.cols(); ++j)
      if (i != j && sgn(gram_(i, j)) != 0) return false;
  return true;
}

Rational FrameMetric::determinant() const { return gformal::determinant(gram_); }

FrameMetric FrameMetric::scaled(const Rational& s) const {
  require(sgn(s) > 0, ErrorCode::InvalidArgument, "metric scale must be positive");
  QMatrix g = gram_;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= s;
  return FrameMetric(std::move(g), orientation_);
}

Rational FrameMetric::blade_norm_squared(Mask m) const {
  require(is_diagonal(), ErrorCode::Unsupported, "only diagonal Gram matrices are supported here");
  Rational r(1);
  for (int i : indices_of(m)) r /= gram_(i, i);
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Integer num = q.get_num(), den = q.get_den();
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Rational inner_product(const QForm& a, const QForm& b, const FrameMetric& g) {
  require(a.dimension() == g.dimension() && b.dimension() == g.dimension(), ErrorCode::DimensionMismatch,
          "inner_product: dimension mismatch");
  Rational s(0);
  for (const auto& [m, c] : a.terms()) {
    Rational cb = b.coefficient(m);
    if (sgn(cb) != 0) s += c * cb * g.blade_norm_squared(m);
  }
  return s;
}

QForm hodge_star_unnormalized(const QForm& a, const FrameMetric& g) {
  require(a.dimension() == g.dimension(), ErrorCode::DimensionMismatch, "hodge_star: dimension mismatch");
  require(g.is_diagonal(), ErrorCode::Unsupported, "hodge_star supports diagonal Gram matrices only");
  const int n = a.dimension();
  const int k = a.require_grade("hodge_star");
  const Mask all = full_mask(n);
  QForm r(n, n - k);
  for (const auto& [m, c] : a.terms()) {
    Mask comp = all & ~m;
    Rational coef = c * g.blade_norm_squared(m) * g.orientation();
    if (wedge_sign(m, comp) < 0) coef = -coef;
    r.add(comp, coef);
  }
  return r;
}

QForm volume_form(const FrameMetric& g) {
  auto root = rational_sqrt(g.determinant());
  require(root.has_value(), ErrorCode::Unsupported,
          "metric volume factor sqrt(det g) is irrational; use the unnormalized star");
  return QForm::blade(g.dimension(), full_mask(g.dimension()), *root * g.orientation());
}

QForm hodge_star(const QForm& a, const FrameMetric& g) {
  auto root = rational_sqrt(g.determinant());
  require(root.has_value(), ErrorCode::Unsupported,
          "metric volume factor sqrt(det g) is irrational; use hodge_star_unnormalized");
  return hodge_star_unnormalized(a, g) * *root;
}

FForm hodge_star(const FForm& a, const std::vector<double>& diag) {
  const int n = a.dimension();
  require(static_cast<int>(diag.size()) == n, ErrorCode::DimensionMismatch, "hodge_star: metric size");
  double det = 1.0;
  for (double d : diag) {
    require(d > 0.0, ErrorCode::InvalidArgument, "metric entries must be positive");
    det *= d;
  }
  const double root = std::sqrt(det);
  const int k = a.require_grade("hodge_star");
  const Mask all = full_mask(n);
  FForm r(n, n - k);
  for (const auto& [m, c] : a.terms()) {
    double w = 1.0;
    for (int i : indices_of(m)) w /= diag[i];
    Mask comp = all & ~m;
    r.add(comp, (wedge_sign(m, comp) < 0 ? -1.0 : 1.0) * c * w * root);
  }
  return r;
}

}  // namespace gformal::xalg
