#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "common/linalg.hpp"
#include "common/rational.hpp"

namespace gformal::xalg {

inline constexpr int kMaxDimension = 16;

// A blade is a set of basis indices in increasing order, stored as a bitmask.
using Mask = std::uint32_t;

inline int grade(Mask m) { return std::popcount(m); }

// Sign of e_a ^ e_b for disjoint masks: parity of the inversions between the
// two increasing index sequences.
inline int wedge_sign(Mask a, Mask b) {
  int inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

inline std::vector<int> indices_of(Mask m) {
  std::vector<int> idx;
  for (; m; m &= m - 1) idx.push_back(std::countr_zero(m));
  return idx;
}

// All masks of the given grade in an n-dimensional space, increasing.
inline std::vector<Mask> blades_of_grade(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (grade(m) == k) out.push_back(m);
  return out;
}

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }

// Element of the exterior algebra over R^n: a finite sum of coefficient *
// blade. Coefficients are either exact rationals or doubles; the two kinds
// are distinct types and never mix.
template <typename T>
class Multivector {
 public:
  explicit Multivector(int dimension, std::optional<int> grade_marker = std::nullopt)
      : n_(dimension), grade_(grade_marker) {
    require(n_ >= 0 && n_ <= kMaxDimension, ErrorCode::InvalidArgument,
            "exterior algebra dimension must be in 0..16");
    if (grade_) require(*grade_ >= 0 && *grade_ <= n_, ErrorCode::InvalidArgument, "grade marker out of range");
  }

  static Multivector scalar(int n, T value) {
    Multivector m(n, 0);
    m.add(0, std::move(value));
    return m;
  }

  static Multivector blade(int n, Mask mask, T coef = T(1)) {
    Multivector m(n, grade(mask));
    m.add(mask, std::move(coef));
    return m;
  }

  // e_{i1} ^ ... ^ e_{ik} for arbitrary (possibly unsorted) 0-based indices.
  static Multivector from_indices(int n, std::span<const int> idx, T coef = T(1)) {
    Multivector m = scalar(n, std::move(coef));
    for (int i : idx) {
      require(i >= 0 && i < n, ErrorCode::InvalidArgument, "basis index out of range");
      m = wedge_blade_right(m, Mask{1} << i);
    }
    return m;
  }

  static Multivector volume(int n) { return blade(n, full_mask(n)); }

  // Linear combination sum_i coeffs[i] e_i of grade 1.
  static Multivector covector(std::span<const T> coeffs) {
    Multivector m(static_cast<int>(coeffs.size()), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) m.add(Mask{1} << i, coeffs[i]);
    return m;
  }

  int dimension() const { return n_; }
  const std::map<Mask, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Grade if every blade shares one (or the value carries a grade marker).
  std::optional<int> homogeneous_grade() const {
    if (grade_) return grade_;
    std::optional<int> g;
    for (const auto& [m, c] : terms_) {
      if (g && *g != grade(m)) return std::nullopt;
      g = grade(m);
    }
    return g;
  }

  int require_grade(const char* what) const {
    auto g = homogeneous_grade();
    if (!g && terms_.empty()) return 0;
    require(g.has_value(), ErrorCode::NotHomogeneous, std::string(what) + ": form is not homogeneous");
    return *g;
  }

  T coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? T(0) : it->second;
  }

  // Accumulates coef into the blade, dropping the entry if it cancels.
  void add(Mask m, const T& coef) {
    require(m <= full_mask(n_), ErrorCode::InvalidArgument, "blade outside the ambient dimension");
    if (grade_ && grade(m) != *grade_)
      fail(ErrorCode::NotHomogeneous, "term grade differs from the form's grade marker");
    if (ScalarTraits<T>::zero(coef)) return;
    auto [it, inserted] = terms_.try_emplace(m, coef);
    if (!inserted) {
      it->second += coef;
      if (ScalarTraits<T>::zero(it->second)) terms_.erase(it);
    }
  }

  Multivector& operator+=(const Multivector& o) {
    check_compatible(o);
    if (grade_ != o.grade_) grade_ = merged_marker(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_compatible(o);
    if (grade_ != o.grade_) grade_ = merged_marker(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Multivector& operator*=(const T& s) {
    if (ScalarTraits<T>::zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const T& s) { return a *= s; }
  friend Multivector operator*(const T& s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= T(-1); }

  bool operator==(const Multivector& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  // Grade-k part.
  Multivector part(int k) const {
    Multivector r(n_, k);
    for (const auto& [m, c] : terms_)
      if (grade(m) == k) r.add(m, c);
    return r;
  }

  // Coefficients in the increasing blade order of the given grade.
  std::vector<T> coordinates(int k) const {
    auto blades = blades_of_grade(n_, k);
    std::vector<T> v(blades.size(), T(0));
    for (std::size_t i = 0; i < blades.size(); ++i) v[i] = coefficient(blades[i]);
    return v;
  }

  static Multivector from_coordinates(int n, int k, std::span<const T> coords) {
    auto blades = blades_of_grade(n, k);
    require(coords.size() == blades.size(), ErrorCode::DimensionMismatch, "coordinate vector length");
    Multivector m(n, k);
    for (std::size_t i = 0; i < blades.size(); ++i) m.add(blades[i], coords[i]);
    return m;
  }

  // Human-readable, 1-based indices: "2*e1^e2 - e3^e4".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::ostringstream coef;
      coef << c;
      std::string cs = coef.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(cs.begin());
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      if (m == 0) {
        os << cs;
        continue;
      }
      if (cs != "1") os << cs << '*';
      bool first_idx = true;
      for (int i : indices_of(m)) {
        os << (first_idx ? "" : "^") << 'e' << (i + 1);
        first_idx = false;
      }
    }
    return os.str();
  }

  std::optional<int> grade_marker() const { return grade_; }

 private:
  void check_compatible(const Multivector& o) const {
    require(n_ == o.n_, ErrorCode::DimensionMismatch, "multivector dimension mismatch");
  }
  std::optional<int> merged_marker(const Multivector& o) const {
    // Keep a marker only when both sides agree on the grade.
    auto a = homogeneous_grade(), b = o.homogeneous_grade();
    if (terms_.empty()) return b;
    if (o.terms_.empty()) return a;
    if (a && b && *a == *b) return a;
    return std::nullopt;
  }
  static Multivector wedge_blade_right(const Multivector& a, Mask b) {
    std::optional<int> g;
    if (auto ga = a.homogeneous_grade()) g = *ga + grade(b);
    if (g && *g > a.n_) g.reset();
    Multivector r(a.n_, g);
    for (const auto& [m, c] : a.terms_) {
      if (m & b) continue;
      r.add(m | b, wedge_sign(m, b) > 0 ? c : -c);
    }
    return r;
  }

  int n_;
  std::optional<int> grade_;
  std::map<Mask, T> terms_;
};

using QForm = Multivector<Rational>;
using FForm = Multivector<double>;

template <typename T>
Multivector<T> wedge(const Multivector<T>& a, const Multivector<T>& b) {
  require(a.dimension() == b.dimension(), ErrorCode::DimensionMismatch, "wedge: dimension mismatch");
  const int n = a.dimension();
  std::optional<int> g;
  auto ga = a.homogeneous_grade(), gb = b.homogeneous_grade();
  if (ga && gb && *ga + *gb <= n) g = *ga + *gb;
  Multivector<T> r(n, g);
  if (ga && gb && *ga + *gb > n) return Multivector<T>(n);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      T c = ca * cb;
      if (wedge_sign(ma, mb) < 0) c = -c;
      r.add(ma | mb, c);
    }
  return r;
}

template <typename T>
Multivector<T> power(const Multivector<T>& a, int k) {
  require(k >= 0, ErrorCode::InvalidArgument, "negative wedge power");
  Multivector<T> r = Multivector<T>::scalar(a.dimension(), T(1));
  for (int i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

// Contraction of the first slot with v. Contracting the j-th index of an
// increasing blade carries the sign (-1)^j (j counted from 0).
template <typename T>
Multivector<T> interior(std::span<const T> v, const Multivector<T>& a) {
  require(static_cast<int>(v.size()) == a.dimension(), ErrorCode::DimensionMismatch,
          "interior: vector length differs from dimension");
  const int k = a.require_grade("interior");
  require(k >= 1, ErrorCode::InvalidArgument, "interior: cannot contract a grade-0 form");
  Multivector<T> r(a.dimension(), k - 1);
  for (const auto& [m, c] : a.terms()) {
    int j = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++j) {
      int i = std::countr_zero(rest);
      if (ScalarTraits<T>::zero(v[i])) continue;
      T term = c * v[i];
      if (j & 1) term = -term;
      r.add(m & ~(Mask{1} << i), term);
    }
  }
  return r;
}

template <typename T>
Multivector<T> interior(const std::vector<T>& v, const Multivector<T>& a) {
  return interior(std::span<const T>(v), a);
}

// a(v_1, ..., v_k), the full alternating evaluation.
template <typename T>
T evaluate(const Multivector<T>& a, const std::vector<std::vector<T>>& vs) {
  const int k = a.require_grade("evaluate");
  require(static_cast<int>(vs.size()) == k, ErrorCode::InvalidArgument,
          "evaluate: number of vectors differs from the form's grade");
  Multivector<T> cur = a;
  for (const auto& v : vs) cur = interior(std::span<const T>(v), cur);
  return cur.coefficient(0);
}

// Skew matrix A[i][j] = a(e_i, e_j) of a 2-form.
template <typename T>
Matrix<T> two_form_matrix(const Multivector<T>& a) {
  require(a.require_grade("two_form_matrix") == 2, ErrorCode::InvalidArgument, "expected a 2-form");
  const int n = a.dimension();
  Matrix<T> m(n, n);
  for (const auto& [mask, c] : a.terms()) {
    auto idx = indices_of(mask);
    m(idx[0], idx[1]) = c;
    m(idx[1], idx[0]) = -c;
  }
  return m;
}

template <typename T>
int two_form_rank(const Multivector<T>& a) {
  return static_cast<int>(rank(two_form_matrix(a)));
}

template <typename T>
std::vector<std::vector<T>> two_form_kernel(const Multivector<T>& a) {
  return nullspace(two_form_matrix(a));
}

// Pullback under the linear map with matrix g: (g^* a)(v...) = a(g v, ...).
template <typename T>
Multivector<T> pullback(const Multivector<T>& a, const Matrix<T>& g) {
  const int n = a.dimension();
  require(g.rows() == static_cast<std::size_t>(n) && g.cols() == static_cast<std::size_t>(n),
          ErrorCode::DimensionMismatch, "pullback: frame matrix shape");
  std::vector<Multivector<T>> images;
  for (int i = 0; i < n; ++i) {
    std::vector<T> row = g.row(i);
    images.push_back(Multivector<T>::covector(std::span<const T>(row)));
  }
  Multivector<T> r(n, a.homogeneous_grade());
  for (const auto& [m, c] : a.terms()) {
    Multivector<T> t = Multivector<T>::scalar(n, c);
    for (int i : indices_of(m)) t = wedge(t, images[i]);
    r += t;
  }
  return r;
}

// The n = 6 Lefschetz map alpha -> alpha ^ omega from 2-forms to 4-forms, in
// increasing blade order on both sides.
template <typename T>
Matrix<T> lefschetz_matrix(const Multivector<T>& omega) {
  const int n = omega.dimension();
  require(n == 6, ErrorCode::Unsupported, "lefschetz_matrix is defined for dimension 6 only");
  require(omega.require_grade("lefschetz_matrix") == 2 || omega.is_zero(), ErrorCode::InvalidArgument,
          "lefschetz_matrix expects a 2-form");
  auto src = blades_of_grade(n, 2);
  auto dst = blades_of_grade(n, n - 2);
  Matrix<T> m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto img = wedge(Multivector<T>::blade(n, src[j]), omega);
    for (std::size_t i = 0; i < dst.size(); ++i) m(i, j) = img.coefficient(dst[i]);
  }
  return m;
}

// Positive-definite symmetric Gram matrix of a frame, plus orientation.
class FrameMetric {
 public:
  // Throws unless the matrix is symmetric with positive leading minors.
  explicit FrameMetric(QMatrix gram, int orientation = 1);
  static FrameMetric euclidean(int n) { return FrameMetric(QMatrix::identity(n)); }
  static FrameMetric diagonal(const std::vector<Rational>& entries, int orientation = 1);

  int dimension() const { return static_cast<int>(gram_.rows()); }
  const QMatrix& gram() const { return gram_; }
  int orientation() const { return orientation_; }
  bool is_diagonal() const;
  Rational determinant() const;
  FrameMetric scaled(const Rational& s) const;

  // |e^S|^2 for the dual blade, diagonal metrics only.
  Rational blade_norm_squared(Mask m) const;

 private:
  QMatrix gram_;
  int orientation_;
};

// Induced inner product of two forms under a diagonal metric.
Rational inner_product(const QForm& a, const QForm& b, const FrameMetric& g);

// The metric volume form sqrt(det g) e^1^...^e^n; requires det g to be a
// rational square.
QForm volume_form(const FrameMetric& g);

// Hodge star for diagonal metrics: a ^ *a = |a|^2 vol. Requires det g to be a
// rational square (otherwise use hodge_star_unnormalized).
QForm hodge_star(const QForm& a, const FrameMetric& g);

// *a / sqrt(det g); always rational.
QForm hodge_star_unnormalized(const QForm& a, const FrameMetric& g);

// Float Hodge star (Euclidean-scaled diagonal metric, sqrt taken in double).
FForm hodge_star(const FForm& a, const std::vector<double>& diagonal_gram);

std::optional<Rational> rational_sqrt(const Rational& q);

inline FForm to_float(const QForm& a) {
  FForm r(a.dimension(), a.grade_marker());
  for (const auto& [m, c] : a.terms()) r.add(m, c.get_d());
  return r;
}

}  // namespace gformal::xalg
