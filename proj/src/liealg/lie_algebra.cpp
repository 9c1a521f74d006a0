#include "liealg/lie_algebra.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace gformal::liealg {

using xalg::Mask;
using xalg::QForm;

std::vector<QForm> StructureTensor::dual_differentials() const {
  std::vector<QForm> out;
  for (int a = 0; a < dim_; ++a) {
    QForm f(dim_, dim_ >= 2 ? std::optional<int>(2) : std::nullopt);
    for (int b = 0; b < dim_; ++b)
      for (int c = b + 1; c < dim_; ++c) {
        const Rational& k = (*this)(b, c, a);
        if (sgn(k) != 0) f.add((Mask{1} << b) | (Mask{1} << c), -k);
      }
    out.push_back(std::move(f));
  }
  return out;
}

QForm ce_differential(const StructureTensor& t, const QForm& form) {
  const int n = t.dimension();
  require(form.dimension() == n, ErrorCode::DimensionMismatch, "ce_differential: dimension mismatch");
  auto de = t.dual_differentials();
  QForm r(n);
  for (const auto& [m, c] : form.terms()) {
    int j = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++j) {
      const int s = std::countr_zero(rest);
      const Mask bit = Mask{1} << s;
      const Mask left = m & (bit - 1);
      const Mask right = m & ~((bit << 1) - 1);
      for (const auto& [bc, k] : de[s].terms()) {
        if (bc & (m & ~bit)) continue;
        int sign = (j & 1) ? -1 : 1;
        sign *= xalg::wedge_sign(left, bc) * xalg::wedge_sign(left | bc, right);
        r.add(left | bc | right, sign > 0 ? Rational(c * k) : Rational(-c * k));
      }
    }
  }
  return r;
}

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, StructureTensor structure,
                       GroundField field)
    : name_(std::move(name)), labels_(std::move(labels)), structure_(std::move(structure)), field_(field) {
  const int d = structure_.dimension();
  require(static_cast<int>(labels_.size()) == d, ErrorCode::InvalidArgument, "one label per basis vector");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (structure_(i, j, k) != -structure_(j, i, k))
          fail(ErrorCode::InconsistentInput, name_ + ": structure constants are not antisymmetric");
  // Jacobi on basis triples i < j < k.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const std::array<std::array<int, 3>, 3> cyc{{{i, j, k}, {j, k, i}, {k, i, j}}};
        for (int out = 0; out < d; ++out) {
          Rational s(0);
          for (const auto& t : cyc)
            for (int a = 0; a < d; ++a) {
              const Rational& x = structure_(t[0], t[1], a);
              if (sgn(x) != 0) s += x * structure_(a, t[2], out);
            }
          if (sgn(s) != 0) fail(ErrorCode::InconsistentInput, name_ + ": Jacobi identity fails");
        }
      }
}

std::optional<int> LieAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int LieAlgebra::require_index(const std::string& label) const {
  auto i = index_of(label);
  require(i.has_value(), ErrorCode::InvalidArgument, name_ + ": no basis element named " + label);
  return *i;
}

QVector LieAlgebra::basis_vector(int i) const {
  require(i >= 0 && i < dimension(), ErrorCode::InvalidArgument, "basis index out of range");
  QVector v(dimension(), Rational(0));
  v[i] = 1;
  return v;
}

QVector LieAlgebra::bracket(const QVector& x, const QVector& y) const {
  const int d = dimension();
  require(static_cast<int>(x.size()) == d && static_cast<int>(y.size()) == d, ErrorCode::DimensionMismatch,
          "bracket: vector length");
  QVector r(d, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (sgn(y[j]) == 0 || i == j) continue;
      Rational f = x[i] * y[j];
      for (int k = 0; k < d; ++k)
        if (sgn(structure_(i, j, k)) != 0) r[k] += f * structure_(i, j, k);
    }
  }
  return r;
}

QMatrix LieAlgebra::ad(const QVector& x) const {
  const int d = dimension();
  QMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    auto col = bracket(x, basis_vector(j));
    for (int i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

namespace {

// n x n matrix over Q(i), stored as real and imaginary parts.
struct CMat {
  int n;
  std::vector<Rational> re, im;
  explicit CMat(int n_) : n(n_), re(n_ * n_), im(n_ * n_) {}
  Rational& r(int i, int j) { return re[i * n + j]; }
  Rational& c(int i, int j) { return im[i * n + j]; }
  const Rational& r(int i, int j) const { return re[i * n + j]; }
  const Rational& c(int i, int j) const { return im[i * n + j]; }
};

CMat commutator(const CMat& a, const CMat& b) {
  const int n = a.n;
  CMat out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational sr(0), si(0);
      for (int k = 0; k < n; ++k) {
        sr += a.r(i, k) * b.r(k, j) - a.c(i, k) * b.c(k, j);
        si += a.r(i, k) * b.c(k, j) + a.c(i, k) * b.r(k, j);
        sr -= b.r(i, k) * a.r(k, j) - b.c(i, k) * a.c(k, j);
        si -= b.r(i, k) * a.c(k, j) + b.c(i, k) * a.r(k, j);
      }
      out.r(i, j) = sr;
      out.c(i, j) = si;
    }
  return out;
}

QVector flatten(const CMat& m) {
  QVector v(m.re);
  v.insert(v.end(), m.im.begin(), m.im.end());
  return v;
}

// Structure constants of the real span of linearly independent matrices
// closed under the commutator.
StructureTensor structure_of(const std::vector<CMat>& basis, const std::string& name) {
  const int d = static_cast<int>(basis.size());
  const std::size_t len = flatten(basis[0]).size();
  QMatrix a(len, d);
  for (int j = 0; j < d; ++j) {
    auto v = flatten(basis[j]);
    for (std::size_t i = 0; i < len; ++i) a(i, j) = v[i];
  }
  // Pick d independent coordinates (pivot rows of a^T) to solve on.
  auto e = rref(a.transpose());
  require(static_cast<int>(e.pivots.size()) == d, ErrorCode::Internal, name + ": basis matrices are dependent");
  QMatrix sq(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) sq(i, j) = a(e.pivots[i], j);
  auto inv = inverse(sq);
  require(inv.has_value(), ErrorCode::Internal, name + ": singular coordinate block");
  StructureTensor t(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      auto v = flatten(commutator(basis[i], basis[j]));
      QVector rhs(d);
      for (int r = 0; r < d; ++r) rhs[r] = v[e.pivots[r]];
      auto x = inv->apply(rhs);
      require(a.apply(x) == v, ErrorCode::Internal, name + ": bracket leaves the span");
      for (int k = 0; k < d; ++k) {
        t(i, j, k) = x[k];
        t(j, i, k) = -x[k];
      }
    }
  return t;
}

}  // namespace

LieAlgebraPtr su(int n) {
  require(n >= 2 && n <= 4, ErrorCode::InvalidArgument, "su(n) is provided for 2 <= n <= 4");
  std::vector<CMat> basis;
  std::vector<std::string> labels;
  for (int j = 0; j + 1 < n; ++j) {
    CMat m(n);
    m.c(j, j) = 1;
    m.c(j + 1, j + 1) = -1;
    basis.push_back(m);
    labels.push_back("D" + std::to_string(j + 1));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMat m(n);
      m.r(j, k) = 1;
      m.r(k, j) = -1;
      basis.push_back(m);
      labels.push_back("A" + std::to_string(j + 1) + std::to_string(k + 1));
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMat m(n);
      m.c(j, k) = 1;
      m.c(k, j) = 1;
      basis.push_back(m);
      labels.push_back("S" + std::to_string(j + 1) + std::to_string(k + 1));
    }
  const std::string name = "su" + std::to_string(n);
  return std::make_shared<LieAlgebra>(name, labels, structure_of(basis, name), GroundField::Real);
}

LieAlgebraPtr sl3_chevalley() {
  auto unit = [](int i, int j) {
    CMat m(3);
    m.r(i, j) = 1;
    return m;
  };
  CMat h1(3), h2(3);
  h1.r(0, 0) = 1;
  h1.r(1, 1) = -1;
  h2.r(1, 1) = 1;
  h2.r(2, 2) = -1;
  CMat e1 = unit(0, 1), e2 = unit(1, 2), f1 = unit(1, 0), f2 = unit(2, 1);
  CMat e3 = commutator(e1, e2);  // E13
  CMat f3 = commutator(f2, f1);  // E31
  std::vector<CMat> basis{h1, h2, e1, e2, e3, f1, f2, f3};
  std::vector<std::string> labels{"H1", "H2", "E1", "E2", "E3", "F1", "F2", "F3"};
  return std::make_shared<LieAlgebra>("sl3-chevalley", labels, structure_of(basis, "sl3-chevalley"),
                                      GroundField::Complex);
}

LieAlgebraPtr named_algebra(const std::string& name) {
  if (name == "su2") return su(2);
  if (name == "su3") return su(3);
  if (name == "su4") return su(4);
  if (name == "sl3-chevalley" || name == "sl3") return sl3_chevalley();
  fail(ErrorCode::UnknownTarget, "unknown Lie algebra '" + name + "' (known: su2, su3, su4, sl3-chevalley)");
}

QMatrix killing_form(const LieAlgebra& g) {
  const int d = g.dimension();
  QMatrix b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Rational s(0);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          const Rational& x = g.c(i, q, p);
          if (sgn(x) != 0) s += x * g.c(j, p, q);
        }
      b(i, j) = s;
      b(j, i) = s;
    }
  return b;
}

bool is_ad_invariant(const LieAlgebra& g, const QMatrix& b) {
  const int d = g.dimension();
  if (static_cast<int>(b.rows()) != d || static_cast<int>(b.cols()) != d) return false;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        Rational s(0);
        for (int a = 0; a < d; ++a) {
          if (sgn(g.c(x, y, a)) != 0) s += g.c(x, y, a) * b(a, z);
          if (sgn(g.c(x, z, a)) != 0) s += g.c(x, z, a) * b(y, a);
        }
        if (sgn(s) != 0) return false;
      }
  return true;
}

QVector torus_element(int k, int l, bool allow_degenerate) {
  require(k != 0 || l != 0, ErrorCode::InvalidArgument, "torus_element: (k,l) = (0,0) does not define a circle");
  if (!allow_degenerate) {
    require(std::gcd(k, l) == 1, ErrorCode::InvalidArgument,
            "torus_element: k and l must be coprime (pass the degenerate override to allow)");
    require(static_cast<long>(k) * l * (static_cast<long>(k) + l) != 0, ErrorCode::InvalidArgument,
            "torus_element: k*l*(k+l) must be nonzero (pass the degenerate override to allow)");
  }
  // i diag(k, l, -k-l) = k * D1 + (k + l) * D2.
  QVector v(8, Rational(0));
  v[0] = k;
  v[1] = k + l;
  return v;
}

Subalgebra::Subalgebra(LieAlgebraPtr parent, std::vector<QVector> basis)
    : parent_(std::move(parent)), basis_(std::move(basis)) {
  require(parent_ != nullptr, ErrorCode::InvalidArgument, "subalgebra without a parent algebra");
  const int d = parent_->dimension();
  QMatrix m(basis_.size(), d);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    require(static_cast<int>(basis_[i].size()) == d, ErrorCode::DimensionMismatch, "subalgebra vector length");
    for (int j = 0; j < d; ++j) m(i, j) = basis_[i][j];
  }
  require(rank(m) == basis_.size(), ErrorCode::InvalidArgument, "subalgebra basis is linearly dependent");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      auto br = parent_->bracket(basis_[i], basis_[j]);
      QMatrix ext = m;
      QMatrix row(1, d);
      for (int k = 0; k < d; ++k) row(0, k) = br[k];
      require(rank(ext.vstack(row)) == basis_.size(), ErrorCode::InvalidArgument,
              "span is not closed under the bracket (not a subalgebra)");
    }
}

QVector ReductiveSplit::split_coordinates(const QVector& x) const { return to_split_.apply(x); }

StructureTensor ReductiveSplit::projected_brackets() const {
  const int dm = dim_m(), dh = h_.dimension();
  StructureTensor t(dm);
  for (int i = 0; i < dm; ++i)
    for (int j = i + 1; j < dm; ++j) {
      auto c = split_coordinates(g_->bracket(m_[i], m_[j]));
      for (int k = 0; k < dm; ++k) {
        t(i, j, k) = c[dh + k];
        t(j, i, k) = -c[dh + k];
      }
    }
  return t;
}

QMatrix ReductiveSplit::isotropy_action(const QVector& x) const {
  const int dm = dim_m(), dh = h_.dimension();
  QMatrix a(dm, dm);
  for (int j = 0; j < dm; ++j) {
    auto c = split_coordinates(g_->bracket(x, m_[j]));
    for (int i = 0; i < dh; ++i)
      require(sgn(c[i]) == 0, ErrorCode::Internal, "[h, m] has an h-component");
    for (int i = 0; i < dm; ++i) a(i, j) = c[dh + i];
  }
  return a;
}

ReductiveSplit reductive_split(LieAlgebraPtr g, const Subalgebra& h) {
  require(h.parent().get() == g.get() || h.parent()->name() == g->name(), ErrorCode::InvalidArgument,
          "subalgebra belongs to a different algebra");
  const int d = g->dimension();
  ReductiveSplit s(g, h);
  s.b_ = killing_form(*g);
  QMatrix neg(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) neg(i, j) = -s.b_(i, j);
  require(positive_definite(neg), ErrorCode::InvalidArgument,
          g->name() + ": Killing form is not negative definite (compact real form required)");

  // Complement: vectors v with B(h_i, v) = 0.
  QMatrix hb(h.dimension(), d);
  for (int i = 0; i < h.dimension(); ++i)
    for (int j = 0; j < d; ++j) {
      Rational t(0);
      for (int k = 0; k < d; ++k) t += h.basis()[i][k] * s.b_(k, j);
      hb(i, j) = t;
    }
  auto raw = nullspace(hb);
  auto pair = [&](const QVector& x, const QVector& y) {
    Rational t(0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (sgn(x[i]) != 0 && sgn(y[j]) != 0) t -= x[i] * s.b_(i, j) * y[j];
    return t;
  };
  for (auto v : raw) {
    for (const auto& u : s.m_) {
      Rational f = pair(v, u) / pair(u, u);
      for (int i = 0; i < d; ++i) v[i] -= f * u[i];
    }
    s.m_.push_back(std::move(v));
  }

  QMatrix basis(d, d);
  int col = 0;
  for (const auto& v : h.basis()) {
    for (int i = 0; i < d; ++i) basis(i, col) = v[i];
    ++col;
  }
  for (const auto& v : s.m_) {
    for (int i = 0; i < d; ++i) basis(i, col) = v[i];
    ++col;
  }
  require(col == d, ErrorCode::Internal, "h + m does not span g");
  auto inv = inverse(basis);
  require(inv.has_value(), ErrorCode::Internal, "h and its complement are not complementary");
  s.to_split_ = std::move(*inv);
  for (const auto& x : h.basis()) (void)s.isotropy_action(x);  // throws unless [h, m] in m
  return s;
}

QForm biinvariant_three_form(const LieAlgebra& g, const QMatrix& b) {
  require(is_ad_invariant(g, b), ErrorCode::InvalidArgument, "bilinear form is not ad-invariant");
  const int d = g.dimension();
  QForm eta(d, 3);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        Rational t(0);
        for (int a = 0; a < d; ++a)
          if (sgn(g.c(j, k, a)) != 0) t += b(i, a) * g.c(j, k, a);
        eta.add((Mask{1} << i) | (Mask{1} << j) | (Mask{1} << k), t);
      }
  // Total antisymmetry: eta(e_j, e_i, e_k) must equal -eta(e_i, e_j, e_k).
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Rational x(0), y(0);
        for (int a = 0; a < d; ++a) {
          x += b(i, a) * g.c(j, k, a);
          y += b(j, a) * g.c(i, k, a);
        }
        if (x != -y) fail(ErrorCode::InvalidArgument, "B(X,[Y,Z]) is not totally antisymmetric");
      }
  return eta;
}

}  // namespace gformal::liealg
