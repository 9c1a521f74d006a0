#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "common/linalg.hpp"
#include "common/rational.hpp"
#include "xalg/multivector.hpp"

namespace gformal::liealg {

// Bracket coefficients on a finite basis: [e_i, e_j] = sum_k c(i,j,k) e_k.
// Not required to satisfy Jacobi (projected brackets on m use this too).
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(int dim) : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim) {}

  int dimension() const { return dim_; }
  const Rational& operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }
  Rational& operator()(int i, int j, int k) { return c_[index(i, j, k)]; }

  // d e^a = -sum_{b<c} c(b,c,a) e^b ^ e^c, one form per basis covector.
  std::vector<xalg::QForm> dual_differentials() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<Rational> c_;
};

// Chevalley-Eilenberg differential (trivial coefficients) of a form on the
// span of the tensor's basis, extended as an antiderivation.
xalg::QForm ce_differential(const StructureTensor& t, const xalg::QForm& form);

enum class GroundField { Real, Complex };

class LieAlgebra {
 public:
  // Verifies antisymmetry and the Jacobi identity exactly.
  LieAlgebra(std::string name, std::vector<std::string> labels, StructureTensor structure,
             GroundField field = GroundField::Real);

  const std::string& name() const { return name_; }
  int dimension() const { return structure_.dimension(); }
  const std::vector<std::string>& labels() const { return labels_; }
  GroundField field() const { return field_; }
  const StructureTensor& structure() const { return structure_; }
  const Rational& c(int i, int j, int k) const { return structure_(i, j, k); }

  std::optional<int> index_of(const std::string& label) const;
  int require_index(const std::string& label) const;
  QVector basis_vector(int i) const;
  QVector basis_vector(const std::string& label) const { return basis_vector(require_index(label)); }

  QVector bracket(const QVector& x, const QVector& y) const;
  // Matrix of ad_x; column j holds [x, e_j].
  QMatrix ad(const QVector& x) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  StructureTensor structure_;
  GroundField field_;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

// Compact su(n), 2 <= n <= 4. Basis order: diagonal i(E_jj - E_{j+1,j+1})
// labelled D1..D{n-1}; then E_jk - E_kj labelled Ajk; then i(E_jk + E_kj)
// labelled Sjk (j < k, lexicographic).
LieAlgebraPtr su(int n);

// sl(3) with Chevalley generators H1, H2, E1, E2, E3, F1, F2, F3 where
// E3 = [E1, E2] and F3 = [F2, F1]; structure constants are rational.
LieAlgebraPtr sl3_chevalley();

// Named registry: "su2", "su3", "su4", "sl3-chevalley".
LieAlgebraPtr named_algebra(const std::string& name);

// B(x, y) = trace(ad x ad y), exact.
QMatrix killing_form(const LieAlgebra& g);

// B([x,y],z) + B(y,[x,z]) = 0 on all basis triples.
bool is_ad_invariant(const LieAlgebra& g, const QMatrix& b);

// i diag(k, l, -k-l) in the su(3) basis. Requires gcd(k,l) = 1 and
// k l (k+l) != 0 unless allow_degenerate; (0,0) is always rejected.
QVector torus_element(int k, int l, bool allow_degenerate = false);

class Subalgebra {
 public:
  // Verifies linear independence and closure under the bracket.
  Subalgebra(LieAlgebraPtr parent, std::vector<QVector> basis);

  const LieAlgebraPtr& parent() const { return parent_; }
  const std::vector<QVector>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

 private:
  LieAlgebraPtr parent_;
  std::vector<QVector> basis_;
};

// g = h + m with m the B-orthogonal complement of h, B = Killing form.
class ReductiveSplit {
 public:
  const LieAlgebraPtr& algebra() const { return g_; }
  const Subalgebra& subalgebra() const { return h_; }
  const std::vector<QVector>& complement() const { return m_; }
  const QMatrix& form() const { return b_; }
  int dim_m() const { return static_cast<int>(m_.size()); }

  // Coordinates of x in the combined basis (h first, then m).
  QVector split_coordinates(const QVector& x) const;
  // m-part of [m_i, m_j] in the m basis.
  StructureTensor projected_brackets() const;
  // Matrix of ad_x restricted to m (x in h), in the m basis.
  QMatrix isotropy_action(const QVector& x) const;

  friend ReductiveSplit reductive_split(LieAlgebraPtr g, const Subalgebra& h);

 private:
  ReductiveSplit(LieAlgebraPtr g, Subalgebra h) : g_(std::move(g)), h_(std::move(h)) {}

  LieAlgebraPtr g_;
  Subalgebra h_;
  std::vector<QVector> m_;
  QMatrix b_;
  QMatrix to_split_;  // inverse of [h | m] basis matrix
};

// Requires B negative definite. The complement basis is orthogonalized with
// respect to -B, so the normal metric is diagonal on it.
ReductiveSplit reductive_split(LieAlgebraPtr g, const Subalgebra& h);

// eta(X,Y,Z) = B(X,[Y,Z]) as a 3-form in the dual basis of g.
xalg::QForm biinvariant_three_form(const LieAlgebra& g, const QMatrix& b);

}  // namespace gformal::liealg
