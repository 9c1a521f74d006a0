#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liealg/lie_algebra.hpp"

namespace gformal::invar {

using xalg::Mask;
using xalg::QForm;

// G/H with a diagonal metric on m: -B(m_i, m_i) times a per-vector scale.
class HomogeneousSpace {
 public:
  HomogeneousSpace(std::string label, liealg::ReductiveSplit split, std::vector<Rational> scales = {});

  const std::string& label() const { return label_; }
  const liealg::ReductiveSplit& split() const { return split_; }
  int dim_m() const { return split_.dim_m(); }
  // Squared lengths of the m basis vectors.
  const std::vector<Rational>& metric() const { return metric_; }
  const liealg::StructureTensor& brackets() const { return brackets_; }
  // ad of each h basis vector on m.
  const std::vector<QMatrix>& isotropy() const { return isotropy_; }
  // Free-text description of the isotropy embedding, echoed in reports.
  std::string embedding;

 private:
  std::string label_;
  liealg::ReductiveSplit split_;
  std::vector<Rational> metric_;
  liealg::StructureTensor brackets_;
  std::vector<QMatrix> isotropy_;
};

// SU(3)/T^1 with T^1 = diag(z^k, z^l, z^{-k-l}).
HomogeneousSpace aloff_wallach(int k, int l, bool allow_degenerate = false);
// SU(4)/SU(2), SU(2) embedded as the top-left 2x2 block.
HomogeneousSpace su4_mod_su2();
// SU(3)/T^2, the full flag manifold.
HomogeneousSpace flag_su3();
// SU(n)/SU(n-1) (odd sphere), SU(2)/T^1 = S^2.
HomogeneousSpace sphere_quotient(int n);

struct SpaceRequest {
  std::string name;  // "aw", "su4/su2", "flag-su3", "su3/su2", "su2/t1", or "custom"
  int k = 1, l = 1;
  bool allow_degenerate = false;
  bool isotropy_connected = true;
  // custom: algebra name plus subalgebra basis in the algebra's labels
  std::string algebra;
  std::vector<std::map<std::string, Rational>> subalgebra;
  std::vector<Rational> scales;
};
HomogeneousSpace make_space(const SpaceRequest& req);

class InvariantComplex {
 public:
  // Builds invariant bases for degrees max(0,lo-1)..min(top,hi+1), so Betti
  // numbers and harmonic forms are available for lo..hi.
  static InvariantComplex build(const HomogeneousSpace& space, int lo = 0, int hi = -1);

  int top() const { return top_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool built(int k) const { return k >= 0 && k <= top_ && degree_.count(k) > 0; }
  int dimension(int k) const;

  std::vector<QForm> basis(int k) const;
  QForm form(int k, const QVector& coords) const;
  // Coordinates in the invariant basis; nullopt if the form is not an
  // invariant form of degree k.
  std::optional<QVector> coordinates(int k, const QForm& f) const;

  // Matrix of d from degree k to k+1 (zero map when k = top).
  const QMatrix& differential(int k) const;
  // Inner products of the degree-k basis under the metric.
  const QMatrix& gram(int k) const;

  // Exactness checks recorded while building.
  bool d_squared_zero() const { return d_squared_zero_; }
  bool invariance_verified() const { return invariance_verified_; }

 private:
  struct Degree {
    std::vector<Mask> blades;
    std::vector<SparseVec> basis;  // over blade positions
    std::vector<std::uint32_t> pivots;
    QMatrix gram;
    QMatrix d;
  };
  const Degree& degree(int k) const;

  int n_ = 0, top_ = 0, lo_ = 0, hi_ = 0;
  std::map<int, Degree> degree_;
  bool d_squared_zero_ = true;
  bool invariance_verified_ = true;
};

std::vector<int> betti(const InvariantComplex& c);  // degrees c.lo()..c.hi()

struct HarmonicBasis {
  int lo = 0;
  std::vector<std::vector<QVector>> coords;  // per degree, invariant-basis coordinates
  std::vector<std::vector<QForm>> forms;
  int dimension(int k) const { return static_cast<int>(coords.at(k - lo).size()); }
};

HarmonicBasis harmonic_basis(const InvariantComplex& c);

bool is_harmonic(const InvariantComplex& c, int k, const QVector& coords);

struct ProductFailure {
  int degree_a, index_a, degree_b, index_b;
  int product_degree;
  std::string product;
  Rational norm_squared;
  bool closed, coclosed;
};

enum class FormalityVerdict { FormalForThisMetric, NotFormal };
const char* to_string(FormalityVerdict v);

struct FormalityReport {
  FormalityVerdict verdict = FormalityVerdict::FormalForThisMetric;
  int pairs_checked = 0;
  int pairs_skipped = 0;  // product degree outside the built range
  std::vector<ProductFailure> failures;
};

FormalityReport formality_probe(const InvariantComplex& c, const HarmonicBasis& h);

enum class TopDegreePattern { AppliesP1, AppliesProd, NotApplicable };
const char* to_string(TopDegreePattern p);

struct TopDegreeResult {
  TopDegreePattern pattern = TopDegreePattern::NotApplicable;
  int k = 0;          // P1: middle degree
  int p = 0, q = 0;   // PROD: odd generator degrees
  std::string reason;
};

TopDegreeResult formality_by_top_degree(const std::vector<int>& betti);

struct CaseIdentity {
  std::string name;
  std::string formula;
  bool symbolic = false;
  int grid_points = 0;
  int grid_failures = 0;
};

struct AwContractionReport {
  int k = 0, l = 0;
  bool degenerate = false;
  QVector torus;            // in the su(3) basis
  int dim_m = 0;
  int rank_on_l = 0;        // X -> i_X eta on L = span{H1,H2,E1,F1}
  int rank_on_g = 0;        // on all of sl3
  bool eta_closed = false;
  Rational killing_e1f1;
  std::vector<CaseIdentity> identities;
  int dim_l = 4, dim_k = 5, ambient = 8;
  bool dimension_contradiction = false;
  std::string note;
};

AwContractionReport aw_contraction_check(int k, int l, bool allow_degenerate = false);

// Covector alpha = B(T, .) on su(3) for the torus generator T and its CE
// differential; reported alongside the downstairs probe.
struct ConnectionFormReport {
  QForm alpha{8};
  QForm d_alpha{8};
  bool horizontal = false;  // i_T d alpha = 0
  bool t_invariant = false;
};
ConnectionFormReport aw_connection_form(int k, int l, bool allow_degenerate = false);

}  // namespace gformal::invar
