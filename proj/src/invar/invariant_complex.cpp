#include "invar/invariant_complex.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace gformal::invar {

using liealg::LieAlgebraPtr;
using liealg::Subalgebra;

HomogeneousSpace::HomogeneousSpace(std::string label, liealg::ReductiveSplit split, std::vector<Rational> scales)
    : label_(std::move(label)), split_(std::move(split)) {
  const int dm = split_.dim_m();
  require(dm <= xalg::kMaxDimension, ErrorCode::Unsupported, "dim m exceeds 16");
  if (scales.empty()) scales.assign(dm, Rational(1));
  require(static_cast<int>(scales.size()) == dm, ErrorCode::DimensionMismatch,
          "metric scales: one entry per m basis vector expected");
  const auto& b = split_.form();
  const int d = split_.algebra()->dimension();
  for (int i = 0; i < dm; ++i) {
    require(sgn(scales[i]) > 0, ErrorCode::InvalidArgument, "metric scales must be positive");
    const auto& v = split_.complement()[i];
    Rational len(0);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (sgn(v[p]) != 0 && sgn(v[q]) != 0) len -= v[p] * b(p, q) * v[q];
    metric_.push_back(len * scales[i]);
  }
  brackets_ = split_.projected_brackets();
  for (const auto& x : split_.subalgebra().basis()) isotropy_.push_back(split_.isotropy_action(x));
}

namespace {

HomogeneousSpace quotient(const std::string& label, LieAlgebraPtr g, std::vector<QVector> h,
                          const std::string& embedding, std::vector<Rational> scales = {}) {
  Subalgebra sub(g, std::move(h));
  HomogeneousSpace s(label, liealg::reductive_split(g, sub), std::move(scales));
  s.embedding = embedding;
  return s;
}

}  // namespace

HomogeneousSpace aloff_wallach(int k, int l, bool allow_degenerate) {
  auto t = liealg::torus_element(k, l, allow_degenerate);
  return quotient("aw(" + std::to_string(k) + "," + std::to_string(l) + ")", liealg::su(3), {t},
                  "T1 = diag(z^" + std::to_string(k) + ", z^" + std::to_string(l) + ", z^" +
                      std::to_string(-k - l) + ") in SU(3)");
}

HomogeneousSpace su4_mod_su2() {
  auto g = liealg::su(4);
  return quotient("su4/su2", g, {g->basis_vector("D1"), g->basis_vector("A12"), g->basis_vector("S12")},
                  "SU(2) as the top-left 2x2 block of SU(4)");
}

HomogeneousSpace flag_su3() {
  auto g = liealg::su(3);
  return quotient("flag-su3", g, {g->basis_vector("D1"), g->basis_vector("D2")}, "maximal torus of diagonal matrices");
}

HomogeneousSpace sphere_quotient(int n) {
  auto g = liealg::su(n);
  if (n == 2) return quotient("su2/t1", g, {g->basis_vector("D1")}, "diagonal circle in SU(2)");
  require(n == 3, ErrorCode::InvalidArgument, "sphere_quotient supports n = 2, 3");
  return quotient("su3/su2", g, {g->basis_vector("D2"), g->basis_vector("A23"), g->basis_vector("S23")},
                  "SU(2) as the bottom-right 2x2 block of SU(3)");
}

HomogeneousSpace make_space(const SpaceRequest& req) {
  require(req.isotropy_connected, ErrorCode::Unsupported,
          "disconnected isotropy groups are not supported (invariance is computed at the Lie algebra level)");
  auto with_scales = [&](HomogeneousSpace s) {
    if (req.scales.empty()) return s;
    HomogeneousSpace scaled(s.label(), s.split(), req.scales);
    scaled.embedding = s.embedding;
    return scaled;
  };
  if (req.name == "aw") return with_scales(aloff_wallach(req.k, req.l, req.allow_degenerate));
  if (req.name == "su4/su2") return with_scales(su4_mod_su2());
  if (req.name == "flag-su3" || req.name == "su3/t2") return with_scales(flag_su3());
  if (req.name == "su3/su2") return with_scales(sphere_quotient(3));
  if (req.name == "su2/t1") return with_scales(sphere_quotient(2));
  if (req.name == "custom") {
    auto g = liealg::named_algebra(req.algebra);
    std::vector<QVector> h;
    for (const auto& combo : req.subalgebra) {
      QVector v(g->dimension(), Rational(0));
      for (const auto& [label, c] : combo) v[g->require_index(label)] += c;
      h.push_back(std::move(v));
    }
    return quotient("custom " + req.algebra, g, std::move(h), "user-supplied subalgebra", req.scales);
  }
  fail(ErrorCode::UnknownTarget,
       "unknown space '" + req.name + "' (known: aw, su4/su2, flag-su3, su3/su2, su2/t1, custom)");
}

// ---------------------------------------------------------------------------

namespace {

using Terms = std::vector<std::pair<Mask, Rational>>;

// Dense accumulator over blade positions.
class Accumulator {
 public:
  explicit Accumulator(std::size_t size) : values_(size), used_(size, 0) {}
  void add(std::uint32_t pos, const Rational& v) {
    if (!used_[pos]) {
      used_[pos] = 1;
      touched_.push_back(pos);
      values_[pos] = v;
    } else {
      values_[pos] += v;
    }
  }
  SparseVec take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    for (auto p : touched_) {
      if (sgn(values_[p]) != 0) out.emplace_back(p, values_[p]);
      used_[p] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Rational> values_;
  std::vector<char> used_;
  std::vector<std::uint32_t> touched_;
};

// e^left ^ e^b ^ e^right sign, for b not in left|right.
int splice_sign(Mask left, Mask b, Mask right) {
  return xalg::wedge_sign(left, b) * xalg::wedge_sign(left | b, right);
}

struct Builder {
  int n;
  const HomogeneousSpace& space;
  std::vector<std::int32_t> pos;  // blade mask -> position within its grade
  std::vector<Terms> de;          // d e^a
  std::unordered_map<Mask, Terms> d_cache;

  Builder(const HomogeneousSpace& s) : n(s.dim_m()), space(s), pos(std::size_t{1} << s.dim_m(), -1) {
    for (int k = 0; k <= n; ++k) {
      auto blades = xalg::blades_of_grade(n, k);
      for (std::size_t i = 0; i < blades.size(); ++i) pos[blades[i]] = static_cast<std::int32_t>(i);
    }
    for (const auto& f : s.brackets().dual_differentials()) {
      Terms t;
      for (const auto& [m, c] : f.terms()) t.emplace_back(m, c);
      de.push_back(std::move(t));
    }
  }

  // L_X e^S for L_X e^a = -sum_b A(a,b) e^b.
  void lie_blade(const QMatrix& a, Mask s, const Rational& coef, Accumulator& acc) const {
    for (Mask rest = s; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      const Mask bit = Mask{1} << i;
      const Mask left = s & (bit - 1), right = s & ~((bit << 1) - 1);
      for (int b = 0; b < n; ++b) {
        const Rational& x = a(i, b);
        if (sgn(x) == 0) continue;
        const Mask bb = Mask{1} << b;
        if (b != i && (s & bb)) continue;
        Rational v = -coef * x;
        if (splice_sign(left, bb, right) < 0) v = -v;
        acc.add(static_cast<std::uint32_t>(pos[left | bb | right]), v);
      }
    }
  }

  SparseVec lie(const QMatrix& a, const std::vector<Mask>& blades, const SparseVec& v, Accumulator& acc) const {
    for (const auto& [p, c] : v) lie_blade(a, blades[p], c, acc);
    return acc.take();
  }

  const Terms& d_blade(Mask s) {
    auto it = d_cache.find(s);
    if (it != d_cache.end()) return it->second;
    std::map<Mask, Rational> out;
    int j = 0;
    for (Mask rest = s; rest; rest &= rest - 1, ++j) {
      const int i = std::countr_zero(rest);
      const Mask bit = Mask{1} << i;
      const Mask left = s & (bit - 1), right = s & ~((bit << 1) - 1);
      for (const auto& [bc, k] : de[i]) {
        if (bc & (s & ~bit)) continue;
        int sign = ((j & 1) ? -1 : 1) * splice_sign(left, bc, right);
        out[left | bc | right] += sign > 0 ? Rational(k) : Rational(-k);
      }
    }
    Terms t;
    for (auto& [m, c] : out)
      if (sgn(c) != 0) t.emplace_back(m, c);
    return d_cache.emplace(s, std::move(t)).first->second;
  }
};

}  // namespace

int InvariantComplex::dimension(int k) const { return static_cast<int>(degree(k).basis.size()); }

const InvariantComplex::Degree& InvariantComplex::degree(int k) const {
  auto it = degree_.find(k);
  require(it != degree_.end(), ErrorCode::DegreeOutOfRange,
          "degree " + std::to_string(k) + " is outside the computed range");
  return it->second;
}

InvariantComplex InvariantComplex::build(const HomogeneousSpace& space, int lo, int hi) {
  InvariantComplex c;
  c.n_ = c.top_ = space.dim_m();
  if (hi < 0) hi = c.top_;
  require(lo >= 0 && lo <= hi && hi <= c.top_, ErrorCode::DegreeOutOfRange,
          "degree range must satisfy 0 <= lo <= hi <= dim m = " + std::to_string(c.top_));
  c.lo_ = lo;
  c.hi_ = hi;
  Builder b(space);
  const int from = std::max(0, lo - 1), to = std::min(c.top_, hi + 1);

  for (int k = from; k <= to; ++k) {
    Degree deg;
    deg.blades = xalg::blades_of_grade(c.n_, k);
    const std::size_t nb = deg.blades.size();
    Accumulator acc(nb);
    // Start from all blades, then cut down by one generator at a time.
    std::vector<SparseVec> basis;
    std::vector<std::uint32_t> pivots;
    for (std::uint32_t p = 0; p < nb; ++p) {
      basis.push_back(SparseVec{{p, Rational(1)}});
      pivots.push_back(p);
    }
    for (const auto& a : space.isotropy()) {
      if (basis.empty()) break;
      std::vector<SparseVec> images;
      images.reserve(basis.size());
      for (const auto& v : basis) images.push_back(b.lie(a, deg.blades, v, acc));
      auto ker = sparse_nullspace(images, nb);
      std::vector<SparseVec> next;
      std::vector<std::uint32_t> next_pivots;
      for (std::size_t s = 0; s < ker.basis.size(); ++s) {
        SparseVec v;
        for (const auto& [t, coef] : ker.basis[s]) v = sparse_add_scaled(v, basis[t], coef);
        next.push_back(std::move(v));
        next_pivots.push_back(pivots[ker.free_columns[s]]);
      }
      basis = std::move(next);
      pivots = std::move(next_pivots);
    }
    for (const auto& a : space.isotropy())
      for (const auto& v : basis)
        if (!b.lie(a, deg.blades, v, acc).empty()) c.invariance_verified_ = false;
    require(c.invariance_verified_, ErrorCode::Internal, "invariant basis is not annihilated by the isotropy");

    // Gram matrix with |e^S|^2 = prod 1/g_s.
    std::vector<Rational> weight(nb);
    for (std::size_t p = 0; p < nb; ++p) {
      Rational w(1);
      for (int i : xalg::indices_of(deg.blades[p])) w /= space.metric()[i];
      weight[p] = w;
    }
    const std::size_t dim = basis.size();
    deg.gram = QMatrix(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) {
        Rational s(0);
        std::size_t x = 0, y = 0;
        const auto &u = basis[i], &v = basis[j];
        while (x < u.size() && y < v.size()) {
          if (u[x].first < v[y].first) {
            ++x;
          } else if (v[y].first < u[x].first) {
            ++y;
          } else {
            s += u[x].second * v[y].second * weight[u[x].first];
            ++x;
            ++y;
          }
        }
        deg.gram(i, j) = s;
        deg.gram(j, i) = s;
      }
    deg.basis = std::move(basis);
    deg.pivots = std::move(pivots);
    c.degree_.emplace(k, std::move(deg));
  }

  // Differentials between consecutive computed degrees.
  for (int k = from; k <= to; ++k) {
    Degree& src = c.degree_.at(k);
    if (k == c.top_) {
      src.d = QMatrix(0, src.basis.size());
      continue;
    }
    if (!c.built(k + 1)) continue;
    const Degree& dst = c.degree_.at(k + 1);
    std::vector<std::int32_t> slot(dst.blades.size(), -1);
    for (std::size_t u = 0; u < dst.pivots.size(); ++u) slot[dst.pivots[u]] = static_cast<std::int32_t>(u);
    Accumulator acc(dst.blades.size());
    src.d = QMatrix(dst.basis.size(), src.basis.size());
    for (std::size_t t = 0; t < src.basis.size(); ++t) {
      for (const auto& [p, coef] : src.basis[t])
        for (const auto& [m, x] : b.d_blade(src.blades[p]))
          acc.add(static_cast<std::uint32_t>(b.pos[m]), coef * x);
      SparseVec dv = acc.take();
      SparseVec rebuilt;
      for (const auto& [p, x] : dv)
        if (slot[p] >= 0) {
          src.d(slot[p], t) = x;
          rebuilt = sparse_add_scaled(rebuilt, dst.basis[slot[p]], x);
        }
      require(rebuilt == dv, ErrorCode::Internal, "d maps an invariant form outside the invariant subspace");
    }
  }
  for (int k = from; k + 2 <= to; ++k) {
    const auto& d0 = c.degree_.at(k).d;
    const auto& d1 = c.degree_.at(k + 1).d;
    if (d0.rows() == d1.cols() && !(d1 * d0).is_zero()) c.d_squared_zero_ = false;
  }
  require(c.d_squared_zero_, ErrorCode::Internal, "d o d != 0 on the invariant complex");
  return c;
}

std::vector<QForm> InvariantComplex::basis(int k) const {
  const auto& deg = degree(k);
  std::vector<QForm> out;
  for (const auto& v : deg.basis) {
    QForm f(n_, k);
    for (const auto& [p, c] : v) f.add(deg.blades[p], c);
    out.push_back(std::move(f));
  }
  return out;
}

QForm InvariantComplex::form(int k, const QVector& coords) const {
  const auto& deg = degree(k);
  require(coords.size() == deg.basis.size(), ErrorCode::DimensionMismatch, "invariant coordinate length");
  QForm f(n_, k);
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (sgn(coords[t]) == 0) continue;
    for (const auto& [p, c] : deg.basis[t]) f.add(deg.blades[p], c * coords[t]);
  }
  return f;
}

std::optional<QVector> InvariantComplex::coordinates(int k, const QForm& f) const {
  const auto& deg = degree(k);
  require(f.dimension() == n_, ErrorCode::DimensionMismatch, "form dimension differs from dim m");
  if (!f.is_zero() && f.homogeneous_grade() != k) return std::nullopt;
  QVector coords(deg.basis.size());
  for (std::size_t t = 0; t < deg.pivots.size(); ++t) coords[t] = f.coefficient(deg.blades[deg.pivots[t]]);
  if (form(k, coords) != f) return std::nullopt;
  return coords;
}

const QMatrix& InvariantComplex::differential(int k) const {
  const auto& deg = degree(k);
  require(k == top_ || built(k + 1), ErrorCode::DegreeOutOfRange,
          "differential from degree " + std::to_string(k) + " needs degree " + std::to_string(k + 1));
  return deg.d;
}

const QMatrix& InvariantComplex::gram(int k) const { return degree(k).gram; }

std::vector<int> betti(const InvariantComplex& c) {
  std::vector<int> out;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    int b = c.dimension(k) - static_cast<int>(rank(c.differential(k)));
    if (k > 0) b -= static_cast<int>(rank(c.differential(k - 1)));
    out.push_back(b);
  }
  return out;
}

namespace {

// Rows of D_k and of D_{k-1}^T G_k; the harmonic space is their common kernel.
QMatrix harmonic_conditions(const InvariantComplex& c, int k) {
  QMatrix m(0, c.dimension(k));
  if (k < c.top()) m = m.vstack(c.differential(k));
  if (k > 0) m = m.vstack(c.differential(k - 1).transpose() * c.gram(k));
  return m;
}

}  // namespace

HarmonicBasis harmonic_basis(const InvariantComplex& c) {
  HarmonicBasis h;
  h.lo = c.lo();
  for (int k = c.lo(); k <= c.hi(); ++k) {
    QMatrix m = harmonic_conditions(c, k);
    std::vector<QVector> ker;
    if (m.rows() == 0) {
      for (int i = 0; i < c.dimension(k); ++i) {
        QVector v(c.dimension(k), Rational(0));
        v[i] = 1;
        ker.push_back(std::move(v));
      }
    } else {
      ker = nullspace(m);
    }
    std::vector<QForm> forms;
    for (const auto& v : ker) forms.push_back(c.form(k, v));
    h.coords.push_back(std::move(ker));
    h.forms.push_back(std::move(forms));
  }
  return h;
}

bool is_harmonic(const InvariantComplex& c, int k, const QVector& coords) {
  QMatrix m = harmonic_conditions(c, k);
  if (m.rows() == 0) return true;
  for (const auto& x : m.apply(coords))
    if (sgn(x) != 0) return false;
  return true;
}

const char* to_string(FormalityVerdict v) {
  return v == FormalityVerdict::FormalForThisMetric ? "FORMAL_FOR_THIS_METRIC" : "NOT_FORMAL";
}

FormalityReport formality_probe(const InvariantComplex& c, const HarmonicBasis& h) {
  FormalityReport r;
  const int lo = std::max(1, c.lo());
  for (int p = lo; p <= c.hi(); ++p)
    for (int q = p; q <= c.hi(); ++q) {
      if (p + q > c.top()) continue;
      const auto& fa = h.forms[p - h.lo];
      const auto& fb = h.forms[q - h.lo];
      for (std::size_t i = 0; i < fa.size(); ++i)
        for (std::size_t j = (p == q ? i : 0); j < fb.size(); ++j) {
          const int s = p + q;
          if (s > c.hi() || (s < c.top() && !c.built(s + 1))) {
            ++r.pairs_skipped;
            continue;
          }
          ++r.pairs_checked;
          QForm prod = xalg::wedge(fa[i], fb[j]);
          auto coords = c.coordinates(s, prod);
          require(coords.has_value(), ErrorCode::Internal, "product of invariant forms is not invariant");
          if (is_harmonic(c, s, *coords)) continue;
          ProductFailure f{p, static_cast<int>(i), q, static_cast<int>(j), s, prod.size() <= 40 ? prod.str() : "",
                           Rational(0), true, true};
          const auto& g = c.gram(s);
          auto gc = g.apply(*coords);
          for (std::size_t t = 0; t < gc.size(); ++t) f.norm_squared += gc[t] * (*coords)[t];
          if (s < c.top())
            for (const auto& x : c.differential(s).apply(*coords))
              if (sgn(x) != 0) f.closed = false;
          if (s > 0)
            for (const auto& x : (c.differential(s - 1).transpose() * g).apply(*coords))
              if (sgn(x) != 0) f.coclosed = false;
          r.failures.push_back(std::move(f));
        }
    }
  r.verdict = r.failures.empty() ? FormalityVerdict::FormalForThisMetric : FormalityVerdict::NotFormal;
  return r;
}

const char* to_string(TopDegreePattern p) {
  switch (p) {
    case TopDegreePattern::AppliesP1:
      return "APPLIES_P1";
    case TopDegreePattern::AppliesProd:
      return "APPLIES_PROD";
    default:
      return "NOT_APPLICABLE";
  }
}

TopDegreeResult formality_by_top_degree(const std::vector<int>& b) {
  require(b.size() >= 2, ErrorCode::InvalidArgument, "betti list needs at least degrees 0 and top");
  for (int x : b) require(x >= 0, ErrorCode::InvalidArgument, "betti numbers must be nonnegative");
  const int top = static_cast<int>(b.size()) - 1;
  require(b[0] == 1 && b[top] == 1, ErrorCode::InvalidArgument,
          "betti list must come from a closed connected orientable space (b0 = b_top = 1)");
  TopDegreeResult r;
  std::vector<int> support;
  for (int k = 1; k < top; ++k)
    if (b[k] != 0) support.push_back(k);
  // Degrees 0, k, 2k with 2k >= top.
  const int k = support.empty() ? top : support.front();
  bool p1 = (2 * k == top || k == top);
  for (int s : support) p1 = p1 && s == k;
  if (p1) {
    r.pattern = TopDegreePattern::AppliesP1;
    r.k = k;
    r.reason = "cohomology concentrated in degrees 0, " + std::to_string(k) + ", " + std::to_string(2 * k) +
               ": every homogeneous metric is formal";
    return r;
  }
  if (support.size() == 2 && b[support[0]] == 1 && b[support[1]] == 1 && support[0] + support[1] == top &&
      (support[0] % 2 == 1) && (support[1] % 2 == 1)) {
    r.pattern = TopDegreePattern::AppliesProd;
    r.p = support[0];
    r.q = support[1];
    r.reason = "cohomology of a product of odd spheres S^" + std::to_string(r.p) + " x S^" + std::to_string(r.q) +
               ": every homogeneous metric is formal";
    return r;
  }
  r.reason = "neither the 0,k,2k pattern nor a product of two odd-degree generators";
  for (int s : support)
    if (s % 2 == 0 && b[s] > 0 && s != top - s) {
      r.reason = "generator in even degree " + std::to_string(s) + " paired with odd degree " +
                 std::to_string(top - s);
      break;
    }
  return r;
}

// ---------------------------------------------------------------------------

AwContractionReport aw_contraction_check(int k, int l, bool allow_degenerate) {
  AwContractionReport r;
  r.k = k;
  r.l = l;
  r.torus = liealg::torus_element(k, l, allow_degenerate);
  r.degenerate = std::gcd(k, l) != 1 || static_cast<long>(k) * l * (k + l) == 0;
  {
    auto g3 = liealg::su(3);
    r.dim_m = liealg::reductive_split(g3, Subalgebra(g3, {r.torus})).dim_m();
  }
  auto g = liealg::sl3_chevalley();
  auto b = liealg::killing_form(*g);
  auto eta = liealg::biinvariant_three_form(*g, b);
  r.eta_closed = liealg::ce_differential(g->structure(), eta).is_zero();
  const int d = g->dimension();
  auto v = [&](const char* s) { return g->basis_vector(s); };
  r.killing_e1f1 = b(g->require_index("E1"), g->require_index("F1"));
  const Rational bef = r.killing_e1f1;
  const Rational b22 = b(g->require_index("E2"), g->require_index("F2"));

  // Contraction map X -> i_X eta as columns over the 2-blades.
  auto blades2 = xalg::blades_of_grade(d, 2);
  auto contraction_rank = [&](const std::vector<QVector>& xs) {
    QMatrix m(blades2.size(), xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      auto f = xalg::interior(xs[j], eta);
      for (std::size_t i = 0; i < blades2.size(); ++i) m(i, j) = f.coefficient(blades2[i]);
    }
    return static_cast<int>(rank(m));
  };
  const std::vector<QVector> basis_l{v("H1"), v("H2"), v("E1"), v("F1")};
  r.rank_on_l = contraction_rank(basis_l);
  std::vector<QVector> all;
  for (int i = 0; i < d; ++i) all.push_back(g->basis_vector(i));
  r.rank_on_g = contraction_rank(all);

  auto ev = [&](const QVector& x, const QVector& y, const QVector& z) { return xalg::evaluate(eta, {x, y, z}); };
  auto combo = [&](const Rational& a, const Rational& bb, const Rational& c, const Rational& dd) {
    QVector x(d, Rational(0));
    for (int i = 0; i < d; ++i) x[i] = a * basis_l[0][i] + bb * basis_l[1][i] + c * basis_l[2][i] + dd * basis_l[3][i];
    return x;
  };

  // Symbolic checks: by linearity it suffices to compare the coefficient of
  // each basis vector of L (restricted to the case's slice).
  CaseIdentity c1{"case 1 (d != 0)", "eta(E1, H1, X) = -2 d B(E1,F1)"};
  c1.symbolic = ev(v("E1"), v("H1"), v("H1")) == 0 && ev(v("E1"), v("H1"), v("H2")) == 0 &&
                ev(v("E1"), v("H1"), v("E1")) == 0 && ev(v("E1"), v("H1"), v("F1")) == -2 * bef;
  CaseIdentity c2{"case 2 (d = 0, c != 0)", "eta(F1, H1, X) = 2 c B(F1,E1)"};
  c2.symbolic = ev(v("F1"), v("H1"), v("H1")) == 0 && ev(v("F1"), v("H1"), v("H2")) == 0 &&
                ev(v("F1"), v("H1"), v("E1")) == 2 * bef;
  CaseIdentity c3{"case 3 (c = d = 0)", "eta(F1, X, E1) = (2a - b) B(F1,E1)"};
  c3.symbolic = ev(v("F1"), v("H1"), v("E1")) == 2 * bef && ev(v("F1"), v("H2"), v("E1")) == -bef;
  CaseIdentity c3b{"case 3 (c = d = 0), second root", "eta(F2, X, E2) = (2b - a) B(F2,E2)"};
  c3b.symbolic = ev(v("F2"), v("H1"), v("E2")) == -b22 && ev(v("F2"), v("H2"), v("E2")) == 2 * b22;
  CaseIdentity nz{"every nonzero X in L", "some case evaluation is nonzero"};
  nz.symbolic = r.rank_on_l == 4;

  for (int a = -2; a <= 2; ++a)
    for (int bb = -2; bb <= 2; ++bb)
      for (int c = -2; c <= 2; ++c)
        for (int dd = -2; dd <= 2; ++dd) {
          auto x = combo(a, bb, c, dd);
          ++c1.grid_points;
          if (ev(v("E1"), v("H1"), x) != -2 * dd * bef) ++c1.grid_failures;
          if (dd == 0) {
            ++c2.grid_points;
            if (ev(v("F1"), v("H1"), x) != 2 * c * bef) ++c2.grid_failures;
          }
          if (c == 0 && dd == 0) {
            ++c3.grid_points;
            ++c3b.grid_points;
            if (ev(v("F1"), x, v("E1")) != (2 * a - bb) * bef) ++c3.grid_failures;
            if (ev(v("F2"), x, v("E2")) != (2 * bb - a) * b22) ++c3b.grid_failures;
          }
          if (a == 0 && bb == 0 && c == 0 && dd == 0) continue;
          ++nz.grid_points;
          bool witnessed = dd != 0   ? ev(v("E1"), v("H1"), x) != 0
                           : c != 0  ? ev(v("F1"), v("H1"), x) != 0
                                     : (ev(v("F1"), x, v("E1")) != 0 || ev(v("F2"), x, v("E2")) != 0);
          if (!witnessed) ++nz.grid_failures;
        }
  r.identities = {c1, c2, c3, c3b, nz};
  r.dimension_contradiction = r.rank_on_l == r.dim_l && r.dim_l + r.dim_k > r.ambient;
  r.note =
      "L = span{H1,H2,E1,F1} meets the kernel of X -> i_X eta only in 0; a 5-dimensional annihilating subspace K "
      "would force dim(L cap K) >= 4 + 5 - 8 = 1. The existence of K follows from eta_2^2 = 0 and is taken as given, "
      "not recomputed.";
  return r;
}

ConnectionFormReport aw_connection_form(int k, int l, bool allow_degenerate) {
  auto g = liealg::su(3);
  auto t = liealg::torus_element(k, l, allow_degenerate);
  auto b = liealg::killing_form(*g);
  ConnectionFormReport r;
  r.alpha = QForm(8, 1);
  for (int j = 0; j < 8; ++j) {
    Rational s(0);
    for (int i = 0; i < 8; ++i) s += t[i] * b(i, j);
    r.alpha.add(Mask{1} << j, s);
  }
  r.d_alpha = liealg::ce_differential(g->structure(), r.alpha);
  auto it = xalg::interior(t, r.d_alpha);
  r.horizontal = it.is_zero();
  r.t_invariant = r.horizontal && liealg::ce_differential(g->structure(), it).is_zero();
  return r;
}

}  // namespace gformal::invar
