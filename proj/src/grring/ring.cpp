#include "grring/ring.hpp"

#include <algorithm>

#include "invar/invariant_complex.hpp"

namespace gformal::grring {

using gformal::to_string;

RingPresentation RingPresentation::parse(std::string name, const std::vector<Generator>& gens,
                                         const std::vector<std::string>& relations, int top,
                                         const std::string& volume) {
  RingPresentation p;
  p.name = std::move(name);
  p.generators = gens;
  p.top = top;
  for (const auto& r : relations) p.relations.push_back(parse_polynomial(r, gens));
  if (!volume.empty()) {
    auto v = parse_polynomial(volume, gens);
    require(v.terms().size() == 1 && v.terms().begin()->second == 1, ErrorCode::InvalidArgument,
            "volume must be a single monomial");
    p.volume = v.terms().begin()->first;
  }
  return p;
}

Polynomial RingPresentation::gen(const std::string& n) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == n) return Polynomial::generator(generators, i);
  fail(ErrorCode::InvalidArgument, "no generator named " + n);
}

NormalFormTable::NormalFormTable(RingPresentation p) : p_(std::move(p)) {
  require(p_.top >= 0 && p_.top <= 64, ErrorCode::DegreeOutOfRange, "top degree must be in 0..64");
  require(!p_.generators.empty(), ErrorCode::InvalidArgument, "ring needs at least one generator");
  for (std::size_t i = 0; i < p_.generators.size(); ++i) {
    require(p_.generators[i].degree > 0, ErrorCode::InvalidArgument, "generator degrees must be positive");
    for (std::size_t j = 0; j < i; ++j)
      require(p_.generators[i].name != p_.generators[j].name, ErrorCode::InvalidArgument, "duplicate generator name");
  }
  std::vector<std::pair<int, const Polynomial*>> rels;
  for (const auto& r : p_.relations) {
    require(r.generators() == p_.generators, ErrorCode::InvalidArgument, "relation over foreign generators");
    require(r.homogeneous(), ErrorCode::NotHomogeneous, "relation is not homogeneous: " + r.str());
    if (r.is_zero()) continue;
    const int d = r.degree();
    require(d <= p_.top, ErrorCode::DegreeOutOfRange,
            "relation degree " + std::to_string(d) + " exceeds the top degree: " + r.str());
    rels.emplace_back(d, &r);
  }
  if (p_.volume)
    require(monomial_degree(p_.generators, *p_.volume) == p_.top, ErrorCode::InvalidArgument,
            "volume monomial must have the top degree");

  for (int d = 0; d <= p_.top; ++d) {
    Level lv;
    lv.monomials = monomials_of_degree(p_.generators, d);
    std::reverse(lv.monomials.begin(), lv.monomials.end());
    for (std::size_t i = 0; i < lv.monomials.size(); ++i) lv.column[lv.monomials[i]] = i;
    std::vector<QVector> rows;
    for (const auto& [rd, r] : rels) {
      for (const auto& m : monomials_of_degree(p_.generators, d - rd)) {
        Polynomial prod = Polynomial::monomial(p_.generators, m) * *r;
        QVector row(lv.monomials.size(), Rational(0));
        for (const auto& [mm, c] : prod.terms()) row[lv.column.at(mm)] = c;
        rows.push_back(std::move(row));
      }
    }
    QMatrix m(rows.size(), lv.monomials.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < lv.monomials.size(); ++j) m(i, j) = rows[i][j];
    auto e = rref(m);
    lv.ideal = std::move(e.reduced);
    lv.pivots = std::move(e.pivots);
    std::vector<bool> is_pivot(lv.monomials.size(), false);
    for (auto pv : lv.pivots) is_pivot[pv] = true;
    for (std::size_t j = lv.monomials.size(); j-- > 0;)
      if (!is_pivot[j]) {
        lv.basis.push_back(lv.monomials[j]);
        lv.basis_columns.push_back(j);
      }
    levels_.push_back(std::move(lv));
  }
}

const NormalFormTable::Level& NormalFormTable::level(int d) const {
  require(d >= 0 && d <= p_.top, ErrorCode::DegreeOutOfRange,
          "degree " + std::to_string(d) + " is outside 0.." + std::to_string(p_.top));
  return levels_[d];
}

int NormalFormTable::degree_of(const Polynomial& p) const {
  require(p.generators() == p_.generators, ErrorCode::InvalidArgument, "polynomial over foreign generators");
  const int d = p.degree();
  require(d <= p_.top, ErrorCode::DegreeOutOfRange,
          "degree " + std::to_string(d) + " exceeds the top degree " + std::to_string(p_.top));
  return d;
}

QVector NormalFormTable::reduce(const Polynomial& p, int d) const {
  if (!p.is_zero())
    require(degree_of(p) == d, ErrorCode::NotHomogeneous,
            "polynomial " + p.str() + " is not of degree " + std::to_string(d));
  const Level& lv = level(d);
  QVector v(lv.monomials.size(), Rational(0));
  for (const auto& [m, c] : p.terms()) v[lv.column.at(m)] = c;
  for (std::size_t i = 0; i < lv.pivots.size(); ++i) {
    const Rational f = v[lv.pivots[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(lv.ideal(i, j)) != 0) v[j] -= f * lv.ideal(i, j);
  }
  QVector out;
  for (auto j : lv.basis_columns) out.push_back(v[j]);
  return out;
}

Polynomial NormalFormTable::from_coordinates(int d, const QVector& coords) const {
  const Level& lv = level(d);
  require(coords.size() == lv.basis.size(), ErrorCode::DimensionMismatch, "normal form length");
  Polynomial p(p_.generators);
  for (std::size_t i = 0; i < coords.size(); ++i) p.add(lv.basis[i], coords[i]);
  return p;
}

bool NormalFormTable::is_zero(const Polynomial& p) const {
  for (const auto& x : reduce(p))
    if (sgn(x) != 0) return false;
  return true;
}

std::vector<int> betti_of_ring(const NormalFormTable& t) {
  std::vector<int> b;
  for (int d = 0; d <= t.top(); ++d) b.push_back(t.dimension(d));
  return b;
}

RingPresentation substitute(const NormalFormTable& t, const std::vector<std::string>& new_names,
                            const std::vector<Polynomial>& definitions) {
  const auto& old = t.generators();
  require(new_names.size() == old.size() && definitions.size() == old.size(), ErrorCode::InvalidArgument,
          "substitution must define one new generator per old generator");
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < old.size(); ++i) {
    const auto& def = definitions[i];
    require(def.generators() == old, ErrorCode::InvalidArgument, "definition over foreign generators");
    require(!def.is_zero() && def.homogeneous(), ErrorCode::InvalidArgument,
            "definition of " + new_names[i] + " must be a nonzero homogeneous polynomial");
    for (const auto& [m, c] : def.terms()) {
      int total = 0;
      for (int e : m) total += e;
      require(total == 1, ErrorCode::InvalidArgument, "definition of " + new_names[i] + " must be linear");
    }
    gens.push_back({new_names[i], def.degree()});
  }
  // Linear change per degree block: new = M old, invert M.
  const std::size_t n = old.size();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Monomial mono(n, 0);
      mono[j] = 1;
      m(i, j) = definitions[i].coefficient(mono);
      if (sgn(m(i, j)) != 0)
        require(old[j].degree == gens[i].degree, ErrorCode::InvalidArgument, "substitution mixes degrees");
    }
  auto inv = inverse(m);
  require(inv.has_value(), ErrorCode::InvalidArgument, "substitution is not invertible");
  std::vector<Polynomial> old_in_new;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial p(gens);
    for (std::size_t i = 0; i < n; ++i)
      if (sgn((*inv)(j, i)) != 0) p += Polynomial::generator(gens, i, (*inv)(j, i));
    old_in_new.push_back(std::move(p));
  }

  RingPresentation out;
  out.name = t.presentation().name + " (substituted)";
  out.generators = gens;
  out.top = t.top();
  for (const auto& r : t.presentation().relations) {
    Polynomial nr(gens);
    for (const auto& [mono, c] : r.terms()) {
      Polynomial term = Polynomial::constant(gens, c);
      for (std::size_t j = 0; j < n; ++j)
        for (int e = 0; e < mono[j]; ++e) term = term * old_in_new[j];
      nr += term;
    }
    out.relations.push_back(std::move(nr));
  }
  // Drop terms divisible by a monomial relation.
  std::vector<Monomial> monomial_rels;
  for (const auto& r : out.relations)
    if (r.terms().size() == 1) monomial_rels.push_back(r.terms().begin()->first);
  for (auto& r : out.relations) {
    if (r.terms().size() == 1) continue;
    Polynomial kept(gens);
    for (const auto& [mono, c] : r.terms()) {
      bool divisible = false;
      for (const auto& mr : monomial_rels) {
        bool d = true;
        for (std::size_t j = 0; j < n; ++j) d = d && mono[j] >= mr[j];
        divisible = divisible || d;
      }
      if (!divisible) kept.add(mono, c);
    }
    r = std::move(kept);
  }
  return out;
}

bool same_ideal(const NormalFormTable& a, const NormalFormTable& b) {
  if (a.generators() != b.generators() || a.top() != b.top()) return false;
  for (int d = 0; d <= a.top(); ++d)
    if (!(a.ideal_rref(d) == b.ideal_rref(d))) return false;
  return true;
}

QMatrix poincare_pairing(const NormalFormTable& t, int k) {
  require(t.dimension(t.top()) == 1, ErrorCode::InconsistentInput, "top graded piece is not one-dimensional");
  require(k >= 0 && k <= t.top(), ErrorCode::DegreeOutOfRange, "pairing degree out of range");
  const auto& gens = t.generators();
  const auto& left = t.basis(k);
  const auto& right = t.basis(t.top() - k);
  QMatrix m(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      m(i, j) = t.reduce(Polynomial::monomial(gens, left[i]) * Polynomial::monomial(gens, right[j]))[0];
  return m;
}

bool is_pd_algebra(const NormalFormTable& t) {
  if (t.dimension(t.top()) != 1 || t.dimension(0) != 1) return false;
  for (int k = 0; k <= t.top(); ++k) {
    auto m = poincare_pairing(t, k);
    if (m.rows() != m.cols()) return false;
    if (m.rows() > 0 && determinant(m) == 0) return false;
  }
  return true;
}

const char* to_string(PatternTag t) {
  switch (t) {
    case PatternTag::ProdOdd:
      return "PROD_ODD";
    case PatternTag::P1:
      return "P1";
    case PatternTag::Totaro:
      return "TOTARO";
    case PatternTag::RankKernel:
      return "RANK_KERNEL";
    case PatternTag::Lefschetz:
      return "LEFSCHETZ";
    default:
      return "NONE";
  }
}

std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
  std::vector<Rational> roots;
  if (coeffs.size() <= 1) return roots;
  // Factor out t = 0.
  std::size_t shift = 0;
  while (sgn(coeffs[shift]) == 0) ++shift;
  if (shift > 0) roots.push_back(Rational(0));
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(shift));
  if (coeffs.size() <= 1) return roots;
  Integer lcm(1);
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> ic;
  for (const auto& c : coeffs) ic.push_back(Integer(c * lcm));
  auto divisors = [](Integer x) {
    std::vector<Integer> out;
    x = abs(x);
    require(x <= Integer(1000000000), ErrorCode::Unsupported, "rational_roots: coefficients too large");
    for (Integer d = 1; d * d <= x; ++d)
      if (x % d == 0) {
        out.push_back(d);
        if (d * d != x) out.push_back(x / d);
      }
    return out;
  };
  auto eval = [&](const Rational& t) {
    Rational s(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) s = s * t + coeffs[i];
    return s;
  };
  for (const auto& p : divisors(ic.front()))
    for (const auto& q : divisors(ic.back()))
      for (int sign : {1, -1}) {
        Rational r(Integer(p * sign), q);
        r.canonicalize();
        if (sgn(eval(r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

bool two_generators_of_degree_two(const NormalFormTable& t) {
  return t.generators().size() == 2 && t.generators()[0].degree == 2 && t.generators()[1].degree == 2 &&
         t.top() == 6 && betti_of_ring(t) == std::vector<int>{1, 0, 2, 0, 2, 0, 1};
}

Rational top_coefficient(const NormalFormTable& t, const Polynomial& p) { return t.reduce(p)[0]; }

bool proportional(const QVector& a, const QVector& b) {
  // a x b = 0 for 2-vectors
  return a[0] * b[1] - a[1] * b[0] == 0;
}

std::optional<PatternMatch> match_rank_kernel(const NormalFormTable& t) {
  if (!two_generators_of_degree_two(t)) return std::nullopt;
  const auto& g = t.generators();
  Polynomial x = Polynomial::generator(g, 0), y = Polynomial::generator(g, 1);
  std::vector<Polynomial> us;
  // u = x, or u = s x + y with s a rational root of the cubic top((s x + y)^3).
  if (t.is_zero(x.pow(3))) us.push_back(x);
  {
    std::vector<Rational> cubic(4);
    const Rational binom[4] = {1, 3, 3, 1};
    for (int i = 0; i <= 3; ++i)  // s^i x^i y^(3-i)
      cubic[i] = binom[i] * top_coefficient(t, x.pow(i) * y.pow(3 - i));
    bool all_zero = std::all_of(cubic.begin(), cubic.end(), [](const Rational& r) { return sgn(r) == 0; });
    if (!all_zero)
      for (const auto& s : rational_roots(cubic)) us.push_back(x * s + y);
  }
  for (const auto& u : us) {
    QVector u2 = t.reduce(u.pow(2));
    if (sgn(u2[0]) == 0 && sgn(u2[1]) == 0) continue;
    std::vector<Polynomial> vs{y};
    // v = x + s y with (x + s y)^2 parallel to u^2: quadratic in s.
    {
      QVector a = t.reduce(x.pow(2)), b = t.reduce(x * y * Rational(2)), c = t.reduce(y.pow(2));
      auto cross = [&](const QVector& w) -> Rational { return w[0] * u2[1] - w[1] * u2[0]; };
      std::vector<Rational> quad{cross(a), cross(b), cross(c)};
      bool all_zero = std::all_of(quad.begin(), quad.end(), [](const Rational& r) { return sgn(r) == 0; });
      if (!all_zero)
        for (const auto& s : rational_roots(quad)) vs.push_back(x + y * s);
    }
    for (const auto& v : vs) {
      QVector v2 = t.reduce(v.pow(2));
      if (!proportional(v2, u2)) continue;
      // v not a multiple of u
      const Monomial mx{1, 0}, my{0, 1};
      if (u.coefficient(mx) * v.coefficient(my) == u.coefficient(my) * v.coefficient(mx)) continue;
      Rational lambda = sgn(u2[0]) != 0 ? v2[0] / u2[0] : v2[1] / u2[1];
      if (sgn(lambda) == 0) continue;
      if (sgn(top_coefficient(t, v.pow(3))) == 0) continue;
      PatternMatch m;
      m.tag = PatternTag::RankKernel;
      m.u = u;
      m.v = v;
      m.c = -lambda;
      m.detail = "u = " + u.str() + ", v = " + v.str() + ": u^3 = 0, v^2 + (" + to_string(m.c) +
                 ") u^2 = 0, v^3 != 0";
      return m;
    }
  }
  return std::nullopt;
}

std::optional<PatternMatch> match_lefschetz(const NormalFormTable& t) {
  if (!two_generators_of_degree_two(t)) return std::nullopt;
  const auto& g = t.generators();
  Polynomial x = Polynomial::generator(g, 0), y = Polynomial::generator(g, 1);
  // omega = y or x + s y; the map eta -> eta*omega on degree 2 must be singular.
  std::vector<Polynomial> omegas{y};
  {
    QVector xx = t.reduce(x * x), xy = t.reduce(x * y), yy = t.reduce(y * y);
    // columns: x*omega = xx + s xy, y*omega = xy + s yy; det is quadratic in s.
    auto det2 = [](const QVector& a, const QVector& b) -> Rational { return a[0] * b[1] - a[1] * b[0]; };
    std::vector<Rational> quad{det2(xx, xy), det2(xx, yy) + det2(xy, xy), det2(xy, yy)};
    bool all_zero = std::all_of(quad.begin(), quad.end(), [](const Rational& r) { return sgn(r) == 0; });
    if (!all_zero)
      for (const auto& s : rational_roots(quad)) omegas.push_back(x + y * s);
  }
  for (const auto& w : omegas) {
    if (sgn(top_coefficient(t, w.pow(3))) == 0) continue;
    QVector a = t.reduce(x * w), b = t.reduce(y * w);
    QMatrix m(2, 2);
    m(0, 0) = a[0];
    m(1, 0) = a[1];
    m(0, 1) = b[0];
    m(1, 1) = b[1];
    auto ker = nullspace(m);
    if (ker.empty()) continue;
    Polynomial eta = x * ker[0][0] + y * ker[0][1];
    PatternMatch r;
    r.tag = PatternTag::Lefschetz;
    r.omega = w;
    r.eta = eta;
    r.detail = "omega = " + w.str() + ", eta = " + eta.str() + ": eta*omega = 0, omega^3 != 0";
    return r;
  }
  return std::nullopt;
}

std::optional<PatternMatch> match_totaro(const NormalFormTable& t) {
  const auto& g = t.generators();
  if (g.size() != 3 || t.top() != 6) return std::nullopt;
  for (const auto& x : g)
    if (x.degree != 2) return std::nullopt;
  // Read a and b off the degree-4 ideal: it must contain x1^2 and elements
  // with x2^2 (resp. x3^2) coefficient 1 and no other square.
  const auto& mons = t.monomials(4);
  const auto& id = t.ideal_rref(4);
  if (id.rows() != 3) return std::nullopt;
  auto col = [&](const Monomial& m) {
    return static_cast<std::size_t>(std::find(mons.begin(), mons.end(), m) - mons.begin());
  };
  // Solve for the ideal element with prescribed square coefficients.
  auto element_with = [&](int i1, int i2, int i3) -> std::optional<QVector> {
    QMatrix sys(3, 3);
    const Monomial sq[3] = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) sys(k, r) = id(r, col(sq[k]));
    auto coeff = solve(sys, QVector{Rational(i1), Rational(i2), Rational(i3)});
    if (!coeff) return std::nullopt;
    QVector e(mons.size(), Rational(0));
    for (int r = 0; r < 3; ++r)
      for (std::size_t j = 0; j < mons.size(); ++j) e[j] += (*coeff)[r] * id(r, j);
    return e;
  };
  auto r2 = element_with(0, 1, 0), r3 = element_with(0, 0, 1);
  if (!r2 || !r3) return std::nullopt;
  Rational a = (*r2)[col({1, 1, 0})], b = (*r3)[col({1, 0, 1})];
  auto cand = NormalFormTable(totaro_ring(a, b));
  if (!same_ideal(t, cand)) return std::nullopt;
  PatternMatch m;
  m.tag = PatternTag::Totaro;
  m.a = a;
  m.b = b;
  m.detail = "Totaro relations with a = " + to_string(a) + ", b = " + to_string(b);
  return m;
}

}  // namespace

PatternMatch pattern_match(const NormalFormTable& t) {
  auto b = betti_of_ring(t);
  const bool closed = !b.empty() && b.front() == 1 && b.back() == 1 && b.size() >= 2;
  if (closed) {
    auto top = invar::formality_by_top_degree(b);
    if (top.pattern == invar::TopDegreePattern::AppliesProd && t.generators().size() == 2) {
      PatternMatch m;
      m.tag = PatternTag::ProdOdd;
      m.p = top.p;
      m.q = top.q;
      m.detail = top.reason;
      return m;
    }
    if (top.pattern == invar::TopDegreePattern::AppliesP1) {
      PatternMatch m;
      m.tag = PatternTag::P1;
      m.k = top.k;
      m.detail = top.reason;
      return m;
    }
  }
  if (auto m = match_totaro(t)) return *m;
  if (auto m = match_rank_kernel(t)) return *m;
  if (auto m = match_lefschetz(t)) return *m;
  return PatternMatch{};
}

RingPresentation totaro_ring(const Rational& a, const Rational& b) {
  std::vector<Generator> g{{"x1", 2}, {"x2", 2}, {"x3", 2}};
  RingPresentation p;
  p.name = "totaro(" + to_string(a) + "," + to_string(b) + ")";
  p.generators = g;
  p.top = 6;
  auto x1 = Polynomial::generator(g, 0), x2 = Polynomial::generator(g, 1), x3 = Polynomial::generator(g, 2);
  p.relations = {x1 * x1, a * (x1 * x2) + x2 * x3 + x2 * x2, b * (x1 * x3) + Rational(2) * (x2 * x3) + x3 * x3};
  NormalFormTable t(p);
  if (t.dimension(6) == 1) p.volume = t.basis(6)[0];
  return p;
}

RingPresentation sphere_bundle_ring(const Rational& c) {
  std::vector<Generator> g{{"x", 2}, {"y", 2}};
  RingPresentation p;
  p.name = "sphere-bundle(" + to_string(c) + ")";
  p.generators = g;
  p.top = 6;
  auto x = Polynomial::generator(g, 0), y = Polynomial::generator(g, 1);
  p.relations = {y * y + c * (x * x), x.pow(3)};
  p.volume = Monomial{2, 1};
  return p;
}

RingPresentation wedge_ring(int p, int q) {
  require(p > 0 && q > 0, ErrorCode::InvalidArgument, "wedge(p,q) needs positive degrees");
  std::string a = "x" + std::to_string(p), b = (p == q ? "y" : "x") + std::to_string(q);
  std::vector<Generator> g{{a, p}, {b, q}};
  RingPresentation r;
  r.name = "wedge(" + std::to_string(p) + "," + std::to_string(q) + ")";
  r.generators = g;
  r.top = p + q;
  auto x = Polynomial::generator(g, 0), y = Polynomial::generator(g, 1);
  for (auto sq : {x * x, y * y})
    if (!sq.is_zero() && sq.degree() <= r.top) r.relations.push_back(sq);
  r.volume = Monomial{1, 1};
  return r;
}

RingPresentation named_ring(const std::string& name, const RingParams& params) {
  const std::vector<Generator> xy{{"x", 2}, {"y", 2}};
  if (name == "eschenburg-ex1")
    return RingPresentation::parse(name, xy, {"x*y = y^2 - x^2", "x^3"}, 6, "x^2*y");
  if (name == "eschenburg-ex2") return RingPresentation::parse(name, xy, {"x^2 = y^2", "x^3 = y^3"}, 6, "x^3");
  if (name == "flag-su3")
    return RingPresentation::parse(name, xy, {"x^2 + x*y + y^2", "x^2*y + x*y^2"}, 6, "x^2*y");
  if (name == "totaro") return totaro_ring(params.a, params.b);
  if (name == "sphere-bundle") return sphere_bundle_ring(params.c);
  if (name == "wedge") return wedge_ring(params.p, params.q);
  fail(ErrorCode::UnknownTarget, "unknown ring '" + name +
                                     "' (known: eschenburg-ex1, eschenburg-ex2, totaro, sphere-bundle, flag-su3, wedge)");
}

}  // namespace gformal::grring
