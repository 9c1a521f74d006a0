#include "realize/problem.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <random>
#include <thread>

namespace gformal::realize {

using xalg::Mask;

namespace {

constexpr int kMaxPointDimension = 12;
constexpr int kBatch = 8;
constexpr int kStallWindow = 200;
constexpr double kStallDecrease = 1e-3;

using Sparse = std::vector<std::pair<Mask, double>>;

struct Scratch {
  std::vector<double> buf;
  std::vector<char> mark;
  std::vector<Mask> touched;
  // wedge_sign table for small n
  int n = 0;
  std::vector<signed char> sign;
  void init(int dim) {
    n = dim;
    const std::size_t full = std::size_t{1} << n;
    buf.assign(full, 0.0);
    mark.assign(full, 0);
    if (n <= 8) {
      sign.assign(full * full, 0);
      for (Mask a = 0; a < full; ++a)
        for (Mask b = 0; b < full; ++b)
          if (!(a & b)) sign[(a << n) | b] = static_cast<signed char>(xalg::wedge_sign(a, b));
    }
  }
  int operator()(Mask a, Mask b) const {
    return sign.empty() ? xalg::wedge_sign(a, b) : sign[(static_cast<std::size_t>(a) << n) | b];
  }
};

Sparse wedge(const Sparse& a, const Sparse& b, Scratch& w) {
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (ma & mb) continue;
      const Mask m = ma | mb;
      if (!w.mark[m]) {
        w.mark[m] = 1;
        w.touched.push_back(m);
      }
      w.buf[m] += w(ma, mb) * ca * cb;
    }
  Sparse out;
  out.reserve(w.touched.size());
  for (Mask m : w.touched) {
    if (w.buf[m] != 0.0) out.emplace_back(m, w.buf[m]);
    w.buf[m] = 0.0;
    w.mark[m] = 0;
  }
  w.touched.clear();
  return out;
}

double small_det(std::vector<double> m, std::size_t k) {
  double det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::fabs(m[r * k + c]) > std::fabs(m[p * k + c])) p = r;
    if (m[p * k + c] == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(m[p * k + j], m[c * k + j]);
      det = -det;
    }
    det *= m[c * k + c];
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = m[r * k + c] / m[c * k + c];
      for (std::size_t j = c; j < k; ++j) m[r * k + j] -= f * m[c * k + j];
    }
  }
  return det;
}

// Cofactor matrix entry (i, j) of a k x k matrix.
double cofactor(const std::vector<double>& m, std::size_t k, std::size_t i, std::size_t j) {
  if (k == 1) return 1.0;
  std::vector<double> minor;
  minor.reserve((k - 1) * (k - 1));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (r != i && c != j) minor.push_back(m[r * k + c]);
  const double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  return s * small_det(std::move(minor), k - 1);
}

struct Term {
  double coef;
  std::vector<std::size_t> factors;
};

class Evaluator {
 public:
  explicit Evaluator(const RealizationProblem& p) : p_(p), layout_(p) {
    p.validate();
    const std::size_t full = std::size_t{1} << p.n;
    for (const auto& r : p.relations) {
      std::vector<Term> terms;
      for (const auto& [m, c] : r.terms()) terms.push_back({c.get_d(), factors_of(m)});
      relations_.push_back(std::move(terms));
    }
    volume_ = factors_of(p.volume);
    scratch_.init(p.n);
    dense_.assign(full, 0.0);
  }

  const Layout& layout() const { return layout_; }

  double value(const std::vector<double>& x, std::vector<double>* grad) {
    require(x.size() == layout_.size(), ErrorCode::DimensionMismatch,
            "assignment has " + std::to_string(x.size()) + " entries, expected " + std::to_string(layout_.size()));
    if (grad) grad->assign(x.size(), 0.0);
    std::vector<Sparse> forms(p_.variables.size());
    for (std::size_t v = 0; v < forms.size(); ++v) {
      const auto& bl = layout_.blades(v);
      for (std::size_t i = 0; i < bl.size(); ++i) {
        const double c = x[layout_.offset(v) + i];
        if (c != 0.0) forms[v].emplace_back(bl[i], c);
      }
    }
    double total = 0;
    for (const auto& terms : relations_) {
      std::fill(dense_.begin(), dense_.end(), 0.0);
      for (const auto& t : terms) {
        Sparse prod = product(forms, t.factors, 0, t.factors.size());
        for (const auto& [m, c] : prod) dense_[m] += t.coef * c;
      }
      double sq = 0;
      for (double c : dense_) sq += c * c;
      total += sq;
      if (grad && sq > 0)
        for (const auto& t : terms) accumulate(forms, t.factors, 2.0 * t.coef, *grad);
    }
    {
      Sparse prod = product(forms, volume_, 0, volume_.size());
      const Mask full = xalg::full_mask(p_.n);
      double v = 0;
      for (const auto& [m, c] : prod)
        if (m == full) v = c;
      total += (v - 1) * (v - 1);
      if (grad && v != 1.0) {
        std::fill(dense_.begin(), dense_.end(), 0.0);
        dense_[full] = v - 1;
        accumulate(forms, volume_, 2.0, *grad);
      }
    }
    for (std::size_t gi = 0; gi < layout_.groups().size(); ++gi) {
      const auto& grp = layout_.groups()[gi];
      const std::size_t k = grp.size();
      std::vector<double> gram(k * k, 0.0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t oi = layout_.offset(grp[i]), oj = layout_.offset(grp[j]);
          double s = 0;
          for (std::size_t b = 0; b < layout_.blades(grp[i]).size(); ++b) s += x[oi + b] * x[oj + b];
          gram[i * k + j] = s;
        }
      const double det = small_det(gram, k);
      const double t = x[layout_.aux_offset(gi)];
      const double r = t * det - 1;
      total += r * r;
      if (grad && r != 0.0) {
        (*grad)[layout_.aux_offset(gi)] += 2 * r * det;
        for (std::size_t i = 0; i < k; ++i) {
          // d det / d f_i = 2 sum_j cof(i, j) f_j (symmetric Gram)
          const std::size_t oi = layout_.offset(grp[i]);
          for (std::size_t j = 0; j < k; ++j) {
            const double cf = cofactor(gram, k, i, j);
            if (cf == 0.0) continue;
            const std::size_t oj = layout_.offset(grp[j]);
            for (std::size_t b = 0; b < layout_.blades(grp[i]).size(); ++b)
              (*grad)[oi + b] += 2 * r * t * 2 * cf * x[oj + b];
          }
        }
      }
    }
    return total;
  }

 private:
  std::vector<std::size_t> factors_of(const grring::Monomial& m) const {
    std::vector<std::size_t> f;
    for (std::size_t v = 0; v < m.size(); ++v)
      for (int e = 0; e < m[v]; ++e) f.push_back(v);
    return f;
  }

  Sparse product(const std::vector<Sparse>& forms, const std::vector<std::size_t>& f, std::size_t lo,
                 std::size_t hi) {
    Sparse acc{{Mask{0}, 1.0}};
    for (std::size_t i = lo; i < hi; ++i) acc = wedge(acc, forms[f[i]], scratch_);
    return acc;
  }

  // grad[(f_i, B)] += scale * sum_S dense_[S] * (prefix ^ e_B ^ suffix)_S
  void accumulate(const std::vector<Sparse>& forms, const std::vector<std::size_t>& f, double scale,
                  std::vector<double>& grad) {
    const std::size_t k = f.size();
    std::vector<Sparse> prefix(k + 1), suffix(k + 1);
    prefix[0] = {{Mask{0}, 1.0}};
    for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = wedge(prefix[i], forms[f[i]], scratch_);
    suffix[k] = {{Mask{0}, 1.0}};
    for (std::size_t i = k; i-- > 0;) suffix[i] = wedge(forms[f[i]], suffix[i + 1], scratch_);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t var = f[i];
      const auto& blades = layout_.blades(var);
      const std::size_t off = layout_.offset(var);
      for (const auto& [ma, ca] : prefix[i])
        for (const auto& [mc, cc] : suffix[i + 1]) {
          if (ma & mc) continue;
          const Mask u = ma | mc;
          for (std::size_t bi = 0; bi < blades.size(); ++bi) {
            const Mask mb = blades[bi];
            if (mb & u) continue;
            const double r = dense_[u | mb];
            if (r == 0.0) continue;
            const int s = scratch_(ma, mb) * scratch_(ma | mb, mc);
            grad[off + bi] += scale * s * ca * cc * r;
          }
        }
    }
  }

  const RealizationProblem& p_;
  Layout layout_;
  std::vector<std::vector<Term>> relations_;
  std::vector<std::size_t> volume_;
  Scratch scratch_;
  std::vector<double> dense_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct RestartResult {
  double residual = 0;
  std::vector<double> x;
  long iterations = 0;
};

RestartResult run_restart(const RealizationProblem& p, const SearchConfig& cfg, int r) {
  Evaluator ev(p);
  const Layout& lay = ev.layout();
  std::mt19937_64 rng(restart_seed(cfg.seed, r));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(lay.size());
  for (std::size_t i = 0; i < lay.size(); ++i) x[i] = u(rng);
  for (std::size_t g = 0; g < lay.groups().size(); ++g) x[lay.aux_offset(g)] = 1.0;

  std::vector<double> g, gn, xn(x.size());
  double f = ev.value(x, &g);
  double step = cfg.initial_step;
  RestartResult out{f, x, 0};
  double checkpoint = f;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    out.iterations = it + 1;
    if (f < cfg.convergence_tolerance) break;
    // Stalled at a positive local minimum.
    if (it > 0 && it % kStallWindow == 0) {
      if (f > (1 - kStallDecrease) * checkpoint) break;
      checkpoint = f;
    }
    const double g2 = dot(g, g);
    if (g2 < 1e-300) break;
    double fn = 0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] - step * g[i];
      fn = ev.value(xn, nullptr);
      if (std::isfinite(fn) && fn <= f - 1e-4 * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    ev.value(xn, &gn);
    double ss = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = xn[i] - x[i], y = gn[i] - g[i];
      ss += s * s;
      sy += s * y;
    }
    x.swap(xn);
    g.swap(gn);
    f = fn;
    step = sy > 0 ? ss / sy : step * 2;
    step = std::clamp(step, 1e-12, 1e6);
  }
  out.residual = f;
  out.x = x;
  return out;
}

}  // namespace

RealizationProblem RealizationProblem::from_ring(const grring::RingPresentation& ring, bool independence) {
  RealizationProblem p;
  p.name = ring.name;
  p.n = ring.top;
  p.variables = ring.generators;
  for (const auto& r : ring.relations)
    if (!r.is_zero()) p.relations.push_back(r);
  if (ring.volume) {
    p.volume = *ring.volume;
  } else {
    grring::NormalFormTable t(ring);
    require(t.dimension(t.top()) == 1, ErrorCode::InconsistentInput,
            "ring has no one-dimensional top piece to use as the volume class");
    p.volume = t.basis(t.top())[0];
  }
  p.independence = independence;
  p.validate();
  return p;
}

void RealizationProblem::validate() const {
  require(n >= 1 && n <= kMaxPointDimension, ErrorCode::InvalidArgument,
          "point dimension must be in 1.." + std::to_string(kMaxPointDimension));
  require(!variables.empty(), ErrorCode::InvalidArgument, "problem has no form variables");
  for (const auto& v : variables)
    require(v.degree >= 1 && v.degree <= n, ErrorCode::InvalidArgument, "variable " + v.name + " has grade outside 1..n");
  for (const auto& r : relations) {
    require(r.generators() == variables, ErrorCode::InvalidArgument, "relation over foreign variables");
    require(r.homogeneous(), ErrorCode::NotHomogeneous, "relation is not homogeneous: " + r.str());
    require(r.degree() <= n, ErrorCode::DegreeOutOfRange, "relation grade exceeds n: " + r.str());
  }
  require(volume.size() == variables.size(), ErrorCode::DimensionMismatch, "volume monomial length");
  require(grring::monomial_degree(variables, volume) == n, ErrorCode::InvalidArgument,
          "volume monomial must have total grade n");
}

Layout::Layout(const RealizationProblem& p) {
  std::map<int, std::vector<std::size_t>> by_grade;
  for (std::size_t v = 0; v < p.variables.size(); ++v) {
    offsets_.push_back(size_);
    blades_.push_back(xalg::blades_of_grade(p.n, p.variables[v].degree));
    size_ += blades_.back().size();
    by_grade[p.variables[v].degree].push_back(v);
  }
  aux_offset_ = size_;
  if (p.independence)
    for (auto& [g, vs] : by_grade)
      if (vs.size() >= 2) groups_.push_back(vs);
  size_ += groups_.size();
}

xalg::FForm Layout::form(const std::vector<double>& x, std::size_t var, int n) const {
  xalg::FForm f(n);
  for (std::size_t i = 0; i < blades_[var].size(); ++i) f.add(blades_[var][i], x[offsets_[var] + i]);
  return f;
}

std::vector<double> Layout::pack(const RealizationProblem& p, const std::vector<xalg::FForm>& forms) const {
  require(forms.size() == p.variables.size(), ErrorCode::DimensionMismatch, "one form per variable");
  std::vector<double> x(size_, 0.0);
  for (std::size_t v = 0; v < forms.size(); ++v)
    for (std::size_t i = 0; i < blades_[v].size(); ++i) x[offsets_[v] + i] = forms[v].coefficient(blades_[v][i]);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& grp = groups_[g];
    const std::size_t k = grp.size();
    std::vector<double> gram(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        double s = 0;
        for (std::size_t b = 0; b < blades_[grp[i]].size(); ++b)
          s += x[offsets_[grp[i]] + b] * x[offsets_[grp[j]] + b];
        gram[i * k + j] = s;
      }
    const double det = small_det(gram, k);
    x[aux_offset_ + g] = det != 0.0 ? 1.0 / det : 0.0;
  }
  return x;
}

double residual(const RealizationProblem& p, const std::vector<double>& x) {
  Evaluator ev(p);
  return ev.value(x, nullptr);
}

std::vector<double> residual_gradient(const RealizationProblem& p, const std::vector<double>& x) {
  Evaluator ev(p);
  std::vector<double> g;
  ev.value(x, &g);
  return g;
}

void SearchConfig::validate() const {
  require(restarts >= 1, ErrorCode::InvalidArgument, "restarts must be positive");
  require(max_iterations >= 1, ErrorCode::InvalidArgument, "max_iterations must be positive");
  require(initial_step > 0, ErrorCode::InvalidArgument, "initial step must be positive");
  require(convergence_tolerance > 0 && feasibility_threshold > 0, ErrorCode::InvalidArgument,
          "tolerances must be positive");
  require(feasibility_threshold > convergence_tolerance, ErrorCode::InvalidArgument,
          "feasibility threshold must exceed the convergence tolerance");
}

const char* to_string(SearchStatus s) {
  return s == SearchStatus::FeasibleFound ? "FEASIBLE_FOUND" : "NO_SOLUTION_FOUND";
}

std::uint64_t restart_seed(std::uint64_t base, int r) {
  // splitmix64
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SearchOutcome search(const RealizationProblem& p, const SearchConfig& cfg) {
  p.validate();
  cfg.validate();
  SearchOutcome out;
  out.seed = cfg.seed;
  out.best_residual = std::numeric_limits<double>::infinity();
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  for (int start = 0; start < cfg.restarts; start += kBatch) {
    const int end = std::min(cfg.restarts, start + kBatch);
    std::vector<RestartResult> results(end - start);
    if (threads == 1) {
      for (int r = start; r < end; ++r) results[r - start] = run_restart(p, cfg, r);
    } else {
      std::vector<std::future<RestartResult>> fut;
      for (int r = start; r < end; ++r)
        fut.push_back(std::async(std::launch::async, [&p, &cfg, r] { return run_restart(p, cfg, r); }));
      for (int r = start; r < end; ++r) results[r - start] = fut[r - start].get();
    }
    for (int r = start; r < end; ++r) {
      auto& res = results[r - start];
      out.iterations += res.iterations;
      out.restart_residuals.push_back(res.residual);
      if (res.residual < out.best_residual) {
        out.best_residual = res.residual;
        out.best_assignment = std::move(res.x);
        out.best_restart = r;
      }
    }
    out.restarts_run = end;
    if (out.best_residual <= cfg.feasibility_threshold) break;
  }
  out.status = out.best_residual <= cfg.feasibility_threshold ? SearchStatus::FeasibleFound
                                                              : SearchStatus::NoSolutionFound;
  return out;
}

}  // namespace gformal::realize
