#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grring/ring.hpp"
#include "xalg/multivector.hpp"

namespace gformal::realize {

// Constant-coefficient forms on R^n satisfying the relations of a ring, with
// the designated top monomial equal to e_1^...^e_n.
struct RealizationProblem {
  std::string name;
  int n = 0;
  std::vector<grring::Generator> variables;  // name and grade
  std::vector<grring::Polynomial> relations;
  grring::Monomial volume;
  // Variables of equal grade must be linearly independent (nonzero classes
  // have nowhere-vanishing harmonic representatives). Enforced with one
  // auxiliary scalar per grade group: t * det(Gram) = 1.
  bool independence = true;

  static RealizationProblem from_ring(const grring::RingPresentation& ring, bool independence = true);
  // Throws if grades, relations or the volume monomial are inconsistent.
  void validate() const;
};

// Parameter layout: variable coefficients over blades of its grade in
// increasing mask order, then auxiliary scalars.
class Layout {
 public:
  explicit Layout(const RealizationProblem& p);
  std::size_t size() const { return size_; }
  std::size_t offset(std::size_t var) const { return offsets_[var]; }
  const std::vector<xalg::Mask>& blades(std::size_t var) const { return blades_[var]; }
  // Groups of variable indices sharing a grade (size >= 2), one aux each.
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }
  std::size_t aux_offset(std::size_t group) const { return aux_offset_ + group; }

  xalg::FForm form(const std::vector<double>& x, std::size_t var, int n) const;
  // Packs forms and fills auxiliary scalars consistently (t = 1/det).
  std::vector<double> pack(const RealizationProblem& p, const std::vector<xalg::FForm>& forms) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<xalg::Mask>> blades_;
  std::vector<std::vector<std::size_t>> groups_;
  std::size_t aux_offset_ = 0, size_ = 0;
};

double residual(const RealizationProblem& p, const std::vector<double>& x);
std::vector<double> residual_gradient(const RealizationProblem& p, const std::vector<double>& x);

struct SearchConfig {
  int restarts = 64;
  int max_iterations = 4000;
  double initial_step = 1e-2;
  double convergence_tolerance = 1e-12;
  double feasibility_threshold = 1e-8;
  std::uint64_t seed = 1;
  // Validates the invariants above; throws InvalidArgument.
  void validate() const;
};

enum class SearchStatus { FeasibleFound, NoSolutionFound };
const char* to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::NoSolutionFound;
  double best_residual = 0;
  std::vector<double> best_assignment;
  int best_restart = -1;
  long iterations = 0;
  int restarts_run = 0;
  std::vector<double> restart_residuals;
  std::uint64_t seed = 0;
};

// Multi-restart gradient descent with Barzilai-Borwein steps and
// backtracking. Deterministic in (problem, config); restarts run in fixed
// batches so early exit does not depend on the thread count.
SearchOutcome search(const RealizationProblem& p, const SearchConfig& cfg);

// Seed of restart r derived from the base seed.
std::uint64_t restart_seed(std::uint64_t base, int r);

}  // namespace gformal::realize
