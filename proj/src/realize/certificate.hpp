#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grring/ring.hpp"

namespace gformal::realize {

enum class StepKind { Exact, Sampled };
const char* to_string(StepKind k);

// One executable claim. `check` selects the checker; `params` is all the
// checker sees, so a certificate can be replayed without the code that made it.
//
// Exact checks:
//   ring_zero          ring, poly            poly = 0 in the ring
//   ring_nonzero       ring, poly            poly != 0 in the ring
//   ring_nonzero_top   ring, poly            poly has top degree and is != 0
//   ring_combination   ring, names, definitions, coefficients, expected
//                      sum_i coefficients[i] * relation_i, rewritten in the
//                      new generators modulo monomial relations, = expected
//   no_real_roots      coefficients (c0,c1,c2)  c0 + c1 t + c2 t^2 has no real root
//   rational_nonzero   value
//   normal_form_power  n, power, min_kernel  for every 2-form w on R^n,
//                      w^power = 0 implies dim ker w >= min_kernel
//   lefschetz_normal_form                    w^3 != 0 on R^6 implies
//                      a -> a ^ w is injective on 2-forms
// Sampled checks (pointwise, exact arithmetic on random instances):
//   pointwise          n, samplers, conclusion, lhs[, rhs][, value]
//     samplers: "name=kind; ..." with kinds form:k, 2form_rank:r,
//       2form_nondeg, vector, kernel:e1|e2|..., kernel_independent:f|g|u
//     conclusion: equal | zero | nonzero | kernel_dim_at_least |
//       lefschetz_invertible
struct ProofStep {
  std::string id;
  StepKind kind = StepKind::Exact;
  std::string claim;
  std::string check;
  std::map<std::string, std::string> params;
};

enum class CertificateVerdict { Infeasible, Inconclusive };
const char* to_string(CertificateVerdict v);

struct Certificate {
  std::string pattern;  // RANK_KERNEL, LEFSCHETZ, TOTARO
  std::string ring;     // serialized presentation
  std::map<std::string, std::string> parameters;
  std::vector<ProofStep> steps;
  std::string conclusion;
  std::vector<std::string> notes;
  CertificateVerdict verdict = CertificateVerdict::Inconclusive;
  // Exact steps that failed while building (verdict is then Inconclusive).
  std::vector<std::string> failed_steps;
};

// u^3 = 0, v^2 + c u^2 = 0, v^3 != 0 in the ring.
Certificate certify_rank_kernel(const grring::RingPresentation& ring, const grring::Polynomial& u,
                                const grring::Polynomial& v, const Rational& c);
// Sphere-bundle ring y^2 + c x^2 = 0, x^3 = 0 with u = x, v = y. c = 0 throws
// PatternInapplicable.
Certificate certify_rank_kernel(const Rational& c);
// eta * omega = 0, omega^3 != 0, eta != 0 in the ring.
Certificate certify_lefschetz(const grring::RingPresentation& ring, const grring::Polynomial& omega,
                              const grring::Polynomial& eta);
Certificate certify_lefschetz();  // Eschenburg example 2
Certificate certify_totaro(const Rational& a, const Rational& b);

// Dispatches on pattern_match; throws PatternInapplicable on NONE and on
// patterns without a certificate family (P1, PROD_ODD).
Certificate certify_ring(const grring::RingPresentation& ring);

struct StepResult {
  std::string id;
  StepKind kind = StepKind::Exact;
  bool passed = false;
  int trials = 0;
  int failures = 0;
  std::string message;
};

struct VerificationReport {
  bool accepted = false;
  std::vector<StepResult> steps;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Replays exact steps and samples `trials` instances for sampled steps. Any
// failing step, or a verdict other than INFEASIBLE, rejects the certificate.
VerificationReport verify_certificate(const Certificate& cert, int trials, std::uint64_t seed);
StepResult verify_step(const ProofStep& step, int trials, std::uint64_t seed);

// Flips the sign of one step's claim (fault injection).
Certificate corrupt_step(Certificate cert, std::size_t index);

// "x:2 y:2 | top 6 | x*y + x^2 - y^2 ; x^3" and back.
std::string ring_to_text(const grring::RingPresentation& ring);
grring::RingPresentation ring_from_text(const std::string& text);

}  // namespace gformal::realize
