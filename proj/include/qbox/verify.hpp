#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qbox {

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool gating = true;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // diagnostics that do not affect the outcome

  bool passed() const;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;  // every gating criterion
};

struct VerifyOptions {
  // deformation for the classical-limit criterion
  double limit_q = 1.0 + 1e-4;
};

CriterionResult check_reference_roots();
CriterionResult check_classical_limits(double q);
CriterionResult check_algebra();
CriterionResult check_special_functions();
CriterionResult check_jackson();
CriterionResult check_spectral_residuals();
CriterionResult check_lagrange();
CriterionResult check_kernel();
CriterionResult check_classical_dynamics();
CriterionResult check_uncertainty();
CriterionResult check_orthogonality();

VerifyReport run_verification(const VerifyOptions& opt = {});

// one line per criterion followed by indented check lines
std::string format_report(const VerifyReport& r);

// Truncated ordinary integral int_0^T* e_q(-t) t^n dt in 50-digit arithmetic,
// T* the first integer t where |e_q(-t) t^n| < 1e-16. Empty when the
// integrand turns back up before reaching that level.
struct MomentIntegral {
  double value = 0.0;
  double t_star = 0.0;
  double tail_bound = 0.0;
};
std::optional<MomentIntegral> gamma_moment_quadrature(double q, int n);

}  // namespace qbox
