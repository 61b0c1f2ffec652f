#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genus1/linalg.hpp"

namespace genus1 {

/// Affine symmetric pencil A(z) = A0 + sum_i z_i A_i, with an optional
/// linear objective c . z.
struct PencilProblem {
  SymMatrix constant;
  std::vector<SymMatrix> coefficients;
  std::vector<double> objective;  ///< empty, or one entry per variable
  std::vector<std::string> labels;

  std::size_t dim() const noexcept { return constant.dim(); }
  std::size_t num_vars() const noexcept { return coefficients.size(); }
  SymMatrix evaluate(std::span<const double> z) const;
  /// Throws InvalidArgument on mismatched dimensions.
  void validate() const;
};

enum class SdpStatus { Optimal, Feasible, Infeasible, Indeterminate, IterationLimit, Unbounded };

std::string_view to_string(SdpStatus s) noexcept;

struct SdpOptions {
  double eps_feas = 1e-7;
  double eps_gap = 1e-8;
  int max_iter = 200;
  double margin_cap = 1e6;
  double unbounded_limit = 1e12;
};

struct SdpResult {
  SdpStatus status = SdpStatus::Indeterminate;
  std::vector<double> z;
  /// lambda_min(A(z)) at the returned z (capped at margin_cap). For
  /// solve_max_margin this is the certified lower bound on t*.
  double margin = 0.0;
  /// Dual upper bound on t* (solve_max_margin) or primal objective bound.
  double margin_upper = 0.0;
  double objective = 0.0;
  /// PSD dual matrix Y: infeasibility certificate (<A0,Y> < 0, <Ai,Y> ~ 0,
  /// tr Y = 1) for solve_max_margin, optimality multiplier otherwise.
  SymMatrix dual;
  bool has_certificate = false;
  int iterations = 0;
};

/// max t s.t. A(z) - t I >= 0. Feasible iff the certified margin exceeds
/// eps_feas; Infeasible iff a dual certificate with <A0, Y> < -eps_feas is
/// found; Indeterminate in the band between.
SdpResult solve_max_margin(const PencilProblem& problem, const SdpOptions& options = {});

/// min c . z s.t. A(z) >= 0, started from the strictly feasible point of
/// solve_max_margin.
SdpResult solve_min_objective(const PencilProblem& problem, const SdpOptions& options = {});

}  // namespace genus1
