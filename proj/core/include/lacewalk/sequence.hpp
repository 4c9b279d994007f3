#pragma once

#include <vector>

namespace lacewalk {

/// Scalar data of an interaction family: coupling lambda, masses b_n and
/// second-moment coefficients bbar_n with int x x^T B_n dx = bbar_n I_d.
/// Truncation order n_max = b.size().
struct BScalars {
  double lambda = 0.0;
  std::vector<double> b;
  std::vector<double> bbar;

  int n_max() const { return static_cast<int>(b.size()); }
  void validate() const;  // throws ValidationError
};

/// Decay-slope tail estimate for a truncated series: from the last retained
/// term and the empirical decay exponent p (term ~ n^{-p}), the missing tail
/// is roughly |last| * N / (p - 1). Reported, never silently applied.
struct TailDiagnostic {
  double last_term = 0.0;   // magnitude of the last retained term
  double slope = 0.0;       // empirical decay exponent p
  double estimate = 0.0;    // tail estimate; +inf when the series looks divergent
};

TailDiagnostic tail_diagnostic(const std::vector<double>& terms);

struct SequenceSolution {
  std::vector<double> c;  // c_0 = 1 prepended, length n_max + 1
  std::vector<double> a;  // a_n = mu^{-n} c_n
  double mu = 1.0;
  double alpha = 1.0;
  double delta = 1.0;
  double residual_mu = 0.0;      // final defect of the mu fixed point
  TailDiagnostic mu_tail;        // truncation estimate for the mu series
  TailDiagnostic delta_num_tail; // truncation estimates for the delta series
  TailDiagnostic delta_den_tail;
  bool smallness_ok = false;     // a_n in [1/2, 3/2] and mu iteration contracted
  int mu_iterations = 0;
};

/// Solves c_n = c_{n-1} + lambda * sum_{k=1}^{n} c_k b_k c_{n-k}, c_0 = 1,
/// by isolating the k = n term:  c_n (1 - lambda b_n) = c_{n-1} + partial sum.
/// Throws ValidationError when lambda |b_n| >= 1 for some n.
std::vector<double> solve_c(const BScalars& scalars);

/// Max relative residual of the recursion at the given c (diagnostic).
double sequence_residual(const std::vector<double>& c, const BScalars& scalars);

/// Self-consistent normalization: iterates  mu <- 1 / (1 - lambda sum a_k b_k)
/// with a_k = mu^{-k} c_k until |mu' - mu| < 1e-14 (at most 1000 steps);
/// alpha = a_{n_max}. Throws ConvergenceError when the iteration fails.
SequenceSolution normalize(const std::vector<double>& c, const BScalars& scalars);

/// Effective diffusion constant
///   delta = (mu^{-1} + lambda sum a_m bbar_m) / (mu^{-1} + lambda sum m a_m b_m),
/// series truncated at n_max with tail diagnostics stored on the solution.
/// Throws ConvergenceError when the denominator is below 1e-9 in magnitude.
double compute_delta(SequenceSolution& sol, const BScalars& scalars);

/// solve_c + normalize + compute_delta in one call.
SequenceSolution solve_sequence(const BScalars& scalars);

}  // namespace lacewalk
