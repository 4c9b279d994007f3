#include "lacewalk/sequence.hpp"

#include <cmath>
#include <limits>

#include "lacewalk/common.hpp"

namespace lacewalk {

void BScalars::validate() const {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw ValidationError("BScalars: lambda in [0, 1) required");
  if (b.size() != bbar.size())
    throw ValidationError("BScalars: b and bbar must have equal length");
  if (b.empty()) throw ValidationError("BScalars: empty family");
  for (double bn : b)
    if (lambda * std::abs(bn) >= 1.0)
      throw ValidationError("BScalars: lambda |b_n| >= 1, recursion not solvable");
}

TailDiagnostic tail_diagnostic(const std::vector<double>& terms) {
  TailDiagnostic d;
  const std::size_t n = terms.size();
  if (n == 0) return d;
  d.last_term = std::abs(terms.back());
  if (d.last_term == 0.0) return d;  // family truncated exactly, no tail
  if (n < 4) {
    d.estimate = std::numeric_limits<double>::infinity();
    return d;
  }
  const double half = std::abs(terms[n / 2 - 1]);
  if (half == 0.0) {
    d.estimate = std::numeric_limits<double>::infinity();
    return d;
  }
  d.slope = std::log2(half / d.last_term);  // t_m ~ m^{-p}: p = log2(t_{N/2} / t_N)
  // terms ~ m^{-p}: sum_{m > N} ~ last * N / (p - 1)
  if (d.slope > 1.05)
    d.estimate = d.last_term * static_cast<double>(n) / (d.slope - 1.0);
  else
    d.estimate = std::numeric_limits<double>::infinity();
  return d;
}

std::vector<double> solve_c(const BScalars& scalars) {
  scalars.validate();
  const int n_max = scalars.n_max();
  const double lambda = scalars.lambda;
  std::vector<double> c(n_max + 1);
  c[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double rhs = c[n - 1];
    for (int k = 1; k < n; ++k) rhs += lambda * c[k] * scalars.b[k - 1] * c[n - k];
    c[n] = rhs / (1.0 - lambda * scalars.b[n - 1]);
  }
  const double resid = sequence_residual(c, scalars);
  if (!(resid < 1e-12))
    throw ConvergenceError("solve_c: recursion residual " + std::to_string(resid));
  return c;
}

double sequence_residual(const std::vector<double>& c, const BScalars& scalars) {
  const int n_max = scalars.n_max();
  const double lambda = scalars.lambda;
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    double rhs = c[n - 1];
    for (int k = 1; k <= n; ++k) rhs += lambda * c[k] * scalars.b[k - 1] * c[n - k];
    const double r = std::abs(c[n] - rhs) / std::max(1.0, std::abs(c[n]));
    worst = std::max(worst, r);
  }
  return worst;
}

namespace {

// sum_k mu^{-k} c_k b_k along with the per-term magnitudes for diagnostics.
double weighted_sum(const std::vector<double>& c, const std::vector<double>& w, double mu,
                    std::vector<double>* terms = nullptr) {
  double s = 0.0;
  double inv_pow = 1.0;
  const double inv = 1.0 / mu;
  if (terms) terms->clear();
  for (std::size_t k = 1; k < c.size(); ++k) {
    inv_pow *= inv;
    const double t = inv_pow * c[k] * w[k - 1];
    s += t;
    if (terms) terms->push_back(t);
  }
  return s;
}

}  // namespace

SequenceSolution normalize(const std::vector<double>& c, const BScalars& scalars) {
  scalars.validate();
  const int n_max = scalars.n_max();
  if (static_cast<int>(c.size()) != n_max + 1)
    throw ValidationError("normalize: c length must be n_max + 1");
  const double lambda = scalars.lambda;

  SequenceSolution sol;
  sol.c = c;

  double mu = 1.0;
  bool converged = false;
  int it = 0;
  double step = 0.0;
  for (; it < 1000; ++it) {
    const double s = weighted_sum(c, scalars.b, mu);
    const double denom = 1.0 - lambda * s;
    if (!(denom > 0.0))
      throw ConvergenceError("normalize: 1 - lambda sum a_k b_k is not positive");
    const double next = 1.0 / denom;
    step = std::abs(next - mu);
    mu = next;
    if (step < 1e-14) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("normalize: mu iteration did not contract within 1000 steps");

  sol.mu = mu;
  sol.mu_iterations = it;
  sol.a.resize(n_max + 1);
  double inv_pow = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    sol.a[n] = c[n] * inv_pow;
    inv_pow /= mu;
  }
  sol.alpha = sol.a[n_max];

  std::vector<double> terms;
  const double s = weighted_sum(c, scalars.b, mu, &terms);
  sol.residual_mu = std::abs(1.0 / mu - (1.0 - lambda * s));
  for (auto& t : terms) t *= lambda;
  sol.mu_tail = tail_diagnostic(terms);

  bool window_ok = true;
  for (int n = 0; n <= n_max; ++n)
    if (sol.a[n] < 0.5 || sol.a[n] > 1.5) window_ok = false;
  sol.smallness_ok = window_ok;
  return sol;
}

double compute_delta(SequenceSolution& sol, const BScalars& scalars) {
  const int n_max = scalars.n_max();
  const double lambda = scalars.lambda;
  const double inv_mu = 1.0 / sol.mu;

  double num = inv_mu, den = inv_mu;
  std::vector<double> num_terms(n_max), den_terms(n_max);
  for (int m = 1; m <= n_max; ++m) {
    num_terms[m - 1] = lambda * sol.a[m] * scalars.bbar[m - 1];
    den_terms[m - 1] = lambda * m * sol.a[m] * scalars.b[m - 1];
    num += num_terms[m - 1];
    den += den_terms[m - 1];
  }
  if (std::abs(den) < 1e-9)
    throw ConvergenceError("compute_delta: degenerate denominator");
  sol.delta_num_tail = tail_diagnostic(num_terms);
  sol.delta_den_tail = tail_diagnostic(den_terms);
  sol.delta = num / den;
  return sol.delta;
}

SequenceSolution solve_sequence(const BScalars& scalars) {
  SequenceSolution sol = normalize(solve_c(scalars), scalars);
  compute_delta(sol, scalars);
  return sol;
}

}  // namespace lacewalk
