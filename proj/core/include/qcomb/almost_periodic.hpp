#pragma once

// Exponential sums, bump smoothing of discrete spectra, and epsilon-almost-
// period scans.  The scan reports grid suprema: a window/grid can refute
// almost periodicity but only ever under-approximates the true sup defect.

#include "qcomb/fourier.hpp"

#include <string>
#include <vector>

namespace qcomb::ap {

struct ExpTerm {
  Complex coeff;
  std::vector<double> freq;
};

struct ExponentialSum {
  int dim = 0;
  std::vector<ExpTerm> terms;

  Complex eval(const std::vector<double>& t) const;
  double total_mass() const;  // sum |a_n|, a sup bound for |g|
  // h(t) = g(origin + t * direction) as a 1-d sum
  ExponentialSum restrict_ray(const std::vector<double>& origin,
                              const std::vector<double>& direction) const;
  ExponentialSum collected() const;  // merge duplicate frequencies, drop zeros
};

// The even C^inf bump with phi(0) = 1 supported in B(0, eta):
//   phi(x) = exp(1 - 1/(1 - |x/eta|^2)) for |x| < eta.
// Its inverse transform has no closed form; values are tabulated on a radial
// frequency grid by adaptive quadrature with cubic interpolation in between.
class BumpFunction {
 public:
  BumpFunction(double support_radius, int dim, double freq_max);

  double support_radius() const { return eta_; }
  int dim() const { return dim_; }
  double freq_max() const { return freq_max_; }
  double quadrature_error() const { return quad_error_; }
  double interpolation_error() const { return interp_error_; }
  double table_error() const { return quad_error_ + interp_error_; }

  double value(double r) const;                       // radial profile
  double value_at(const std::vector<double>& x) const;
  // phi-check at a frequency of euclidean norm rho; throws std::out_of_range
  // beyond the tabulated range.
  double ft_value(double rho) const;

 private:
  double quadrature(double rho) const;

  double eta_;
  int dim_;
  double freq_max_;
  double step_;
  std::vector<double> table_;
  double quad_error_ = 0.0;
  double interp_error_ = 0.0;
};

// g_s = phi * mu built from the spectrum: terms (phi_check(rho_n) q_n, rho_n).
// The spectrum window must be a measure within the bump's tabulated range.
ExponentialSum smooth(const WindowedDistribution& spectrum, const BumpFunction& bump);

struct AlmostPeriodReport {
  double eps = 0.0;
  double t_max = 0.0;
  double scan_step = 0.0;
  int probe_count = 0;
  double probe_step = 0.0;
  std::vector<double> taus;     // found epsilon-almost periods
  std::vector<double> defects;  // grid sup defect per tau
  double max_gap = 0.0;         // max spacing of consecutive found taus
  double truncation_tail = 0.0; // certified spectrum tail when built from a comb
};

// Scans tau = j * scan_step over [0, t_max]; a tau qualifies when the probe
// grid sup of |g(t + tau) - g(t)| stays below eps.  For dim > 1 the sum is
// first restricted to the given ray.
AlmostPeriodReport find_almost_periods(const ExponentialSum& g, double eps, double t_max,
                                       double scan_step, int probe_count, double probe_step,
                                       const std::vector<double>& direction = {},
                                       int threads = 1);

// Proposition-2 style check: build sum a_n phi^(gamma_n) e^{2 pi i <gamma_n, t>}
// from the windowed spectrum of f (truncated with a certified tail), then scan.
template <class S>
AlmostPeriodReport check_ap_distribution(const Comb<S>& f, const TestFunction& phi, double eps,
                                         double t_max, double scan_step, int probe_count,
                                         double probe_step,
                                         const std::vector<double>& direction = {},
                                         int threads = 1) {
  Comb<S> fhat = distribution_ft(f);
  if (fhat.max_derivative_order() > 0)
    throw std::invalid_argument("check_ap_distribution: spectrum is not a measure");
  TestFunction phi_hat = phi.ft();
  double tail_tol = std::min(eps * 1e-2, 1e-8);
  S radius = select_pairing_radius(fhat, phi_hat, tail_tol);
  WindowedDistribution w = evaluate_window(fhat, Vec<S>(f.dim, S(0)), radius);

  ExponentialSum g;
  g.dim = f.dim;
  for (const auto& p : w.points) {
    auto it = p.coeffs.find(zero_index(f.dim));
    if (it == p.coeffs.end()) continue;
    g.terms.push_back(ExpTerm{it->second * phi_hat.eval(p.point), p.point});
  }
  AlmostPeriodReport rep =
      find_almost_periods(g.collected(), eps, t_max, scan_step, probe_count, probe_step,
                          direction, threads);
  rep.truncation_tail = pairing_tail_bound(fhat, phi_hat, ScalarOps<S>::to_double(radius));
  return rep;
}

}  // namespace qcomb::ap
