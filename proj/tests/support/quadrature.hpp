#pragma once

// Independent numerical oracles for the test suite.  Deliberately naive:
// trapezoid sums on a box large enough that the Gaussian tail is negligible.
// These never touch the closed-form transform paths they check.

#include "qcomb/schwartz.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace qcomb::testsupport {

// Fourier transform of phi at frequency y by trapezoid quadrature.
inline Complex ft_quadrature(const TestFunction& phi, const std::vector<double>& y) {
  const int d = phi.dim();
  double a = phi.width();
  double ymax = 0.0;
  for (double v : y) ymax = std::max(ymax, std::fabs(v));
  for (double v : phi.modulation()) ymax = std::max(ymax, std::fabs(v));
  // half-width so the tail is < 1e-15 of scale, spacing so aliasing (at
  // frequency 1/h) is equally negligible
  double half = 8.0 / std::sqrt(a) + 1.0;
  double h = 1.0 / (2.0 * (ymax + 4.0 * std::sqrt(a) + 4.0));
  long long steps = static_cast<long long>(std::ceil(half / h));

  std::vector<long long> idx(d, -steps);
  std::vector<double> x(d);
  Complex acc(0.0, 0.0);
  while (true) {
    double phase = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] = phi.center()[i] + static_cast<double>(idx[i]) * h;
      phase += x[i] * y[i];
    }
    acc += phi.eval(x) * std::polar(1.0, -2.0 * std::numbers::pi * phase);
    int pos = d - 1;
    while (pos >= 0) {
      if (idx[pos] < steps) {
        ++idx[pos];
        break;
      }
      idx[pos] = -steps;
      --pos;
    }
    if (pos < 0) break;
  }
  return acc * pow_double(h, d);
}

// integral of phi * conj(psi) by trapezoid quadrature
inline Complex inner_product_quadrature(const TestFunction& phi, const TestFunction& psi) {
  const int d = phi.dim();
  double a = std::min(phi.width(), psi.width());
  double half = 8.0 / std::sqrt(a) + 4.0;
  double reach = 0.0;
  for (double v : phi.modulation()) reach = std::max(reach, std::fabs(v));
  for (double v : psi.modulation()) reach = std::max(reach, std::fabs(v));
  double h = 1.0 / (2.0 * (2.0 * reach + 4.0 * std::sqrt(a) + 4.0));
  long long steps = static_cast<long long>(std::ceil(half / h));

  std::vector<long long> idx(d, -steps);
  std::vector<double> x(d);
  Complex acc(0.0, 0.0);
  while (true) {
    for (int i = 0; i < d; ++i) x[i] = static_cast<double>(idx[i]) * h;
    acc += phi.eval(x) * std::conj(psi.eval(x));
    int pos = d - 1;
    while (pos >= 0) {
      if (idx[pos] < steps) {
        ++idx[pos];
        break;
      }
      idx[pos] = -steps;
      --pos;
    }
    if (pos < 0) break;
  }
  return acc * pow_double(h, d);
}

// central finite difference of order k (per axis, repeated)
inline Complex finite_difference(const TestFunction& phi, const MultiIndex& k,
                                 const std::vector<double>& x, double step = 1e-4) {
  std::function<Complex(const MultiIndex&, const std::vector<double>&)> rec =
      [&](const MultiIndex& kk, const std::vector<double>& at) -> Complex {
    int axis = -1;
    for (size_t i = 0; i < kk.size(); ++i)
      if (kk[i] > 0) {
        axis = static_cast<int>(i);
        break;
      }
    if (axis < 0) return phi.eval(at);
    MultiIndex down = kk;
    --down[axis];
    std::vector<double> plus = at, minus = at;
    plus[axis] += step;
    minus[axis] -= step;
    return (rec(down, plus) - rec(down, minus)) / (2.0 * step);
  };
  return rec(k, x);
}

}  // namespace qcomb::testsupport
