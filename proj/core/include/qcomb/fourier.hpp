#pragma once

// Fourier transforms of combs via Poisson summation on each coset plus the
// derivative/monomial exchange rules.  Every constant here is pinned by the
// pairing identity <f^, phi> = <f, phi^>, checked by verify_pairing.

#include "qcomb/comb.hpp"

#include <numbers>
#include <vector>

namespace qcomb {

namespace detail {

// Measure-case skeleton: the transform of
//   sum_{lambda in shift+L} c e^{2 pi i <lambda, omega>} delta_lambda
// is a comb on the dual lattice translated by the folded frequency gamma,
// with character frequency -shift and coefficient c e^{2 pi i <shift, omega>}
// / |det T|.  (Modulation shifts the spectrum by +gamma; translation shows up
// as the output character.)
template <class S>
CombComponent<S> measure_term_ft(const Coset<S>& coset, const Lattice<S>& dual_lattice,
                                 double inv_abs_det, const Vec<S>& omega, Complex coeff) {
  FoldResult<S> fr = dual_lattice.fold(omega);
  Complex c = coeff * unit_phase(coset.shift, omega) * inv_abs_det;
  Vec<S> neg_shift(coset.shift.size());
  for (size_t i = 0; i < neg_shift.size(); ++i) neg_shift[i] = S(0) - coset.shift[i];
  CombComponent<S> out{Coset<S>(dual_lattice, fr.folded), {}};
  out.terms.push_back(CombTerm<S>{zero_index(static_cast<int>(neg_shift.size())),
                                  zero_index(static_cast<int>(neg_shift.size())), neg_shift, c});
  return out;
}

template <class S>
double inv_abs_det_of(const Lattice<S>& l) {
  if constexpr (ScalarOps<S>::regime == Regime::exact) {
    Rational r = Rational(1) / abs_scalar(l.det());
    return ScalarOps<Rational>::to_double(r);
  } else {
    return 1.0 / std::fabs(ScalarOps<double>::to_double(l.det()));
  }
}

}  // namespace detail

// Poisson formula for the plain lattice comb: |det T|^{-1} times the comb of
// the conjugate lattice.
template <class S>
CombMeasure<S> dirac_comb_ft(const Lattice<S>& l) {
  CombMeasure<S> m;
  m.dim = l.dim();
  Lattice<S> dual = l.dual();
  TrigPolynomial<S> weight;
  weight.terms.push_back(
      TrigTerm<S>{Complex(detail::inv_abs_det_of(l), 0.0), Vec<S>(l.dim(), S(0))});
  m.components.push_back(MeasureComponent<S>{Coset<S>(dual, Vec<S>(l.dim(), S(0))), weight});
  return m;
}

// General transform.  Each collected term c lambda^m e^{2 pi i <.,omega>}
// D^k delta factors as D^k [ x^m [ modulated measure ] ], so
//   FT = (2 pi i)^{|k|} (-2 pi i)^{-|m|} * Y^k D^m [ measure FT ],
// where Y^k is monomial multiplication (with its commutation rewrite) and
// D^m raises the derivative index.  Output orders: K_out = M_in, M_out <= K_in.
template <class S>
Comb<S> distribution_ft(const Comb<S>& f, int max_order = kMaxDerivativeOrder) {
  Comb<S> g = collect(f);
  Comb<S> out;
  out.dim = g.dim;
  for (const auto& comp : g.components) {
    Lattice<S> dual = comp.coset.lattice.dual();
    double inv_det = detail::inv_abs_det_of(comp.coset.lattice);
    for (const auto& t : comp.terms) {
      if (order(t.monomial) > max_order)
        throw std::invalid_argument("distribution_ft: output order exceeds configured maximum");
      Comb<S> piece;
      piece.dim = g.dim;
      piece.components.push_back(
          detail::measure_term_ft(comp.coset, dual, inv_det, t.freq, t.coeff));
      if (!is_zero_index(t.monomial)) piece = derivative(piece, t.monomial, max_order);
      if (!is_zero_index(t.deriv)) piece = monomial_multiply(piece, t.deriv);
      // (2 pi i)^{|k|} (-2 pi i)^{-|m|}
      Complex factor(1.0, 0.0);
      for (int i = 0; i < order(t.deriv); ++i) factor *= Complex(0.0, 2.0 * std::numbers::pi);
      for (int i = 0; i < order(t.monomial); ++i) factor *= Complex(0.0, 1.0 / (2.0 * std::numbers::pi));
      piece = scale(piece, factor);
      out.components.insert(out.components.end(), piece.components.begin(),
                            piece.components.end());
    }
  }
  return collect(out);
}

// Measure-to-measure transform; identical code path as distribution_ft on
// k = m = 0 input, so the two agree in canonical form bit for bit.
template <class S>
CombMeasure<S> comb_ft(const CombMeasure<S>& mu) {
  return CombMeasure<S>::from_comb(distribution_ft(mu.to_comb()));
}

struct PairingReport {
  double tol = 0.0;
  double max_defect = 0.0;
  double max_tail = 0.0;
  int probes = 0;
  bool pass = false;
};

// Max defect of <f^, phi> - <f, phi^> over the probe set; truncation radii
// are auto-selected so that certified tails stay below tol/8 per side.  The
// two windows are realized once at the largest radius any probe needs.
template <class S>
PairingReport verify_pairing(const Comb<S>& f, const std::vector<TestFunction>& probes,
                             double tol) {
  Comb<S> fhat = distribution_ft(f);
  PairingReport rep;
  rep.tol = tol;
  rep.probes = static_cast<int>(probes.size());

  std::vector<TestFunction> transformed;
  transformed.reserve(probes.size());
  double r1 = 8.0, r2 = 8.0;
  for (const auto& phi : probes) {
    transformed.push_back(phi.ft());
    r1 = std::max(r1, select_pairing_radius_value(fhat, phi, tol / 8.0));
    r2 = std::max(r2, select_pairing_radius_value(f, transformed.back(), tol / 8.0));
  }
  S rad1 = ScalarOps<S>::from_int(static_cast<long long>(r1));
  S rad2 = ScalarOps<S>::from_int(static_cast<long long>(r2));
  WindowedDistribution w1 = evaluate_window(fhat, Vec<S>(f.dim, S(0)), rad1);
  WindowedDistribution w2 = evaluate_window(f, Vec<S>(f.dim, S(0)), rad2);
  for (size_t i = 0; i < probes.size(); ++i) {
    Complex lhs = pair_window(w1, probes[i]);
    Complex rhs = pair_window(w2, transformed[i]);
    rep.max_defect = std::max(rep.max_defect, std::abs(lhs - rhs));
    rep.max_tail = std::max({rep.max_tail, pairing_tail_bound(fhat, probes[i], r1),
                             pairing_tail_bound(f, transformed[i], r2)});
  }
  rep.pass = rep.max_defect <= tol;
  return rep;
}

struct GrowthFit {
  double exponent = 0.0;          // least-squares slope of log V against log r
  double max_ratio = 0.0;         // max V(r) / r^d
  std::vector<double> radii;
  std::vector<double> values;
};

// V(r) = sum_{|lambda| <= r} |mu(lambda)| for a windowed measure.
inline GrowthFit variation_growth(const WindowedDistribution& w, const std::vector<double>& radii,
                                  int dim) {
  if (w.points.empty()) throw std::invalid_argument("variation_growth: empty window");
  if (!w.is_measure())
    throw std::invalid_argument("variation_growth: window carries derivative terms");
  if (radii.size() < 3) throw std::invalid_argument("variation_growth: need at least 3 radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("variation_growth: radii must be increasing");

  GrowthFit fit;
  fit.radii = radii;
  for (double r : radii) {
    double v = 0.0;
    for (const auto& p : w.points) {
      if (norm2(p.point) > r) continue;
      auto it = p.coeffs.find(zero_index(dim));
      if (it != p.coeffs.end()) v += std::abs(it->second);
    }
    fit.values.push_back(v);
    if (v > 0.0) fit.max_ratio = std::max(fit.max_ratio, v / pow_double(r, dim));
  }
  // least squares on log-log, skipping empty radii
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (fit.values[i] <= 0.0) continue;
    double x = std::log(radii[i]), y = std::log(fit.values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double denom = n * sxx - sx * sx;
  fit.exponent = (denom != 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
  return fit;
}

}  // namespace qcomb
