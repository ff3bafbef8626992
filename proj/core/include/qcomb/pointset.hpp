#pragma once

// Windowed diagnostics for discrete point sets: separating constant,
// polynomial discreteness, bounded density, covering radius, ball counting
// with annulus profiles, and coefficient-growth fits for windowed
// distributions.  All verdicts are windowed: a window can refute a global
// property but never certify it.

#include "qcomb/comb.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcomb::pointset {

using Points = std::vector<std::vector<double>>;

// Exact minimum pairwise distance over the window (grid-bucketed, O(n)
// expected).  Throws unless at least two points are given.
double separating_constant(const Points& pts);

struct PDiscreteParams {
  double c = 1.0;
  double h = 0.0;
};

struct PDiscreteVerdict {
  bool holds = false;
  // pair minimizing |x - x'| / min(1, |x|^-h)
  size_t witness_a = 0;
  size_t witness_b = 0;
  double worst_ratio = 0.0;
};

PDiscreteVerdict check_p_discrete(const Points& pts, const PDiscreteParams& params);

struct DensityResult {
  int count = 0;
  bool exact = false;  // exact enumeration for d <= 2, grid lower bound otherwise
};

// sup over centers of #(A cap closed B(x,1)), restricted to the window.
DensityResult bounded_density(const Points& pts);

struct CoveringEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double margin = 0.0;  // interior margin applied to the scan box
};

CoveringEstimate covering_radius(const Points& pts);

struct CountingProfile {
  std::vector<double> radii;
  std::vector<long long> counts;          // n(r), closed balls about the origin
  std::vector<long long> annulus_counts;  // #(A cap {s-1 <= |x| < s})
  double slope = 0.0;                     // log-log least-squares fit
  // with (c,h) supplied: measured max n(r)/r^{d(h+1)} and the proof-chain bound
  std::optional<double> measured_ratio;
  std::optional<double> chain_bound_ratio;
  std::optional<bool> within_chain_bound;
};

CountingProfile counting_profile(const Points& pts, const std::vector<double>& radii,
                                 std::optional<PDiscreteParams> params = std::nullopt);

struct CoefficientFit {
  MultiIndex k;
  double exponent = 0.0;  // fitted h(k) of |p_k(lambda)| against (1 + |lambda|)
  int used_exponent = 0;  // max(0, round(exponent)); used for the ratio bounds
  double inf_ratio = 0.0;
  double sup_ratio = 0.0;
};

struct CoefficientGrowth {
  std::vector<CoefficientFit> per_order;
  // inf/sup over lambda of sup_k |p_k(lambda)| (1+|lambda|)^{-h(k)}
  double inf_sup_ratio = 0.0;
  double sup_sup_ratio = 0.0;
  double inf_total_mass = 0.0;  // inf over lambda of sum_k |p_k(lambda)|
};

CoefficientGrowth coefficient_growth(const WindowedDistribution& w);

struct DiagnosticsReport {
  size_t point_count = 0;
  std::optional<double> separating;
  std::optional<PDiscreteVerdict> p_discrete;
  DensityResult density;
  CoveringEstimate covering;
  CountingProfile counting;
  std::optional<CoefficientGrowth> growth;
};

DiagnosticsReport diagnose(const Points& pts, const std::vector<double>& radii,
                           std::optional<PDiscreteParams> params = std::nullopt);

inline Points window_points(const WindowedDistribution& w) {
  Points pts;
  pts.reserve(w.points.size());
  for (const auto& p : w.points) pts.push_back(p.point);
  return pts;
}

}  // namespace qcomb::pointset
