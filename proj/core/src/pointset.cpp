#include "qcomb/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qcomb::pointset {

namespace {

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

struct CellKey {
  std::vector<long long> idx;
  bool operator<(const CellKey& o) const { return idx < o.idx; }
};

CellKey cell_of(const std::vector<double>& p, double size) {
  CellKey k;
  k.idx.resize(p.size());
  for (size_t i = 0; i < p.size(); ++i) k.idx[i] = static_cast<long long>(std::floor(p[i] / size));
  return k;
}

// Min pairwise distance among pairs at distance <= cell size; complete for
// any pair closer than `size` because such points land in adjacent cells.
double grid_pass(const Points& pts, double size, bool* found) {
  std::map<CellKey, std::vector<size_t>> grid;
  for (size_t i = 0; i < pts.size(); ++i) grid[cell_of(pts[i], size)].push_back(i);
  const int d = static_cast<int>(pts[0].size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<long long> offset(d, -1);
  for (const auto& [key, members] : grid) {
    // scan the 3^d neighborhood (including the cell itself)
    std::fill(offset.begin(), offset.end(), -1);
    while (true) {
      CellKey nb = key;
      for (int i = 0; i < d; ++i) nb.idx[i] += offset[i];
      auto it = grid.find(nb);
      if (it != grid.end()) {
        for (size_t a : members)
          for (size_t b : it->second) {
            if (b <= a) continue;
            best = std::min(best, dist2(pts[a], pts[b]));
          }
      }
      int pos = d - 1;
      while (pos >= 0) {
        if (offset[pos] < 1) {
          ++offset[pos];
          break;
        }
        offset[pos] = -1;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  *found = std::isfinite(best);
  return std::sqrt(best);
}

std::pair<std::vector<double>, std::vector<double>> bounding_box(const Points& pts) {
  const size_t d = pts[0].size();
  std::vector<double> lo(pts[0]), hi(pts[0]);
  for (const auto& p : pts)
    for (size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  return {lo, hi};
}

}  // namespace

double separating_constant(const Points& pts) {
  if (pts.size() < 2) throw std::invalid_argument("separating_constant: need at least 2 points");
  auto [lo, hi] = bounding_box(pts);
  double diag = 0.0;
  for (size_t i = 0; i < lo.size(); ++i) diag += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  diag = std::sqrt(diag);
  if (diag == 0.0) return 0.0;  // all points coincide
  const double dims = static_cast<double>(pts[0].size());
  double size = std::max(diag / std::pow(static_cast<double>(pts.size()), 1.0 / dims), 1e-12);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool found = false;
    double best = grid_pass(pts, size, &found);
    if (found) return best;
    size *= 2.0;  // no pair within the cell size: grow and retry
  }
  return diag;  // unreachable for finite inputs
}

PDiscreteVerdict check_p_discrete(const Points& pts, const PDiscreteParams& params) {
  PDiscreteVerdict v;
  v.holds = true;
  v.worst_ratio = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < pts.size(); ++a) {
    double xnorm = norm2(pts[a]);
    double denom = std::min(1.0, std::pow(std::max(xnorm, 1e-300), -params.h));
    for (size_t b = 0; b < pts.size(); ++b) {
      if (a == b) continue;
      double gap = std::sqrt(dist2(pts[a], pts[b]));
      double ratio = gap / denom;
      if (ratio < v.worst_ratio) {
        v.worst_ratio = ratio;
        v.witness_a = a;
        v.witness_b = b;
      }
      if (gap < params.c * denom) v.holds = false;
    }
  }
  if (pts.size() < 2) v.worst_ratio = std::numeric_limits<double>::infinity();
  return v;
}

DensityResult bounded_density(const Points& pts) {
  DensityResult r;
  if (pts.empty()) {
    r.exact = true;
    return r;
  }
  const size_t d = pts[0].size();

  // grid buckets of side 1 so each candidate center only scans 3^d cells
  std::map<CellKey, std::vector<size_t>> grid;
  for (size_t i = 0; i < pts.size(); ++i) grid[cell_of(pts[i], 1.0)].push_back(i);
  auto count_around = [&](const std::vector<double>& x) {
    CellKey key = cell_of(x, 1.0);
    int total = 0;
    std::vector<long long> offset(d, -1);
    while (true) {
      CellKey nb = key;
      for (size_t i = 0; i < d; ++i) nb.idx[i] += offset[i];
      auto it = grid.find(nb);
      if (it != grid.end())
        for (size_t a : it->second)
          if (dist2(pts[a], x) <= 1.0 + 1e-12) ++total;
      int pos = static_cast<int>(d) - 1;
      while (pos >= 0) {
        if (offset[pos] < 1) {
          ++offset[pos];
          break;
        }
        offset[pos] = -1;
        --pos;
      }
      if (pos < 0) break;
    }
    return total;
  };

  int best = 0;
  if (d == 1) {
    // optimal closed interval of length 2 starts at a point
    std::vector<double> xs;
    for (const auto& p : pts) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i < xs.size(); ++i) {
      auto ub = std::upper_bound(xs.begin(), xs.end(), xs[i] + 2.0 + 1e-12);
      best = std::max(best, static_cast<int>(ub - (xs.begin() + i)));
    }
    r.count = best;
    r.exact = true;
    return r;
  }
  if (d == 2) {
    // candidate centers: the points themselves plus unit-circle centers
    // through pairs at distance <= 2
    for (const auto& p : pts) best = std::max(best, count_around(p));
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = a + 1; b < pts.size(); ++b) {
        double d2 = dist2(pts[a], pts[b]);
        if (d2 > 4.0 + 1e-9 || d2 == 0.0) continue;
        double mx = 0.5 * (pts[a][0] + pts[b][0]);
        double my = 0.5 * (pts[a][1] + pts[b][1]);
        double half2 = 0.25 * d2;
        double rad = std::sqrt(std::max(0.0, 1.0 - half2));
        double ux = -(pts[b][1] - pts[a][1]) / std::sqrt(d2);
        double uy = (pts[b][0] - pts[a][0]) / std::sqrt(d2);
        for (double sign : {1.0, -1.0}) {
          std::vector<double> c{mx + sign * rad * ux, my + sign * rad * uy};
          best = std::max(best, count_around(c));
        }
      }
    r.count = best;
    r.exact = true;
    return r;
  }
  // d >= 3: grid scan, reported as a lower bound
  auto [lo, hi] = bounding_box(pts);
  const double step = 0.1;
  std::vector<long long> steps(d);
  for (size_t i = 0; i < d; ++i)
    steps[i] = static_cast<long long>(std::floor((hi[i] - lo[i]) / step)) + 1;
  std::vector<long long> idx(d, 0);
  std::vector<double> x(d);
  while (true) {
    for (size_t i = 0; i < d; ++i) x[i] = lo[i] + static_cast<double>(idx[i]) * step;
    best = std::max(best, count_around(x));
    int pos = static_cast<int>(d) - 1;
    while (pos >= 0) {
      if (idx[pos] < steps[pos]) {
        ++idx[pos];
        break;
      }
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  r.count = best;
  r.exact = false;
  return r;
}

CoveringEstimate covering_radius(const Points& pts) {
  if (pts.empty()) throw std::invalid_argument("covering_radius: empty point set");
  const size_t d = pts[0].size();
  auto [lo, hi] = bounding_box(pts);
  double diag = std::sqrt(dist2(lo, hi));
  if (diag == 0.0) return CoveringEstimate{0.0, 0.0, 0.0};
  double h = std::max(diag / 400.0, 1e-6);

  auto nearest = [&](const std::vector<double>& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, dist2(p, x));
    return std::sqrt(best);
  };

  // two passes: the first estimate fixes the interior margin; a margin larger
  // than the box means the window cannot support a shrunk scan, so the first
  // estimate stands
  double margin = 0.0;
  double value = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<long long> steps(d);
    bool degenerate = false;
    for (size_t i = 0; i < d; ++i) {
      double span = (hi[i] - margin) - (lo[i] + margin);
      if (span < 0) degenerate = true;
      steps[i] = std::max<long long>(0, static_cast<long long>(std::floor(span / h)));
    }
    if (degenerate) break;
    double pass_value = 0.0;
    std::vector<long long> idx(d, 0);
    std::vector<double> x(d);
    while (true) {
      for (size_t i = 0; i < d; ++i) x[i] = lo[i] + margin + static_cast<double>(idx[i]) * h;
      pass_value = std::max(pass_value, nearest(x));
      int pos = static_cast<int>(d) - 1;
      while (pos >= 0) {
        if (idx[pos] < steps[pos]) {
          ++idx[pos];
          break;
        }
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    value = pass_value;
    margin = value;
  }
  double slack = 0.5 * h * std::sqrt(static_cast<double>(d));
  return CoveringEstimate{value, value + slack, margin};
}

CountingProfile counting_profile(const Points& pts, const std::vector<double>& radii,
                                 std::optional<PDiscreteParams> params) {
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("counting_profile: radii must be increasing");
  CountingProfile prof;
  prof.radii = radii;
  std::vector<double> norms;
  norms.reserve(pts.size());
  for (const auto& p : pts) norms.push_back(norm2(p));

  for (double r : radii) {
    long long n = 0;
    for (double v : norms)
      if (v <= r) ++n;
    prof.counts.push_back(n);
  }
  double rmax = radii.empty() ? 0.0 : radii.back();
  int shells = static_cast<int>(std::ceil(rmax)) + 1;
  prof.annulus_counts.assign(shells, 0);
  for (double v : norms) {
    int s = static_cast<int>(std::floor(v)) + 1;  // annulus s-1 <= |x| < s
    if (s <= shells) ++prof.annulus_counts[static_cast<size_t>(s - 1)];
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (prof.counts[i] <= 0) continue;
    double x = std::log(radii[i]);
    double y = std::log(static_cast<double>(prof.counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double denom = n * sxx - sx * sx;
  prof.slope = (denom != 0.0) ? (n * sxy - sx * sy) / denom : 0.0;

  if (params && !pts.empty() && !radii.empty()) {
    const double d = static_cast<double>(pts[0].size());
    double expo = d * (params->h + 1.0);
    double measured = 0.0;
    double chain = 0.0;
    for (size_t i = 0; i < radii.size(); ++i) {
      double r = radii[i];
      measured = std::max(measured, static_cast<double>(prof.counts[i]) / std::pow(r, expo));
      // disjoint balls of radius min(1, (c/2) min(1,s^-h)) inside a triple annulus
      double bound = 0.0;
      for (int s = 1; s <= static_cast<int>(std::floor(r)) + 1; ++s) {
        double rho = std::min(1.0, 0.5 * params->c * std::min(1.0, std::pow(s, -params->h)));
        double vol = std::pow(s + 1.0, d) - std::pow(std::max(0, s - 2), d);
        bound += vol / std::pow(rho, d);
      }
      chain = std::max(chain, bound / std::pow(r, expo));
    }
    prof.measured_ratio = measured;
    prof.chain_bound_ratio = chain;
    prof.within_chain_bound = measured <= chain;
  }
  return prof;
}

CoefficientGrowth coefficient_growth(const WindowedDistribution& w) {
  if (w.points.empty()) throw std::invalid_argument("coefficient_growth: empty window");
  CoefficientGrowth g;

  std::map<MultiIndex, std::vector<std::pair<double, double>>> samples;  // k -> (1+|l|, |p_k|)
  for (const auto& p : w.points) {
    double r = 1.0 + norm2(p.point);
    for (const auto& [k, c] : p.coeffs) samples[k].emplace_back(r, std::abs(c));
  }

  std::map<MultiIndex, int> used;
  for (const auto& [k, pts] : samples) {
    CoefficientFit fit;
    fit.k = k;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [r, v] : pts) {
      if (v <= 0.0) continue;
      double x = std::log(r), y = std::log(v);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    double denom = n * sxx - sx * sx;
    fit.exponent = (denom != 0.0 && n >= 2) ? (n * sxy - sx * sy) / denom : 0.0;
    fit.used_exponent = std::max(0, static_cast<int>(std::lround(fit.exponent)));
    used[k] = fit.used_exponent;
    fit.inf_ratio = std::numeric_limits<double>::infinity();
    fit.sup_ratio = 0.0;
    for (const auto& [r, v] : pts) {
      double ratio = v / std::pow(r, fit.used_exponent);
      fit.inf_ratio = std::min(fit.inf_ratio, ratio);
      fit.sup_ratio = std::max(fit.sup_ratio, ratio);
    }
    g.per_order.push_back(std::move(fit));
  }

  g.inf_sup_ratio = std::numeric_limits<double>::infinity();
  g.sup_sup_ratio = 0.0;
  g.inf_total_mass = std::numeric_limits<double>::infinity();
  for (const auto& p : w.points) {
    double r = 1.0 + norm2(p.point);
    double sup_k = 0.0;
    double total = 0.0;
    for (const auto& [k, c] : p.coeffs) {
      sup_k = std::max(sup_k, std::abs(c) / std::pow(r, used[k]));
      total += std::abs(c);
    }
    g.inf_sup_ratio = std::min(g.inf_sup_ratio, sup_k);
    g.sup_sup_ratio = std::max(g.sup_sup_ratio, sup_k);
    g.inf_total_mass = std::min(g.inf_total_mass, total);
  }
  return g;
}

DiagnosticsReport diagnose(const Points& pts, const std::vector<double>& radii,
                           std::optional<PDiscreteParams> params) {
  DiagnosticsReport rep;
  rep.point_count = pts.size();
  if (pts.size() >= 2) rep.separating = separating_constant(pts);
  if (params) rep.p_discrete = check_p_discrete(pts, *params);
  rep.density = bounded_density(pts);
  if (!pts.empty()) rep.covering = covering_radius(pts);
  rep.counting = counting_profile(pts, radii, params);
  return rep;
}

}  // namespace qcomb::pointset
