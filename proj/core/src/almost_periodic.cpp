#include "qcomb/almost_periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qcomb::ap {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex ExponentialSum::eval(const std::vector<double>& t) const {
  if (static_cast<int>(t.size()) != dim)
    throw std::invalid_argument("exponential sum: dimension mismatch");
  Complex s(0.0, 0.0);
  for (const auto& term : terms) {
    double phase = 0.0;
    for (int i = 0; i < dim; ++i) phase += t[i] * term.freq[i];
    s += term.coeff * std::polar(1.0, 2.0 * kPi * phase);
  }
  return s;
}

double ExponentialSum::total_mass() const {
  double s = 0.0;
  for (const auto& term : terms) s += std::abs(term.coeff);
  return s;
}

ExponentialSum ExponentialSum::restrict_ray(const std::vector<double>& origin,
                                            const std::vector<double>& direction) const {
  if (static_cast<int>(origin.size()) != dim || static_cast<int>(direction.size()) != dim)
    throw std::invalid_argument("exponential sum: ray dimension mismatch");
  ExponentialSum out;
  out.dim = 1;
  for (const auto& term : terms) {
    double f = 0.0;
    double phase = 0.0;
    for (int i = 0; i < dim; ++i) {
      f += direction[i] * term.freq[i];
      phase += origin[i] * term.freq[i];
    }
    out.terms.push_back(ExpTerm{term.coeff * std::polar(1.0, 2.0 * kPi * phase), {f}});
  }
  return out.collected();
}

ExponentialSum ExponentialSum::collected() const {
  std::map<std::vector<double>, Complex> acc;
  for (const auto& t : terms) acc[t.freq] += t.coeff;
  ExponentialSum out;
  out.dim = dim;
  for (const auto& [freq, c] : acc) {
    if (std::abs(c) < kDropTol) continue;
    out.terms.push_back(ExpTerm{c, freq});
  }
  return out;
}

// ---- bump -------------------------------------------------------------------

BumpFunction::BumpFunction(double support_radius, int dim, double freq_max)
    : eta_(support_radius), dim_(dim), freq_max_(freq_max) {
  if (!(eta_ > 0.0)) throw std::invalid_argument("bump: support radius must be positive");
  if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("bump: dimension must be 1, 2, or 3");
  step_ = 1.0 / 64.0;  // binary-exact grid so half-integer frequencies hit nodes
  size_t nodes = static_cast<size_t>(std::ceil(freq_max_ / step_)) + 3;
  table_.resize(nodes);
  for (size_t i = 0; i < nodes; ++i) table_[i] = quadrature(static_cast<double>(i) * step_);
  quad_error_ = 1e-12;
  // empirical cubic-interpolation error at grid midpoints
  double worst = 0.0;
  size_t stride = std::max<size_t>(1, nodes / 64);
  for (size_t i = 1; i + 2 < nodes; i += stride) {
    double rho = (static_cast<double>(i) + 0.5) * step_;
    if (rho > freq_max_) break;
    worst = std::max(worst, std::fabs(ft_value(rho) - quadrature(rho)));
  }
  interp_error_ = 2.0 * worst;
}

double BumpFunction::value(double r) const {
  double u = r / eta_;
  if (std::fabs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double BumpFunction::value_at(const std::vector<double>& x) const { return value(norm2(x)); }

// Radial inverse transform:
//   d=1: 2 int_0^eta f(r) cos(2 pi rho r) dr
//   d=2: 2 pi int_0^eta f(r) J0(2 pi rho r) r dr
//   d=3: 4 pi int_0^eta f(r) sinc(2 pi rho r) r^2 dr
double BumpFunction::quadrature(double rho) const {
  auto integrand = [&](double r) -> double {
    double f = value(r);
    if (f == 0.0) return 0.0;
    double arg = 2.0 * kPi * rho * r;
    switch (dim_) {
      case 1:
        return 2.0 * f * std::cos(arg);
      case 2:
        return 2.0 * kPi * f * std::cyl_bessel_j(0.0, arg) * r;
      default: {
        double sinc = (std::fabs(arg) < 1e-8) ? 1.0 - arg * arg / 6.0 : std::sin(arg) / arg;
        return 4.0 * kPi * f * sinc * r * r;
      }
    }
  };
  // doubling trapezoid (d=1: endpoint derivatives vanish, superalgebraic) /
  // Simpson refinement otherwise
  auto composite = [&](size_t n) {
    double h = eta_ / static_cast<double>(n);
    if (dim_ == 1) {
      double s = 0.5 * (integrand(0.0) + integrand(eta_));
      for (size_t i = 1; i < n; ++i) s += integrand(static_cast<double>(i) * h);
      return s * h;
    }
    double s = integrand(0.0) + integrand(eta_);
    for (size_t i = 1; i < n; ++i)
      s += integrand(static_cast<double>(i) * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  size_t n = 256;
  double prev = composite(n);
  for (; n <= (1u << 18); ) {
    n *= 2;
    double cur = composite(n);
    if (std::fabs(cur - prev) < 1e-13 * std::max(1.0, std::fabs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

double BumpFunction::ft_value(double rho) const {
  rho = std::fabs(rho);
  if (rho > freq_max_)
    throw std::out_of_range("bump: frequency outside tabulated range");
  double pos = rho / step_;
  size_t i = static_cast<size_t>(std::floor(pos));
  double t = pos - static_cast<double>(i);
  if (i + 2 >= table_.size()) {
    i = table_.size() - 3;
    t = pos - static_cast<double>(i);
  }
  // Catmull-Rom through the four surrounding nodes (clamped at the left edge)
  double p0 = (i == 0) ? table_[0] : table_[i - 1];
  double p1 = table_[i];
  double p2 = table_[i + 1];
  double p3 = table_[i + 2];
  if (i == 0) p0 = table_[1];  // even function: f(-step) = f(step)
  double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  double c = -0.5 * p0 + 0.5 * p2;
  return ((a * t + b) * t + c) * t + p1;
}

ExponentialSum smooth(const WindowedDistribution& spectrum, const BumpFunction& bump) {
  if (!spectrum.is_measure())
    throw std::invalid_argument("smooth: spectrum window carries derivative terms");
  ExponentialSum g;
  g.dim = static_cast<int>(spectrum.center.size());
  for (const auto& p : spectrum.points) {
    auto it = p.coeffs.find(zero_index(g.dim));
    if (it == p.coeffs.end()) continue;
    double w = bump.ft_value(norm2(p.point));
    g.terms.push_back(ExpTerm{it->second * w, p.point});
  }
  return g.collected();
}

// ---- almost-period scan -----------------------------------------------------

AlmostPeriodReport find_almost_periods(const ExponentialSum& g_in, double eps, double t_max,
                                       double scan_step, int probe_count, double probe_step,
                                       const std::vector<double>& direction, int threads) {
  if (!(eps > 0.0)) throw std::invalid_argument("almost periods: eps must be positive");
  if (probe_count <= 0) throw std::invalid_argument("almost periods: empty probe grid");
  if (!(scan_step > 0.0)) throw std::invalid_argument("almost periods: scan step must be positive");

  ExponentialSum g = g_in;
  if (g.dim != 1) {
    std::vector<double> dir = direction;
    if (dir.empty()) {
      dir.assign(static_cast<size_t>(g.dim), 0.0);
      dir[0] = 1.0;
    }
    g = g.restrict_ray(std::vector<double>(static_cast<size_t>(g.dim), 0.0), dir);
  }
  const size_t n = g.terms.size();
  std::vector<double> freqs(n);
  std::vector<Complex> amps(n);
  for (size_t i = 0; i < n; ++i) {
    freqs[i] = g.terms[i].freq[0];
    amps[i] = g.terms[i].coeff;
  }

  // probe-grid characters, laid out per term for the inner loop
  std::vector<Complex> chars(static_cast<size_t>(probe_count) * n);
  for (int ti = 0; ti < probe_count; ++ti) {
    double t = static_cast<double>(ti) * probe_step;
    for (size_t j = 0; j < n; ++j)
      chars[static_cast<size_t>(ti) * n + j] = std::polar(1.0, 2.0 * kPi * freqs[j] * t);
  }

  const long long steps = static_cast<long long>(std::floor(t_max / scan_step + 1e-9));
  const double eps2 = eps * eps;

  struct Hit {
    double tau;
    double defect;
  };
  auto scan_range = [&](long long lo, long long hi, std::vector<Hit>* out) {
    std::vector<Complex> c(n);
    for (long long j = lo; j < hi; ++j) {
      double tau = static_cast<double>(j) * scan_step;
      double mass = 0.0;
      for (size_t i = 0; i < n; ++i) {
        c[i] = amps[i] * (std::polar(1.0, 2.0 * kPi * freqs[i] * tau) - 1.0);
        mass += std::abs(c[i]);
      }
      double worst2 = 0.0;
      if (mass >= eps) {
        bool rejected = false;
        for (int ti = 0; ti < probe_count; ++ti) {
          Complex s(0.0, 0.0);
          const Complex* row = &chars[static_cast<size_t>(ti) * n];
          for (size_t i = 0; i < n; ++i) s += c[i] * row[i];
          double m2 = std::norm(s);
          worst2 = std::max(worst2, m2);
          if (m2 >= eps2) {
            rejected = true;
            break;
          }
        }
        if (rejected) continue;
      } else {
        // cheap upper bound already below eps; still record the grid sup
        for (int ti = 0; ti < probe_count; ++ti) {
          Complex s(0.0, 0.0);
          const Complex* row = &chars[static_cast<size_t>(ti) * n];
          for (size_t i = 0; i < n; ++i) s += c[i] * row[i];
          worst2 = std::max(worst2, std::norm(s));
        }
      }
      out->push_back(Hit{tau, std::sqrt(worst2)});
    }
  };

  std::vector<Hit> hits;
  threads = std::max(1, threads);
  if (threads == 1) {
    scan_range(0, steps + 1, &hits);
  } else {
    std::vector<std::vector<Hit>> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    long long chunk = (steps + threads) / threads;
    for (int w = 0; w < threads; ++w) {
      long long lo = w * chunk;
      long long hi = std::min<long long>(steps + 1, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(scan_range, lo, hi, &parts[static_cast<size_t>(w)]);
    }
    for (auto& th : pool) th.join();
    for (const auto& p : parts) hits.insert(hits.end(), p.begin(), p.end());
  }

  AlmostPeriodReport rep;
  rep.eps = eps;
  rep.t_max = t_max;
  rep.scan_step = scan_step;
  rep.probe_count = probe_count;
  rep.probe_step = probe_step;
  for (const auto& h : hits) {
    rep.taus.push_back(h.tau);
    rep.defects.push_back(h.defect);
  }
  for (size_t i = 1; i < rep.taus.size(); ++i)
    rep.max_gap = std::max(rep.max_gap, rep.taus[i] - rep.taus[i - 1]);
  return rep;
}

}  // namespace qcomb::ap
