#include "qcomb/schwartz.hpp"

#include "qcomb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace qcomb {

namespace {

constexpr double kPi = std::numbers::pi;

using PolyMap = std::map<MultiIndex, Complex>;

PolyMap to_map(const std::vector<PolyTerm>& terms) {
  PolyMap m;
  for (const auto& t : terms) m[t.alpha] += t.coeff;
  return m;
}

std::vector<PolyTerm> from_map(const PolyMap& m, double drop_tol) {
  std::vector<PolyTerm> out;
  for (const auto& [alpha, c] : m) {
    if (std::abs(c) <= drop_tol) continue;
    if (c == Complex(0.0, 0.0)) continue;
    out.push_back(PolyTerm{alpha, c});
  }
  return out;
}

}  // namespace

std::vector<PolyTerm> normalize_poly(std::vector<PolyTerm> terms, double drop_tol) {
  return from_map(to_map(terms), drop_tol);
}

TestFunction::TestFunction(int dim, double width, std::vector<double> center,
                           std::vector<double> modulation, std::vector<PolyTerm> poly)
    : dim_(dim),
      width_(width),
      center_(std::move(center)),
      modulation_(std::move(modulation)),
      poly_(normalize_poly(std::move(poly))) {
  if (dim_ <= 0) throw std::invalid_argument("test function: dimension must be positive");
  if (!(width_ > 0.0)) throw std::invalid_argument("test function: width must be positive");
  if (static_cast<int>(center_.size()) != dim_ || static_cast<int>(modulation_.size()) != dim_)
    throw std::invalid_argument("test function: center/modulation dimension mismatch");
  for (const auto& t : poly_)
    if (static_cast<int>(t.alpha.size()) != dim_)
      throw std::invalid_argument("test function: polynomial index dimension mismatch");
}

TestFunction TestFunction::gaussian(int dim, double width) {
  return TestFunction(dim, width, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0),
                      {PolyTerm{zero_index(dim), Complex(1.0, 0.0)}});
}

Complex TestFunction::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("test function: evaluation point dimension mismatch");
  std::vector<double> u(dim_);
  double u2 = 0.0;
  double phase = 0.0;
  for (int i = 0; i < dim_; ++i) {
    u[i] = x[i] - center_[i];
    u2 += u[i] * u[i];
    phase += x[i] * modulation_[i];
  }
  Complex p(0.0, 0.0);
  for (const auto& t : poly_) p += t.coeff * monomial_value(u, t.alpha);
  double g = std::exp(-kPi * width_ * u2);
  return p * g * std::polar(1.0, 2.0 * kPi * phase);
}

TestFunction TestFunction::partial_derivative(int axis) const {
  PolyMap out;
  for (const auto& t : poly_) {
    // d/dx_j [p e^{-pi a |u|^2} e^{2 pi i <x,xi>}]
    if (t.alpha[axis] > 0) {
      MultiIndex down = t.alpha;
      --down[axis];
      out[down] += t.coeff * static_cast<double>(t.alpha[axis]);
    }
    MultiIndex up = t.alpha;
    ++up[axis];
    out[up] += t.coeff * (-2.0 * kPi * width_);
    out[t.alpha] += t.coeff * Complex(0.0, 2.0 * kPi * modulation_[axis]);
  }
  return TestFunction(dim_, width_, center_, modulation_, from_map(out, 0.0));
}

TestFunction TestFunction::derivative(const MultiIndex& k, int max_order) const {
  if (static_cast<int>(k.size()) != dim_)
    throw std::invalid_argument("test function: derivative index dimension mismatch");
  if (order(k) > max_order)
    throw std::invalid_argument("test function: derivative order exceeds configured maximum");
  TestFunction f = *this;
  for (int axis = 0; axis < dim_; ++axis)
    for (int rep = 0; rep < k[axis]; ++rep) f = f.partial_derivative(axis);
  return f;
}

Complex TestFunction::eval_derivative(const MultiIndex& k, const std::vector<double>& x,
                                      int max_order) const {
  return derivative(k, max_order).eval(x);
}

TestFunction TestFunction::ft() const {
  // Per dimension, FT(u^n e^{-pi a u^2})(v) = a^{-1/2} h_n(v) e^{-pi v^2 / a}
  // with h_0 = 1 and h_{j+1} = (i/2pi) (h_j' - 2 pi (1/a) v h_j).  Tensoring
  // over dimensions and summing terms keeps the result inside the family:
  // center' = xi0, width' = 1/a, modulation' = -x0, and the translation of
  // the input contributes the constant e^{2 pi i <x0, xi0>}.
  const double b = 1.0 / width_;
  int max_deg = 0;
  for (const auto& t : poly_)
    max_deg = std::max(max_deg, *std::max_element(t.alpha.begin(), t.alpha.end()));

  // h polynomials for 1-d degrees 0..max_deg (coefficient lists in v).
  std::vector<std::vector<Complex>> h(static_cast<size_t>(max_deg) + 1);
  h[0] = {Complex(1.0, 0.0)};
  for (int n = 0; n < max_deg; ++n) {
    const auto& q = h[n];
    std::vector<Complex> next(q.size() + 1, Complex(0.0, 0.0));
    for (size_t j = 0; j + 1 < q.size() + 1; ++j) {
      if (j + 1 < q.size()) next[j] += q[j + 1] * static_cast<double>(j + 1);  // q'
    }
    for (size_t j = 0; j < q.size(); ++j) next[j + 1] += q[j] * (-2.0 * kPi * b);  // -2 pi b v q
    const Complex i_over_2pi(0.0, 1.0 / (2.0 * kPi));
    for (auto& c : next) c *= i_over_2pi;
    h[n + 1] = std::move(next);
  }

  double amp = std::pow(width_, -0.5 * dim_);
  double phase = 0.0;
  for (int i = 0; i < dim_; ++i) phase += center_[i] * modulation_[i];
  Complex scale = amp * std::polar(1.0, 2.0 * kPi * phase);

  PolyMap out;
  for (const auto& t : poly_) {
    // tensor product of per-dimension coefficient lists
    std::vector<std::pair<MultiIndex, Complex>> partial{{zero_index(dim_), t.coeff * scale}};
    for (int axis = 0; axis < dim_; ++axis) {
      const auto& coeffs = h[t.alpha[axis]];
      std::vector<std::pair<MultiIndex, Complex>> next;
      next.reserve(partial.size() * coeffs.size());
      for (const auto& [idx, c] : partial)
        for (size_t deg = 0; deg < coeffs.size(); ++deg) {
          if (coeffs[deg] == Complex(0.0, 0.0)) continue;
          MultiIndex idx2 = idx;
          idx2[axis] = static_cast<int>(deg);
          next.emplace_back(std::move(idx2), c * coeffs[deg]);
        }
      partial = std::move(next);
    }
    for (auto& [idx, c] : partial) out[idx] += c;
  }

  std::vector<double> neg_center(dim_);
  for (int i = 0; i < dim_; ++i) neg_center[i] = -center_[i];
  return TestFunction(dim_, b, modulation_, neg_center, from_map(out, 0.0));
}

TestFunction TestFunction::reflected() const {
  std::vector<PolyTerm> poly;
  poly.reserve(poly_.size());
  for (const auto& t : poly_) {
    double sign = (order(t.alpha) % 2 == 0) ? 1.0 : -1.0;
    poly.push_back(PolyTerm{t.alpha, t.coeff * sign});
  }
  std::vector<double> c(dim_), m(dim_);
  for (int i = 0; i < dim_; ++i) {
    c[i] = -center_[i];
    m[i] = -modulation_[i];
  }
  return TestFunction(dim_, width_, std::move(c), std::move(m), std::move(poly));
}

TestFunction TestFunction::inverse_ft() const { return ft().reflected(); }

TestFunction TestFunction::scaled(Complex c) const {
  std::vector<PolyTerm> poly = poly_;
  for (auto& t : poly) t.coeff *= c;
  return TestFunction(dim_, width_, center_, modulation_, std::move(poly));
}

TestFunction TestFunction::add(const TestFunction& other) const {
  if (dim_ != other.dim_ || width_ != other.width_ || center_ != other.center_ ||
      modulation_ != other.modulation_)
    throw std::invalid_argument("test function: add requires matching gaussian parameters");
  std::vector<PolyTerm> poly = poly_;
  poly.insert(poly.end(), other.poly_.begin(), other.poly_.end());
  return TestFunction(dim_, width_, center_, modulation_, std::move(poly));
}

int TestFunction::poly_degree() const {
  int deg = 0;
  for (const auto& t : poly_) deg = std::max(deg, order(t.alpha));
  return deg;
}

double TestFunction::poly_abs_bound(double u) const {
  double s = 0.0;
  for (const auto& t : poly_) s += std::abs(t.coeff) * pow_double(u, order(t.alpha));
  return s;
}

bool TestFunction::almost_equal(const TestFunction& other, double tol) const {
  if (dim_ != other.dim_) return false;
  if (!approx_eq(width_, other.width_, tol)) return false;
  for (int i = 0; i < dim_; ++i) {
    if (!approx_eq(center_[i], other.center_[i], tol)) return false;
    if (!approx_eq(modulation_[i], other.modulation_[i], tol)) return false;
  }
  PolyMap a = to_map(poly_), b = to_map(other.poly_);
  for (const auto& [alpha, c] : a)
    if (!approx_eq(c.real(), b[alpha].real(), tol) || !approx_eq(c.imag(), b[alpha].imag(), tol))
      return false;
  for (const auto& [alpha, c] : b)
    if (a.find(alpha) == a.end() && std::abs(c) > tol) return false;
  return true;
}

SeminormEstimate seminorm(const TestFunction& phi, int n, std::optional<GridSpec> grid) {
  if (n < 0) throw std::invalid_argument("seminorm: order must be nonnegative");
  const int d = phi.dim();
  if (phi.poly().empty()) return SeminormEstimate{n, 0.0, GridSpec{0.0, 0.0}};

  std::vector<TestFunction> derivs;
  MultiIndex bound(static_cast<size_t>(d), n);
  for (const auto& k : index_box(bound))
    if (order(k) <= n) derivs.push_back(phi.derivative(k));

  double center_norm = norm2(phi.center());
  double a = phi.width();
  int deg_max = phi.poly_degree() + n;

  // Beyond u_mono the profile (1+|x0|+u)^n Q(u) e^{-pi a u^2} is decreasing,
  // so its value at the box edge bounds everything outside.
  double u_mono = std::sqrt((deg_max + n + 1) / (2.0 * kPi * a)) + 1.0;

  auto tail_bound = [&](double w) {
    double best = 0.0;
    for (const auto& f : derivs) {
      double v = std::pow(1.0 + center_norm + w, n) * f.poly_abs_bound(std::max(w, 1.0)) *
                 std::exp(-kPi * a * w * w);
      best = std::max(best, v);
    }
    return best;
  };

  double w = grid ? grid->half_width : 2.0 + std::sqrt((n + phi.poly_degree() + 2) / (kPi * a));
  w = std::max(w, u_mono);
  double h = grid ? grid->spacing : (d == 1 ? 0.01 : 0.05);

  auto scan = [&](double half_width, double spacing) {
    long long steps = static_cast<long long>(std::floor(half_width / spacing));
    double best = 0.0;
    std::vector<long long> idx(d, -steps);
    std::vector<double> x(d);
    while (true) {
      double xnorm2 = 0.0;
      for (int i = 0; i < d; ++i) {
        x[i] = phi.center()[i] + static_cast<double>(idx[i]) * spacing;
        xnorm2 += x[i] * x[i];
      }
      double weight = std::pow(1.0 + std::sqrt(xnorm2), n);
      for (const auto& f : derivs) best = std::max(best, weight * std::abs(f.eval(x)));
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
    return best;
  };

  double value = scan(w, h);
  // Grow the box until the outside is certifiably below the found maximum.
  int guard = 0;
  while (tail_bound(w) >= 0.01 * value && guard++ < 40) {
    w += 1.0;
    value = std::max(value, scan(w, h));
  }
  return SeminormEstimate{n, value, GridSpec{w, h}};
}

}  // namespace qcomb
