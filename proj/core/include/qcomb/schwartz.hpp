#pragma once

// Gaussian-Hermite test functions
//
//   phi(x) = p(x - x0) * exp(-pi a |x - x0|^2) * exp(2 pi i <x, xi0>)
//
// with a finite complex polynomial p.  The family is closed under partial
// derivatives, reflection and the Fourier transform, all in closed form, so
// it serves as the independent probe for every distributional identity.

#include "qcomb/multiindex.hpp"
#include "qcomb/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qcomb {

struct PolyTerm {
  MultiIndex alpha;
  Complex coeff;
};

struct GridSpec {
  double half_width = 0.0;
  double spacing = 0.0;
};

struct SeminormEstimate {
  int order = 0;
  double value = 0.0;
  GridSpec grid;
};

class TestFunction {
 public:
  TestFunction(int dim, double width, std::vector<double> center,
               std::vector<double> modulation, std::vector<PolyTerm> poly);

  static TestFunction gaussian(int dim, double width = 1.0);

  int dim() const { return dim_; }
  double width() const { return width_; }
  const std::vector<double>& center() const { return center_; }
  const std::vector<double>& modulation() const { return modulation_; }
  const std::vector<PolyTerm>& poly() const { return poly_; }

  Complex eval(const std::vector<double>& x) const;

  // Exact symbolic derivative; stays in the family.
  TestFunction partial_derivative(int axis) const;
  TestFunction derivative(const MultiIndex& k, int max_order = kMaxDerivativeOrder) const;
  Complex eval_derivative(const MultiIndex& k, const std::vector<double>& x,
                          int max_order = kMaxDerivativeOrder) const;

  TestFunction ft() const;
  TestFunction inverse_ft() const;
  TestFunction reflected() const;   // x -> phi(-x)
  TestFunction scaled(Complex c) const;
  // Coefficient-wise sum; requires matching width/center/modulation.
  TestFunction add(const TestFunction& other) const;

  int poly_degree() const;
  // Q(u) = sum |c_alpha| u^{|alpha|}; |phi(x)| <= Q(|x-x0|) exp(-pi a |x-x0|^2).
  double poly_abs_bound(double u) const;

  bool almost_equal(const TestFunction& other, double tol = 1e-9) const;

 private:
  int dim_;
  double width_;
  std::vector<double> center_;
  std::vector<double> modulation_;
  std::vector<PolyTerm> poly_;  // in u = x - center coordinates
};

// Grid maximum of (1+|x|)^n max_{||k||<=n} |D^k phi(x)|, with the scan box
// grown until the Gaussian tail bound certifies the sup is inside it.
SeminormEstimate seminorm(const TestFunction& phi, int n,
                          std::optional<GridSpec> grid = std::nullopt);

std::vector<PolyTerm> normalize_poly(std::vector<PolyTerm> terms, double drop_tol = 0.0);

}  // namespace qcomb
