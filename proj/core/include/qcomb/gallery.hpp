#pragma once

// Canonical constructions: plain lattice combs, random theorem-form samples,
// and the two-dimensional incommensurable-lattice counterexample with its
// spectrum bound.

#include "qcomb/comb.hpp"
#include "qcomb/fourier.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcomb::gallery {

Comb<Rational> integer_comb(int dim);
Comb<Rational> lattice_comb(const SquareMatrix<Rational>& generator);

struct SampleParams {
  int dim = 1;
  int components = 2;
  int max_deriv = 1;
  int max_mono = 0;
  int terms_per_component = 2;
};

// Seed-controlled random instance in the theorem normal form: finite sum over
// lattice cosets of c e^{2 pi i <lambda, omega>} D^k delta_lambda terms,
// optionally with monomial factors lambda^m.
Comb<Rational> random_form(std::uint64_t seed, const SampleParams& params);
Comb<Rational> theorem10_sample(std::uint64_t seed, int dim = 1, int components = 2,
                                int max_deriv = 1);
Comb<Rational> theorem11_sample(std::uint64_t seed, int dim = 1, int components = 2,
                                int max_deriv = 1, int max_mono = 1);

// Smallest squarefree integer in (4^{j-1}, 4^j); x_j = sqrt of it.  Distinct
// squarefree radicands certify pairwise irrational ratios.
long long counterexample_radicand(int j);

// mu = sum_{j<=J} j^{-2} sum_{lambda in L_j + (0, 2^{j-1})} delta_lambda with
// L_j = diag(x_j, 2^j) Z^2 (float regime; entries are correctly rounded
// doubles).
Comb<double> counterexample(int J);

struct SpectrumBoundRow {
  double radius = 0.0;
  double variation = 0.0;        // |mu^|(B(0,r)) with coincident points merged
  double component_chain = 0.0;  // sum_j |c_j| #(L_j* cap B(0,r))
  double bound = 0.0;            // 8 r^2
};

struct SpectrumBoundReport {
  int truncation = 0;
  std::vector<SpectrumBoundRow> rows;
  bool all_below = true;
};

SpectrumBoundReport counterexample_spectrum_bound(int J, const std::vector<double>& radii);

// Seed-controlled Gaussian-Hermite probe set (widths in [1/2, 2], centers and
// modulations in [-2, 2], polynomial degree <= 2).
std::vector<TestFunction> random_probes(std::uint64_t seed, int dim, int count);

}  // namespace qcomb::gallery
