#include "qcomb/gallery.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qcomb::gallery {

Comb<Rational> integer_comb(int dim) {
  return lattice_comb(SquareMatrix<Rational>::identity(dim));
}

Comb<Rational> lattice_comb(const SquareMatrix<Rational>& generator) {
  Lattice<Rational> l(generator);  // throws on a degenerate generator
  Comb<Rational> f;
  f.dim = l.dim();
  CombComponent<Rational> comp{Coset<Rational>(l, Vec<Rational>(l.dim(), Rational(0))), {}};
  comp.terms.push_back(CombTerm<Rational>{zero_index(f.dim), zero_index(f.dim),
                                          Vec<Rational>(f.dim, Rational(0)), Complex(1.0, 0.0)});
  f.components.push_back(std::move(comp));
  return collect(f);
}

namespace {

// portable draws: plain modulo of the engine output
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational draw_rational(std::mt19937_64& rng, long long num_lo, long long num_hi,
                       long long den_hi) {
  long long num = draw(rng, num_lo, num_hi);
  long long den = draw(rng, 1, den_hi);
  return Rational(num, den);
}

Lattice<Rational> draw_lattice(std::mt19937_64& rng, int dim) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    SquareMatrix<Rational> t(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        if (i == j)
          t(i, j) = draw_rational(rng, 1, 4, 2);
        else
          t(i, j) = draw_rational(rng, -1, 1, 2);
      }
    Rational det = determinant(t);
    if (det == 0) continue;
    Lattice<Rational> l(t);
    if (std::fabs(ScalarOps<Rational>::to_double(det)) < 0.25) continue;
    if (inf_norm(l.inverse()) > 3.0) continue;
    return l;
  }
  throw std::runtime_error("gallery: failed to draw a well-conditioned lattice");
}

MultiIndex draw_index(std::mt19937_64& rng, int dim, int max_total) {
  MultiIndex k = zero_index(dim);
  int total = static_cast<int>(draw(rng, 0, max_total));
  for (int i = 0; i < total; ++i) ++k[static_cast<size_t>(draw(rng, 0, dim - 1))];
  return k;
}

}  // namespace

Comb<Rational> random_form(std::uint64_t seed, const SampleParams& p) {
  std::mt19937_64 rng(seed);
  Comb<Rational> f;
  f.dim = p.dim;
  for (int j = 0; j < p.components; ++j) {
    Lattice<Rational> l = draw_lattice(rng, p.dim);
    Vec<Rational> shift(p.dim);
    for (auto& s : shift) s = draw_rational(rng, -2, 2, 3);
    CombComponent<Rational> comp{Coset<Rational>(l, shift), {}};
    for (int t = 0; t < p.terms_per_component; ++t) {
      CombTerm<Rational> term;
      term.deriv = draw_index(rng, p.dim, p.max_deriv);
      term.monomial = draw_index(rng, p.dim, p.max_mono);
      term.freq.resize(p.dim);
      for (auto& w : term.freq) w = draw_rational(rng, 0, 5, 6);
      double re = static_cast<double>(draw(rng, -4, 4)) / 2.0;
      double im = static_cast<double>(draw(rng, -4, 4)) / 2.0;
      if (re == 0.0 && im == 0.0) re = 1.0;
      term.coeff = Complex(re, im);
      comp.terms.push_back(std::move(term));
    }
    f.components.push_back(std::move(comp));
  }
  return collect(f);
}

Comb<Rational> theorem10_sample(std::uint64_t seed, int dim, int components, int max_deriv) {
  SampleParams p;
  p.dim = dim;
  p.components = components;
  p.max_deriv = max_deriv;
  p.max_mono = 0;
  return random_form(seed, p);
}

Comb<Rational> theorem11_sample(std::uint64_t seed, int dim, int components, int max_deriv,
                                int max_mono) {
  SampleParams p;
  p.dim = dim;
  p.components = components;
  p.max_deriv = max_deriv;
  p.max_mono = max_mono;
  return random_form(seed, p);
}

long long counterexample_radicand(int j) {
  auto squarefree = [](long long n) {
    for (long long p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) return false;
    return true;
  };
  long long lo = 1;
  for (int i = 0; i < 2 * (j - 1); ++i) lo *= 2;  // 4^{j-1}
  long long hi = 4 * lo;
  for (long long q = lo + 1; q < hi; ++q)
    if (squarefree(q)) return q;
  throw std::logic_error("gallery: no squarefree integer in range");
}

Comb<double> counterexample(int J) {
  if (J < 1 || J > 16) throw std::invalid_argument("counterexample: J must be in [1,16]");
  Comb<double> f;
  f.dim = 2;
  for (int j = 1; j <= J; ++j) {
    double xj = std::sqrt(static_cast<double>(counterexample_radicand(j)));
    double two_j = std::ldexp(1.0, j);
    SquareMatrix<double> t(2);
    t(0, 0) = xj;
    t(1, 1) = two_j;
    Lattice<double> l(t);
    Vec<double> shift{0.0, std::ldexp(1.0, j - 1)};
    CombComponent<double> comp{Coset<double>(l, shift), {}};
    double mass = 1.0 / (static_cast<double>(j) * static_cast<double>(j));
    comp.terms.push_back(
        CombTerm<double>{zero_index(2), zero_index(2), Vec<double>(2, 0.0), Complex(mass, 0.0)});
    f.components.push_back(std::move(comp));
  }
  return collect(f);
}

SpectrumBoundReport counterexample_spectrum_bound(int J, const std::vector<double>& radii) {
  for (double r : radii)
    if (!(r > 0.0)) throw std::invalid_argument("spectrum bound: radii must be positive");

  Comb<double> mu_hat = distribution_ft(counterexample(J));

  // The transform of the construction is a union of diagonal rectangular
  // lattices through the origin; exploit that for exact per-component counts.
  struct Grid {
    double dx, dy;  // lattice spacings
    Complex coeff;
    Vec<double> freq;
  };
  std::vector<Grid> grids;
  for (const auto& comp : mu_hat.components) {
    const auto& g = comp.coset.lattice.generator();
    if (std::fabs(g(0, 1)) > 1e-12 || std::fabs(g(1, 0)) > 1e-12 ||
        norm2(to_double_vec(comp.coset.shift)) > 1e-12 || comp.terms.size() != 1)
      throw std::logic_error("spectrum bound: unexpected transform shape");
    grids.push_back(Grid{std::fabs(g(0, 0)), std::fabs(g(1, 1)), comp.terms[0].coeff,
                         comp.terms[0].freq});
  }

  double dy_min = grids.front().dy;
  for (const auto& g : grids) dy_min = std::min(dy_min, g.dy);

  SpectrumBoundReport rep;
  rep.truncation = J;
  for (double r : radii) {
    double chain = 0.0;
    double variation = 0.0;
    for (const auto& g : grids) {
      long long count = 0;
      long long axis_count = 0;
      long long nmax = static_cast<long long>(std::floor(r / g.dy + 1e-12));
      for (long long n = -nmax; n <= nmax; ++n) {
        double y = static_cast<double>(n) * g.dy;
        double rem = r * r - y * y;
        if (rem < 0.0) continue;
        count += 2 * static_cast<long long>(std::floor(std::sqrt(rem) / g.dx + 1e-12)) + 1;
        ++axis_count;
      }
      chain += std::abs(g.coeff) * static_cast<double>(count);
      variation += std::abs(g.coeff) * static_cast<double>(count - axis_count);
    }
    // x = 0 column: grids overlap there, masses add before taking | . |
    long long kmax = static_cast<long long>(std::floor(r / dy_min + 1e-12));
    for (long long k = -kmax; k <= kmax; ++k) {
      double y = static_cast<double>(k) * dy_min;
      Complex mass(0.0, 0.0);
      for (const auto& g : grids) {
        double ratio = y / g.dy;
        if (std::fabs(ratio - std::nearbyint(ratio)) > 1e-9) continue;
        std::vector<double> p{0.0, y};
        mass += g.coeff * std::polar(1.0, 2.0 * std::numbers::pi * (p[1] * g.freq[1]));
      }
      variation += std::abs(mass);
    }
    SpectrumBoundRow row{r, variation, chain, 8.0 * r * r};
    if (!(row.variation < row.bound) || !(row.component_chain < row.bound))
      rep.all_below = false;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<TestFunction> random_probes(std::uint64_t seed, int dim, int count) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  std::vector<TestFunction> probes;
  for (int i = 0; i < count; ++i) {
    double a = uniform(0.5, 2.0);
    std::vector<double> x0(dim), xi0(dim);
    for (int k = 0; k < dim; ++k) {
      x0[static_cast<size_t>(k)] = uniform(-2.0, 2.0);
      xi0[static_cast<size_t>(k)] = uniform(-2.0, 2.0);
    }
    std::vector<PolyTerm> poly{PolyTerm{zero_index(dim), Complex(uniform(-1, 1), uniform(-1, 1))}};
    if (rng() % 2 == 0) {
      MultiIndex alpha = zero_index(dim);
      alpha[rng() % static_cast<std::uint64_t>(dim)] = 1 + static_cast<int>(rng() % 2);
      poly.push_back(PolyTerm{alpha, Complex(uniform(-1, 1), uniform(-1, 1))});
    }
    if (std::abs(poly[0].coeff) < 0.1) poly[0].coeff += Complex(0.5, 0.0);
    probes.emplace_back(dim, a, x0, xi0, poly);
  }
  return probes;
}

}  // namespace qcomb::gallery
