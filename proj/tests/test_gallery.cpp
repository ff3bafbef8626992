#include "qcomb/gallery.hpp"

#include "qcomb/document.hpp"
#include "qcomb/pointset.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace qcomb;
using namespace qcomb::gallery;

TEST_CASE("integer comb and lattice comb") {
  auto f = integer_comb(2);
  REQUIRE(f.components.size() == 1);
  CHECK(f.components[0].coset.lattice.generator() == SquareMatrix<Rational>::identity(2));
  CHECK(f.components[0].terms.size() == 1);

  SquareMatrix<Rational> singular(2);
  singular(0, 0) = Rational(1);
  singular(1, 0) = Rational(2);
  CHECK_THROWS_AS((void)lattice_comb(singular), std::invalid_argument);
}

TEST_CASE("two cosets with first-order terms stay order one in the window") {
  Comb<Rational> f;
  f.dim = 1;
  Lattice<Rational> z(SquareMatrix<Rational>::identity(1));
  for (const auto& shift : {Rational(0), Rational(1, 3)}) {
    CombComponent<Rational> comp{Coset<Rational>(z, {shift}), {}};
    comp.terms.push_back(CombTerm<Rational>{{0}, {0}, {Rational(1, 4)}, Complex(1.0, 0.0)});
    comp.terms.push_back(CombTerm<Rational>{{1}, {0}, {Rational(1, 2)}, Complex(0.0, 1.0)});
    f.components.push_back(comp);
  }
  f = collect(f);
  int terms = 0;
  for (const auto& c : f.components) terms += static_cast<int>(c.terms.size());
  CHECK(terms == 4);
  auto w = evaluate_window(f, Vec<Rational>{Rational(0)}, Rational(5));
  CHECK(w.max_order() == 1);
}

TEST_CASE("random samples are reproducible byte for byte") {
  auto a = theorem11_sample(1234, 2, 2, 2, 1);
  auto b = theorem11_sample(1234, 2, 2, 2, 1);
  doc::AnyComb da{Regime::exact, a}, db{Regime::exact, b};
  CHECK(doc::serialize_comb(da) == doc::serialize_comb(db));
  auto c = theorem11_sample(1235, 2, 2, 2, 1);
  doc::AnyComb dc{Regime::exact, c};
  CHECK(doc::serialize_comb(da) != doc::serialize_comb(dc));
}

TEST_CASE("counterexample radicands are squarefree and in range") {
  std::vector<long long> expected{2, 5, 17, 65, 257, 1027, 4097, 16385};
  for (int j = 1; j <= 8; ++j) {
    long long q = counterexample_radicand(j);
    CHECK(q == expected[static_cast<size_t>(j - 1)]);
    double x = std::sqrt(static_cast<double>(q));
    CHECK(x > std::ldexp(1.0, j - 1));
    CHECK(x < std::ldexp(1.0, j));
  }
}

TEST_CASE("counterexample J=1 is a single shifted lattice with unit masses") {
  auto f = counterexample(1);
  REQUIRE(f.components.size() == 1);
  const auto& comp = f.components[0];
  CHECK(comp.coset.lattice.generator()(0, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(comp.coset.lattice.generator()(1, 1) == doctest::Approx(2.0));
  CHECK(comp.coset.shift[0] == 0.0);
  CHECK(comp.coset.shift[1] == doctest::Approx(1.0));
  REQUIRE(comp.terms.size() == 1);
  CHECK(comp.terms[0].coeff == Complex(1.0, 0.0));

  CHECK_THROWS_AS((void)counterexample(0), std::invalid_argument);
  CHECK_THROWS_AS((void)counterexample(17), std::invalid_argument);
}

TEST_CASE("counterexample windows: positive separating constant, brute-force checked") {
  auto f = counterexample(4);
  auto w = evaluate_window(f, Vec<double>(2, 0.0), 20.0);
  auto pts = pointset::window_points(w);
  REQUIRE(pts.size() >= 100);
  double eta = pointset::separating_constant(pts);
  CHECK(eta > 0.0);
  CHECK(eta == testsupport::separating_constant_bruteforce(pts));
  for (const auto& p : w.points) {
    CHECK(p.coeffs.at(zero_index(2)).real() > 0.0);  // masses strictly positive
  }
}

TEST_CASE("counterexample windowed supports are nested in J") {
  auto small = evaluate_window(counterexample(2), Vec<double>(2, 0.0), 12.0);
  auto large = evaluate_window(counterexample(3), Vec<double>(2, 0.0), 12.0);
  CHECK(large.points.size() >= small.points.size());
  for (const auto& p : small.points) {
    bool found = false;
    for (const auto& q : large.points) {
      if (std::fabs(p.point[0] - q.point[0]) < 1e-9 && std::fabs(p.point[1] - q.point[1]) < 1e-9)
        found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("counterexample masses: inf over a wide window is J^-2 exactly") {
  auto f = counterexample(8);
  auto w = evaluate_window(f, Vec<double>(2, 0.0), 130.0);
  double inf_mass = 1e300;
  for (const auto& p : w.points)
    inf_mass = std::min(inf_mass, std::abs(p.coeffs.at(zero_index(2))));
  CHECK(inf_mass == 1.0 / 64.0);
}

TEST_CASE("spectrum bound J=1 at r=1: hand-computable count") {
  auto rep = counterexample_spectrum_bound(1, {1.0});
  REQUIRE(rep.rows.size() == 1);
  // dual lattice diag(1/sqrt 2, 1/2): 11 points in the closed unit ball, each
  // of mass 1/(2 sqrt 2)
  double expected = 11.0 / (2.0 * std::sqrt(2.0));
  CHECK(rep.rows[0].component_chain == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.rows[0].variation == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.rows[0].bound == 8.0);
  CHECK(rep.all_below);

  // brute-force cross-check of the count through windowed realization
  auto mu_hat = distribution_ft(counterexample(1));
  auto w = evaluate_window(mu_hat, Vec<double>(2, 0.0), 1.0);
  CHECK(w.points.size() == 11);
  double var = 0.0;
  for (const auto& p : w.points) var += std::abs(p.coeffs.at(zero_index(2)));
  CHECK(var == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("spectrum bound stays below 8 r^2 and is monotone") {
  auto rep = counterexample_spectrum_bound(8, {1.0, 2.0, 4.0, 8.0, 16.0});
  CHECK(rep.all_below);
  for (size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].variation >= rep.rows[i - 1].variation);

  auto rep4 = counterexample_spectrum_bound(4, {1.0, 2.0, 4.0, 8.0, 16.0});
  for (size_t i = 0; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].variation >= rep4.rows[i].variation);  // nondecreasing in J
}

TEST_CASE("spectrum bound variation agrees with brute-force windowing at small radius") {
  auto rep = counterexample_spectrum_bound(4, {2.0});
  auto mu_hat = distribution_ft(counterexample(4));
  auto w = evaluate_window(mu_hat, Vec<double>(2, 0.0), 2.0);
  double var = 0.0;
  for (const auto& p : w.points) var += std::abs(p.coeffs.at(zero_index(2)));
  CHECK(rep.rows[0].variation == doctest::Approx(var).epsilon(1e-9));
  CHECK(var <= rep.rows[0].component_chain + 1e-9);
}

TEST_CASE("random probes are deterministic in the seed") {
  auto a = random_probes(7, 2, 5);
  auto b = random_probes(7, 2, 5);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].almost_equal(b[i], 0.0));
}

TEST_CASE("counterexample coefficient condition: inf total mass decays as J^-2") {
  auto w = evaluate_window(counterexample(8), Vec<double>(2, 0.0), 130.0);
  auto growth = pointset::coefficient_growth(w);
  CHECK(growth.inf_total_mass == 1.0 / 64.0);
  auto w4 = evaluate_window(counterexample(4), Vec<double>(2, 0.0), 34.0);
  CHECK(pointset::coefficient_growth(w4).inf_total_mass == 1.0 / 16.0);
}
