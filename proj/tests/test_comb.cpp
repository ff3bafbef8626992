#include "qcomb/comb.hpp"

#include "qcomb/gallery.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qcomb;

namespace {

constexpr double kPi = std::numbers::pi;

Comb<Rational> z_comb() { return gallery::integer_comb(1); }

Comb<Rational> make_comb(int dim, SquareMatrix<Rational> gen, Vec<Rational> shift,
                         std::vector<CombTerm<Rational>> terms) {
  Comb<Rational> f;
  f.dim = dim;
  f.components.push_back(CombComponent<Rational>{
      Coset<Rational>(Lattice<Rational>(std::move(gen)), std::move(shift)), std::move(terms)});
  return f;
}

CombTerm<Rational> term1(int k, int m, Rational omega, Complex c) {
  return CombTerm<Rational>{{k}, {m}, {omega}, c};
}

bool window_close(const WindowedDistribution& a, const WindowedDistribution& b,
                  double tol = 1e-12) {
  if (a.points.size() != b.points.size()) return false;
  for (size_t i = 0; i < a.points.size(); ++i) {
    const auto& p = a.points[i];
    const auto& q = b.points[i];
    for (size_t j = 0; j < p.point.size(); ++j)
      if (std::fabs(p.point[j] - q.point[j]) > tol) return false;
    if (p.coeffs.size() != q.coeffs.size()) return false;
    auto it = p.coeffs.begin();
    auto jt = q.coeffs.begin();
    for (; it != p.coeffs.end(); ++it, ++jt) {
      if (it->first != jt->first) return false;
      if (std::abs(it->second - jt->second) > tol) return false;
    }
  }
  return true;
}

// window of f shifted by v (for the translate-commutes contract)
WindowedDistribution shift_window(WindowedDistribution w, const std::vector<double>& v) {
  for (size_t i = 0; i < w.center.size(); ++i) w.center[i] += v[i];
  for (auto& p : w.points)
    for (size_t i = 0; i < v.size(); ++i) p.point[i] += v[i];
  return w;
}

}  // namespace

TEST_CASE("window of the integer comb") {
  auto w = evaluate_window(z_comb(), Vec<Rational>{Rational(0)}, Rational(5, 2));
  REQUIRE(w.points.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(w.points[i].point[0] == doctest::Approx(static_cast<double>(i) - 2.0));
    CHECK(w.points[i].coeffs.at({0}) == Complex(1.0, 0.0));
  }
}

TEST_CASE("window of the half-frequency comb alternates") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                     {term1(0, 0, Rational(1, 2), Complex(1.0, 0.0))});
  auto w = evaluate_window(f, Vec<Rational>{Rational(0)}, Rational(3));
  REQUIRE(w.points.size() == 7);
  for (const auto& p : w.points) {
    double expected = (std::llround(p.point[0]) % 2 == 0) ? 1.0 : -1.0;
    CHECK(p.coeffs.at({0}).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(p.coeffs.at({0}).imag()) < 1e-14);
  }
}

TEST_CASE("windows merge coincident cosets") {
  Comb<Rational> f = gallery::integer_comb(2);
  Comb<Rational> g = add(f, f);  // identical cosets merge at collect already
  auto w = evaluate_window(g, Vec<Rational>(2, Rational(0)), Rational(1));
  for (const auto& p : w.points) CHECK(p.coeffs.at({0, 0}) == Complex(2.0, 0.0));

  // distinct generator matrices of the same lattice also merge
  Comb<Rational> h = make_comb(2, SquareMatrix<Rational>::identity(2), Vec<Rational>(2, Rational(0)),
                               {CombTerm<Rational>{{0, 0}, {0, 0}, Vec<Rational>(2, Rational(0)),
                                                   Complex(1.0, 0.0)}});
  SquareMatrix<Rational> alt(2);
  alt(0, 0) = Rational(1);
  alt(0, 1) = Rational(1);
  alt(1, 1) = Rational(1);
  Comb<Rational> h2 = make_comb(2, alt, Vec<Rational>(2, Rational(0)),
                                {CombTerm<Rational>{{0, 0}, {0, 0}, Vec<Rational>(2, Rational(0)),
                                                    Complex(1.0, 0.0)}});
  Comb<Rational> merged = add(h, h2);
  CHECK(merged.components.size() == 1);
  CHECK(merged.components[0].terms[0].coeff == Complex(2.0, 0.0));
}

TEST_CASE("translate by a lattice vector is the identity") {
  CHECK(comb_equal(translate(z_comb(), Vec<Rational>{Rational(1)}), z_comb()));
}

TEST_CASE("modulate by a dual vector is the identity") {
  CHECK(comb_equal(modulate(z_comb(), Vec<Rational>{Rational(1)}), z_comb()));
}

TEST_CASE("translate rewrites monomials binomially") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                     {term1(0, 1, Rational(0), Complex(1.0, 0.0))});
  auto g = translate(f, Vec<Rational>{Rational(1)});
  // expected terms: (m=1, c=1), (m=0, c=-1) on the same coset
  auto expected = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                            {term1(0, 1, Rational(0), Complex(1.0, 0.0)),
                             term1(0, 0, Rational(0), Complex(-1.0, 0.0))});
  CHECK(comb_equal(g, expected));

  // and the defining contract: windows commute with translation
  auto w_lhs = evaluate_window(g, Vec<Rational>{Rational(1)}, Rational(4));
  auto w_rhs = shift_window(evaluate_window(f, Vec<Rational>{Rational(0)}, Rational(4)), {1.0});
  CHECK(window_close(w_lhs, w_rhs));
}

TEST_CASE("windows commute with add, scale, modulate, collect") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(1, 3)},
                     {term1(1, 1, Rational(1, 4), Complex(0.5, -1.0)),
                      term1(0, 0, Rational(0), Complex(2.0, 0.0))});
  auto g = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                     {term1(0, 2, Rational(2, 3), Complex(0.0, 1.0))});
  Vec<Rational> center{Rational(0)};
  Rational radius(4);

  auto wf = evaluate_window(f, center, radius);
  auto wg = evaluate_window(g, center, radius);

  SUBCASE("add") {
    auto w = evaluate_window(add(f, g), center, radius);
    // pointwise sum of the two windows
    std::map<double, std::map<MultiIndex, Complex>> expect;
    for (const auto& p : wf.points)
      for (const auto& [k, c] : p.coeffs) expect[p.point[0]][k] += c;
    for (const auto& p : wg.points)
      for (const auto& [k, c] : p.coeffs) expect[p.point[0]][k] += c;
    for (const auto& p : w.points)
      for (const auto& [k, c] : p.coeffs)
        CHECK(std::abs(c - expect[p.point[0]][k]) < 1e-12);
  }
  SUBCASE("scale") {
    Complex s(0.25, 2.0);
    auto w = evaluate_window(scale(f, s), center, radius);
    REQUIRE(w.points.size() == wf.points.size());
    for (size_t i = 0; i < w.points.size(); ++i)
      for (const auto& [k, c] : w.points[i].coeffs)
        CHECK(std::abs(c - s * wf.points[i].coeffs.at(k)) < 1e-12);
  }
  SUBCASE("modulate") {
    Vec<Rational> omega0{Rational(5, 7)};
    auto w = evaluate_window(modulate(f, omega0), center, radius);
    REQUIRE(w.points.size() == wf.points.size());
    for (size_t i = 0; i < w.points.size(); ++i) {
      Complex phase = std::polar(
          1.0, 2.0 * kPi * w.points[i].point[0] * ScalarOps<Rational>::to_double(omega0[0]));
      for (const auto& [k, c] : w.points[i].coeffs) {
        CHECK(std::abs(c - phase * wf.points[i].coeffs.at(k)) < 1e-12);
      }
    }
  }
  SUBCASE("collect") {
    CHECK(window_close(evaluate_window(collect(f), center, radius), wf));
  }
}

TEST_CASE("derivative raises the index and composes") {
  auto d1 = derivative(z_comb(), {1});
  for (const auto& comp : d1.components)
    for (const auto& t : comp.terms) CHECK(t.deriv == MultiIndex{1});
  CHECK(comb_equal(derivative(d1, {1}), derivative(z_comb(), {2})));
  CHECK_THROWS_AS((void)derivative(z_comb(), {kMaxDerivativeOrder + 1}),
                  std::invalid_argument);
}

TEST_CASE("pairing the derivative comb sums -phi' over integers") {
  auto d1 = derivative(z_comb(), {1});
  TestFunction phi = TestFunction::gaussian(1);
  PairingResult res = pair(d1, phi, Rational(8));
  double expected = 0.0;
  TestFunction dphi = phi.derivative({1});
  for (int n = -8; n <= 8; ++n) expected -= dphi.eval({static_cast<double>(n)}).real();
  CHECK(std::abs(res.value.real() - expected) < 1e-10);
  CHECK(std::abs(res.value.imag()) < 1e-12);
  CHECK(res.value.real() == doctest::Approx(0.0).epsilon(1e-9));  // odd summand
}

TEST_CASE("monomial multiplication: x delta' = -delta at the origin") {
  auto dcomb = derivative(z_comb(), {1});
  auto g = monomial_multiply(dcomb, {1});
  // canonical identity on the whole comb: x D delta_n = -delta_n + n D delta_n
  auto expected = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                            {term1(0, 0, Rational(0), Complex(-1.0, 0.0)),
                             term1(1, 1, Rational(0), Complex(1.0, 0.0))});
  CHECK(comb_equal(g, expected, 0.0));

  // at the origin only the -delta part survives
  auto w = evaluate_window(g, Vec<Rational>{Rational(0)}, Rational(1, 4));
  REQUIRE(w.points.size() == 1);
  REQUIRE(w.points[0].coeffs.size() == 1);
  CHECK(w.points[0].coeffs.at({0}) == Complex(-1.0, 0.0));
}

TEST_CASE("monomial multiplication: x delta = 0 at the origin") {
  auto g = monomial_multiply(z_comb(), {1});
  auto w = evaluate_window(g, Vec<Rational>{Rational(0)}, Rational(1, 4));
  CHECK(w.points.empty());  // zero coefficient dropped
}

TEST_CASE("monomial multiplication: x^2 delta'' = 2 delta at the origin, by pairing") {
  auto ddcomb = derivative(z_comb(), {2});
  auto g = monomial_multiply(ddcomb, {2});
  auto w = evaluate_window(g, Vec<Rational>{Rational(0)}, Rational(1, 4));
  REQUIRE(w.points.size() == 1);
  CHECK(w.points[0].coeffs.size() == 1);
  CHECK(w.points[0].coeffs.at({0}) == Complex(2.0, 0.0));

  TestFunction phi = TestFunction::gaussian(1);
  Complex paired = pair_window(w, phi);
  // oracle: <x^2 delta'', phi> = D^2(x^2 phi)(0) = 2 phi(0)
  CHECK(std::abs(paired - 2.0 * phi.eval({0.0})) < 1e-12);
}

TEST_CASE("pairing-contract property for the commutation rewrite") {
  // <x^{m0} D^k delta_l, phi> = (-1)^{|k|} D^k (x^{m0} phi)(l) checked for a
  // grid of (m0, k) at an off-origin point through windowed evaluation
  TestFunction phi(1, 1.0, {0.3}, {0.5},
                   {PolyTerm{{0}, Complex(1.0, 0.2)}, PolyTerm{{1}, Complex(-0.4, 0.0)}});
  for (int k = 0; k <= 3; ++k) {
    for (int m0 = 0; m0 <= 3; ++m0) {
      auto dk = derivative(z_comb(), {k});
      auto g = monomial_multiply(dk, {m0});
      auto w = evaluate_window(g, Vec<Rational>{Rational(2)}, Rational(1, 4));
      Complex lhs =
          w.points.empty() ? Complex(0.0, 0.0) : pair_window(w, phi);
      // independent route: differentiate x^{m0} phi symbolically within the family
      TestFunction xm_phi(1, phi.width(), phi.center(), phi.modulation(), [&] {
        // multiply by x^{m0}: shift into u = x - x0 coordinates binomially
        std::vector<PolyTerm> poly;
        double x0 = phi.center()[0];
        for (const auto& t : phi.poly()) {
          for (int j = 0; j <= m0; ++j) {
            double c = binomial(m0, j) * pow_double(x0, m0 - j);
            MultiIndex alpha = t.alpha;
            alpha[0] += j;
            poly.push_back(PolyTerm{alpha, t.coeff * c});
          }
        }
        return poly;
      }());
      Complex rhs = xm_phi.eval_derivative({k}, {2.0});
      if (k % 2 == 1) rhs = -rhs;
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("collect merges frequencies and drops zeros") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                     {term1(0, 0, Rational(1), Complex(1.0, 0.0)),
                      term1(0, 0, Rational(0), Complex(1.0, 0.0))});
  auto c = collect(f);
  REQUIRE(c.components.size() == 1);
  REQUIRE(c.components[0].terms.size() == 1);
  CHECK(c.components[0].terms[0].coeff == Complex(2.0, 0.0));
  CHECK(c.components[0].terms[0].freq[0] == Rational(0));

  auto zero = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                        {term1(0, 0, Rational(0), Complex(0.0, 0.0))});
  CHECK(collect(zero).components.empty());
}

TEST_CASE("collect folds 0.75 and 1.75 together, window unchanged") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(0)},
                     {term1(0, 0, Rational(3, 4), Complex(1.0, 0.0)),
                      term1(0, 0, Rational(7, 4), Complex(1.0, 0.0))});
  auto c = collect(f);
  REQUIRE(c.components.size() == 1);
  REQUIRE(c.components[0].terms.size() == 1);
  CHECK(c.components[0].terms[0].freq[0] == Rational(3, 4));
  CHECK(std::abs(c.components[0].terms[0].coeff - Complex(2.0, 0.0)) < 1e-15);
  CHECK(window_close(evaluate_window(f, Vec<Rational>{Rational(0)}, Rational(3)),
                     evaluate_window(c, Vec<Rational>{Rational(0)}, Rational(3))));
  CHECK(comb_equal(collect(c), c, 0.0));  // idempotent
}

TEST_CASE("frozen pairing value of the integer comb with the gaussian") {
  TestFunction phi = TestFunction::gaussian(1);
  PairingResult res = pair(z_comb(), phi, Rational(8));
  // independent oracle: direct summation
  double expected = 0.0;
  for (int n = -8; n <= 8; ++n) expected += std::exp(-kPi * n * n);
  CHECK(std::abs(res.value.real() - expected) < 1e-14);
  CHECK(res.value.real() == doctest::Approx(1.0864348112133080).epsilon(1e-12));
  CHECK(res.tail_bound < 1e-10);
}

TEST_CASE("pairing a single delta and a single derivative point") {
  TestFunction phi(1, 1.0, {0.4}, {0.9}, {PolyTerm{{0}, Complex(1.0, -0.5)}});
  auto w = evaluate_window(z_comb(), Vec<Rational>{Rational(0)}, Rational(1, 2));
  REQUIRE(w.points.size() == 1);
  CHECK(std::abs(pair_window(w, phi) - phi.eval({0.0})) < 1e-15);

  TestFunction herm(1, 1.0, {0.0}, {0.0}, {PolyTerm{{1}, Complex(1.0, 0.0)}});
  auto wd = evaluate_window(derivative(z_comb(), {1}), Vec<Rational>{Rational(0)}, Rational(1, 2));
  Complex got = pair_window(wd, herm);
  CHECK(std::abs(got - Complex(-1.0, 0.0)) < 1e-14);  // -phi'(0) = -1
}

TEST_CASE("pair is linear in the distribution and the probe") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(1, 2)},
                     {term1(1, 0, Rational(1, 3), Complex(1.0, 1.0))});
  auto g = z_comb();
  TestFunction phi = TestFunction::gaussian(1);
  TestFunction psi(1, 1.0, {0.0}, {0.0}, {PolyTerm{{1}, Complex(0.0, 1.0)}});
  Complex a(2.0, -1.0), b(0.5, 0.5);

  Rational r(10);
  Complex lhs = pair(add(scale(f, a), scale(g, b)), phi, r).value;
  Complex rhs = a * pair(f, phi, r).value + b * pair(g, phi, r).value;
  CHECK(std::abs(lhs - rhs) < 1e-10);

  Complex lhs2 = pair(f, phi.scaled(a).add(psi.scaled(b)), r).value;
  Complex rhs2 = a * pair(f, phi, r).value + b * pair(f, psi, r).value;
  CHECK(std::abs(lhs2 - rhs2) < 1e-10);
}

TEST_CASE("collect preserves pairing to within the tail bound") {
  auto f = make_comb(1, SquareMatrix<Rational>::identity(1), {Rational(2, 3)},
                     {term1(1, 1, Rational(9, 4), Complex(0.3, 0.7)),
                      term1(0, 0, Rational(5, 4), Complex(1.0, 0.0))});
  TestFunction phi = TestFunction::gaussian(1);
  PairingResult before = pair(f, phi, Rational(10));
  PairingResult after = pair(collect(f), phi, Rational(10));
  CHECK(std::abs(before.value - after.value) < 1e-12 + before.tail_bound + after.tail_bound);
}

TEST_CASE("windowed max order equals the comb order bound") {
  auto f = gallery::theorem11_sample(21, 1, 2, 2, 1);
  int K = f.max_derivative_order();
  auto w = evaluate_window(f, Vec<Rational>{Rational(0)}, Rational(6));
  CHECK(w.max_order() == K);
}

TEST_CASE("measure window count grows like r^d with bounded ratio") {
  Comb<Rational> f = gallery::integer_comb(2);
  double prev_ratio = 0.0;
  for (double r : {4.0, 8.0, 16.0}) {
    auto w = evaluate_window(f, Vec<Rational>(2, Rational(0)),
                             Rational(static_cast<long long>(r)));
    double ratio = static_cast<double>(w.points.size()) / (r * r);
    CHECK(ratio < 4.0);  // pi + boundary slack
    prev_ratio = ratio;
  }
  CHECK(prev_ratio > 2.5);  // approaches pi from below/above
}

TEST_CASE("measure round trip through CombMeasure") {
  auto m = CombMeasure<Rational>::from_comb(z_comb());
  CHECK(comb_equal(m.to_comb(), z_comb(), 0.0));
  CHECK_THROWS_AS((void)CombMeasure<Rational>::from_comb(derivative(z_comb(), {1})),
                  std::invalid_argument);
}

TEST_CASE("radius selection throws when the tail cannot be certified") {
  auto f = z_comb();
  TestFunction phi = TestFunction::gaussian(1);
  CHECK_THROWS_AS((void)select_pairing_radius(f, phi, 1e-300, 8.0), std::runtime_error);
  CHECK(ScalarOps<Rational>::to_double(select_pairing_radius(f, phi, 1e-10)) <= 64.0);
}

TEST_CASE("float-regime windows merge coincident points of incommensurable cosets") {
  Comb<double> f;
  f.dim = 1;
  for (double g : {1.0, std::sqrt(2.0)}) {
    SquareMatrix<double> t(1);
    t(0, 0) = g;
    CombComponent<double> comp{Coset<double>(Lattice<double>(t), {0.0}), {}};
    comp.terms.push_back(CombTerm<double>{{0}, {0}, {0.0}, Complex(1.0, 0.0)});
    f.components.push_back(comp);
  }
  CHECK(collect(f).components.size() == 2);  // never merged at the comb level
  auto w = evaluate_window(f, Vec<double>{0.0}, 3.0);
  for (const auto& p : w.points) {
    double expected = (std::fabs(p.point[0]) < 1e-9) ? 2.0 : 1.0;  // only 0 is shared
    CHECK(p.coeffs.at({0}).real() == doctest::Approx(expected));
  }
}

TEST_CASE("trig polynomial value rule") {
  TrigPolynomial<Rational> p;
  p.terms.push_back(TrigTerm<Rational>{Complex(1.0, 0.0), {Rational(1, 2)}});
  CHECK(std::abs(p.eval({Rational(1)}) - Complex(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(p.eval({Rational(2)}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(p.abs_sum() == 1.0);
}
