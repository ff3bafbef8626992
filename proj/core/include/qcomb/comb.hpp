#pragma once

// Generalized lattice Dirac combs and their distributional extensions: finite
// sums over lattice cosets of terms
//
//   c * lambda^m * exp(2 pi i <lambda, omega>) * D^k delta_lambda.
//
// The class is closed under addition, scaling, translation, modulation,
// differentiation and monomial multiplication.  Windowed realization and the
// pairing against Gaussian-Hermite test functions are the numeric ground
// truth for every rewrite rule.

#include "qcomb/lattice.hpp"
#include "qcomb/multiindex.hpp"
#include "qcomb/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qcomb {

template <class S>
struct CombTerm {
  MultiIndex deriv;     // k
  MultiIndex monomial;  // m
  Vec<S> freq;          // omega
  Complex coeff;        // c
};

template <class S>
struct CombComponent {
  Coset<S> coset;
  std::vector<CombTerm<S>> terms;
};

template <class S>
struct Comb {
  using scalar_type = S;

  int dim = 0;
  std::vector<CombComponent<S>> components;

  int max_derivative_order() const {
    int k = 0;
    for (const auto& c : components)
      for (const auto& t : c.terms) k = std::max(k, order(t.deriv));
    return k;
  }
  int max_monomial_order() const {
    int m = 0;
    for (const auto& c : components)
      for (const auto& t : c.terms) m = std::max(m, order(t.monomial));
    return m;
  }
};

template <class S>
struct TrigTerm {
  Complex coeff;
  Vec<S> freq;
};

template <class S>
struct TrigPolynomial {
  std::vector<TrigTerm<S>> terms;

  Complex eval(const Vec<S>& point) const;

  double abs_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.coeff);
    return s;
  }
};

template <class S>
struct MeasureComponent {
  Coset<S> coset;
  TrigPolynomial<S> weight;
};

// k = m = 0 sub-case of Comb.
template <class S>
struct CombMeasure {
  int dim = 0;
  std::vector<MeasureComponent<S>> components;

  Comb<S> to_comb() const {
    Comb<S> f;
    f.dim = dim;
    for (const auto& c : components) {
      CombComponent<S> out{c.coset, {}};
      for (const auto& t : c.weight.terms)
        out.terms.push_back(CombTerm<S>{zero_index(dim), zero_index(dim), t.freq, t.coeff});
      f.components.push_back(std::move(out));
    }
    return f;
  }

  static CombMeasure from_comb(const Comb<S>& f) {
    CombMeasure m;
    m.dim = f.dim;
    for (const auto& c : f.components) {
      MeasureComponent<S> out{c.coset, {}};
      for (const auto& t : c.terms) {
        if (!is_zero_index(t.deriv) || !is_zero_index(t.monomial))
          throw std::invalid_argument("comb measure: distribution has derivative/monomial terms");
        out.weight.terms.push_back(TrigTerm<S>{t.coeff, t.freq});
      }
      m.components.push_back(std::move(out));
    }
    return m;
  }
};

// ---- characters -----------------------------------------------------------

// exp(2 pi i <a, b>) with the inner product reduced mod 1 before leaving the
// scalar regime, so rational data keeps full phase accuracy.
template <class S>
Complex unit_phase(const Vec<S>& a, const Vec<S>& b) {
  S d = dot(a, b);
  double frac;
  if constexpr (ScalarOps<S>::regime == Regime::exact) {
    frac = ScalarOps<S>::to_double(ScalarOps<S>::fract(d));
  } else {
    double v = ScalarOps<S>::to_double(d);
    frac = v - std::floor(v);
  }
  if (frac == 0.0) return Complex(1.0, 0.0);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

template <class S>
S monomial_pow(const Vec<S>& v, const MultiIndex& e) {
  S r(1);
  for (size_t i = 0; i < v.size(); ++i)
    for (int t = 0; t < e[i]; ++t) r *= v[i];
  return r;
}

template <class S>
Complex TrigPolynomial<S>::eval(const Vec<S>& point) const {
  Complex s(0.0, 0.0);
  for (const auto& t : terms) s += t.coeff * unit_phase(point, t.freq);
  return s;
}

// ---- canonical form -------------------------------------------------------

namespace detail {

template <class S>
bool term_key_less(const CombTerm<S>& a, const CombTerm<S>& b) {
  if (a.deriv != b.deriv) return a.deriv < b.deriv;
  if (a.monomial != b.monomial) return a.monomial < b.monomial;
  return vec_cmp(a.freq, b.freq) < 0;
}

template <class S>
bool term_key_eq(const CombTerm<S>& a, const CombTerm<S>& b) {
  return a.deriv == b.deriv && a.monomial == b.monomial && vec_eq(a.freq, b.freq);
}

template <class S>
bool coeff_is_negligible(const Complex& c) {
  if constexpr (ScalarOps<S>::regime == Regime::exact)
    return c == Complex(0.0, 0.0);
  else
    return std::abs(c) < kDropTol;
}

template <class S>
std::vector<CombTerm<S>> merge_terms(std::vector<CombTerm<S>> terms) {
  std::stable_sort(terms.begin(), terms.end(), term_key_less<S>);
  std::vector<CombTerm<S>> out;
  for (auto& t : terms) {
    if (!out.empty() && term_key_eq(out.back(), t))
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const CombTerm<S>& t) { return coeff_is_negligible<S>(t.coeff); });
  return out;
}

template <class S>
int component_cmp(const CombComponent<S>& a, const CombComponent<S>& b) {
  const auto& ga = a.coset.lattice.generator().entries();
  const auto& gb = b.coset.lattice.generator().entries();
  int c = vec_cmp(ga, gb);
  if (c != 0) return c;
  return vec_cmp(a.coset.shift, b.coset.shift);
}

}  // namespace detail

// Canonical form: canonical lattice basis, translate folded into T[0,1)^d,
// frequencies folded into the dual fundamental domain (phase absorbed into
// the coefficient), equal term keys merged, zero terms dropped, identical
// cosets merged, deterministic ordering.  Idempotent; windowed evaluation is
// unchanged.
template <class S>
Comb<S> collect(const Comb<S>& f) {
  Comb<S> out;
  out.dim = f.dim;
  std::vector<CombComponent<S>> comps;
  for (const auto& comp : f.components) {
    Lattice<S> canon = canonical_basis(comp.coset.lattice);
    Vec<S> shift = canon.fold(comp.coset.shift).folded;
    Lattice<S> dual = canon.dual();
    CombComponent<S> c{Coset<S>(canon, shift), {}};
    for (const auto& term : comp.terms) {
      FoldResult<S> fr = dual.fold(term.freq);
      Complex phase = unit_phase(shift, vec_sub(term.freq, fr.folded));
      c.terms.push_back(CombTerm<S>{term.deriv, term.monomial, fr.folded, term.coeff * phase});
    }
    // merge with an existing identical coset
    bool merged = false;
    for (auto& existing : comps) {
      if (vec_eq(existing.coset.lattice.generator().entries(),
                 c.coset.lattice.generator().entries()) &&
          vec_eq(existing.coset.shift, c.coset.shift)) {
        existing.terms.insert(existing.terms.end(), c.terms.begin(), c.terms.end());
        merged = true;
        break;
      }
    }
    if (!merged) comps.push_back(std::move(c));
  }
  for (auto& c : comps) c.terms = detail::merge_terms<S>(std::move(c.terms));
  std::erase_if(comps, [](const CombComponent<S>& c) { return c.terms.empty(); });
  std::sort(comps.begin(), comps.end(), [](const CombComponent<S>& a, const CombComponent<S>& b) {
    return detail::component_cmp(a, b) < 0;
  });
  out.components = std::move(comps);
  return out;
}

// Canonical-form equality.  Coefficients compare exactly when tol = 0.
template <class S>
bool comb_equal(const Comb<S>& a, const Comb<S>& b,
                double coeff_tol = (ScalarOps<S>::regime == Regime::exact ? 0.0 : kEqTol)) {
  Comb<S> ca = collect(a), cb = collect(b);
  if (ca.dim != cb.dim || ca.components.size() != cb.components.size()) return false;
  for (size_t i = 0; i < ca.components.size(); ++i) {
    const auto& x = ca.components[i];
    const auto& y = cb.components[i];
    if (!vec_eq(x.coset.lattice.generator().entries(), y.coset.lattice.generator().entries()))
      return false;
    if (!vec_eq(x.coset.shift, y.coset.shift)) return false;
    if (x.terms.size() != y.terms.size()) return false;
    for (size_t j = 0; j < x.terms.size(); ++j) {
      if (!detail::term_key_eq(x.terms[j], y.terms[j])) return false;
      Complex d = x.terms[j].coeff - y.terms[j].coeff;
      if (coeff_tol == 0.0 ? d != Complex(0.0, 0.0) : std::abs(d) > coeff_tol) return false;
    }
  }
  return true;
}

// ---- closure operations ----------------------------------------------------

template <class S>
Comb<S> add(const Comb<S>& a, const Comb<S>& b) {
  if (a.dim != b.dim) throw std::invalid_argument("comb add: dimension mismatch");
  Comb<S> r = a;
  r.components.insert(r.components.end(), b.components.begin(), b.components.end());
  return collect(r);
}

template <class S>
Comb<S> scale(const Comb<S>& f, Complex c) {
  Comb<S> r = f;
  for (auto& comp : r.components)
    for (auto& t : comp.terms) t.coeff *= c;
  return collect(r);
}

// Support shifts by v; monomials are rewritten via the binomial expansion
// lambda^m = (lambda' - v)^m and characters contribute exp(-2 pi i <v, omega>).
template <class S>
Comb<S> translate(const Comb<S>& f, const Vec<S>& v) {
  if (static_cast<int>(v.size()) != f.dim)
    throw std::invalid_argument("comb translate: dimension mismatch");
  Comb<S> r;
  r.dim = f.dim;
  for (const auto& comp : f.components) {
    CombComponent<S> out{Coset<S>(comp.coset.lattice, vec_add(comp.coset.shift, v)), {}};
    for (const auto& t : comp.terms) {
      Complex base = t.coeff * std::conj(unit_phase(v, t.freq));
      for (const auto& j : index_box(t.monomial)) {
        MultiIndex rest = sub_index(t.monomial, j);
        double comb_factor = binomial_index(t.monomial, j);
        double neg_v_pow = ScalarOps<S>::to_double(monomial_pow(v, rest));
        if (order(rest) % 2 == 1) neg_v_pow = -neg_v_pow;
        Complex c = base * comb_factor * neg_v_pow;
        if (c == Complex(0.0, 0.0)) continue;
        out.terms.push_back(CombTerm<S>{t.deriv, j, t.freq, c});
      }
    }
    r.components.push_back(std::move(out));
  }
  return collect(r);
}

// Adds omega0 to every term frequency (then refolds).  Windowed coefficients
// pick up the factor exp(2 pi i <lambda, omega0>) pointwise.
template <class S>
Comb<S> modulate(const Comb<S>& f, const Vec<S>& omega0) {
  if (static_cast<int>(omega0.size()) != f.dim)
    throw std::invalid_argument("comb modulate: dimension mismatch");
  Comb<S> r = f;
  for (auto& comp : r.components)
    for (auto& t : comp.terms) t.freq = vec_add(t.freq, omega0);
  return collect(r);
}

template <class S>
Comb<S> derivative(const Comb<S>& f, const MultiIndex& k0, int max_order = kMaxDerivativeOrder) {
  if (static_cast<int>(k0.size()) != f.dim)
    throw std::invalid_argument("comb derivative: dimension mismatch");
  Comb<S> r = f;
  for (auto& comp : r.components)
    for (auto& t : comp.terms) {
      t.deriv = add_index(t.deriv, k0);
      if (order(t.deriv) > max_order)
        throw std::invalid_argument("comb derivative: order exceeds configured maximum");
    }
  return collect(r);
}

// Multiplication by x^{m0}.  For k = 0 this bumps the monomial; against
// D^k delta_lambda the commutation
//   x^{m0} D^k delta = sum_{j <= min(k, m0)} (-1)^{|j|} C(k,j) (m0)_j
//                      lambda^{m0-j} D^{k-j} delta
// applies, with the constants pinned by the pairing contract
// <x^{m0} D^k delta, phi> = (-1)^{|k|} D^k (x^{m0} phi)(lambda).
template <class S>
Comb<S> monomial_multiply(const Comb<S>& f, const MultiIndex& m0) {
  if (static_cast<int>(m0.size()) != f.dim)
    throw std::invalid_argument("comb monomial_multiply: dimension mismatch");
  Comb<S> r;
  r.dim = f.dim;
  for (const auto& comp : f.components) {
    CombComponent<S> out{comp.coset, {}};
    for (const auto& t : comp.terms) {
      MultiIndex cap = min_index(t.deriv, m0);
      for (const auto& j : index_box(cap)) {
        double factor = binomial_index(t.deriv, j) * falling_factorial_index(m0, j);
        if (order(j) % 2 == 1) factor = -factor;
        Complex c = t.coeff * factor;
        if (c == Complex(0.0, 0.0)) continue;
        out.terms.push_back(CombTerm<S>{sub_index(t.deriv, j),
                                        add_index(t.monomial, sub_index(m0, j)), t.freq, c});
      }
    }
    r.components.push_back(std::move(out));
  }
  return collect(r);
}

// ---- windowed realization ---------------------------------------------------

struct WindowPoint {
  std::vector<double> point;
  std::map<MultiIndex, Complex> coeffs;  // k -> p_k(lambda)
};

struct WindowedDistribution {
  std::vector<double> center;
  double radius = 0.0;
  std::vector<WindowPoint> points;

  int max_order() const {
    int k = 0;
    for (const auto& p : points)
      for (const auto& [key, c] : p.coeffs) k = std::max(k, order(key));
    return k;
  }
  bool is_measure() const { return max_order() == 0; }
};

// Explicit restriction to the closed ball B(center, radius).  Points shared
// by several cosets are merged here by coefficient addition; coefficients of
// negligible magnitude are removed.
template <class S>
WindowedDistribution evaluate_window(const Comb<S>& f, const Vec<S>& center, const S& radius) {
  if (static_cast<int>(center.size()) != f.dim)
    throw std::invalid_argument("evaluate_window: dimension mismatch");
  struct VecLess {
    bool operator()(const Vec<S>& a, const Vec<S>& b) const { return vec_cmp(a, b) < 0; }
  };
  std::map<Vec<S>, std::map<MultiIndex, Complex>, VecLess> acc;
  for (const auto& comp : f.components) {
    auto pts = enumerate_ball(comp.coset, center, radius);
    for (const auto& p : pts) {
      auto& slot = acc[p.position];
      for (const auto& t : comp.terms) {
        Complex v = t.coeff * ScalarOps<S>::to_double(monomial_pow(p.position, t.monomial)) *
                    unit_phase(p.position, t.freq);
        slot[t.deriv] += v;
      }
    }
  }
  // float regime: merge points that coincide within tolerance
  if constexpr (ScalarOps<S>::regime == Regime::floating) {
    typename std::map<Vec<S>, std::map<MultiIndex, Complex>, VecLess>::iterator it = acc.begin();
    while (it != acc.end()) {
      auto next = std::next(it);
      if (next != acc.end()) {
        bool same = true;
        for (size_t i = 0; i < it->first.size(); ++i)
          if (!approx_eq(ScalarOps<S>::to_double(it->first[i]),
                         ScalarOps<S>::to_double(next->first[i]))) {
            same = false;
            break;
          }
        if (same) {
          for (const auto& [k, c] : next->second) it->second[k] += c;
          acc.erase(next);
          continue;
        }
      }
      ++it;
    }
  }
  WindowedDistribution w;
  w.center = to_double_vec(center);
  w.radius = ScalarOps<S>::to_double(radius);
  for (auto& [pos, coeffs] : acc) {
    WindowPoint p;
    p.point = to_double_vec(pos);
    for (auto& [k, c] : coeffs) {
      bool drop = (ScalarOps<S>::regime == Regime::floating) ? std::abs(c) < kDropTol
                                                             : c == Complex(0.0, 0.0);
      if (!drop) p.coeffs.emplace(k, c);
    }
    if (!p.coeffs.empty()) w.points.push_back(std::move(p));
  }
  return w;
}

// ---- pairing ----------------------------------------------------------------

struct PairingResult {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;
};

// <w, phi> over an explicit window: sum of p_k(lambda) (-1)^{|k|} D^k phi(lambda).
inline Complex pair_window(const WindowedDistribution& w, const TestFunction& phi) {
  std::map<MultiIndex, TestFunction> derivs;
  Complex total(0.0, 0.0);
  for (const auto& p : w.points) {
    for (const auto& [k, c] : p.coeffs) {
      auto it = derivs.find(k);
      if (it == derivs.end()) it = derivs.emplace(k, phi.derivative(k)).first;
      Complex v = c * it->second.eval(p.point);
      if (order(k) % 2 == 1) v = -v;
      total += v;
    }
  }
  return total;
}

// Certified bound on sum_{|lambda| > R} sum_k |p_k(lambda)| |D^k phi(lambda)|:
// per unit shell, a complete integer-box point count times the Gaussian-decay
// envelope of the probe; the series is closed with a geometric remainder once
// the shell ratio is provably below 1/2.  Returns +inf when certification
// fails.
template <class S>
double pairing_tail_bound(const Comb<S>& f, const TestFunction& phi, double radius) {
  const int d = f.dim;
  const double a = phi.width();
  const double c0 = norm2(phi.center());

  std::map<MultiIndex, TestFunction> derivs;
  int deg_q = 0;
  int m_max = 0;
  for (const auto& comp : f.components)
    for (const auto& t : comp.terms) {
      if (derivs.find(t.deriv) == derivs.end()) {
        auto it = derivs.emplace(t.deriv, phi.derivative(t.deriv)).first;
        deg_q = std::max(deg_q, it->second.poly_degree());
      }
      m_max = std::max(m_max, order(t.monomial));
    }

  auto shell_bound = [&](double s) {
    double total = 0.0;
    for (const auto& comp : f.components) {
      double rowsum = inf_norm(comp.coset.lattice.inverse());
      double shift = norm2(to_double_vec(comp.coset.shift));
      double count = pow_double(2.0 * std::ceil(rowsum * (s + 2.0 + shift) + 1e-9) + 3.0, d);
      double val = 0.0;
      for (const auto& t : comp.terms) {
        const TestFunction& dk = derivs.at(t.deriv);
        double u = std::max(1.0, s + 1.0 + c0);
        double env = dk.poly_abs_bound(u) * std::exp(-std::numbers::pi * a *
                                                     std::max(0.0, s - c0) *
                                                     std::max(0.0, s - c0));
        val += std::abs(t.coeff) * pow_double(s + 1.0, order(t.monomial)) * env;
      }
      total += count * val;
    }
    return total;
  };

  // Shells beyond s_geo shrink by at least 1/2 each step.
  double p = d + m_max + deg_q + 1;
  double s_geo = c0 + 1.0 + 0.5 * ((p + 1.0) * std::numbers::ln2 / (std::numbers::pi * a));
  double s0 = std::floor(radius);
  double total = 0.0;
  double s = s0;
  for (; s < std::max(s0, s_geo) + 1.0; s += 1.0) total += shell_bound(s);
  double closing = shell_bound(s);
  total += 2.0 * closing;
  if (!std::isfinite(total)) return std::numeric_limits<double>::infinity();
  return total;
}

// Truncated pairing with a certified tail bound; the window is B(0, R).
template <class S>
PairingResult pair(const Comb<S>& f, const TestFunction& phi, const S& radius) {
  if (scalar_sign(radius) <= 0) throw std::invalid_argument("pair: radius must be positive");
  WindowedDistribution w = evaluate_window(f, Vec<S>(f.dim, S(0)), radius);
  PairingResult r;
  r.value = pair_window(w, phi);
  r.tail_bound = pairing_tail_bound(f, phi, ScalarOps<S>::to_double(radius));
  return r;
}

// Smallest power-of-two truncation radius whose certified tail is below tol.
template <class S>
double select_pairing_radius_value(const Comb<S>& f, const TestFunction& phi, double tol,
                                   double max_radius = 4096.0) {
  for (double r = 8.0; r <= max_radius; r *= 2.0) {
    if (pairing_tail_bound(f, phi, r) <= tol) return r;
  }
  throw std::runtime_error("pair: tail bound cannot be certified below requested tolerance");
}

template <class S>
S select_pairing_radius(const Comb<S>& f, const TestFunction& phi, double tol,
                        double max_radius = 4096.0) {
  return ScalarOps<S>::from_int(
      static_cast<long long>(select_pairing_radius_value(f, phi, tol, max_radius)));
}

}  // namespace qcomb
