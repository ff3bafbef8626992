#pragma once

// Full-rank lattices T*Z^d: construction, membership, the conjugate (dual)
// lattice, folding into the half-open fundamental domain T[0,1)^d, and
// complete enumeration of coset points in a closed ball.

#include "qcomb/linalg.hpp"
#include "qcomb/scalar.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcomb {

template <class S>
struct FoldResult {
  Vec<S> folded;                   // gamma with T^{-1} gamma in [0,1)^d
  std::vector<long long> witness;  // nu with input = gamma + T nu
};

template <class S>
class Lattice {
 public:
  explicit Lattice(SquareMatrix<S> generator) : gen_(std::move(generator)) {
    if (gen_.dim() <= 0) throw std::invalid_argument("lattice: empty generator");
    if (!invert(gen_, &inv_, &det_) || ScalarOps<S>::is_zero(det_))
      throw std::invalid_argument("lattice: generator matrix is singular");
  }

  int dim() const { return gen_.dim(); }
  const SquareMatrix<S>& generator() const { return gen_; }
  const SquareMatrix<S>& inverse() const { return inv_; }
  const S& det() const { return det_; }
  double abs_det() const { return std::fabs(ScalarOps<S>::to_double(det_)); }

  // Conjugate lattice, generated by the inverse transpose.
  Lattice dual() const { return Lattice(inv_.transposed()); }

  bool contains(const Vec<S>& x) const {
    if (static_cast<int>(x.size()) != dim())
      throw std::invalid_argument("lattice: dimension mismatch");
    Vec<S> s = inv_.mul(x);
    for (const S& c : s)
      if (!ScalarOps<S>::is_integer(c)) return false;
    return true;
  }

  // gamma = omega - T nu with T^{-1} gamma in [0,1)^d componentwise.
  FoldResult<S> fold(const Vec<S>& omega) const {
    if (static_cast<int>(omega.size()) != dim())
      throw std::invalid_argument("lattice: dimension mismatch");
    Vec<S> coords = inv_.mul(omega);
    FoldResult<S> r;
    r.witness.resize(omega.size());
    Vec<S> frac(omega.size());
    for (size_t i = 0; i < omega.size(); ++i) {
      r.witness[i] = ScalarOps<S>::floor_int(coords[i]);
      frac[i] = coords[i] - ScalarOps<S>::from_int(r.witness[i]);
    }
    r.folded = gen_.mul(frac);
    return r;
  }

  bool operator==(const Lattice& o) const { return gen_ == o.gen_; }

  // Set-level equality: each generator lies in the other lattice.
  bool same_lattice(const Lattice& o) const {
    if (dim() != o.dim()) return false;
    return integral_matrix(inv_.mul(o.gen_)) && integral_matrix(o.inv_.mul(gen_));
  }

 private:
  static bool integral_matrix(const SquareMatrix<S>& m) {
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        if (!ScalarOps<S>::is_integer(m(i, j))) return false;
    return true;
  }

  SquareMatrix<S> gen_;
  SquareMatrix<S> inv_;
  S det_;
};

template <class S>
struct Coset {
  Lattice<S> lattice;
  Vec<S> shift;

  Coset(Lattice<S> l, Vec<S> s) : lattice(std::move(l)), shift(std::move(s)) {
    if (static_cast<int>(shift.size()) != lattice.dim())
      throw std::invalid_argument("coset: translate has wrong dimension");
  }

  bool same_coset(const Coset& o) const {
    return lattice.same_lattice(o.lattice) && lattice.contains(vec_sub(shift, o.shift));
  }
};

template <class S>
struct LatticePoint {
  Vec<S> position;
  std::vector<long long> index;  // integer coordinates nu, position = shift + T nu
};

// All points of the coset inside the closed ball B(center, radius), ordered
// lexicographically by integer coordinates.  The integer box bound
// ||nu||_inf <= ceil(||T^{-1}||_inf (r + |center - shift|)) is complete; the
// euclidean distance is then tested exactly (rationals) or in doubles.
template <class S>
std::vector<LatticePoint<S>> enumerate_ball(const Coset<S>& coset, const Vec<S>& center,
                                            const S& radius) {
  const int d = coset.lattice.dim();
  if (static_cast<int>(center.size()) != d)
    throw std::invalid_argument("enumerate: dimension mismatch");
  std::vector<LatticePoint<S>> out;
  if (scalar_sign(radius) < 0) return out;

  Vec<S> offset = vec_sub(center, coset.shift);
  // |center - shift|_2 <= |center - shift|_1, kept in S so the bound is exact
  // in the rational regime.
  S reach = radius + norm1(offset);
  double bound_d = inf_norm(coset.lattice.inverse()) * (ScalarOps<S>::to_double(reach) + 1e-9);
  long long bound = static_cast<long long>(std::ceil(bound_d)) + 1;

  S r2 = radius * radius;
  std::vector<long long> nu(d, -bound);
  const SquareMatrix<S>& T = coset.lattice.generator();
  while (true) {
    Vec<S> nu_s(d);
    for (int i = 0; i < d; ++i) nu_s[i] = ScalarOps<S>::from_int(nu[i]);
    Vec<S> p = vec_add(coset.shift, T.mul(nu_s));
    Vec<S> diff = vec_sub(p, center);
    S dist2 = dot(diff, diff);
    bool inside = !ScalarOps<S>::less(r2, dist2);
    if constexpr (ScalarOps<S>::regime == Regime::floating) {
      // keep boundary points that miss by roundoff
      if (!inside)
        inside = ScalarOps<S>::to_double(dist2) <=
                 ScalarOps<S>::to_double(r2) * (1.0 + 16.0 * kEqTol) + 16.0 * kEqTol;
    }
    if (inside) out.push_back(LatticePoint<S>{std::move(p), nu});

    int pos = d - 1;
    while (pos >= 0) {
      if (nu[pos] < bound) {
        ++nu[pos];
        break;
      }
      nu[pos] = -bound;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

// ---- Canonical basis (exact regime): column-style Hermite normal form ----

namespace detail {

// Column HNF of a nonsingular integer matrix: unimodular column operations
// produce a lower-triangular matrix with positive diagonal and off-diagonal
// row entries reduced mod the pivot.  Unique, hence usable as a merge key.
inline void hnf_columns(int d, std::vector<BigInt>& m) {
  auto at = [&](int i, int j) -> BigInt& { return m[static_cast<size_t>(i) * d + j]; };
  auto col_axpy = [&](int dst, int src, const BigInt& f) {
    for (int i = 0; i < d; ++i) at(i, dst) -= f * at(i, src);
  };
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      while (at(i, j) != 0) {
        if (at(i, i) == 0) {
          for (int r = 0; r < d; ++r) std::swap(at(r, i), at(r, j));
          continue;
        }
        BigInt q = at(i, j) / at(i, i);
        // round toward a remainder of minimal magnitude to converge fast
        col_axpy(j, i, q);
        if (at(i, j) != 0) {
          for (int r = 0; r < d; ++r) std::swap(at(r, i), at(r, j));
        }
      }
    }
    if (at(i, i) < 0)
      for (int r = 0; r < d; ++r) at(r, i) = -at(r, i);
    for (int j = 0; j < i; ++j) {
      BigInt q = at(i, j) / at(i, i);
      if (at(i, j) - q * at(i, i) < 0) --q;
      col_axpy(j, i, q);
    }
  }
}

}  // namespace detail

// Canonical generator of the same lattice (exact regime).  The scale q (lcm
// of entry denominators) is basis-invariant, so HNF of q*T divided by q is a
// genuine canonical form.
inline Lattice<Rational> canonical_basis(const Lattice<Rational>& l) {
  const int d = l.dim();
  BigInt q = 1;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      BigInt den = boost::multiprecision::denominator(l.generator()(i, j));
      q = boost::multiprecision::lcm(q, den);
    }
  std::vector<BigInt> m(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational v = l.generator()(i, j) * Rational(q);
      m[static_cast<size_t>(i) * d + j] = boost::multiprecision::numerator(v);
    }
  detail::hnf_columns(d, m);
  SquareMatrix<Rational> g(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Rational(m[static_cast<size_t>(i) * d + j], q);
  return Lattice<Rational>(g);
}

inline Lattice<double> canonical_basis(const Lattice<double>& l) { return l; }

}  // namespace qcomb
