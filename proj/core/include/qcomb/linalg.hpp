#pragma once

// Small dense vectors and square matrices over a generic scalar field.
// Dimensions here are lattice dimensions (d <= 8 in practice), so plain
// Gauss-Jordan with partial pivoting is all that is needed.

#include "qcomb/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <vector>

namespace qcomb {

template <class S>
using Vec = std::vector<S>;

template <class S>
class SquareMatrix {
 public:
  SquareMatrix() : d_(0) {}
  explicit SquareMatrix(int d) : d_(d), a_(static_cast<size_t>(d) * d, S(0)) {}
  SquareMatrix(int d, std::vector<S> entries) : d_(d), a_(std::move(entries)) {
    assert(static_cast<int>(a_.size()) == d_ * d_);
  }

  static SquareMatrix identity(int d) {
    SquareMatrix m(d);
    for (int i = 0; i < d; ++i) m(i, i) = S(1);
    return m;
  }

  int dim() const { return d_; }
  S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * d_ + j]; }
  const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * d_ + j]; }
  const std::vector<S>& entries() const { return a_; }

  SquareMatrix transposed() const {
    SquareMatrix m(d_);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Vec<S> mul(const Vec<S>& v) const {
    assert(static_cast<int>(v.size()) == d_);
    Vec<S> r(d_, S(0));
    for (int i = 0; i < d_; ++i) {
      S acc(0);
      for (int j = 0; j < d_; ++j) acc += (*this)(i, j) * v[j];
      r[i] = acc;
    }
    return r;
  }

  SquareMatrix mul(const SquareMatrix& o) const {
    assert(o.d_ == d_);
    SquareMatrix r(d_);
    for (int i = 0; i < d_; ++i)
      for (int k = 0; k < d_; ++k) {
        S aik = (*this)(i, k);
        if (ScalarOps<S>::is_zero(aik)) continue;
        for (int j = 0; j < d_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  bool operator==(const SquareMatrix& o) const { return d_ == o.d_ && a_ == o.a_; }

 private:
  int d_;
  std::vector<S> a_;
};

template <class S>
S abs_scalar(const S& a) {
  return scalar_sign(a) < 0 ? S(-a) : a;
}

// Gauss-Jordan; returns false when the matrix is singular.
template <class S>
bool invert(const SquareMatrix<S>& m, SquareMatrix<S>* inv, S* det) {
  const int d = m.dim();
  SquareMatrix<S> a = m;
  SquareMatrix<S> b = SquareMatrix<S>::identity(d);
  S dt(1);
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    S best(0);
    for (int r = col; r < d; ++r) {
      S mag = abs_scalar(a(r, col));
      if (!ScalarOps<S>::is_zero(mag) && (pivot < 0 || ScalarOps<S>::less(best, mag))) {
        pivot = r;
        best = mag;
      }
    }
    if (pivot < 0) return false;
    if (pivot != col) {
      for (int j = 0; j < d; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(b(pivot, j), b(col, j));
      }
      dt = -dt;
    }
    S p = a(col, col);
    dt *= p;
    for (int j = 0; j < d; ++j) {
      a(col, j) = a(col, j) / p;
      b(col, j) = b(col, j) / p;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      S f = a(r, col);
      if (ScalarOps<S>::is_zero(f)) continue;
      for (int j = 0; j < d; ++j) {
        a(r, j) -= f * a(col, j);
        b(r, j) -= f * b(col, j);
      }
    }
  }
  if (inv) *inv = b;
  if (det) *det = dt;
  return true;
}

template <class S>
S determinant(const SquareMatrix<S>& m) {
  SquareMatrix<S> inv;
  S det(0);
  if (!invert(m, &inv, &det)) return S(0);
  return det;
}

// Maximum absolute row sum: operator infinity-norm as a double.
template <class S>
double inf_norm(const SquareMatrix<S>& m) {
  double best = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.dim(); ++j) s += std::fabs(ScalarOps<S>::to_double(m(i, j)));
    best = std::max(best, s);
  }
  return best;
}

template <class S>
Vec<S> vec_sub(const Vec<S>& a, const Vec<S>& b) {
  assert(a.size() == b.size());
  Vec<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
Vec<S> vec_add(const Vec<S>& a, const Vec<S>& b) {
  assert(a.size() == b.size());
  Vec<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  assert(a.size() == b.size());
  S acc(0);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
std::vector<double> to_double_vec(const Vec<S>& v) {
  std::vector<double> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = ScalarOps<S>::to_double(v[i]);
  return r;
}

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// L1 norm as an exact upper bound for the euclidean norm.
template <class S>
S norm1(const Vec<S>& v) {
  S s(0);
  for (const S& x : v) s += abs_scalar(x);
  return s;
}

template <class S>
bool vec_eq(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ScalarOps<S>::eq(a[i], b[i])) return false;
  return true;
}

template <class S>
int vec_cmp(const Vec<S>& a, const Vec<S>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (ScalarOps<S>::less(a[i], b[i])) return -1;
    if (ScalarOps<S>::less(b[i], a[i])) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace qcomb
