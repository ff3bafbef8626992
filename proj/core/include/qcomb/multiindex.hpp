#pragma once

// Multi-indices for partial derivatives D^k and monomials x^m.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace qcomb {

using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& k) {
  return std::accumulate(k.begin(), k.end(), 0);
}

inline MultiIndex zero_index(int d) { return MultiIndex(static_cast<size_t>(d), 0); }

inline bool is_zero_index(const MultiIndex& k) {
  return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

inline MultiIndex add_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline MultiIndex sub_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline MultiIndex min_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

inline bool leq_index(const MultiIndex& a, const MultiIndex& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double v = 1.0;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

// Product of componentwise binomials C(k_i, j_i).
inline double binomial_index(const MultiIndex& k, const MultiIndex& j) {
  double v = 1.0;
  for (size_t i = 0; i < k.size(); ++i) v *= binomial(k[i], j[i]);
  return v;
}

// Product of componentwise falling factorials m_i!/(m_i - j_i)!.
inline double falling_factorial_index(const MultiIndex& m, const MultiIndex& j) {
  double v = 1.0;
  for (size_t i = 0; i < m.size(); ++i)
    for (int t = 0; t < j[i]; ++t) v *= (m[i] - t);
  return v;
}

// Enumerates all j with 0 <= j <= bound componentwise, lexicographic order.
inline std::vector<MultiIndex> index_box(const MultiIndex& bound) {
  std::vector<MultiIndex> out;
  MultiIndex cur = zero_index(static_cast<int>(bound.size()));
  while (true) {
    out.push_back(cur);
    int pos = static_cast<int>(bound.size()) - 1;
    while (pos >= 0) {
      if (cur[pos] < bound[pos]) {
        ++cur[pos];
        break;
      }
      cur[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

inline double pow_double(double base, int e) {
  double v = 1.0;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

// x^m over double coordinates.
inline double monomial_value(const std::vector<double>& x, const MultiIndex& m) {
  double v = 1.0;
  for (size_t i = 0; i < x.size(); ++i) v *= pow_double(x[i], m[i]);
  return v;
}

}  // namespace qcomb
