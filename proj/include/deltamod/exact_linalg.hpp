#pragma once

#include <algorithm>
#include <numeric>
#include <optional>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

// Advances idx to the next k-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<int> first_combination(int k) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

namespace detail {

// Bareiss fraction-free elimination over int64 with overflow checks.
// Returns nullopt on overflow; callers fall back to BigInt.
inline std::optional<Int> det_i64(std::vector<Int> a, int n) {
  if (n == 0) return Int{1};
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a[static_cast<size_t>(i) * n + k] != 0) { piv = i; break; }
    if (piv < 0) return Int{0};
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(k) * n + j]);
      sign = -sign;
    }
    Int akk = a[static_cast<size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      Int aik = a[static_cast<size_t>(i) * n + k];
      for (int j = k + 1; j < n; ++j) {
        Int t1, t2, num;
        if (__builtin_mul_overflow(a[static_cast<size_t>(i) * n + j], akk, &t1)) return std::nullopt;
        if (__builtin_mul_overflow(aik, a[static_cast<size_t>(k) * n + j], &t2)) return std::nullopt;
        if (__builtin_sub_overflow(t1, t2, &num)) return std::nullopt;
        a[static_cast<size_t>(i) * n + j] = num / prev;  // exact division (Bareiss)
      }
      a[static_cast<size_t>(i) * n + k] = 0;
    }
    prev = akk;
  }
  return sign * a[static_cast<size_t>(n - 1) * n + (n - 1)];
}

inline BigInt det_big(std::vector<BigInt> a, int n) {
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a[static_cast<size_t>(i) * n + k] != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(k) * n + j]);
      sign = -sign;
    }
    BigInt akk = a[static_cast<size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      BigInt aik = a[static_cast<size_t>(i) * n + k];
      for (int j = k + 1; j < n; ++j)
        a[static_cast<size_t>(i) * n + j] = (a[static_cast<size_t>(i) * n + j] * akk - aik * a[static_cast<size_t>(k) * n + j]) / prev;
      a[static_cast<size_t>(i) * n + k] = 0;
    }
    prev = akk;
  }
  return sign * a[static_cast<size_t>(n - 1) * n + (n - 1)];
}

// Rank by fraction-free elimination; entries stay determinants of submatrices
// of the input, so the i64 overflow check covers exactness.
inline std::optional<int> rank_i64(std::vector<Int> a, int rows, int cols) {
  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (a[static_cast<size_t>(i) * cols + col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < cols; ++j) std::swap(a[static_cast<size_t>(piv) * cols + j], a[static_cast<size_t>(rank) * cols + j]);
    Int p = a[static_cast<size_t>(rank) * cols + col];
    for (int i = rank + 1; i < rows; ++i) {
      Int aic = a[static_cast<size_t>(i) * cols + col];
      for (int j = col + 1; j < cols; ++j) {
        Int t1, t2, num;
        if (__builtin_mul_overflow(a[static_cast<size_t>(i) * cols + j], p, &t1)) return std::nullopt;
        if (__builtin_mul_overflow(aic, a[static_cast<size_t>(rank) * cols + j], &t2)) return std::nullopt;
        if (__builtin_sub_overflow(t1, t2, &num)) return std::nullopt;
        a[static_cast<size_t>(i) * cols + j] = num / prev;
      }
      a[static_cast<size_t>(i) * cols + col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

inline int rank_big(std::vector<BigInt> a, int rows, int cols) {
  int rank = 0;
  BigInt prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (a[static_cast<size_t>(i) * cols + col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < cols; ++j) std::swap(a[static_cast<size_t>(piv) * cols + j], a[static_cast<size_t>(rank) * cols + j]);
    BigInt p = a[static_cast<size_t>(rank) * cols + col];
    for (int i = rank + 1; i < rows; ++i) {
      BigInt aic = a[static_cast<size_t>(i) * cols + col];
      for (int j = col + 1; j < cols; ++j)
        a[static_cast<size_t>(i) * cols + j] = (a[static_cast<size_t>(i) * cols + j] * p - aic * a[static_cast<size_t>(rank) * cols + j]) / prev;
      a[static_cast<size_t>(i) * cols + col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

inline std::vector<Int> flatten(const IntMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<Int> a;
  a.reserve(rows.size() * cols.size());
  for (int i : rows)
    for (int j : cols) a.push_back(m.at(i, j));
  return a;
}

}  // namespace detail

inline BigInt det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  std::vector<Int> a;
  a.reserve(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a.push_back(m.at(i, j));
  if (auto d = detail::det_i64(a, m.rows())) return BigInt(*d);
  std::vector<BigInt> b(a.begin(), a.end());
  return detail::det_big(std::move(b), m.rows());
}

inline int rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  std::vector<Int> a;
  a.reserve(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a.push_back(m.at(i, j));
  if (auto r = detail::rank_i64(a, m.rows(), m.cols())) return *r;
  std::vector<BigInt> b(a.begin(), a.end());
  return detail::rank_big(std::move(b), m.rows(), m.cols());
}

// A square submatrix with its determinant; used as a violation witness.
struct MinorRef {
  std::vector<int> row_idx;
  std::vector<int> col_idx;
  BigInt value;
};

namespace detail {

inline BigInt det_of(const IntMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (auto d = det_i64(flatten(m, rows, cols), static_cast<int>(rows.size()))) return BigInt(*d);
  auto a = flatten(m, rows, cols);
  std::vector<BigInt> b(a.begin(), a.end());
  return det_big(std::move(b), static_cast<int>(rows.size()));
}

// Visits k x k submatrices in lexicographic (row-set, col-set) order.
template <typename F>
bool for_each_minor(const IntMatrix& m, int k, F&& f) {
  if (k < 1 || k > std::min(m.rows(), m.cols())) return true;
  auto rows = first_combination(k);
  do {
    auto cols = first_combination(k);
    do {
      if (!f(rows, cols)) return false;
    } while (next_combination(cols, m.cols()));
  } while (next_combination(rows, m.rows()));
  return true;
}

}  // namespace detail

inline BigInt max_abs_minor(const IntMatrix& m, int k) {
  if (k < 1 || k > std::min(m.rows(), m.cols())) throw std::invalid_argument("max_abs_minor: bad order");
  BigInt best = 0;
  detail::for_each_minor(m, k, [&](const std::vector<int>& r, const std::vector<int>& c) {
    BigInt d = detail::det_of(m, r, c);
    if (d < 0) d = -d;
    if (d > best) best = d;
    return true;
  });
  return best;
}

// Delta-modularity bounds rank-sized minors only. Rank-0 matrices are
// rejected: the bound quantifies over rank(A) x rank(A) submatrices and the
// empty quantification is not treated as vacuous success.
inline std::optional<MinorRef> check_delta_modular(const IntMatrix& m, Int delta) {
  if (delta < 1) throw std::invalid_argument("check_delta_modular: delta must be >= 1");
  int r = rank(m);
  if (r == 0) return MinorRef{{}, {}, 0};
  std::optional<MinorRef> viol;
  detail::for_each_minor(m, r, [&](const std::vector<int>& rw, const std::vector<int>& cl) {
    BigInt d = detail::det_of(m, rw, cl);
    BigInt a = d < 0 ? BigInt(-d) : d;
    if (a > delta) {
      viol = MinorRef{rw, cl, d};
      return false;
    }
    return true;
  });
  return viol;
}

inline bool is_delta_modular(const IntMatrix& m, Int delta) { return !check_delta_modular(m, delta).has_value(); }

inline std::optional<MinorRef> check_totally_delta_modular(const IntMatrix& m, Int delta) {
  if (delta < 1) throw std::invalid_argument("check_totally_delta_modular: delta must be >= 1");
  if (rank(m) == 0) return MinorRef{{}, {}, 0};
  std::optional<MinorRef> viol;
  int kmax = std::min(m.rows(), m.cols());
  for (int k = 1; k <= kmax && !viol; ++k) {
    detail::for_each_minor(m, k, [&](const std::vector<int>& rw, const std::vector<int>& cl) {
      BigInt d = detail::det_of(m, rw, cl);
      BigInt a = d < 0 ? BigInt(-d) : d;
      if (a > delta) {
        viol = MinorRef{rw, cl, d};
        return false;
      }
      return true;
    });
  }
  return viol;
}

inline bool is_totally_delta_modular(const IntMatrix& m, Int delta) {
  return !check_totally_delta_modular(m, delta).has_value();
}

namespace detail {

// Canonical projective form of a row: divide by gcd, first nonzero positive.
inline std::optional<std::vector<Int>> projective_normal(const std::vector<Int>& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) return std::nullopt;  // zero row
  std::vector<Int> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  for (Int x : w) {
    if (x > 0) break;
    if (x < 0) {
      for (auto& y : w) y = -y;
      break;
    }
  }
  return w;
}

}  // namespace detail

// Number of nonzero, pairwise non-parallel rows (parallel over the rationals).
inline int row_point_count(const IntMatrix& m) {
  std::vector<std::vector<Int>> seen;
  for (int i = 0; i < m.rows(); ++i) {
    auto nf = detail::projective_normal(m.row(i));
    if (!nf) continue;
    if (std::find(seen.begin(), seen.end(), *nf) == seen.end()) seen.push_back(std::move(*nf));
  }
  return static_cast<int>(seen.size());
}

}  // namespace deltamod
