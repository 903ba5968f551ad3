#pragma once

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>

#include "deltamod/exact_linalg.hpp"
#include "deltamod/representation.hpp"

namespace deltamod {
namespace detail {

// Adjugate of a square Int matrix, so b * adjugate(b) = det(b) * I.
inline std::vector<BigInt> adjugate(const IntMatrix& b) {
  const int r = b.rows();
  std::vector<BigInt> adj(static_cast<size_t>(r) * r);
  if (r == 1) {
    adj[0] = 1;
    return adj;
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      IntMatrix minor(r - 1, r - 1);
      for (int mi = 0, si = 0; mi < r; ++mi) {
        if (mi == i) continue;
        for (int mj = 0, sj = 0; mj < r; ++mj) {
          if (mj == j) continue;
          minor.at(si, sj++) = b.at(mi, mj);
        }
        ++si;
      }
      BigInt c = det(minor);
      if ((i + j) % 2) c = -c;
      adj[static_cast<size_t>(j) * r + i] = c;  // transposed cofactor
    }
  }
  return adj;
}

// Tries to express the whole matrix in the coordinates of the given column
// basis: returns basis_inverse * m if that is an integer matrix.
inline std::optional<IntMatrix> in_basis_coordinates(const IntMatrix& m, const std::vector<int>& basis) {
  const int r = m.rows(), n = m.cols();
  IntMatrix b = m.columns(basis);
  BigInt d = det(b);
  if (d == 0) return std::nullopt;
  std::vector<BigInt> adj = adjugate(b);
  IntMatrix out(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) {
      BigInt acc = 0;
      for (int k = 0; k < r; ++k) acc += adj[static_cast<size_t>(i) * r + k] * m.at(k, j);
      if (acc % d != 0) return std::nullopt;
      BigInt q = acc / d;
      if (q > std::numeric_limits<Int>::max() || q < std::numeric_limits<Int>::min())
        throw std::overflow_error("standardization entry out of range");
      out.at(i, j) = static_cast<Int>(q);
    }
  return out;
}

}  // namespace detail

// Standardizes a full-row-rank rational representation to [I_r | X] whose
// first column carries the requested label, without changing the represented
// matroid. Any such standard form arises by inverting a column basis through
// e, so the bases containing e are tried in order of |det| then column
// indices, and the first one whose inverse keeps the matrix integral wins.
// Dividing by a basis determinant cannot grow minor magnitudes, and every
// output is checked to be totally 2-modular; if no basis yields an integer
// standard form, or the check fails, the input was not 2-modular (or is one
// of the rare 2-modular pairs with no integer standard form at e).
inline Representation pivot_to_standard_form(const Representation& rep, const std::string& e) {
  rep.validate();
  if (!rep.field.is_q()) throw std::invalid_argument("pivot_to_standard_form: rational input required");
  const int r = rep.matrix.rows(), n = rep.matrix.cols();
  if (r < 1 || n < r) throw std::invalid_argument("pivot_to_standard_form: need 1 <= rows <= cols");
  if (rank(rep.matrix) != r) throw std::invalid_argument("pivot_to_standard_form: rows are dependent");
  int e_col = rep.column_of(e);
  bool e_zero = true;
  for (int i = 0; i < r; ++i) e_zero &= (rep.matrix.at(i, e_col) == 0);
  if (e_zero) throw std::invalid_argument("pivot_to_standard_form: column " + e + " is zero");

  // candidate bases through e: e first, companions ascending
  std::vector<std::pair<BigInt, std::vector<int>>> candidates;
  std::vector<int> companions = first_combination(r - 1);
  do {
    std::vector<int> basis{e_col};
    for (int c : companions) basis.push_back(c >= e_col ? c + 1 : c);
    BigInt d = det(rep.matrix.columns(basis));
    if (d < 0) d = -d;
    if (d != 0) candidates.emplace_back(d, basis);
  } while (next_combination(companions, n - 1));
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });

  for (const auto& [absdet, basis] : candidates) {
    auto coords = detail::in_basis_coordinates(rep.matrix, basis);
    if (!coords) continue;

    std::vector<int> order = basis;
    std::sort(order.begin() + 1, order.end());
    std::vector<bool> in_basis(n, false);
    for (int c : basis) in_basis[c] = true;
    for (int c = 0; c < n; ++c)
      if (!in_basis[c]) order.push_back(c);

    // rows of the coordinate matrix follow the basis tuple; realign them to
    // the sorted column order so the identity block comes out in place
    std::vector<int> row_of(n, -1);
    for (int i = 0; i < r; ++i) row_of[basis[i]] = i;
    Representation out;
    out.matrix = IntMatrix(r, n);
    for (int i = 0; i < r; ++i)
      for (int pos = 0; pos < n; ++pos) out.matrix.at(i, pos) = coords->at(row_of[order[i]], order[pos]);
    out.labels.reserve(n);
    for (int pos = 0; pos < n; ++pos) out.labels.push_back(rep.labels[order[pos]]);
    out.field = field_q();

    if (!is_totally_delta_modular(out.matrix, 2)) throw std::runtime_error("input not 2-modular");
    return out;
  }
  throw std::runtime_error("input not 2-modular");
}

// Dual of a standard-form representation [I_r | X]: the element labelled by
// column r+j of the input is represented by the j-th identity column of the
// output [I_{n-r} | -X^T], so every element keeps its own column. Applying
// the map twice restores the input.
inline Representation dual_representation(const Representation& rep) {
  rep.validate();
  const int r = rep.matrix.rows(), n = rep.matrix.cols();
  if (n < r) throw std::invalid_argument("dual_representation: need rows <= cols");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (rep.matrix.at(i, j) != (i == j ? 1 : 0))
        throw std::invalid_argument("dual_representation: input is not in standard form");

  const int s = n - r;
  IntMatrix out(s, n);
  for (int i = 0; i < s; ++i) {
    out.at(i, i) = 1;
    for (int j = 0; j < r; ++j) out.at(i, s + j) = -rep.matrix.at(j, r + i);
  }
  Representation dual;
  dual.matrix = std::move(out);
  dual.labels.reserve(n);
  for (int i = 0; i < s; ++i) dual.labels.push_back(rep.labels[r + i]);
  for (int j = 0; j < r; ++j) dual.labels.push_back(rep.labels[j]);
  dual.field = rep.field;
  return dual;
}

}  // namespace deltamod
