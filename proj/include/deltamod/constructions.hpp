#pragma once

#include "deltamod/int_matrix.hpp"

namespace deltamod {

// Columns e_i - e_j for 1 <= i < j <= r, lexicographic by (i, j).
inline IntMatrix build_d(int r) {
  if (r < 2) throw std::invalid_argument("build_d: r must be >= 2");
  IntMatrix m(r, r * (r - 1) / 2);
  int col = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      m.at(i, col) = 1;
      m.at(j, col) = -1;
      ++col;
    }
  return m;
}

// [I_r | D_r | B] with B columns e_1 + e_{j+1}, j = 1..r-1.
// Total column count: binomial(r+2, 2) - 2.
inline IntMatrix build_a(int r) {
  if (r < 2) throw std::invalid_argument("build_a: r must be >= 2");
  IntMatrix b(r, r - 1);
  for (int j = 0; j < r - 1; ++j) {
    b.at(0, j) = 1;
    b.at(j + 1, j) = 1;
  }
  return hstack(hstack(IntMatrix::identity(r), build_d(r)), b);
}

// [I_r | D_r | B' | u] with B' columns e_1 + e_2 - e_{j+2}, j = 1..r-2,
// and u = e_1 + e_2. Total column count: binomial(r+2, 2) - 2.
inline IntMatrix build_aprime(int r) {
  if (r < 2) throw std::invalid_argument("build_aprime: r must be >= 2");
  IntMatrix bp(r, r - 1);
  for (int j = 0; j < r - 2; ++j) {
    bp.at(0, j) = 1;
    bp.at(1, j) = 1;
    bp.at(j + 2, j) = -1;
  }
  bp.at(0, r - 2) = 1;
  bp.at(1, r - 2) = 1;
  return hstack(hstack(IntMatrix::identity(r), build_d(r)), bp);
}

// [I_r | D_r | v] with v = e_1 - e_2 - e_3; defined for r >= 3.
inline IntMatrix build_h(int r) {
  if (r < 3) throw std::invalid_argument("build_h: r must be >= 3");
  IntMatrix v(r, 1);
  v.at(0, 0) = 1;
  v.at(1, 0) = -1;
  v.at(2, 0) = -1;
  return hstack(hstack(IntMatrix::identity(r), build_d(r)), v);
}

}  // namespace deltamod
