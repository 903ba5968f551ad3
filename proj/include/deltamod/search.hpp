#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>

#include "deltamod/exact_linalg.hpp"
#include "deltamod/int_matrix.hpp"
#include "deltamod/matroid.hpp"
#include "deltamod/representation.hpp"

namespace deltamod {
namespace detail {

// Uniform draw via raw modulo so results are identical across platforms.
inline Int rng_draw(std::mt19937_64& rng, Int lo, Int hi) {
  return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Checks |det| <= delta for every square submatrix of m[*, 0..ncols) that
// uses column `must`. Used for incremental column-by-column acceptance: when
// the first ncols-1 columns are already totally delta-modular, this restores
// the full property.
inline bool minors_with_column_bounded(const IntMatrix& m, int ncols, int must, Int delta) {
  const int r = m.rows();
  for (int k = 1; k <= std::min(r, ncols); ++k) {
    std::vector<int> cols = first_combination(k - 1);
    do {
      // k-1 companion columns drawn from all columns except `must`
      std::vector<int> cset;
      for (int c : cols) cset.push_back(c >= must ? c + 1 : c);
      cset.push_back(must);
      std::vector<int> rows = first_combination(k);
      do {
        IntMatrix sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rows[i], cset[j]);
        BigInt d = det(sub);
        if (d > delta || d < -delta) return false;
      } while (next_combination(rows, r));
    } while (next_combination(cols, ncols - 1));
  }
  return true;
}

}  // namespace detail

// Deterministic generator of 2-modular test matrices: rejection-sample X with
// entries in {-2..2} until [I_r | X] is totally 2-modular, then scramble with
// unimodular row operations and a column permutation. Those preserve the
// magnitudes of rank-sized minors, so the result is 2-modular (though usually
// not in standard form and not totally 2-modular).
inline IntMatrix random_2modular_matrix(int r, int extra_cols, std::uint64_t seed) {
  if (r < 1 || r > 8) throw std::invalid_argument("random_2modular_matrix: need 1 <= r <= 8");
  if (extra_cols < 0) throw std::invalid_argument("random_2modular_matrix: extra_cols < 0");
  std::mt19937_64 rng(seed);
  const int n = r + extra_cols;
  IntMatrix m(r, n);
  for (int i = 0; i < r; ++i) m.at(i, i) = 1;
  for (int c = r; c < n; ++c) {
    int attempts = 0;
    for (;;) {
      if (++attempts > 50000) throw std::runtime_error("random_2modular_matrix: sampling budget exhausted");
      for (int i = 0; i < r; ++i) m.at(i, c) = detail::rng_draw(rng, -2, 2);
      if (detail::minors_with_column_bounded(m, c + 1, c, 2)) break;
    }
  }

  const int ops = 2 * r + 3;
  for (int t = 0; t < ops; ++t) {
    switch (r >= 2 ? rng() % 3 : 2) {
      case 0: {  // shear: add +-1 times one row to another
        int i = static_cast<int>(rng() % r);
        int j = static_cast<int>(rng() % r);
        while (j == i) j = static_cast<int>(rng() % r);
        Int c = (rng() % 2) ? 1 : -1;
        for (int col = 0; col < n; ++col) m.at(i, col) += c * m.at(j, col);
        break;
      }
      case 1: {  // swap two rows
        int i = static_cast<int>(rng() % r);
        int j = static_cast<int>(rng() % r);
        while (j == i) j = static_cast<int>(rng() % r);
        for (int col = 0; col < n; ++col) std::swap(m.at(i, col), m.at(j, col));
        break;
      }
      default: {  // negate a row
        int i = static_cast<int>(rng() % r);
        for (int col = 0; col < n; ++col) m.at(i, col) = -m.at(i, col);
        break;
      }
    }
  }
  for (int c = n - 1; c > 0; --c) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(c + 1));
    if (j != c)
      for (int i = 0; i < r; ++i) std::swap(m.at(i, c), m.at(i, j));
  }
  return m;
}

namespace detail {

// Candidate columns for one non-basis element: zero off the given support
// rows, entries 1 or 2 at the first support row and +-1, +-2 below, kept
// only when primitive.  Value order (1, -1, 2, -2) per row makes the first
// witness of the enclosing search reproducible.
inline std::vector<std::vector<Int>> support_columns(int r, const std::vector<int>& support) {
  std::vector<std::vector<Int>> out;
  if (support.empty()) {
    out.emplace_back(r, 0);
    return out;
  }
  static const Int values[4] = {1, -1, 2, -2};
  std::vector<Int> col(static_cast<size_t>(r), 0);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == support.size()) {
      Int g = 0;
      for (int i : support) g = std::gcd(g, col[i] < 0 ? -col[i] : col[i]);
      if (g == 1) out.push_back(col);
      return;
    }
    for (Int v : values) {
      if (pos == 0 && v < 0) continue;
      col[support[pos]] = v;
      rec(pos + 1);
    }
    col[support[pos]] = 0;
  };
  rec(0);
  return out;
}

}  // namespace detail

// Exhaustive search for a totally 2-modular integer matrix whose column
// matroid over the rationals equals m.  Any such representation can be
// pivoted so some basis of m carries an identity block; the remaining
// entries are 1x1 minors so lie in {-2,...,2}, each non-basis column is
// supported exactly on the basis part of its fundamental circuit, and
// rescaling a column to a primitive vector with positive leading entry
// never grows a minor and keeps the matroid.  So trying every basis with
// every such column assignment decides membership.  Partial assignments are
// pruned by basis-exchange agreement (a 2x2 coordinate minor on rows {i,j}
// of two non-basis columns must be nonzero exactly when swapping b_i, b_j
// for those two elements keeps a basis of m) and by bounded minors through
// the newest column, which by induction keeps the whole matrix totally
// 2-modular.  Returns the first witness in basis, column, value order.
inline std::optional<Representation> find_totally_2modular_representation(const Matroid& m) {
  const int n = m.size();
  const int r = m.rank();
  if (n > 12 || r > 6)
    throw std::invalid_argument("find_totally_2modular_representation: needs size <= 12 and rank <= 6");
  if (r == 0) return make_representation(IntMatrix(1, n), m.ground(), field_q());

  auto basis_idx = first_combination(r);
  do {
    SubsetMask bmask = 0;
    for (int i : basis_idx) bmask |= SubsetMask{1} << i;
    if (m.rank(bmask) != r) continue;

    std::vector<int> nonbasis;
    for (int i = 0; i < n; ++i)
      if (!(bmask >> i & 1)) nonbasis.push_back(i);
    const int t = static_cast<int>(nonbasis.size());

    std::vector<std::vector<std::vector<Int>>> cand(t);
    for (int k = 0; k < t; ++k) {
      std::vector<int> support;
      for (int p = 0; p < r; ++p) {
        SubsetMask swapped = (bmask & ~(SubsetMask{1} << basis_idx[p])) | (SubsetMask{1} << nonbasis[k]);
        if (m.rank(swapped) == r) support.push_back(p);
      }
      cand[k] = detail::support_columns(r, support);
    }

    IntMatrix work(r, r + t);
    for (int p = 0; p < r; ++p) work.at(p, p) = 1;

    std::optional<Representation> found;
    std::function<bool(int)> place = [&](int k) -> bool {
      if (k == t) {
        IntMatrix rep(r, n);
        for (int p = 0; p < r; ++p) rep.at(p, basis_idx[p]) = 1;
        for (int q = 0; q < t; ++q)
          for (int p = 0; p < r; ++p) rep.at(p, nonbasis[q]) = work.at(p, r + q);
        auto out = make_representation(rep, m.ground(), field_q());
        if (!same_rank_function(m, linear_matroid(out))) return false;
        found = std::move(out);
        return true;
      }
      for (const auto& col : cand[k]) {
        work.set_column(r + k, col);
        bool ok = true;
        for (int s = 0; s < k && ok; ++s) {
          SubsetMask pair_mask = (SubsetMask{1} << nonbasis[s]) | (SubsetMask{1} << nonbasis[k]);
          for (int i = 0; i < r && ok; ++i)
            for (int j = i + 1; j < r && ok; ++j) {
              Int d = work.at(i, r + s) * col[j] - work.at(j, r + s) * col[i];
              SubsetMask sub =
                  (bmask & ~(SubsetMask{1} << basis_idx[i]) & ~(SubsetMask{1} << basis_idx[j])) | pair_mask;
              if ((d != 0) != (m.rank(sub) == r)) ok = false;
            }
        }
        if (!ok) continue;
        if (!detail::minors_with_column_bounded(work, r + k + 1, r + k, 2)) continue;
        if (place(k + 1)) return true;
      }
      work.set_column(r + k, std::vector<Int>(static_cast<size_t>(r), 0));
      return false;
    };
    if (place(0)) return found;
  } while (next_combination(basis_idx, n));
  return std::nullopt;
}

struct ExcludedMinorReport {
  bool nonmember = false;
  bool all_deletions_member = false;
  bool all_contractions_member = false;
  bool excluded_minor = false;
  std::map<std::string, Representation> deletion_witness;     // element -> representation of m minus that element
  std::map<std::string, Representation> contraction_witness;  // element -> representation of m contracted by it
};

namespace detail {

// Lifts a representation of si(N) back to all of N: loops become zero
// columns, parallel elements duplicate their class representative.  Zero
// and duplicated columns add no new nonzero minors, so total 2-modularity
// carries over.
inline std::optional<Representation> minor_member_witness(const Matroid& minor) {
  auto si = simplify(minor);
  auto base = find_totally_2modular_representation(si.matroid);
  if (!base) return std::nullopt;
  const int rows = base->matrix.rows();
  IntMatrix full(rows, minor.size());
  const auto& ground = minor.ground();
  for (int j = 0; j < minor.size(); ++j) {
    auto it = si.representative_of.find(ground[j]);
    if (it == si.representative_of.end()) continue;  // loop
    int src = base->column_of(it->second);
    for (int i = 0; i < rows; ++i) full.at(i, j) = base->matrix.at(i, src);
  }
  auto rep = make_representation(full, ground, field_q());
  if (!same_rank_function(minor, linear_matroid(rep)))
    throw std::runtime_error("minor_member_witness: reattached representation mismatch");
  return rep;
}

}  // namespace detail

// Certifies that m is an excluded minor for the class of matroids with a
// totally 2-modular representation: m itself has none, while every
// single-element deletion and contraction does, each with a recorded
// witness representation.
inline ExcludedMinorReport verify_excluded_minor_2modular(const Matroid& m) {
  ExcludedMinorReport report;
  report.nonmember = !find_totally_2modular_representation(m).has_value();
  report.all_deletions_member = true;
  report.all_contractions_member = true;
  for (const auto& e : m.ground()) {
    if (auto w = detail::minor_member_witness(delete_elements(m, {e})))
      report.deletion_witness.emplace(e, std::move(*w));
    else
      report.all_deletions_member = false;
    if (auto w = detail::minor_member_witness(contract_elements(m, {e})))
      report.contraction_witness.emplace(e, std::move(*w));
    else
      report.all_contractions_member = false;
  }
  report.excluded_minor = report.nonmember && report.all_deletions_member && report.all_contractions_member;
  return report;
}

struct Rank2Result {
  int n_max = 0;
  IntMatrix witness;  // 2 x n_max, columns in candidate order
};

namespace detail {

// Primitive plane directions: (1, 0) plus every gcd(|a|, b) = 1 with
// 1 <= b <= delta and |a| <= a_bound, listed b-major then a ascending so
// the clique search and its witness are reproducible.
inline std::vector<std::pair<Int, Int>> rank2_candidates(Int delta, Int a_bound) {
  std::vector<std::pair<Int, Int>> out;
  out.push_back({1, 0});
  for (Int b = 1; b <= delta; ++b)
    for (Int a = -a_bound; a <= a_bound; ++a)
      if (std::gcd(a < 0 ? -a : a, b) == 1) out.push_back({a, b});
  return out;
}

inline void rank2_extend(const std::vector<std::vector<char>>& adj, std::vector<int>& cur,
                         const std::vector<int>& cand, std::vector<int>& best) {
  if (cur.size() + cand.size() <= best.size()) return;
  if (cand.empty()) {
    best = cur;
    return;
  }
  for (size_t i = 0; i < cand.size(); ++i) {
    if (cur.size() + (cand.size() - i) <= best.size()) return;
    int v = cand[i];
    std::vector<int> next;
    for (size_t j = i + 1; j < cand.size(); ++j)
      if (adj[v][cand[j]]) next.push_back(cand[j]);
    cur.push_back(v);
    rank2_extend(adj, cur, next, best);
    cur.pop_back();
  }
}

inline Rank2Result rank2_clique_search(Int delta, Int a_bound) {
  auto cand = rank2_candidates(delta, a_bound);
  const int n = static_cast<int>(cand.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Int d = cand[i].first * cand[j].second - cand[j].first * cand[i].second;
      adj[i][j] = adj[j][i] = static_cast<char>((d < 0 ? -d : d) <= delta);
    }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> cur, best;
  rank2_extend(adj, cur, all, best);
  IntMatrix w(2, static_cast<int>(best.size()));
  for (size_t j = 0; j < best.size(); ++j) {
    w.at(0, static_cast<int>(j)) = cand[best[j]].first;
    w.at(1, static_cast<int>(j)) = cand[best[j]].second;
  }
  return {static_cast<int>(best.size()), w};
}

}  // namespace detail

// Largest family of pairwise nonparallel integer plane vectors whose
// pairwise determinants all stay within delta, with a maximum witness
// family.  Columns of a rank-2 totally delta-modular matrix with distinct
// simple points are exactly such a family once each vector is scaled
// primitive with b > 0 or (a, b) = (1, 0): a unimodular map sends one
// member to (1, 0), which pins every |b| to at most delta.  The |a| window
// is a truncation; rank2_max_size_enlarged doubles it as a cross-check.
inline Rank2Result rank2_max_size(Int delta) {
  if (delta < 1 || delta > 8) throw std::invalid_argument("rank2_max_size: delta must be in 1..8");
  return detail::rank2_clique_search(delta, delta);
}

inline Rank2Result rank2_max_size_enlarged(Int delta) {
  if (delta < 1 || delta > 5) throw std::invalid_argument("rank2_max_size_enlarged: delta must be in 1..5");
  return detail::rank2_clique_search(delta, 2 * delta);
}

}  // namespace deltamod
