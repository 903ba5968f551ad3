#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "deltamod/matroid.hpp"

namespace deltamod {

namespace detail {

struct ElementProfile {
  bool loop = false;
  int parallel_size = 0;
  std::vector<int> line_sizes;  // element counts of the rank-2 flats through it, sorted

  bool operator==(const ElementProfile& o) const {
    return loop == o.loop && parallel_size == o.parallel_size && line_sizes == o.line_sizes;
  }
};

inline std::vector<ElementProfile> element_profiles(const Matroid& m) {
  std::vector<ElementProfile> out(m.size());
  for (int i = 0; i < m.size(); ++i) {
    SubsetMask bit = SubsetMask{1} << i;
    out[i].loop = m.rank(bit) == 0;
    if (out[i].loop) continue;
    SubsetMask cls = closure(m, bit);
    int sz = 0;
    for (int j = 0; j < m.size(); ++j)
      if ((cls & (SubsetMask{1} << j)) && m.rank(SubsetMask{1} << j) == 1) ++sz;
    out[i].parallel_size = sz;
  }
  if (m.rank() >= 2) {
    for (SubsetMask line : flats_of_rank(m, 2))
      for (int i = 0; i < m.size(); ++i)
        if (line & (SubsetMask{1} << i)) out[i].line_sizes.push_back(popcount_mask(line));
  }
  for (auto& p : out) std::sort(p.line_sizes.begin(), p.line_sizes.end());
  return out;
}

}  // namespace detail

// Exact isomorphism test by backtracking over rank functions. Elements of a
// are assigned in ground order and candidates from b are tried in ground
// order, so the first bijection found is the lexicographically least one.
// Every subset of size at most rank+1 is rank-checked along the way, which
// pins the whole rank function, so a returned bijection is a full witness.
inline std::optional<std::map<std::string, std::string>> are_isomorphic(const Matroid& a,
                                                                        const Matroid& b,
                                                                        int cap = 14) {
  if (a.size() > cap || b.size() > cap)
    throw std::invalid_argument("are_isomorphic: size cap exceeded");
  if (a.size() != b.size() || a.rank() != b.rank()) return std::nullopt;
  const int n = a.size(), r = a.rank();

  auto pa = detail::element_profiles(a), pb = detail::element_profiles(b);
  {
    auto key = [](const detail::ElementProfile& p) {
      return std::tuple<bool, int, std::vector<int>>{p.loop, p.parallel_size, p.line_sizes};
    };
    std::multiset<std::tuple<bool, int, std::vector<int>>> ka, kb;
    for (const auto& p : pa) ka.insert(key(p));
    for (const auto& p : pb) kb.insert(key(p));
    if (ka != kb) return std::nullopt;
  }

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  const int check_size = std::min(n, r + 1);

  // all checked subsets contain the newest element k, so each subset of size
  // <= r+1 is verified exactly once over a complete assignment
  auto consistent = [&](int k) {
    std::vector<int> prefix(k);
    for (int i = 0; i < k; ++i) prefix[i] = i;
    for (int t = 0; t < check_size; ++t) {
      if (t > k) break;
      std::vector<int> pick = first_combination(t);
      do {
        SubsetMask sa = SubsetMask{1} << k;
        SubsetMask sb = SubsetMask{1} << image[k];
        for (int i : pick) {
          sa |= SubsetMask{1} << i;
          sb |= SubsetMask{1} << image[i];
        }
        if (a.rank(sa) != b.rank(sb)) return false;
      } while (next_combination(pick, k));
    }
    return true;
  };

  std::function<bool(int)> dfs = [&](int k) {
    if (k == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || !(pa[k] == pb[j])) continue;
      image[k] = j;
      used[j] = 1;
      if (consistent(k) && dfs(k + 1)) return true;
      used[j] = 0;
      image[k] = -1;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;

  std::map<std::string, std::string> out;
  for (int i = 0; i < n; ++i) out[a.ground()[i]] = b.ground()[image[i]];
  return out;
}

inline bool isomorphic(const Matroid& a, const Matroid& b, int cap = 14) {
  return are_isomorphic(a, b, cap).has_value();
}

}  // namespace deltamod
