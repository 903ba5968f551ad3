#pragma once

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "deltamod/exact_linalg.hpp"
#include "deltamod/representation.hpp"

namespace deltamod {

using SubsetMask = std::uint64_t;

inline int popcount_mask(SubsetMask m) { return std::popcount(m); }

namespace detail {

// Rank of the selected columns over GF(p) by elimination with modular inverses.
inline int rank_gf(const IntMatrix& m, const std::vector<int>& cols, int p) {
  const int rows = m.rows(), n = static_cast<int>(cols.size());
  std::vector<std::vector<int>> a(rows, std::vector<int>(n));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < n; ++j) {
      Int v = m.at(i, cols[j]) % p;
      if (v < 0) v += p;
      a[i][j] = static_cast<int>(v);
    }
  auto inv = [p](int x) {
    int r = 1, b = x, e = p - 2;  // Fermat inverse, p prime
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (int col = 0; col < n && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    int f = inv(a[rank][col]);
    for (int j = col; j < n; ++j) a[rank][j] = a[rank][j] * f % p;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      int c = a[i][col];
      for (int j = col; j < n; ++j) a[i][j] = ((a[i][j] - c * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

class Matroid;

// Construction record kept alongside each matroid so instances can be
// serialized and rebuilt: a kind tag plus whichever of the fields apply.
struct Provenance {
  std::string kind;  // linear / uniform / delete / contract / dual / direct_sum / simplify / extension / custom
  std::shared_ptr<const Representation> rep;
  int uniform_rank = 0, uniform_size = 0;
  std::vector<std::shared_ptr<const Matroid>> bases;
  std::vector<std::string> op_elements;
  std::vector<std::vector<std::string>> cut_min_flats;
};

class Matroid {
 public:
  Matroid() = default;
  Matroid(std::vector<std::string> ground, std::function<int(SubsetMask)> oracle, Provenance prov = {})
      : ground_(std::move(ground)),
        oracle_(std::move(oracle)),
        prov_(std::make_shared<Provenance>(std::move(prov))),
        memo_(std::make_shared<std::unordered_map<SubsetMask, int>>()),
        memo_mutex_(std::make_shared<std::mutex>()) {
    if (ground_.size() > 64) throw std::invalid_argument("Matroid: ground set above 64 elements");
    for (size_t i = 0; i < ground_.size(); ++i)
      if (!index_.emplace(ground_[i], static_cast<int>(i)).second)
        throw std::invalid_argument("Matroid: duplicate element id " + ground_[i]);
  }

  int size() const { return static_cast<int>(ground_.size()); }
  const std::vector<std::string>& ground() const { return ground_; }
  const Provenance& provenance() const { return *prov_; }
  SubsetMask full_mask() const { return size() == 64 ? ~SubsetMask{0} : (SubsetMask{1} << size()) - 1; }

  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("Matroid: unknown element " + id);
    return it->second;
  }
  bool has_element(const std::string& id) const { return index_.count(id) != 0; }

  SubsetMask mask_of(const std::vector<std::string>& ids) const {
    SubsetMask m = 0;
    for (const auto& id : ids) m |= SubsetMask{1} << index_of(id);
    return m;
  }
  std::vector<std::string> labels_of(SubsetMask m) const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
      if (m & (SubsetMask{1} << i)) out.push_back(ground_[i]);
    return out;
  }

  // Memoized rank; rank_uncached for bulk scans that would bloat the table.
  int rank(SubsetMask s) const {
    {
      std::lock_guard<std::mutex> lock(*memo_mutex_);
      auto it = memo_->find(s);
      if (it != memo_->end()) return it->second;
    }
    int r = oracle_(s);
    std::lock_guard<std::mutex> lock(*memo_mutex_);
    memo_->emplace(s, r);
    return r;
  }
  int rank_uncached(SubsetMask s) const { return oracle_(s); }
  int rank() const { return rank(full_mask()); }
  int rank_of(const std::vector<std::string>& ids) const { return rank(mask_of(ids)); }

 private:
  std::vector<std::string> ground_;
  std::function<int(SubsetMask)> oracle_;
  std::map<std::string, int> index_;
  std::shared_ptr<Provenance> prov_;
  mutable std::shared_ptr<std::unordered_map<SubsetMask, int>> memo_;
  mutable std::shared_ptr<std::mutex> memo_mutex_;
};

inline Matroid linear_matroid(const Representation& rep) {
  rep.validate();
  auto shared = std::make_shared<const Representation>(rep);
  std::function<int(SubsetMask)> oracle;
  if (rep.field.is_q()) {
    oracle = [shared](SubsetMask s) {
      std::vector<int> cols;
      for (int j = 0; j < shared->matrix.cols(); ++j)
        if (s & (SubsetMask{1} << j)) cols.push_back(j);
      return rank(shared->matrix.columns(cols));
    };
  } else {
    int p = rep.field.characteristic;
    oracle = [shared, p](SubsetMask s) {
      std::vector<int> cols;
      for (int j = 0; j < shared->matrix.cols(); ++j)
        if (s & (SubsetMask{1} << j)) cols.push_back(j);
      return detail::rank_gf(shared->matrix, cols, p);
    };
  }
  Provenance prov;
  prov.kind = "linear";
  prov.rep = shared;
  return Matroid(rep.labels, std::move(oracle), std::move(prov));
}

inline Matroid uniform_matroid(int m, int n, const std::string& prefix = "u") {
  if (m < 0 || n < 0 || m > n) throw std::invalid_argument("uniform_matroid: need 0 <= m <= n");
  std::vector<std::string> ground;
  for (int i = 0; i < n; ++i) ground.push_back(prefix + std::to_string(i + 1));
  Provenance prov;
  prov.kind = "uniform";
  prov.uniform_rank = m;
  prov.uniform_size = n;
  return Matroid(ground, [m](SubsetMask s) { return std::min(m, popcount_mask(s)); }, std::move(prov));
}

inline Matroid delete_elements(const Matroid& m, const std::vector<std::string>& gone) {
  SubsetMask gone_mask = m.mask_of(gone);
  std::vector<std::string> ground;
  std::vector<int> lift;  // new index -> old index
  for (int i = 0; i < m.size(); ++i)
    if (!(gone_mask & (SubsetMask{1} << i))) {
      ground.push_back(m.ground()[i]);
      lift.push_back(i);
    }
  auto base = std::make_shared<const Matroid>(m);
  Provenance prov;
  prov.kind = "delete";
  prov.bases = {base};
  prov.op_elements = gone;
  return Matroid(
      ground,
      [base, lift](SubsetMask s) {
        SubsetMask up = 0;
        for (size_t i = 0; i < lift.size(); ++i)
          if (s & (SubsetMask{1} << i)) up |= SubsetMask{1} << lift[i];
        return base->rank(up);
      },
      std::move(prov));
}

inline Matroid contract_elements(const Matroid& m, const std::vector<std::string>& gone) {
  SubsetMask c = m.mask_of(gone);
  std::vector<std::string> ground;
  std::vector<int> lift;
  for (int i = 0; i < m.size(); ++i)
    if (!(c & (SubsetMask{1} << i))) {
      ground.push_back(m.ground()[i]);
      lift.push_back(i);
    }
  auto base = std::make_shared<const Matroid>(m);
  int rc = m.rank(c);
  Provenance prov;
  prov.kind = "contract";
  prov.bases = {base};
  prov.op_elements = gone;
  return Matroid(
      ground,
      [base, lift, c, rc](SubsetMask s) {
        SubsetMask up = c;
        for (size_t i = 0; i < lift.size(); ++i)
          if (s & (SubsetMask{1} << i)) up |= SubsetMask{1} << lift[i];
        return base->rank(up) - rc;
      },
      std::move(prov));
}

inline Matroid restrict_to(const Matroid& m, const std::vector<std::string>& keep) {
  SubsetMask keep_mask = m.mask_of(keep);
  std::vector<std::string> gone;
  for (int i = 0; i < m.size(); ++i)
    if (!(keep_mask & (SubsetMask{1} << i))) gone.push_back(m.ground()[i]);
  return delete_elements(m, gone);
}

inline Matroid dual(const Matroid& m) {
  auto base = std::make_shared<const Matroid>(m);
  int full_rank = m.rank();
  SubsetMask full = m.full_mask();
  Provenance prov;
  prov.kind = "dual";
  prov.bases = {base};
  return Matroid(
      m.ground(),
      [base, full_rank, full](SubsetMask s) {
        return popcount_mask(s) - full_rank + base->rank(full & ~s);
      },
      std::move(prov));
}

inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  std::vector<std::string> ground = a.ground();
  for (const auto& id : b.ground()) {
    if (a.has_element(id)) throw std::invalid_argument("direct_sum: grounds share element " + id);
    ground.push_back(id);
  }
  auto pa = std::make_shared<const Matroid>(a);
  auto pb = std::make_shared<const Matroid>(b);
  int na = a.size();
  Provenance prov;
  prov.kind = "direct_sum";
  prov.bases = {pa, pb};
  return Matroid(
      ground,
      [pa, pb, na](SubsetMask s) {
        SubsetMask low = s & ((SubsetMask{1} << na) - 1);
        return pa->rank(low) + pb->rank(s >> na);
      },
      std::move(prov));
}

inline Matroid relabel(const Matroid& m, const std::vector<std::string>& new_ground) {
  if (static_cast<int>(new_ground.size()) != m.size())
    throw std::invalid_argument("relabel: ground size mismatch");
  auto base = std::make_shared<const Matroid>(m);
  Provenance prov;
  prov.kind = "relabel";
  prov.bases = {base};
  prov.op_elements = new_ground;
  return Matroid(new_ground, [base](SubsetMask s) { return base->rank(s); }, std::move(prov));
}

inline SubsetMask closure(const Matroid& m, SubsetMask s) {
  int r = m.rank(s);
  SubsetMask out = s;
  for (int i = 0; i < m.size(); ++i) {
    SubsetMask bit = SubsetMask{1} << i;
    if ((out & bit) == 0 && m.rank(s | bit) == r) out |= bit;
  }
  return out;
}

// All flats of rank exactly k, found level by level: the rank-(j+1) flats are
// the closures cl(F + x) over rank-j flats F and x outside F.
inline std::vector<SubsetMask> flats_of_rank(const Matroid& m, int k) {
  if (k < 0 || k > m.rank()) throw std::invalid_argument("flats_of_rank: rank out of range");
  std::vector<SubsetMask> level{closure(m, 0)};
  for (int j = 0; j < k; ++j) {
    std::unordered_map<SubsetMask, bool> seen;
    std::vector<SubsetMask> next;
    for (SubsetMask f : level) {
      for (int i = 0; i < m.size(); ++i) {
        SubsetMask bit = SubsetMask{1} << i;
        if (f & bit) continue;
        SubsetMask g = closure(m, f | bit);
        if (seen.emplace(g, true).second) next.push_back(g);
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

// Every flat, grouped by rank level then ordered by mask within the level.
inline std::vector<SubsetMask> all_flats(const Matroid& m) {
  std::vector<SubsetMask> out;
  std::vector<SubsetMask> level{closure(m, 0)};
  int total = m.rank();
  for (int j = 0;; ++j) {
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
    if (j == total) break;
    std::unordered_map<SubsetMask, bool> seen;
    std::vector<SubsetMask> next;
    for (SubsetMask f : level) {
      for (int i = 0; i < m.size(); ++i) {
        SubsetMask bit = SubsetMask{1} << i;
        if (f & bit) continue;
        SubsetMask g = closure(m, f | bit);
        if (seen.emplace(g, true).second) next.push_back(g);
      }
    }
    level = std::move(next);
  }
  return out;
}

inline int epsilon(const Matroid& m) {
  if (m.rank() == 0) return 0;
  return static_cast<int>(flats_of_rank(m, 1).size());
}

inline int nullity(const Matroid& m, SubsetMask s) { return popcount_mask(s) - m.rank(s); }

inline bool is_independent(const Matroid& m, SubsetMask s) { return m.rank(s) == popcount_mask(s); }

// Minimal dependent subsets of s with at most max_size elements, in
// (size, mask) order.
inline std::vector<SubsetMask> circuits_within(const Matroid& m, SubsetMask s, int max_size) {
  std::vector<SubsetMask> circuits;
  std::vector<int> members;
  for (int i = 0; i < m.size(); ++i)
    if (s & (SubsetMask{1} << i)) members.push_back(i);
  const int n = static_cast<int>(members.size());
  for (int k = 1; k <= std::min(max_size, n); ++k) {
    std::vector<SubsetMask> found_this_size;
    std::vector<int> idx = first_combination(k);
    do {
      SubsetMask c = 0;
      for (int i : idx) c |= SubsetMask{1} << members[i];
      bool contains_smaller = false;
      for (SubsetMask known : circuits)
        if ((known & c) == known) {
          contains_smaller = true;
          break;
        }
      if (contains_smaller) continue;
      if (m.rank(c) < k) found_this_size.push_back(c);
    } while (next_combination(idx, n));
    std::sort(found_this_size.begin(), found_this_size.end());
    circuits.insert(circuits.end(), found_this_size.begin(), found_this_size.end());
  }
  return circuits;
}

inline int local_connectivity(const Matroid& m, SubsetMask a, SubsetMask b) {
  return m.rank(a) + m.rank(b) - m.rank(a | b);
}

// Partition (X, ~X) witnessing a vertical j-separation for some j < k:
// r(X) + r(Y) - r(M) < j <= min(r(X), r(Y)). Exhaustive over bipartitions.
inline std::optional<SubsetMask> vertical_separation_below(const Matroid& m, int k, int cap = 18) {
  if (k < 1) throw std::invalid_argument("vertical_separation_below: k < 1");
  if (m.size() > cap) throw std::invalid_argument("vertical_separation_below: ground set above cap");
  const int n = m.size();
  if (n == 0) return std::nullopt;
  int total = m.rank();
  SubsetMask full = m.full_mask();
  // fix the last element on the Y side so each partition appears once
  for (SubsetMask x = 1; x < (SubsetMask{1} << (n - 1)); ++x) {
    SubsetMask y = full & ~x;
    int lambda = m.rank(x) + m.rank(y) - total;
    int lo = std::min(m.rank(x), m.rank(y));
    if (lambda + 1 <= std::min(lo, k - 1)) return x;
  }
  return std::nullopt;
}

inline bool is_vertically_k_connected(const Matroid& m, int k, int cap = 18) {
  return !vertical_separation_below(m, k, cap).has_value();
}

struct SimplifyResult {
  Matroid matroid;
  std::map<std::string, std::string> representative_of;  // every non-loop -> its class representative
};

// Removes loops and keeps the first element (in ground order) of each
// parallel class.
inline SimplifyResult simplify(const Matroid& m) {
  std::vector<std::string> keep;
  std::map<std::string, std::string> rep_of;
  std::vector<int> reps;
  for (int i = 0; i < m.size(); ++i) {
    SubsetMask bit = SubsetMask{1} << i;
    if (m.rank(bit) == 0) continue;  // loop
    bool matched = false;
    for (int r : reps) {
      if (m.rank(bit | (SubsetMask{1} << r)) == 1) {
        rep_of[m.ground()[i]] = m.ground()[r];
        matched = true;
        break;
      }
    }
    if (!matched) {
      reps.push_back(i);
      keep.push_back(m.ground()[i]);
      rep_of[m.ground()[i]] = m.ground()[i];
    }
  }
  Matroid simple = restrict_to(m, keep);
  Provenance prov = simple.provenance();
  prov.kind = "simplify";
  return SimplifyResult{Matroid(simple.ground(), [simple](SubsetMask s) { return simple.rank(s); }, std::move(prov)),
                        std::move(rep_of)};
}

inline std::vector<std::vector<std::string>> parallel_classes(const Matroid& m) {
  SimplifyResult s = simplify(m);
  std::map<std::string, std::vector<std::string>> classes;
  for (const auto& [elem, rep] : s.representative_of) classes[rep].push_back(elem);
  std::vector<std::vector<std::string>> out;
  for (const auto& id : s.matroid.ground()) {
    auto cls = classes[id];
    std::sort(cls.begin(), cls.end(), [&m](const std::string& a, const std::string& b) {
      return m.index_of(a) < m.index_of(b);
    });
    out.push_back(cls);
  }
  return out;
}

inline bool is_simple(const Matroid& m) {
  for (int i = 0; i < m.size(); ++i) {
    if (m.rank(SubsetMask{1} << i) == 0) return false;
    for (int j = i + 1; j < m.size(); ++j)
      if (m.rank((SubsetMask{1} << i) | (SubsetMask{1} << j)) == 1) return false;
  }
  return true;
}

// Exact matroid equality on a shared ground set: same label set and same rank
// on every subset of size at most max(r_1, r_2). Independence is decided
// within that range, and a matroid is determined by its independent sets, so
// agreement there forces agreement everywhere.
inline bool same_rank_function(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size()) return false;
  for (const auto& id : a.ground())
    if (!b.has_element(id)) return false;
  const int n = a.size();
  int rmax = std::max(a.rank(), b.rank());
  std::vector<int> b_index(n);
  for (int i = 0; i < n; ++i) b_index[i] = b.index_of(a.ground()[i]);
  for (int k = 0; k <= std::min(rmax, n); ++k) {
    std::vector<int> idx = first_combination(k);
    if (k == 0) {
      if (a.rank(0) != b.rank(0)) return false;
      continue;
    }
    do {
      SubsetMask sa = 0, sb = 0;
      for (int i : idx) {
        sa |= SubsetMask{1} << i;
        sb |= SubsetMask{1} << b_index[i];
      }
      if (a.rank(sa) != b.rank(sb)) return false;
    } while (next_combination(idx, n));
  }
  return true;
}

}  // namespace deltamod
