#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <utility>

#include "deltamod/matroid.hpp"

namespace deltamod {

// A modular cut of a matroid, stored as the antichain of its minimal flats
// together with the materialized family of all member flats.
struct ModularCut {
  Matroid base;
  std::vector<SubsetMask> min_flats;  // inclusion-minimal members, ascending mask order
  std::vector<SubsetMask> members;    // every member flat, ascending mask order

  bool member(SubsetMask flat) const {
    for (SubsetMask m : min_flats)
      if ((m & ~flat) == 0) return true;
    return false;
  }
  bool empty() const { return min_flats.empty(); }
  // A cut containing the least flat contains every flat.
  bool improper() const { return member(closure(base, 0)); }
};

namespace detail {

inline int pick_threads(std::size_t work_items, std::size_t threshold) {
  if (work_items <= threshold) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 4;
}

inline SubsetMask closure_uncached(const Matroid& m, SubsetMask s, int rank_s) {
  SubsetMask out = s;
  for (int i = 0; i < m.size(); ++i) {
    SubsetMask bit = SubsetMask{1} << i;
    if (!(out & bit) && m.rank_uncached(s | bit) == rank_s) out |= bit;
  }
  return out;
}

// All flats of m containing the flat f0: upward cover-by-cover BFS carried out
// in m's own index space with uncached ranks, so bulk scans on large ground
// sets do not bloat the shared memo table.
inline std::vector<SubsetMask> filter_above(const Matroid& m, SubsetMask f0, int threads = 1) {
  std::vector<SubsetMask> out;
  std::vector<SubsetMask> level{f0};
  const int total = m.rank();
  for (int r = m.rank_uncached(f0);; ++r) {
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
    if (r == total) break;
    std::set<SubsetMask> seen;
    std::mutex seen_mutex;
    int nthreads = std::min<int>(threads, static_cast<int>(level.size()) > 0 ? static_cast<int>(level.size()) : 1);
    auto work = [&](int t) {
      std::vector<SubsetMask> local;
      for (std::size_t k = t; k < level.size(); k += nthreads) {
        SubsetMask f = level[k];
        for (int i = 0; i < m.size(); ++i) {
          SubsetMask bit = SubsetMask{1} << i;
          if (f & bit) continue;
          local.push_back(closure_uncached(m, f | bit, r + 1));
        }
      }
      std::lock_guard<std::mutex> lock(seen_mutex);
      for (SubsetMask g : local) seen.insert(g);
    };
    if (nthreads <= 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    level.assign(seen.begin(), seen.end());
  }
  return out;
}

}  // namespace detail

// Build a cut from generating flats: the members are exactly the flats
// containing at least one generator. Every generator must itself be closed.
// This realizes an arbitrary union of principal filters; whether the result
// is closed under modular-pair intersections is checked separately.
inline ModularCut modular_cut_from_flats(const Matroid& base, const std::vector<SubsetMask>& seeds) {
  std::vector<SubsetMask> uniq = seeds;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (SubsetMask s : uniq)
    if (closure(base, s) != s) throw std::invalid_argument("modular cut: generator is not a flat");
  std::vector<SubsetMask> mins;
  for (SubsetMask s : uniq) {
    bool dominated = false;
    for (SubsetMask t : uniq)
      if (t != s && (t & ~s) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) mins.push_back(s);
  }
  int threads = detail::pick_threads(static_cast<std::size_t>(base.size()) * base.size(), 600);
  std::set<SubsetMask> fam;
  for (SubsetMask s : mins)
    for (SubsetMask f : detail::filter_above(base, s, threads)) fam.insert(f);
  ModularCut cut;
  cut.base = base;
  cut.min_flats = std::move(mins);
  cut.members.assign(fam.begin(), fam.end());
  return cut;
}

inline ModularCut modular_cut_from_flats(const Matroid& base, const std::vector<std::vector<std::string>>& seeds) {
  std::vector<SubsetMask> masks;
  for (const auto& s : seeds) masks.push_back(base.mask_of(s));
  return modular_cut_from_flats(base, masks);
}

inline ModularCut principal_modular_cut(const Matroid& base, const std::vector<std::string>& flat) {
  return modular_cut_from_flats(base, std::vector<SubsetMask>{base.mask_of(flat)});
}

// Look for a modular pair of members whose intersection escapes the family.
// Upward closure holds by construction for ModularCut values, so a nullopt
// result certifies the family is a modular cut. Pairs whose intersection is
// already a member are skipped before any rank work; the remaining pairs are
// scanned with uncached ranks and split across threads.
inline std::optional<std::pair<SubsetMask, SubsetMask>> modular_cut_violation(const ModularCut& cut,
                                                                              int threads = 0) {
  const auto& fam = cut.members;
  const Matroid& b = cut.base;
  const int n = static_cast<int>(fam.size());
  std::vector<int> rk(n);
  for (int i = 0; i < n; ++i) rk[i] = b.rank_uncached(fam[i]);
  if (threads <= 0) threads = detail::pick_threads(static_cast<std::size_t>(n) * n, 1 << 18);
  std::atomic<bool> stop{false};
  std::mutex found_mutex;
  std::optional<std::pair<int, int>> found;
  auto work = [&](int t) {
    for (int i = t; i < n && !stop.load(std::memory_order_relaxed); i += threads) {
      for (int j = i + 1; j < n; ++j) {
        SubsetMask c = fam[i] & fam[j];
        if (cut.member(c)) continue;
        if (rk[i] + rk[j] == b.rank_uncached(fam[i] | fam[j]) + b.rank_uncached(c)) {
          std::lock_guard<std::mutex> lock(found_mutex);
          if (!found || std::pair<int, int>{i, j} < *found) found = {i, j};
          stop.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  if (found) return std::pair<SubsetMask, SubsetMask>{fam[found->first], fam[found->second]};
  return std::nullopt;
}

namespace detail {

inline bool is_modular_cut_impl(const Matroid& base, const std::vector<SubsetMask>& family,
                                const std::vector<SubsetMask>& flats,
                                std::pair<SubsetMask, SubsetMask>* violation) {
  std::set<SubsetMask> fam(family.begin(), family.end());
  for (SubsetMask f : fam)
    if (closure(base, f) != f) throw std::invalid_argument("is_modular_cut: member is not a flat");
  // upward closure against the full flat list
  for (SubsetMask g : flats) {
    if (fam.count(g)) continue;
    for (SubsetMask f : fam)
      if ((f & ~g) == 0) {
        if (violation) *violation = {f, g};
        return false;
      }
  }
  // modular pairs meet inside the family
  std::vector<SubsetMask> v(fam.begin(), fam.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      SubsetMask c = v[i] & v[j];
      if (fam.count(c)) continue;
      if (base.rank(v[i]) + base.rank(v[j]) == base.rank(v[i] | v[j]) + base.rank(c)) {
        if (violation) *violation = {v[i], v[j]};
        return false;
      }
    }
  return true;
}

}  // namespace detail

// Defining-property check for an explicitly listed family: every member must
// be a flat (else input error), the family upward closed, and closed under
// intersections of modular pairs. On failure the offending pair is reported:
// (member, uncovered superset) or (member, member) respectively.
inline bool is_modular_cut(const Matroid& base, const std::vector<SubsetMask>& family,
                           std::pair<SubsetMask, SubsetMask>* violation = nullptr) {
  return detail::is_modular_cut_impl(base, family, all_flats(base), violation);
}

inline bool is_modular_cut(const Matroid& base, const std::vector<std::vector<std::string>>& family,
                           std::pair<SubsetMask, SubsetMask>* violation = nullptr) {
  std::vector<SubsetMask> masks;
  for (const auto& f : family) masks.push_back(base.mask_of(f));
  return is_modular_cut(base, masks, violation);
}

// Least modular cut containing the seed flats: alternately close upward and
// under modular-pair intersections until stable. The result can be improper.
inline ModularCut generated_modular_cut(const Matroid& base, const std::vector<SubsetMask>& seeds,
                                        int flat_cap = 4096) {
  for (SubsetMask s : seeds)
    if (closure(base, s) != s) throw std::invalid_argument("generated_modular_cut: seed is not a flat");
  std::vector<SubsetMask> flats = all_flats(base);
  if (static_cast<int>(flats.size()) > flat_cap)
    throw std::invalid_argument("generated_modular_cut: flat count exceeds cap");
  std::set<SubsetMask> fam;
  auto add_filter = [&](SubsetMask s) {
    for (SubsetMask f : flats)
      if ((s & ~f) == 0) fam.insert(f);
  };
  for (SubsetMask s : seeds) add_filter(s);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<SubsetMask> v(fam.begin(), fam.end());
    for (std::size_t i = 0; i < v.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < v.size() && !changed; ++j) {
        SubsetMask c = v[i] & v[j];
        if (fam.count(c)) continue;
        if (base.rank(v[i]) + base.rank(v[j]) == base.rank(v[i] | v[j]) + base.rank(c)) {
          add_filter(c);
          changed = true;
        }
      }
  }
  ModularCut cut;
  cut.base = base;
  cut.members.assign(fam.begin(), fam.end());
  for (SubsetMask f : cut.members) {
    bool minimal = true;
    for (SubsetMask g : cut.members)
      if (g != f && (g & ~f) == 0) {
        minimal = false;
        break;
      }
    if (minimal) cut.min_flats.push_back(f);
  }
  return cut;
}

inline ModularCut generated_modular_cut(const Matroid& base, const std::vector<std::vector<std::string>>& seeds,
                                        int flat_cap = 4096) {
  std::vector<SubsetMask> masks;
  for (const auto& s : seeds) masks.push_back(base.mask_of(s));
  return generated_modular_cut(base, masks, flat_cap);
}

// Single-element extension along a modular cut: the new element lies in the
// closure of X exactly when cl(X) belongs to the cut, so
//   r'(X + e) = r(X)        if some minimal member is spanned by X,
//   r'(X + e) = r(X) + 1    otherwise.
// The cut determines the extension uniquely. Improper cuts (which would make
// e a loop) and families failing the modular-cut property are rejected.
inline Matroid extend(const Matroid& base, const ModularCut& cut, const std::string& label,
                      bool validate = true) {
  if (cut.base.ground() != base.ground())
    throw std::invalid_argument("extend: cut was built over a different ground set");
  if (base.has_element(label)) throw std::invalid_argument("extend: element id already present");
  if (base.size() >= 64) throw std::invalid_argument("extend: ground set would exceed 64 elements");
  if (cut.improper()) throw std::invalid_argument("extend: improper modular cut");
  if (validate && modular_cut_violation(cut))
    throw std::invalid_argument("extend: family is not a modular cut");
  auto bp = std::make_shared<const Matroid>(base);
  std::vector<SubsetMask> mins = cut.min_flats;
  SubsetMask base_full = base.full_mask();
  SubsetMask e_bit = SubsetMask{1} << base.size();
  std::vector<std::string> ground = base.ground();
  ground.push_back(label);
  Provenance prov;
  prov.kind = "extension";
  prov.bases = {bp};
  prov.op_elements = {label};
  for (SubsetMask m : mins) prov.cut_min_flats.push_back(base.labels_of(m));
  return Matroid(
      ground,
      [bp, mins, base_full, e_bit](SubsetMask s) {
        SubsetMask x = s & base_full;
        int r = bp->rank(x);
        if (!(s & e_bit)) return r;
        for (SubsetMask m : mins)
          if (bp->rank(x | m) == r) return r;
        return r + 1;
      },
      std::move(prov));
}

// Extend along the cut, then contract the new element. Needs a nonempty
// proper cut: an empty cut adds a coloop (contraction gives back the base)
// and an improper cut adds a loop (contraction does nothing).
inline Matroid elementary_projection(const Matroid& base, const ModularCut& cut,
                                     const std::string& label = "p", bool validate = true) {
  if (cut.empty())
    throw std::invalid_argument("elementary_projection: empty cut gives a degenerate projection");
  if (cut.improper()) throw std::invalid_argument("elementary_projection: improper modular cut");
  Matroid ext = extend(base, cut, label, validate);
  return contract_elements(ext, {label});
}

// ---------------------------------------------------------------------------
// Clique recognition and classification of extension elements over a clique.

// A complete-graph structure read off a restriction: vertices 1..m and an
// edge per element such that the restriction's rank function is exactly the
// graphic rank (touched vertices minus connected components).
struct CliqueMap {
  int vertices = 0;
  std::map<std::string, std::pair<int, int>> edge_of;  // 1-based endpoints, u < v
};

namespace detail {

// Graphic rank of an edge list on vertices 1..m.
inline int graphic_rank(int m, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(m + 1);
  for (int i = 0; i <= m; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int r = 0;
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      ++r;
    }
  }
  return r;
}

}  // namespace detail

// Try to identify the restriction to the given elements as the cycle matroid
// of a complete graph. Vertices are recovered as the maximal families of
// pairwise intersecting edges (the vertex stars), then the resulting rank
// function is verified subset by subset, which makes the answer exact.
inline std::optional<CliqueMap> clique_vertex_map(const Matroid& m,
                                                  const std::vector<std::string>& clique_labels) {
  Matroid r = restrict_to(m, clique_labels);
  const int n = r.size();
  int verts = 0;
  for (int k = 2; k <= 12; ++k)
    if (k * (k - 1) / 2 == n) verts = k;
  if (verts == 0) return std::nullopt;
  if (verts > 8) throw std::invalid_argument("clique_vertex_map: at most 8 vertices supported");
  if (r.rank() != verts - 1) return std::nullopt;
  if (!is_simple(r)) return std::nullopt;

  CliqueMap out;
  out.vertices = verts;
  std::vector<std::string> sorted_labels = r.ground();
  if (verts == 2) {
    out.edge_of[sorted_labels[0]] = {1, 2};
  } else if (verts == 3) {
    out.edge_of[sorted_labels[0]] = {1, 2};
    out.edge_of[sorted_labels[1]] = {1, 3};
    out.edge_of[sorted_labels[2]] = {2, 3};
  } else {
    // triangles of the clique = 3-element rank-2 subsets; each adjacent pair
    // of edges completes to exactly one triangle
    std::vector<std::vector<int>> third(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          SubsetMask t = (SubsetMask{1} << i) | (SubsetMask{1} << j) | (SubsetMask{1} << k);
          if (r.rank(t) != 2) continue;
          if (third[i][j] != -1 || third[i][k] != -1 || third[j][k] != -1) return std::nullopt;
          third[i][j] = third[j][i] = k;
          third[i][k] = third[k][i] = j;
          third[j][k] = third[k][j] = i;
        }
    auto adj = [&](int a, int b) { return third[a][b] != -1; };
    // star through the shared vertex of adjacent a, b: both of them plus the
    // common neighbours that avoid the triangle's third edge
    std::set<std::vector<int>> stars;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!adj(a, b)) continue;
        int c = third[a][b];
        std::vector<int> star{a, b};
        for (int x = 0; x < n; ++x) {
          if (x == a || x == b || x == c) continue;
          if (adj(x, a) && adj(x, b) && !adj(x, c)) star.push_back(x);
        }
        std::sort(star.begin(), star.end());
        stars.insert(star);
      }
    if (static_cast<int>(stars.size()) != verts) return std::nullopt;
    std::vector<std::vector<int>> star_list(stars.begin(), stars.end());
    std::vector<std::vector<int>> stars_of(n);
    for (int s = 0; s < verts; ++s) {
      if (static_cast<int>(star_list[s].size()) != verts - 1) return std::nullopt;
      for (int e : star_list[s]) stars_of[e].push_back(s);
    }
    for (int e = 0; e < n; ++e) {
      if (stars_of[e].size() != 2) return std::nullopt;
      out.edge_of[sorted_labels[e]] = {stars_of[e][0] + 1, stars_of[e][1] + 1};
    }
  }

  // exact verification: ranks agree on every subset of size up to the rank,
  // which pins the whole rank function
  for (int k = 0; k <= verts - 1; ++k) {
    if (k > n) break;
    std::vector<int> pick = first_combination(k);
    do {
      SubsetMask mask = 0;
      std::vector<std::pair<int, int>> edges;
      for (int i : pick) {
        mask |= SubsetMask{1} << i;
        edges.push_back(out.edge_of[sorted_labels[i]]);
      }
      if (r.rank(mask) != detail::graphic_rank(verts, edges)) return std::nullopt;
    } while (next_combination(pick, n));
  }
  return out;
}

enum class ExtensionType { TYPE_A, TYPE_B, OTHER };

// How a single element sits over a spanning clique restriction:
//   TYPE_A  - spanned exactly by the flats through one triangle of the clique
//             (the element extends that 3-point line),
//   TYPE_B  - spanned exactly by the flats through one of two disjoint
//             2-point lines whose union is a 4-element circuit,
//   OTHER   - anything else; the minimal spanning flats are reported.
struct ExtensionClass {
  ExtensionType type = ExtensionType::OTHER;
  std::vector<std::string> line;     // TYPE_A: the triangle
  std::vector<std::string> circuit;  // TYPE_B: the 4-element circuit
  std::vector<std::vector<std::string>> minimal_flats;
};

inline ExtensionClass classify_extension_element(const Matroid& m,
                                                 const std::vector<std::string>& clique_labels,
                                                 const std::string& e) {
  if (!m.has_element(e)) throw std::invalid_argument("classify_extension_element: unknown element");
  for (const auto& x : clique_labels)
    if (x == e) throw std::invalid_argument("classify_extension_element: element lies in the clique");
  auto cm = clique_vertex_map(m, clique_labels);
  if (!cm) throw std::invalid_argument("classify_extension_element: restriction is not a clique");
  if (cm->vertices != m.rank() + 1)
    throw std::invalid_argument("classify_extension_element: clique restriction does not span");

  Matroid r = restrict_to(m, clique_labels);
  std::vector<int> lift(r.size());
  for (int i = 0; i < r.size(); ++i) lift[i] = m.index_of(r.ground()[i]);
  SubsetMask e_bit = SubsetMask{1} << m.index_of(e);
  auto to_base = [&](SubsetMask s) {
    SubsetMask out = 0;
    for (int i = 0; i < r.size(); ++i)
      if (s & (SubsetMask{1} << i)) out |= SubsetMask{1} << lift[i];
    return out;
  };

  std::vector<SubsetMask> spanning;
  for (SubsetMask f : all_flats(r)) {
    SubsetMask fb = to_base(f);
    if (m.rank(fb | e_bit) == m.rank(fb)) spanning.push_back(f);
  }
  std::vector<SubsetMask> mins;
  for (SubsetMask f : spanning) {
    bool minimal = true;
    for (SubsetMask g : spanning)
      if (g != f && (g & ~f) == 0) {
        minimal = false;
        break;
      }
    if (minimal) mins.push_back(f);
  }
  std::sort(mins.begin(), mins.end());

  ExtensionClass out;
  for (SubsetMask f : mins) out.minimal_flats.push_back(r.labels_of(f));
  if (mins.size() == 1 && popcount_mask(mins[0]) == 3 && r.rank(mins[0]) == 2) {
    out.type = ExtensionType::TYPE_A;
    out.line = r.labels_of(mins[0]);
    return out;
  }
  if (mins.size() == 2 && popcount_mask(mins[0]) == 2 && popcount_mask(mins[1]) == 2 &&
      r.rank(mins[0]) == 2 && r.rank(mins[1]) == 2) {
    SubsetMask u = mins[0] | mins[1];
    if (popcount_mask(u) == 4 && r.rank(u) == 3) {
      bool circuit = true;
      for (int i = 0; i < r.size() && circuit; ++i) {
        SubsetMask bit = SubsetMask{1} << i;
        if ((u & bit) && r.rank(u & ~bit) != 3) circuit = false;
      }
      if (circuit) {
        out.type = ExtensionType::TYPE_B;
        out.circuit = r.labels_of(u);
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of proper modular cuts.

// Depth-first over the flats in decreasing-rank order, deciding membership
// one flat at a time. Taking a flat requires all its proper superset flats
// (already decided) to be in; each modular pair among taken flats records its
// intersection as required, and a required flat can no longer be left out.
// The improper cut (all flats) is dropped from the output.
inline std::vector<ModularCut> enumerate_modular_cuts(const Matroid& base, int flat_cap = 40) {
  std::vector<SubsetMask> flats = all_flats(base);
  const int n = static_cast<int>(flats.size());
  if (n > flat_cap) throw std::invalid_argument("enumerate_modular_cuts: flat count exceeds cap");

  std::vector<int> rk(n);
  std::map<SubsetMask, int> pos_tmp;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    rk[i] = base.rank(flats[i]);
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (rk[a] != rk[b]) return rk[a] > rk[b];
    return flats[a] < flats[b];
  });
  std::vector<SubsetMask> f(n);
  std::vector<int> fr(n);
  for (int i = 0; i < n; ++i) {
    f[i] = flats[order[i]];
    fr[i] = rk[order[i]];
    pos_tmp[f[i]] = i;
  }
  // supersets come strictly earlier in the order; precompute them together
  // with the modularity and intersection of every pair
  std::vector<std::vector<int>> sup(n);
  std::vector<std::vector<int>> inter(n, std::vector<int>(n));
  std::vector<std::vector<char>> modular(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      if ((f[i] & ~f[j]) == 0) sup[i].push_back(j);
      SubsetMask c = f[i] & f[j];
      inter[i][j] = inter[j][i] = pos_tmp.at(c);
      modular[i][j] = modular[j][i] =
          (fr[i] + fr[j] == base.rank(f[i] | f[j]) + base.rank(c)) ? 1 : 0;
    }
  SubsetMask least = closure(base, 0);

  std::vector<char> in(n, 0);
  std::vector<int> required(n, 0);
  std::vector<ModularCut> out;
  std::function<void(int)> dfs = [&](int i) {
    if (i == n) {
      std::vector<SubsetMask> members;
      for (int k = 0; k < n; ++k)
        if (in[k]) members.push_back(f[k]);
      std::sort(members.begin(), members.end());
      ModularCut cut;
      cut.base = base;
      cut.members = members;
      for (SubsetMask a : members) {
        bool minimal = true;
        for (SubsetMask b : members)
          if (b != a && (b & ~a) == 0) {
            minimal = false;
            break;
          }
        if (minimal) cut.min_flats.push_back(a);
      }
      if (cut.member(least)) return;  // improper
      out.push_back(std::move(cut));
      return;
    }
    if (required[i] == 0) dfs(i + 1);
    bool ok = true;
    for (int j : sup[i])
      if (!in[j]) {
        ok = false;
        break;
      }
    if (ok) {
      std::vector<int> bumped;
      for (int j = 0; j < i; ++j) {
        if (!in[j] || !modular[i][j]) continue;
        int c = inter[i][j];
        if (c == i || in[c]) continue;
        required[c]++;
        bumped.push_back(c);
      }
      in[i] = 1;
      dfs(i + 1);
      in[i] = 0;
      for (int c : bumped) required[c]--;
    }
  };
  dfs(0);

  // each output re-checked against the definition
  for (const auto& cut : out) {
    std::pair<SubsetMask, SubsetMask> bad;
    if (!detail::is_modular_cut_impl(base, cut.members, flats, &bad))
      throw std::runtime_error("enumerate_modular_cuts: produced family fails the definition");
  }
  std::sort(out.begin(), out.end(),
            [](const ModularCut& a, const ModularCut& b) { return a.min_flats < b.min_flats; });
  return out;
}

}  // namespace deltamod
