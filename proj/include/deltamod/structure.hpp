#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltamod/catalog.hpp"
#include "deltamod/extensions.hpp"
#include "deltamod/isomorphism.hpp"
#include "deltamod/matroid.hpp"

namespace deltamod {

// A minor certificate: contract the (independent) contracted set, delete the
// deleted set, and the remaining elements carry the pattern's rank function
// under the embedding (pattern label -> host label).
struct MinorWitness {
  std::vector<std::string> contracted;
  std::vector<std::string> deleted;
  std::map<std::string, std::string> embedding;
};

namespace detail {

// Try to embed pattern as a restriction of host (both simple), assigning
// pattern elements in ground order to host elements in ground order. Rank
// agreement is enforced on every subset of the assigned prefix containing the
// newest element, up to size rank(pattern) + 1; over a full assignment that
// pins independence of every subset, hence the whole rank function.
inline bool embed_restriction(const Matroid& host, const Matroid& pattern, std::vector<int>& image) {
  const int n = pattern.size();
  const int limit = std::min(n, pattern.rank() + 1);
  image.assign(n, -1);
  std::vector<char> used(host.size(), 0);
  std::vector<int> prefix_sets;

  std::function<bool(int)> place = [&](int t) -> bool {
    if (t == n) return true;
    for (int h = 0; h < host.size(); ++h) {
      if (used[h]) continue;
      image[t] = h;
      bool ok = true;
      // subsets of {0..t} containing t, size <= limit
      for (int k = 1; k <= std::min(t + 1, limit) && ok; ++k) {
        auto pick = first_combination(k - 1);
        do {
          SubsetMask pm = SubsetMask{1} << t;
          SubsetMask hm = SubsetMask{1} << h;
          for (int idx : pick) {
            pm |= SubsetMask{1} << idx;
            hm |= SubsetMask{1} << image[idx];
          }
          if (pattern.rank(pm) != host.rank(hm)) {
            ok = false;
            break;
          }
        } while (next_combination(pick, t));
      }
      if (ok) {
        used[h] = 1;
        if (place(t + 1)) return true;
        used[h] = 0;
      }
      image[t] = -1;
    }
    return false;
  };
  return place(0);
}

// long-line size multisets, descending; a restriction embedding maps distinct
// long lines of the pattern into distinct host lines of at least that size
inline std::vector<int> long_line_sizes(const Matroid& m) {
  std::vector<int> sizes;
  if (m.rank() >= 2)
    for (SubsetMask f : flats_of_rank(m, 2))
      if (popcount_mask(f) >= 3) sizes.push_back(popcount_mask(f));
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

inline bool line_sizes_dominate(const std::vector<int>& host, const std::vector<int>& pattern) {
  if (pattern.size() > host.size()) return false;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (host[i] < pattern[i]) return false;
  return true;
}

}  // namespace detail

// Searches for a minor of the host isomorphic to the pattern: contractions run
// over independent sets of size rank(host) - rank(pattern) in index order, and
// the pattern is embedded into the simplification of each contraction (any
// minor with a simple pattern arises this way). Patterns of rank 2 use a fast
// path: a contraction owning a line with enough points. The first witness in
// this fixed order is returned.
inline std::optional<MinorWitness> has_minor(const Matroid& m, const Matroid& pattern, int cap = 20) {
  if (!is_simple(pattern)) throw std::invalid_argument("has_minor: pattern must be simple");
  if (pattern.size() > 9) throw std::invalid_argument("has_minor: pattern larger than 9 elements");
  if (m.size() > cap) throw std::invalid_argument("has_minor: host larger than the cap");
  const int k = pattern.rank();
  const int corank = m.rank() - k;
  if (corank < 0 || pattern.size() > m.size()) return std::nullopt;

  const std::vector<int> pattern_lines = detail::long_line_sizes(pattern);

  auto con_idx = first_combination(corank);
  do {
    SubsetMask cmask = 0;
    for (int i : con_idx) cmask |= SubsetMask{1} << i;
    if (m.rank(cmask) != corank) continue;

    std::vector<std::string> contracted;
    for (int i : con_idx) contracted.push_back(m.ground()[i]);
    Matroid si = simplify(contract_elements(m, contracted)).matroid;
    if (si.size() < pattern.size()) continue;

    std::vector<std::string> image_labels;
    if (k == 2) {
      // a simple rank-2 pattern with l elements is U_{2,l}: find a long enough line
      for (SubsetMask line : flats_of_rank(si, 2)) {
        if (popcount_mask(line) < pattern.size()) continue;
        for (int i = 0; i < si.size() && static_cast<int>(image_labels.size()) < pattern.size(); ++i)
          if (line & (SubsetMask{1} << i)) image_labels.push_back(si.ground()[i]);
        break;
      }
    } else {
      if (!detail::line_sizes_dominate(detail::long_line_sizes(si), pattern_lines)) continue;
      std::vector<int> image;
      if (detail::embed_restriction(si, pattern, image))
        for (int h : image) image_labels.push_back(si.ground()[h]);
    }
    if (image_labels.empty()) continue;

    MinorWitness w;
    w.contracted = contracted;
    for (int t = 0; t < pattern.size(); ++t) w.embedding[pattern.ground()[t]] = image_labels[t];
    std::set<std::string> kept(image_labels.begin(), image_labels.end());
    for (const auto& id : m.ground())
      if (!kept.count(id) && !std::count(contracted.begin(), contracted.end(), id))
        w.deleted.push_back(id);
    return w;
  } while (next_combination(con_idx, m.size()));
  return std::nullopt;
}

inline bool verify_minor_witness(const Matroid& m, const Matroid& pattern, const MinorWitness& w) {
  for (const auto& id : m.ground()) {
    bool in_con = std::count(w.contracted.begin(), w.contracted.end(), id) > 0;
    bool in_del = std::count(w.deleted.begin(), w.deleted.end(), id) > 0;
    bool in_img = false;
    for (const auto& [p, h] : w.embedding) in_img |= (h == id);
    if (in_con + in_del + in_img != 1) return false;
  }
  if (!is_independent(m, m.mask_of(w.contracted))) return false;
  Matroid con = contract_elements(m, w.contracted);
  std::vector<std::string> images;
  std::vector<std::string> new_ground;
  for (const auto& id : pattern.ground()) {
    auto it = w.embedding.find(id);
    if (it == w.embedding.end()) return false;
    images.push_back(it->second);
    new_ground.push_back(it->second);
  }
  return same_rank_function(relabel(pattern, new_ground), restrict_to(con, images));
}

// Trichotomy for a simple rank-3 matroid on nine elements covered by three
// long lines through a common point: it has a U_{2,5}-minor or it is the Reid
// geometry. Inputs outside that hypothesis report NEITHER_HYPOTHESIS.
enum class ThreeLineClass { U25_MINOR, R9, NEITHER_HYPOTHESIS };

inline ThreeLineClass classify_three_line_configuration(const Matroid& m) {
  if (m.size() != 9 || m.rank() != 3 || !is_simple(m)) return ThreeLineClass::NEITHER_HYPOTHESIS;
  std::vector<SubsetMask> longs;
  for (SubsetMask f : flats_of_rank(m, 2))
    if (popcount_mask(f) >= 3) longs.push_back(f);
  bool hypothesis = false;
  for (int x = 0; x < m.size() && !hypothesis; ++x) {
    std::vector<SubsetMask> through;
    for (SubsetMask l : longs)
      if (l & (SubsetMask{1} << x)) through.push_back(l);
    for (std::size_t a = 0; a < through.size() && !hypothesis; ++a)
      for (std::size_t b = a + 1; b < through.size() && !hypothesis; ++b)
        for (std::size_t c = b + 1; c < through.size() && !hypothesis; ++c)
          if ((through[a] | through[b] | through[c]) == m.full_mask()) hypothesis = true;
  }
  if (!hypothesis) return ThreeLineClass::NEITHER_HYPOTHESIS;
  bool u25 = has_minor(m, uniform_matroid(2, 5)).has_value();
  bool r9 = are_isomorphic(m, build_named("R9")).has_value();
  if (u25 == r9)
    throw std::runtime_error("classify_three_line_configuration: trichotomy conclusions disagree");
  return u25 ? ThreeLineClass::U25_MINOR : ThreeLineClass::R9;
}

namespace detail {

// assumes m simple and x present; see spike_tip_multiplicity
inline int tip_multiplicity_impl(const Matroid& m, const std::string& x) {
  SimplifyResult s = simplify(contract_elements(m, {x}));
  std::map<std::string, int> class_size;
  for (const auto& [elem, rep] : s.representative_of) class_size[rep]++;
  SubsetMask p = 0;
  for (int i = 0; i < s.matroid.size(); ++i)
    if (class_size[s.matroid.ground()[i]] >= 2) p |= SubsetMask{1} << i;
  if (popcount_mask(p) < 3) return 0;
  return std::min(nullity(s.matroid, p), 2);
}

}  // namespace detail

// Number of spike restrictions with tip x, clamped at 2. A spike with tip x
// picks two elements from each of at least three long lines through x so that
// the contraction's points form a circuit; in the simplification of M/x those
// candidate points are the parallel classes of size at least two, and circuits
// among them (all of size >= 3, the matroid being simple) are counted by
// nullity: 0 none, 1 exactly one, >= 2 at least two.
inline int spike_tip_multiplicity(const Matroid& m, const std::string& x) {
  if (!m.has_element(x)) throw std::invalid_argument("spike_tip_multiplicity: unknown element");
  if (!is_simple(m)) throw std::invalid_argument("spike_tip_multiplicity: matroid is not simple");
  return detail::tip_multiplicity_impl(m, x);
}

// A point is special if it is on at least two 4-point lines, is a tip of at
// least two spike restrictions, or is a tip of a spike restriction and on a
// 4-point line.
struct SpecialPointReport {
  std::vector<std::string> elements;
  std::vector<int> four_point_lines;  // lines with >= 4 points through the element
  std::vector<int> tip_multiplicity;  // 0, 1, or 2 meaning at least two
  std::vector<bool> special;
  int total_special = 0;
};

inline SpecialPointReport special_points(const Matroid& m) {
  if (!is_simple(m)) throw std::invalid_argument("special_points: matroid is not simple");
  SpecialPointReport rep;
  rep.elements = m.ground();
  std::vector<SubsetMask> big_lines;
  if (m.rank() >= 2)
    for (SubsetMask f : flats_of_rank(m, 2))
      if (popcount_mask(f) >= 4) big_lines.push_back(f);
  for (int i = 0; i < m.size(); ++i) {
    int four = 0;
    for (SubsetMask l : big_lines)
      if (l & (SubsetMask{1} << i)) ++four;
    int tips = detail::tip_multiplicity_impl(m, rep.elements[i]);
    bool special = four >= 2 || tips >= 2 || (tips >= 1 && four >= 1);
    rep.four_point_lines.push_back(four);
    rep.tip_multiplicity.push_back(tips);
    rep.special.push_back(special);
    if (special) ++rep.total_special;
  }
  return rep;
}

// Full report on a simple matroid with a spanning clique restriction: the type
// of every outside element, the 3-point lines of the clique spanning outside
// elements, the 4-element clique circuits whose two 2-point lines span a
// common outside element, pairwise statistics on those circuits and on mixed
// type pairs, the special point total, and the size bound
// |M| <= binom(r+2, 2) - 2. Statistics that only hold under rank hypotheses
// are skipped below those ranks, with a note in messages.
struct CliqueExtensionReport {
  std::vector<std::string> clique;
  std::vector<std::string> outside;
  std::map<std::string, ExtensionClass> types;
  int type_a_count = 0;
  int type_b_count = 0;
  int other_count = 0;
  std::vector<std::vector<std::string>> spanning_lines;     // 3-point clique lines spanning outside elements
  std::vector<std::vector<std::string>> spanning_circuits;  // 4-circuits whose 2-point lines span a common outside element
  bool circuit_pairs_meet_in_two = true;                    // |C1 ^ C2| = 2, and C1 u C2 inside a 5-vertex subclique
  bool mixed_pairs_share_clique_plane = true;               // type-(a)/(b) pairs lie in the closure of a common 4-vertex subclique
  SpecialPointReport specials;
  bool special_bound_holds = true;  // total <= 21
  bool size_bound_holds = true;     // |M| <= binom(r+2,2) - 2
  std::vector<std::string> messages;
};

inline CliqueExtensionReport analyze_clique_extension(const Matroid& m,
                                                      const std::vector<std::string>& clique_labels) {
  if (!is_simple(m)) throw std::invalid_argument("analyze_clique_extension: matroid is not simple");
  auto cm = clique_vertex_map(m, clique_labels);
  if (!cm) throw std::invalid_argument("analyze_clique_extension: X is not a clique restriction");
  const int r = m.rank();
  if (cm->vertices != r + 1 || m.rank(m.mask_of(clique_labels)) != r)
    throw std::invalid_argument("analyze_clique_extension: clique restriction is not spanning");

  CliqueExtensionReport rep;
  SubsetMask xmask = m.mask_of(clique_labels);
  for (int i = 0; i < m.size(); ++i)
    (xmask & (SubsetMask{1} << i) ? rep.clique : rep.outside).push_back(m.ground()[i]);

  for (const auto& e : rep.outside) {
    ExtensionClass c = classify_extension_element(m, rep.clique, e);
    if (c.type == ExtensionType::TYPE_A)
      ++rep.type_a_count;
    else if (c.type == ExtensionType::TYPE_B)
      ++rep.type_b_count;
    else
      ++rep.other_count;
    rep.types.emplace(e, std::move(c));
  }

  std::vector<SubsetMask> outside_bits;
  for (const auto& e : rep.outside) outside_bits.push_back(m.mask_of({e}));

  auto spans = [&](SubsetMask flat, int flat_rank) {
    std::vector<int> spanned;
    for (std::size_t i = 0; i < outside_bits.size(); ++i)
      if (m.rank(flat | outside_bits[i]) == flat_rank) spanned.push_back(static_cast<int>(i));
    return spanned;
  };
  auto labels_of = [&](SubsetMask s) {
    std::vector<std::string> out;
    for (int i = 0; i < m.size(); ++i)
      if (s & (SubsetMask{1} << i)) out.push_back(m.ground()[i]);
    return out;
  };

  // lines and 2-point lines of M|X, read off the clique's vertex structure:
  // triangles are 3-point lines, 2-edge matchings are 2-point lines
  Matroid mx = restrict_to(m, rep.clique);
  std::vector<SubsetMask> triangles, matchings;
  for (SubsetMask l : flats_of_rank(mx, 2)) {
    SubsetMask lifted = 0;
    for (int i = 0; i < mx.size(); ++i)
      if (l & (SubsetMask{1} << i)) lifted |= m.mask_of({mx.ground()[i]});
    (popcount_mask(l) == 3 ? triangles : matchings).push_back(lifted);
  }
  for (SubsetMask t : triangles)
    if (!spans(t, 2).empty()) rep.spanning_lines.push_back(labels_of(t));

  // 4-element circuits of M|X are the 4-cycles of the clique; each contains
  // exactly two of the 2-point lines, as opposite edge pairs
  std::vector<SubsetMask> circuits;
  std::vector<std::vector<int>> circuit_spanners;
  for (std::size_t a = 0; a < matchings.size(); ++a)
    for (std::size_t b = a + 1; b < matchings.size(); ++b) {
      SubsetMask u = matchings[a] | matchings[b];
      if (popcount_mask(u) != 4 || m.rank(u) != 3) continue;
      if (nullity(m, u) != 1) continue;
      std::vector<int> sa = spans(matchings[a], 2), sb = spans(matchings[b], 2);
      std::vector<int> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      if (common.empty()) continue;
      if (std::find(circuits.begin(), circuits.end(), u) == circuits.end()) {
        circuits.push_back(u);
        circuit_spanners.push_back(common);
        rep.spanning_circuits.push_back(labels_of(u));
      }
    }

  auto vertex_support = [&](SubsetMask edges) {
    std::set<int> vs;
    for (const auto& id : labels_of(edges)) {
      auto [u, v] = cm->edge_of.at(id);
      vs.insert(u);
      vs.insert(v);
    }
    return vs;
  };

  if (circuits.size() >= 2) {
    if (r < 6) {
      rep.messages.push_back("rank below six: circuit pair statistics not asserted");
    } else {
      for (std::size_t a = 0; a < circuits.size() && rep.circuit_pairs_meet_in_two; ++a)
        for (std::size_t b = a + 1; b < circuits.size(); ++b) {
          if (popcount_mask(circuits[a] & circuits[b]) != 2 ||
              vertex_support(circuits[a] | circuits[b]).size() > 5) {
            rep.circuit_pairs_meet_in_two = false;
            rep.messages.push_back("circuit pair statistics violated");
            break;
          }
        }
    }
  }

  // mixed pairs: a type-(a) and a type-(b) element must lie in the closure of
  // a common 4-vertex subclique
  std::vector<int> as, bs;
  for (std::size_t i = 0; i < rep.outside.size(); ++i) {
    ExtensionType t = rep.types.at(rep.outside[i]).type;
    if (t == ExtensionType::TYPE_A) as.push_back(static_cast<int>(i));
    if (t == ExtensionType::TYPE_B) bs.push_back(static_cast<int>(i));
  }
  if (!as.empty() && !bs.empty()) {
    if (r < 5) {
      rep.messages.push_back("rank below five: mixed pair statistics not asserted");
    } else {
      // subclique masks indexed by 4-element vertex sets, via the vertex map
      std::vector<SubsetMask> subcliques;
      auto verts = first_combination(4);
      do {
        SubsetMask z = 0;
        for (const auto& [id, uv] : cm->edge_of) {
          bool u_in = std::count(verts.begin(), verts.end(), uv.first - 1) > 0;
          bool v_in = std::count(verts.begin(), verts.end(), uv.second - 1) > 0;
          if (u_in && v_in) z |= m.mask_of({id});
        }
        subcliques.push_back(z);
      } while (next_combination(verts, cm->vertices));
      for (int ia : as) {
        for (int ib : bs) {
          bool found = false;
          for (SubsetMask z : subcliques)
            if (m.rank(z | outside_bits[ia]) == 3 && m.rank(z | outside_bits[ib]) == 3) {
              found = true;
              break;
            }
          if (!found) {
            rep.mixed_pairs_share_clique_plane = false;
            rep.messages.push_back("mixed pair statistics violated for " + rep.outside[ia] + ", " +
                                   rep.outside[ib]);
          }
        }
      }
    }
  }

  rep.specials = special_points(m);
  rep.special_bound_holds = rep.specials.total_special <= 21;
  if (!rep.special_bound_holds) rep.messages.push_back("special point total exceeds 21");
  long long bound = static_cast<long long>(r + 2) * (r + 1) / 2 - 2;
  rep.size_bound_holds = m.size() <= bound;
  if (!rep.size_bound_holds) rep.messages.push_back("size bound violated");
  return rep;
}

}  // namespace deltamod
