// Acceptance harness: one pass/fail line per criterion, exit 0 only if every
// selected criterion passes. Run with no arguments for all ten, or pass
// criterion numbers to run a subset, e.g. `acceptance 1 7`.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deltamod/catalog.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/extensions.hpp"
#include "deltamod/isomorphism.hpp"
#include "deltamod/matroid.hpp"
#include "deltamod/representation.hpp"
#include "deltamod/search.hpp"
#include "deltamod/structure.hpp"
#include "support/properties.hpp"

namespace {

using namespace deltamod;

struct Check {
  bool ok = true;
  std::ostringstream log;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    FAILED: " << what << "\n";
    }
  }
};

std::string rs(int r) { return "r=" + std::to_string(r); }

// 1. The bordered difference matrices are 2-modular: every rank-sized minor
// has absolute value at most 2, checked by exhaustive enumeration.
void bordered_matrices_2modular(Check& c) {
  for (int r = 2; r <= 6; ++r) {
    auto bad_a = check_delta_modular(build_a(r), 2);
    c.expect(!bad_a.has_value(), "matrix A " + rs(r) + " has a rank-sized minor above 2");
    auto bad_ap = check_delta_modular(build_aprime(r), 2);
    c.expect(!bad_ap.has_value(), "matrix A' " + rs(r) + " has a rank-sized minor above 2");
  }
}

// 2. Point counts agree across all three routes and meet the extremal value
// binom(r+2, 2) - 2.
void point_counts_extremal(Check& c) {
  for (int r = 2; r <= 8; ++r) {
    const int expected = (r + 2) * (r + 1) / 2 - 2;
    int rows = row_point_count(build_a(r).transpose());
    int eps_t = epsilon(build_t(r, BuildRoute::MATRIX));
    int eps_tp = epsilon(build_tprime(r, BuildRoute::MATRIX));
    c.expect(rows == expected, "row point count of A^T is " + std::to_string(rows) + ", want " +
                                   std::to_string(expected) + ", " + rs(r));
    c.expect(eps_t == expected, "epsilon of the triangle-route matroid is off at " + rs(r));
    c.expect(eps_tp == expected, "epsilon of the circuit-route matroid is off at " + rs(r));
  }
}

// 3. The extremal matroids avoid all four obstructions, by exhaustive minor
// search.
void forbidden_minor_free(Check& c) {
  std::vector<std::pair<std::string, Matroid>> patterns;
  patterns.emplace_back("U(2,5)", uniform_matroid(2, 5));
  patterns.emplace_back("F7", build_named("F7"));
  patterns.emplace_back("R9", build_named("R9"));
  patterns.emplace_back("U(2,4)+U(2,4)",
                        direct_sum(uniform_matroid(2, 4, "a"), uniform_matroid(2, 4, "b")));
  for (int r = 3; r <= 5; ++r) {
    for (bool prime : {false, true}) {
      Matroid m = prime ? build_tprime(r, BuildRoute::MATRIX) : build_t(r, BuildRoute::MATRIX);
      for (const auto& [name, p] : patterns) {
        auto hit = has_minor(m, p);
        c.expect(!hit.has_value(), std::string(prime ? "T' " : "T ") + rs(r) + " contains a " +
                                       name + " minor");
      }
    }
  }
}

// 4. The family of clique flats containing one of two fixed disjoint 2-point
// lines is a proper modular cut, and extending by it reproduces the bordered
// matrix H over both Q and GF(3).
void clique_cut_matches_matrix(Check& c) {
  for (int r = 3; r <= 5; ++r) {
    const int n = r + 2;
    Matroid mk = build_mk(n);
    std::vector<std::vector<std::string>> lines = {{"e12", edge_label(3, n)},
                                                   {"e13", edge_label(2, n)}};
    ModularCut cut = modular_cut_from_flats(mk, lines);
    c.expect(!cut.empty(), "cut is empty at " + rs(r));
    c.expect(!cut.improper(), "cut is improper at " + rs(r));
    c.expect(is_modular_cut(mk, cut.members), "family is not a modular cut at " + rs(r));
    Matroid ext = extend(mk, cut, "e");
    for (int p : {0, 3}) {
      FieldSpec f = p == 0 ? field_q() : field_gf(p);
      Matroid hm = linear_matroid(build_h_rep(r + 1, f));
      c.expect(same_rank_function(ext, hm),
               "extension disagrees with the H matrix over " +
                   std::string(p == 0 ? "Q" : "GF(3)") + " at " + rs(r));
    }
  }
}

// 5. The matrix route and the projection route build isomorphic matroids.
void construction_routes_agree(Check& c) {
  for (int r : {3, 4}) {
    c.expect(are_isomorphic(build_t(r, BuildRoute::MATRIX), build_t(r, BuildRoute::PROJECTION))
                 .has_value(),
             "T routes disagree at " + rs(r));
    c.expect(
        are_isomorphic(build_tprime(r, BuildRoute::MATRIX), build_tprime(r, BuildRoute::PROJECTION))
            .has_value(),
        "T' routes disagree at " + rs(r));
  }
}

// 6. The three candidate obstructions are certified excluded minors: no
// totally 2-modular representation over any basis, but every single-element
// deletion and contraction has one.
void excluded_minor_certificates(Check& c) {
  std::vector<std::pair<std::string, Matroid>> cases;
  cases.emplace_back("U(2,4)+U(2,4)",
                     direct_sum(uniform_matroid(2, 4, "a"), uniform_matroid(2, 4, "b")));
  cases.emplace_back("U8", build_named("U8"));
  cases.emplace_back("U8prime", build_named("U8prime"));
  for (const auto& [name, m] : cases) {
    ExcludedMinorReport rep = verify_excluded_minor_2modular(m);
    c.expect(rep.nonmember, name + " unexpectedly has a totally 2-modular representation");
    c.expect(rep.all_deletions_member, name + ": some single-element deletion is not a member");
    c.expect(rep.all_contractions_member,
             name + ": some single-element contraction is not a member");
    c.expect(rep.excluded_minor, name + " is not an excluded minor");
    c.expect(rep.deletion_witness.size() == static_cast<std::size_t>(m.size()),
             name + ": missing deletion witnesses");
    c.expect(rep.contraction_witness.size() == static_cast<std::size_t>(m.size()),
             name + ": missing contraction witnesses");
  }
}

// 7. Largest number of pairwise nonparallel columns of a rank-2 Delta-modular
// matrix, with the Delta = 3, 5 values cross-checked under an enlarged entry
// bound.
void rank2_maximum_table(Check& c) {
  const std::vector<std::pair<int, int>> pins = {{1, 3}, {2, 4}, {4, 6}, {6, 8}, {7, 10}};
  for (auto [delta, expected] : pins) {
    int got = rank2_max_size(delta).n_max;
    c.expect(got == expected, "delta=" + std::to_string(delta) + " gives " + std::to_string(got) +
                                  ", want " + std::to_string(expected));
  }
  for (int delta = 1; delta <= 5; ++delta) {
    int got = rank2_max_size(delta).n_max;
    int wide = rank2_max_size_enlarged(delta).n_max;
    c.expect(got == wide, "enlarged search disagrees at delta=" + std::to_string(delta) + ": " +
                              std::to_string(got) + " vs " + std::to_string(wide));
    if (delta == 3 || delta == 5)
      c.log << "    delta=" << delta << " computed maximum " << got << ", cross-checked\n";
  }
}

// 8. Every simple single-element extension of the rank-3 clique with no
// forbidden minor is of triangle or circuit type, over the full modular-cut
// enumeration.
void rank3_extension_census(Check& c) {
  Matroid mk = build_mk(4);
  std::vector<Matroid> forbidden = {uniform_matroid(2, 5), build_named("F7"), build_named("R9")};
  int simple_count = 0, admissible = 0, type_a = 0, type_b = 0;
  for (const ModularCut& cut : enumerate_modular_cuts(mk, 40)) {
    if (cut.empty()) continue;  // coloop extension: the clique stops spanning
    Matroid ext = extend(mk, cut, "x");
    if (!is_simple(ext)) continue;
    ++simple_count;
    bool minor = false;
    for (const Matroid& f : forbidden)
      if (has_minor(ext, f).has_value()) {
        minor = true;
        break;
      }
    ExtensionClass cls = classify_extension_element(ext, mk.ground(), "x");
    if (minor) continue;
    ++admissible;
    c.expect(cls.type != ExtensionType::OTHER,
             "admissible extension #" + std::to_string(admissible) + " is of neither type");
    if (cls.type == ExtensionType::TYPE_A) ++type_a;
    if (cls.type == ExtensionType::TYPE_B) ++type_b;
  }
  c.log << "    " << simple_count << " simple extensions, " << admissible << " admissible ("
        << type_a << " triangle type, " << type_b << " circuit type)\n";
  c.expect(type_a == 4, "expected one triangle-type extension per clique triangle");
  c.expect(type_b == 3, "expected three circuit-type extensions");
}

// 9. Randomized property suites, 100 seeded trials each.
void property_suites(Check& c) {
  std::vector<props::PropertyResult> results;
  results.push_back(props::standardization_on_generated(100, 1101));
  results.push_back(props::duality_laws_on_generated(100, 1202));
  results.push_back(props::extension_rank_axioms(100, 1303));
  results.push_back(props::minor_search_vs_bruteforce(100, 1404));
  for (const auto& res : results) {
    c.log << "    " << res.name << ": " << res.trials << " trials, " << res.failures
          << " failures\n";
    c.expect(res.ok(), res.name + " failed");
    for (const auto& m : res.messages) c.log << "      " << m << "\n";
  }
}

// 10. Special-point and size bounds on rank-6 spanning-clique instances.
void clique_extension_bounds(Check& c) {
  // four elements freely added to triangles through the common edge 12
  Matroid bundle = build_mk(7);
  for (int k = 3; k <= 6; ++k) {
    auto cut = principal_modular_cut(bundle, {"e12", edge_label(1, k), edge_label(2, k)});
    bundle = extend(bundle, cut, "w" + std::to_string(k));
  }
  CliqueExtensionReport ra = analyze_clique_extension(bundle, build_mk(7).ground());
  c.expect(bundle.rank() == 6, "triangle bundle does not have rank 6");
  c.expect(ra.type_a_count == 4 && ra.other_count == 0,
           "triangle bundle misclassifies an outside element");
  c.expect(ra.specials.total_special <= 1, "triangle bundle has " +
                                               std::to_string(ra.specials.total_special) +
                                               " special points, want at most 1");
  c.expect(ra.size_bound_holds, "triangle bundle breaks the size bound");

  // one triangle element plus two elements spanned by both 2-point lines of a
  // 4-circuit through e12, e13
  Matroid mixed = build_mk(7);
  mixed = extend(mixed, principal_modular_cut(mixed, {"e12", "e13", "e23"}), "f");
  for (int k = 4; k <= 5; ++k) {
    auto cut = generated_modular_cut(
        mixed, std::vector<std::vector<std::string>>{{"e12", edge_label(3, k)},
                                                     {"e13", edge_label(2, k)}});
    mixed = extend(mixed, cut, "g" + std::to_string(k));
  }
  CliqueExtensionReport rb = analyze_clique_extension(mixed, build_mk(7).ground());
  c.expect(mixed.rank() == 6, "circuit-type instance does not have rank 6");
  c.expect(rb.outside.size() == 3, "circuit-type instance should have 3 outside elements");
  c.expect(rb.specials.total_special <= 2, "circuit-type instance has " +
                                               std::to_string(rb.specials.total_special) +
                                               " special points, want at most 2");
  c.expect(rb.special_bound_holds, "circuit-type instance exceeds 21 special points");
  c.expect(rb.size_bound_holds, "circuit-type instance breaks the size bound");

  // the full bordered matrix at rank 6, labeled as a clique extension; its
  // size meets the bound binom(8, 2) - 2 = 26 exactly
  std::vector<std::string> labels = build_mk(7).ground();
  for (int j = 1; j <= 4; ++j) labels.push_back("b" + std::to_string(j));
  labels.push_back("u");
  Matroid full = linear_matroid(make_representation(build_aprime(6), labels, field_q()));
  CliqueExtensionReport rc = analyze_clique_extension(full, build_mk(7).ground());
  c.expect(full.rank() == 6, "bordered-matrix instance does not have rank 6");
  c.expect(rc.type_a_count == 1 && rc.type_b_count == 4 && rc.other_count == 0,
           "bordered-matrix instance misclassifies an outside element");
  c.expect(full.size() == 26, "bordered-matrix instance has " + std::to_string(full.size()) +
                                  " elements, want 26");
  c.expect(rc.size_bound_holds, "bordered-matrix instance breaks the size bound");
  c.expect(rc.special_bound_holds, "bordered-matrix instance exceeds 21 special points");
  c.log << "    sizes: " << bundle.size() << ", " << mixed.size() << ", " << full.size()
        << " (bound 26); special points: " << ra.specials.total_special << ", "
        << rb.specials.total_special << ", " << rc.specials.total_special << "\n";
}

struct Criterion {
  int id;
  const char* name;
  void (*fn)(Check&);
};

const Criterion kCriteria[] = {
    {1, "bordered-matrices-2modular", bordered_matrices_2modular},
    {2, "point-counts-extremal", point_counts_extremal},
    {3, "forbidden-minor-free", forbidden_minor_free},
    {4, "clique-cut-matches-matrix", clique_cut_matches_matrix},
    {5, "construction-routes-agree", construction_routes_agree},
    {6, "excluded-minor-certificates", excluded_minor_certificates},
    {7, "rank2-maximum-table", rank2_maximum_table},
    {8, "rank3-extension-census", rank3_extension_census},
    {9, "property-suites", property_suites},
    {10, "clique-extension-bounds", clique_extension_bounds},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    int v = std::atoi(argv[i]);
    if (v < 1 || v > 10) {
      std::fprintf(stderr, "usage: %s [criterion numbers in 1..10]\n", argv[0]);
      return 2;
    }
    selected.insert(v);
  }
  bool all_ok = true;
  for (const Criterion& crit : kCriteria) {
    if (!selected.empty() && !selected.count(crit.id)) continue;
    Check chk;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit.fn(chk);
    } catch (const std::exception& ex) {
      chk.expect(false, std::string("unhandled exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion-%d %s (%.1fs)\n", chk.ok ? "PASS" : "FAIL", crit.id, crit.name,
                secs);
    std::fputs(chk.log.str().c_str(), stdout);
    std::fflush(stdout);
    all_ok = all_ok && chk.ok;
  }
  return all_ok ? 0 : 1;
}
