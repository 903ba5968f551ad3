#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deltamod/catalog.hpp"
#include "deltamod/constructions.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/extensions.hpp"
#include "deltamod/matroid.hpp"
#include "deltamod/report.hpp"
#include "deltamod/search.hpp"
#include "deltamod/structure.hpp"

namespace deltamod {
namespace detail {

inline Json matrix_entries(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int extremal_point_count(int r) { return (r + 2) * (r + 1) / 2 - 2; }

inline Matroid matroid_from_file_matrix(const IntMatrix& m, std::vector<std::string> labels) {
  if (labels.empty())
    for (int j = 0; j < m.cols(); ++j) labels.push_back("c" + std::to_string(j + 1));
  return linear_matroid(make_representation(m, std::move(labels), field_q()));
}

// File-based clique instances mark clique columns with the edge prefix 'e';
// everything else counts as an outside element.
inline std::vector<std::string> clique_labels_of(const Matroid& m) {
  std::vector<std::string> out;
  for (const auto& id : m.ground())
    if (!id.empty() && id[0] == 'e') out.push_back(id);
  return out;
}

inline Matroid pattern_by_name(const std::string& name) {
  if (name == "U24+U24") return direct_sum(uniform_matroid(2, 4, "a"), uniform_matroid(2, 4, "b"));
  return build_named(name);
}

}  // namespace detail

inline Report cmd_modcheck(const IntMatrix& m, Int delta, bool totally) {
  Report rep;
  rep.command = "modcheck";
  rep.inputs = {{"rows", m.rows()}, {"cols", m.cols()}, {"delta", delta}, {"totally", totally}};
  auto bad = totally ? check_totally_delta_modular(m, delta) : check_delta_modular(m, delta);
  Verdict v;
  v.claim = totally ? "totally-delta-modular" : "delta-modular";
  v.anchor = totally ? "every square minor has absolute value at most delta"
                     : "every rank-sized minor has absolute value at most delta";
  v.pass = !bad.has_value();
  if (bad) {
    v.witness = {{"rows", bad->row_idx}, {"cols", bad->col_idx}, {"value", bad->value.str()}};
  } else {
    int r = rank(m);
    v.witness = {{"rank", r}, {"max_abs_minor", r > 0 ? max_abs_minor(m, r).str() : "0"}};
  }
  rep.verdicts.push_back(std::move(v));
  return rep;
}

struct ConstructOutput {
  IntMatrix matrix;
  std::vector<std::string> labels;  // may be empty for unlabeled block matrices
  std::string field;
};

inline ConstructOutput cli_construct(const std::string& name, int r) {
  ConstructOutput out;
  out.field = "Q";
  auto need_r = [&](int lo, int hi) {
    if (r < lo || r > hi)
      throw std::invalid_argument("construct " + name + ": --r must be in " + std::to_string(lo) + ".." +
                                  std::to_string(hi));
  };
  if (name == "A") {
    need_r(2, 8);
    out.matrix = build_a(r);
  } else if (name == "Aprime") {
    need_r(2, 8);
    out.matrix = build_aprime(r);
  } else if (name == "D") {
    need_r(2, 8);
    out.matrix = build_d(r);
  } else if (name == "H") {
    need_r(3, 8);
    auto h = build_h_rep(r);
    out.matrix = h.matrix;
    out.labels = h.labels;
  } else if (name == "MK") {
    need_r(2, 10);
    auto m = build_mk(r);
    out.matrix = m.provenance().rep->matrix;
    out.labels = m.provenance().rep->labels;
  } else {
    auto m = build_named(name);
    if (!m.provenance().rep)
      throw std::invalid_argument("construct: " + name + " has no matrix form");
    out.matrix = m.provenance().rep->matrix;
    out.labels = m.provenance().rep->labels;
    out.field = m.provenance().rep->field.name();
  }
  return out;
}

inline Report cmd_epsilon_file(const IntMatrix& m) {
  Report rep;
  rep.command = "epsilon";
  rep.inputs = {{"rows", m.rows()}, {"cols", m.cols()}};
  Verdict v;
  v.claim = "epsilon-count";
  v.anchor = "number of nonzero pairwise nonparallel columns";
  v.pass = true;
  v.witness = {{"epsilon", row_point_count(m.transpose())}};
  rep.verdicts.push_back(std::move(v));
  return rep;
}

inline Report cmd_epsilon_named(const std::string& family, int r) {
  if (r < 2 || r > 8) throw std::invalid_argument("epsilon: --r must be in 2..8");
  Report rep;
  rep.command = "epsilon";
  rep.inputs = {{"family", family}, {"r", r}};
  int count = 0;
  if (family == "A")
    count = row_point_count(build_a(r).transpose());
  else if (family == "Aprime")
    count = row_point_count(build_aprime(r).transpose());
  else if (family == "T")
    count = epsilon(build_t(r, BuildRoute::MATRIX));
  else if (family == "Tprime")
    count = epsilon(build_tprime(r, BuildRoute::MATRIX));
  else
    throw std::invalid_argument("epsilon: unknown family " + family + " (use A, Aprime, T, Tprime)");
  const int expected = detail::extremal_point_count(r);
  Verdict v;
  v.claim = "epsilon-" + family + "-r" + std::to_string(r);
  v.anchor = "the family has (r+2)(r+1)/2 - 2 points at rank r";
  v.pass = count == expected;
  v.witness = {{"epsilon", count}, {"expected", expected}};
  rep.verdicts.push_back(std::move(v));
  return rep;
}

inline Report cmd_verify_main(int r_min, int r_max) {
  if (r_min < 2 || r_min > r_max || r_max > 8)
    throw std::invalid_argument("verify-main: need 2 <= r_min <= r_max <= 8");
  Report rep;
  rep.command = "verify-main";
  rep.inputs = {{"r_min", r_min}, {"r_max", r_max}};
  for (int r = r_min; r <= r_max; ++r) {
    const std::string rs = std::to_string(r);
    const int expected = detail::extremal_point_count(r);
    if (r <= 6) {
      for (int prime = 0; prime < 2; ++prime) {
        IntMatrix mat = prime ? build_aprime(r) : build_a(r);
        Verdict v;
        v.claim = std::string(prime ? "Aprime" : "A") + "-2modular-r" + rs;
        v.anchor = "every rank-sized minor of the block matrix has absolute value at most 2";
        v.pass = is_delta_modular(mat, 2);
        v.witness = {{"max_abs_minor", max_abs_minor(mat, r).str()}};
        rep.verdicts.push_back(std::move(v));
      }
    }
    {
      Verdict v;
      v.claim = "point-count-r" + rs;
      v.anchor = "the block matrix has (r+2)(r+1)/2 - 2 nonzero pairwise nonparallel columns";
      int count = row_point_count(build_a(r).transpose());
      v.pass = count == expected;
      v.witness = {{"count", count}, {"expected", expected}};
      rep.verdicts.push_back(std::move(v));
    }
    {
      int et = epsilon(build_t(r, BuildRoute::MATRIX));
      int ep = epsilon(build_tprime(r, BuildRoute::MATRIX));
      Verdict v;
      v.claim = "epsilon-extremal-r" + rs;
      v.anchor = "both extremal matroids have (r+2)(r+1)/2 - 2 points";
      v.pass = et == expected && ep == expected;
      v.witness = {{"T", et}, {"Tprime", ep}, {"expected", expected}};
      rep.verdicts.push_back(std::move(v));
    }
    if (r <= 5) {
      const std::vector<std::string> names = {"U(2,5)", "F7", "R9", "U24+U24"};
      for (int prime = 0; prime < 2; ++prime) {
        Matroid m = prime ? build_tprime(r, BuildRoute::MATRIX) : build_t(r, BuildRoute::MATRIX);
        Verdict v;
        v.claim = std::string(prime ? "Tprime" : "T") + "-minor-free-r" + rs;
        v.anchor = "no minor among the four forbidden configurations";
        Json found = Json::array();
        for (const auto& nm : names)
          if (has_minor(m, detail::pattern_by_name(nm)).has_value()) found.push_back(nm);
        v.pass = found.empty();
        v.witness = {{"patterns", names}, {"found", std::move(found)}};
        rep.verdicts.push_back(std::move(v));
      }
    }
  }
  return rep;
}

namespace detail {

inline Verdict excluded_minor_verdict(const std::string& name, const Matroid& m) {
  auto r = verify_excluded_minor_2modular(m);
  Verdict v;
  v.claim = "excluded-minor-" + name;
  v.anchor = "no totally 2-modular representation, but every single-element deletion and contraction has one";
  v.pass = r.excluded_minor;
  v.witness = {{"nonmember", r.nonmember},
               {"deletion_witnesses", static_cast<int>(r.deletion_witness.size())},
               {"contraction_witnesses", static_cast<int>(r.contraction_witness.size())},
               {"elements", m.size()}};
  if (!r.nonmember) {
    auto rep = find_totally_2modular_representation(m);
    if (rep) v.witness["representation"] = matrix_entries(rep->matrix);
  }
  return v;
}

}  // namespace detail

inline Report cmd_excluded_minors() {
  Report rep;
  rep.command = "excluded-minor";
  rep.inputs = {{"instances", std::vector<std::string>{"U24+U24", "U8", "U8prime"}}};
  for (const std::string name : {"U24+U24", "U8", "U8prime"})
    rep.verdicts.push_back(detail::excluded_minor_verdict(name, detail::pattern_by_name(name)));
  return rep;
}

inline Report cmd_excluded_minor_file(const IntMatrix& m, std::vector<std::string> labels) {
  Report rep;
  rep.command = "excluded-minor";
  rep.inputs = {{"rows", m.rows()}, {"cols", m.cols()}};
  rep.verdicts.push_back(
      detail::excluded_minor_verdict("input", detail::matroid_from_file_matrix(m, std::move(labels))));
  return rep;
}

inline Report cmd_rank2(Int delta) {
  Report rep;
  rep.command = "rank2";
  rep.inputs = {{"delta", delta}};
  auto res = rank2_max_size(delta);
  {
    Verdict v;
    v.claim = "rank2-max-size";
    v.anchor = "largest pairwise nonparallel plane family with pairwise determinants within delta";
    v.pass = res.witness.cols() == res.n_max && is_delta_modular(res.witness, delta) && res.n_max >= delta + 2;
    v.witness = {{"n_max", res.n_max}, {"columns", detail::matrix_entries(res.witness.transpose())}};
    rep.verdicts.push_back(std::move(v));
  }
  if (delta + 1 == 2 || delta + 1 == 3 || delta + 1 == 5 || delta + 1 == 7) {
    Verdict v;
    v.claim = "rank2-prime-formula";
    v.anchor = "when delta + 1 is prime the maximum equals delta + 2";
    v.pass = res.n_max == delta + 2;
    v.witness = {{"n_max", res.n_max}, {"expected", delta + 2}};
    rep.verdicts.push_back(std::move(v));
  }
  if (delta <= 5) {
    auto enlarged = rank2_max_size_enlarged(delta);
    Verdict v;
    v.claim = "rank2-enlarged-crosscheck";
    v.anchor = "doubling the candidate window does not change the maximum";
    v.pass = enlarged.n_max == res.n_max;
    v.witness = {{"n_max", res.n_max}, {"enlarged", enlarged.n_max}};
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

inline Report cmd_classify_extension(const IntMatrix& mat, std::vector<std::string> labels) {
  Report rep;
  rep.command = "classify-extension";
  Matroid m = detail::matroid_from_file_matrix(mat, std::move(labels));
  auto clique = detail::clique_labels_of(m);
  if (clique.empty())
    throw std::invalid_argument("classify-extension: no clique columns (labels starting with 'e') in input");
  rep.inputs = {{"elements", m.size()}, {"clique", clique}};
  for (const auto& id : m.ground()) {
    if (std::find(clique.begin(), clique.end(), id) != clique.end()) continue;
    auto cls = classify_extension_element(m, clique, id);
    Verdict v;
    v.claim = "extension-type-" + id;
    v.anchor = "the element is spanned by a triangle line or by the line pair of a four-element circuit";
    v.pass = cls.type != ExtensionType::OTHER;
    const char* tn = cls.type == ExtensionType::TYPE_A   ? "TYPE_A"
                     : cls.type == ExtensionType::TYPE_B ? "TYPE_B"
                                                         : "OTHER";
    v.witness = Json{{"type", tn}};
    if (!cls.line.empty()) v.witness["line"] = cls.line;
    if (!cls.circuit.empty()) v.witness["circuit"] = cls.circuit;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

inline Report cmd_analyze(const IntMatrix& mat, std::vector<std::string> labels) {
  Report rep;
  rep.command = "analyze";
  Matroid m = detail::matroid_from_file_matrix(mat, std::move(labels));
  auto clique = detail::clique_labels_of(m);
  if (clique.empty()) throw std::invalid_argument("analyze: no clique columns (labels starting with 'e') in input");
  auto a = analyze_clique_extension(m, clique);
  rep.inputs = {{"elements", m.size()},
                {"rank", m.rank()},
                {"clique", static_cast<int>(a.clique.size())},
                {"outside", static_cast<int>(a.outside.size())}};
  {
    Verdict v;
    v.claim = "outside-types";
    v.anchor = "every outside element is of triangle or circuit type";
    v.pass = a.other_count == 0;
    v.witness = {{"type_a", a.type_a_count},
                 {"type_b", a.type_b_count},
                 {"other", a.other_count},
                 {"messages", a.messages}};
    rep.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.claim = "special-point-bound";
    v.anchor = "at most 21 special points";
    v.pass = a.special_bound_holds;
    Json specials = Json::array();
    for (size_t i = 0; i < a.specials.elements.size(); ++i)
      if (a.specials.special[i]) specials.push_back(a.specials.elements[i]);
    v.witness = {{"total_special", a.specials.total_special}, {"special_elements", std::move(specials)}};
    rep.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.claim = "size-bound";
    v.anchor = "at most (r+2)(r+1)/2 - 2 elements";
    v.pass = a.size_bound_holds;
    v.witness = {{"size", m.size()}, {"bound", detail::extremal_point_count(m.rank())}};
    rep.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.claim = "circuit-pairs";
    v.anchor = "spanned four-element circuits pairwise meet in two elements inside a five-vertex subclique";
    v.pass = a.circuit_pairs_meet_in_two;
    v.witness = {{"spanning_circuits", static_cast<int>(a.spanning_circuits.size())}};
    rep.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.claim = "mixed-pairs";
    v.anchor = "triangle and circuit type pairs lie in the closure of a common four-vertex subclique";
    v.pass = a.mixed_pairs_share_clique_plane;
    v.witness = {{"spanning_lines", static_cast<int>(a.spanning_lines.size())}};
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

inline Report cmd_minor(const IntMatrix& mat, std::vector<std::string> labels, const std::string& pattern_name,
                        int cap) {
  Report rep;
  rep.command = "minor";
  rep.inputs = {{"pattern", pattern_name}, {"cap", cap}};
  Matroid host = detail::matroid_from_file_matrix(mat, std::move(labels));
  Matroid pattern = detail::pattern_by_name(pattern_name);
  auto w = has_minor(host, pattern, cap);
  Verdict v;
  v.claim = "minor-present";
  v.anchor = "the pattern arises from the host by contractions, deletions, and parallel identification";
  v.pass = w.has_value();
  if (w) {
    Json emb = Json::object();
    for (const auto& [p, h] : w->embedding) emb[p] = h;
    v.witness = {{"contracted", w->contracted}, {"deleted", w->deleted}, {"embedding", std::move(emb)}};
    if (!verify_minor_witness(host, pattern, *w)) {
      v.pass = false;
      v.witness["replay"] = "failed";
    }
  } else {
    v.witness = {{"present", false}};
  }
  rep.verdicts.push_back(std::move(v));
  return rep;
}

inline Report cmd_projections(int r, int cap) {
  if (r != 3 && r != 4) throw std::invalid_argument("projections: --r must be 3 or 4");
  Report rep;
  rep.command = "projections";
  const int flat_cap = cap > 0 ? cap : (r == 3 ? 40 : 64);
  rep.inputs = {{"r", r}, {"flat_cap", flat_cap}};
  Matroid mk = build_mk(r + 1);
  auto cuts = enumerate_modular_cuts(mk, flat_cap);
  std::vector<Matroid> forbidden = {uniform_matroid(2, 5), build_named("F7"), build_named("R9")};
  int simple_count = 0, admissible = 0, type_a = 0, type_b = 0;
  bool dichotomy = true;
  for (const auto& cut : cuts) {
    if (cut.empty()) continue;
    Matroid ext = extend(mk, cut, "x");
    if (!is_simple(ext)) continue;
    ++simple_count;
    bool minor = false;
    for (const auto& f : forbidden)
      if (has_minor(ext, f).has_value()) {
        minor = true;
        break;
      }
    auto cls = classify_extension_element(ext, mk.ground(), "x");
    if (!minor) {
      ++admissible;
      if (cls.type == ExtensionType::TYPE_A) ++type_a;
      if (cls.type == ExtensionType::TYPE_B) ++type_b;
    }
    if ((cls.type != ExtensionType::OTHER) != !minor) dichotomy = false;
  }
  {
    Verdict v;
    v.claim = "projections-dichotomy";
    v.anchor = "a simple clique extension avoids the three forbidden minors exactly when it is of triangle or circuit type";
    v.pass = dichotomy;
    v.witness = {{"modular_cuts", static_cast<int>(cuts.size())},
                 {"simple_extensions", simple_count},
                 {"admissible", admissible},
                 {"type_a", type_a},
                 {"type_b", type_b}};
    rep.verdicts.push_back(std::move(v));
  }
  {
    const int n = r + 1;
    const int exp_a = n * (n - 1) * (n - 2) / 6;
    const int exp_b = 3 * (n * (n - 1) * (n - 2) * (n - 3) / 24);
    Verdict v;
    v.claim = "projections-counts";
    v.anchor = "one admissible extension per clique triangle plus three per four-vertex subset";
    v.pass = type_a == exp_a && type_b == exp_b && admissible == exp_a + exp_b;
    v.witness = {{"type_a", type_a}, {"expected_a", exp_a}, {"type_b", type_b}, {"expected_b", exp_b}};
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

}  // namespace deltamod
