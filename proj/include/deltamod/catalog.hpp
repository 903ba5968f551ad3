#pragma once

#include <functional>
#include <string>

#include "deltamod/constructions.hpp"
#include "deltamod/extensions.hpp"
#include "deltamod/matroid.hpp"

namespace deltamod {

// "e12" for the clique edge {1,2}; underscore separator once a vertex number
// needs two digits, so labels stay unambiguous ("e1_12" vs "e11_2").
inline std::string edge_label(int i, int j) {
  if (i > j) std::swap(i, j);
  if (j < 10) return "e" + std::to_string(i) + std::to_string(j);
  return "e" + std::to_string(i) + "_" + std::to_string(j);
}

// Cycle matroid of K_n as the rational linear matroid of [I_{n-1} | D_{n-1}]:
// column e_i is the edge {i,n}, column e_i - e_j the edge {i,j}.
inline Matroid build_mk(int n) {
  if (n < 2) throw std::invalid_argument("build_mk: need n >= 2");
  std::vector<std::string> labels;
  for (int i = 1; i < n; ++i) labels.push_back(edge_label(i, n));
  IntMatrix m = IntMatrix::identity(n - 1);
  if (n >= 3) {
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j) labels.push_back(edge_label(i, j));
    m = hstack(m, build_d(n - 1));
  }
  return linear_matroid(make_representation(m, labels));
}

inline Representation build_a_rep(int r) { return make_representation(build_a(r)); }

inline Representation build_aprime_rep(int r) { return make_representation(build_aprime(r)); }

// H_r = [I_r | D_r | v] with v = e1 - e2 - e3. The clique part carries the
// edge labels of K_{r+1}; the extra column is labeled "e".
inline Representation build_h_rep(int r, FieldSpec field = field_q()) {
  std::vector<std::string> labels;
  for (int i = 1; i <= r; ++i) labels.push_back(edge_label(i, r + 1));
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) labels.push_back(edge_label(i, j));
  labels.push_back("e");
  return make_representation(build_h(r), labels, field);
}

namespace detail {

inline Matroid named_f7() {
  IntMatrix m(3, 7);
  const int cols[7][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 3; ++i) m.at(i, j) = cols[j][i];
  std::vector<std::string> labels;
  for (int j = 1; j <= 7; ++j) labels.push_back("f" + std::to_string(j));
  return linear_matroid(make_representation(m, labels, field_gf(2)));
}

// Ternary Reid geometry: long lines L1 = {x,a1,a2,a3}, L2 = {x,b1,b2,b3},
// L3 = {x,y,z}, with y and z each on four long lines.
inline Matroid named_r9() {
  IntMatrix m(3, 9);
  const int cols[9][3] = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}, {0, 0, 1},
                          {1, 0, 1}, {1, 0, 2}, {0, 1, 1}, {1, 1, 1}};
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 3; ++i) m.at(i, j) = cols[j][i];
  std::vector<std::string> labels{"x", "a1", "a2", "a3", "b1", "b2", "b3", "y", "z"};
  return linear_matroid(make_representation(m, labels, field_gf(3)));
}

// Affine plane AG(2,3) as the columns (1,a,b), with the point (2,2) removed.
inline Matroid named_ag23_minus_e() {
  IntMatrix m(3, 8);
  std::vector<std::string> labels;
  int j = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == 2 && b == 2) continue;
      m.at(0, j) = 1;
      m.at(1, j) = a;
      m.at(2, j) = b;
      labels.push_back("p" + std::to_string(a) + std::to_string(b));
      ++j;
    }
  return linear_matroid(make_representation(m, labels, field_gf(3)));
}

// Self-dual ternary spike with the tip deleted: legs e_i, e_i + t for the
// tip direction t = (1,1,1,1), giving [I_4 | J + I] over GF(3).
inline Matroid named_t8() {
  IntMatrix m(4, 8);
  for (int i = 0; i < 4; ++i) {
    m.at(i, i) = 1;
    for (int k = 0; k < 4; ++k) m.at(k, 4 + i) = (k == i) ? 2 : 1;
  }
  std::vector<std::string> labels;
  for (int j = 1; j <= 8; ++j) labels.push_back("t" + std::to_string(j));
  return linear_matroid(make_representation(m, labels, field_gf(3)));
}

inline Matroid named_u8(bool prime) {
  const Int plain[4][8] = {{1, 0, 1, 1, 0, 0, 1, 0},
                           {0, 1, 1, -1, 0, 0, 0, 1},
                           {0, 0, 0, 0, 1, 1, 0, -1},
                           {0, 0, 0, 0, 1, -1, -1, 0}};
  const Int primed[4][8] = {{1, 0, 1, 1, 0, 0, 0, 0},
                            {0, 1, 1, -1, 0, 0, 0, 1},
                            {0, 0, 0, 0, 1, 1, 0, -1},
                            {0, 0, 0, 0, 1, -1, 1, 0}};
  IntMatrix m(4, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) m.at(i, j) = prime ? primed[i][j] : plain[i][j];
  return linear_matroid(make_representation(m));
}

}  // namespace detail

// Named matroids: "U(m,n)", "MK(n)", "F7", "R9", "AG23_minus_e", "T8", "U8",
// "U8prime".
inline Matroid build_named(const std::string& name) {
  auto parse_args = [&name]() {
    std::vector<int> out;
    auto open = name.find('('), close = name.rfind(')');
    if (open == std::string::npos || close != name.size() - 1)
      throw std::invalid_argument("build_named: malformed name " + name);
    std::string inner = name.substr(open + 1, close - open - 1), cur;
    for (char ch : inner + ",") {
      if (ch == ',') {
        if (cur.empty() || cur.find_first_not_of("0123456789") != std::string::npos)
          throw std::invalid_argument("build_named: malformed name " + name);
        out.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    return out;
  };
  if (name.rfind("U(", 0) == 0) {
    auto args = parse_args();
    if (args.size() != 2) throw std::invalid_argument("build_named: U(m,n) takes two parameters");
    return uniform_matroid(args[0], args[1]);
  }
  if (name.rfind("MK(", 0) == 0) {
    auto args = parse_args();
    if (args.size() != 1) throw std::invalid_argument("build_named: MK(n) takes one parameter");
    return build_mk(args[0]);
  }
  if (name == "F7") return detail::named_f7();
  if (name == "R9") return detail::named_r9();
  if (name == "AG23_minus_e") return detail::named_ag23_minus_e();
  if (name == "T8") return detail::named_t8();
  if (name == "U8") return detail::named_u8(false);
  if (name == "U8prime") return detail::named_u8(true);
  throw std::invalid_argument(
      "build_named: unknown name " + name +
      " (supported: U(m,n), MK(n), F7, R9, AG23_minus_e, T8, U8, U8prime)");
}

enum class BuildRoute { MATRIX, PROJECTION };

namespace detail {

inline void check_route_args(int r, BuildRoute via, const char* who) {
  if (r < 2) throw std::invalid_argument(std::string(who) + ": need r >= 2");
  if (via == BuildRoute::PROJECTION && r < 3)
    throw std::invalid_argument(std::string(who) + ": projection route needs r >= 3");
}

}  // namespace detail

// T_r: matroid of A_r, or equivalently the simplification of M(K_{r+2})
// projected by an element freely added to the triangle {e12, e13, e23}.
inline Matroid build_t(int r, BuildRoute via) {
  detail::check_route_args(r, via, "build_t");
  if (via == BuildRoute::MATRIX) return linear_matroid(build_a_rep(r));
  Matroid mk = build_mk(r + 2);
  ModularCut cut = principal_modular_cut(mk, {"e12", "e13", "e23"});
  return simplify(elementary_projection(mk, cut, "e")).matroid;
}

// T'_r: matroid of A'_r, or equivalently the simplification of M(K_{r+2})
// projected along the cut generated by the 2-point lines {e12, e(3,n)} and
// {e13, e(2,n)}, n = r+2, whose union is a 4-element circuit.
inline Matroid build_tprime(int r, BuildRoute via) {
  detail::check_route_args(r, via, "build_tprime");
  if (via == BuildRoute::MATRIX) return linear_matroid(build_aprime_rep(r));
  int n = r + 2;
  Matroid mk = build_mk(n);
  ModularCut cut = modular_cut_from_flats(
      mk, std::vector<std::vector<std::string>>{{"e12", edge_label(3, n)}, {"e13", edge_label(2, n)}});
  return simplify(elementary_projection(mk, cut, "e")).matroid;
}

// Fixed-size catalog entries with their documented rank, size, and point
// count, so they can be revalidated on construction.
struct CatalogEntry {
  std::string name;
  int rank = 0, size = 0, points = 0;
  std::function<Matroid()> build;
};

inline std::vector<CatalogEntry> catalog_entries() {
  auto by_name = [](std::string n) {
    return [n = std::move(n)] { return build_named(n); };
  };
  return {
      {"U(2,4)", 2, 4, 4, by_name("U(2,4)")},
      {"MK(5)", 4, 10, 10, by_name("MK(5)")},
      {"F7", 3, 7, 7, by_name("F7")},
      {"R9", 3, 9, 9, by_name("R9")},
      {"AG23_minus_e", 3, 8, 8, by_name("AG23_minus_e")},
      {"T8", 4, 8, 8, by_name("T8")},
      {"U8", 4, 8, 8, by_name("U8")},
      {"U8prime", 4, 8, 8, by_name("U8prime")},
  };
}

}  // namespace deltamod
