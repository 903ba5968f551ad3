#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "deltamod/constructions.hpp"
#include "deltamod/matroid.hpp"
#include "deltamod/normal_form.hpp"
#include "support/properties.hpp"

using namespace deltamod;

namespace {

std::string edge_label(int i, int j) {
  if (j < 10) return "e" + std::to_string(i) + std::to_string(j);
  return "e" + std::to_string(i) + "_" + std::to_string(j);
}

// Cycle matroid of the complete graph on vertices 1..n, represented as
// [I_{n-1} | D_{n-1}] with identity column i the edge {i, n} and difference
// column (i, j) the edge {i, j}.
Matroid mk(int n) {
  IntMatrix m = hstack(IntMatrix::identity(n - 1), build_d(n - 1));
  std::vector<std::string> labels;
  for (int i = 1; i < n; ++i) labels.push_back(edge_label(i, n));
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) labels.push_back(edge_label(i, j));
  return linear_matroid(make_representation(std::move(m), std::move(labels)));
}

// [I_r | D_r | v] with v = e_1 - e_2 - e_3; edge labels plus "e" for v.
Matroid h_matroid(int r, FieldSpec field = field_q()) {
  IntMatrix m = build_h(r);
  std::vector<std::string> labels;
  for (int i = 1; i <= r; ++i) labels.push_back(edge_label(i, r + 1));
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) labels.push_back(edge_label(i, j));
  labels.push_back("e");
  return linear_matroid(make_representation(std::move(m), std::move(labels), field));
}

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return static_cast<int>(v);
}

}  // namespace

TEST_CASE("uniform and linear oracles agree on a four-point line") {
  Matroid u24 = uniform_matroid(2, 4);
  Matroid a2 = relabel(linear_matroid(make_representation(build_a(2))), u24.ground());
  CHECK(u24.rank() == 2);
  CHECK(same_rank_function(u24, a2));
  CHECK(is_simple(u24));
}

TEST_CASE("closure basics") {
  Matroid u23 = uniform_matroid(2, 3);
  CHECK(closure(u23, u23.mask_of({"u1"})) == u23.mask_of({"u1"}));
  CHECK(closure(u23, 0) == 0);
  CHECK(closure(u23, u23.mask_of({"u1", "u2"})) == u23.full_mask());

  Matroid k4 = mk(4);
  CHECK(closure(k4, k4.mask_of({"e12", "e13"})) == k4.mask_of({"e12", "e13", "e23"}));
  CHECK(closure(k4, k4.mask_of({"e12", "e34"})) == k4.mask_of({"e12", "e34"}));

  Matroid h4 = h_matroid(4);
  SubsetMask cl_ac = closure(h4, h4.mask_of({"e12", "e35"}));
  CHECK((cl_ac & (SubsetMask{1} << h4.index_of("e"))) != 0);
}

TEST_CASE("flats of each rank") {
  Matroid u23 = uniform_matroid(2, 3);
  auto points = flats_of_rank(u23, 1);
  REQUIRE(points.size() == 3);
  for (SubsetMask f : points) CHECK(popcount_mask(f) == 1);
  CHECK(flats_of_rank(u23, 2) == std::vector<SubsetMask>{u23.full_mask()});

  Matroid k4 = mk(4);
  auto lines = flats_of_rank(k4, 2);
  CHECK(lines.size() == 7);
  int triangles = 0, matchings = 0;
  for (SubsetMask f : lines) {
    if (popcount_mask(f) == 3) ++triangles;
    if (popcount_mask(f) == 2) ++matchings;
  }
  CHECK(triangles == 4);
  CHECK(matchings == 3);
  CHECK(flats_of_rank(k4, 3) == std::vector<SubsetMask>{k4.full_mask()});
  CHECK(flats_of_rank(k4, 0) == std::vector<SubsetMask>{0});
}

TEST_CASE("epsilon counts points") {
  for (int n = 4; n <= 7; ++n) CHECK(epsilon(mk(n)) == n * (n - 1) / 2);
  for (int r = 2; r <= 6; ++r) {
    CHECK(epsilon(linear_matroid(make_representation(build_a(r)))) == binom(r + 2, 2) - 2);
    CHECK(epsilon(linear_matroid(make_representation(build_aprime(r)))) == binom(r + 2, 2) - 2);
  }
  CHECK(epsilon(uniform_matroid(1, 3)) == 1);
  CHECK(epsilon(uniform_matroid(0, 2)) == 0);
}

TEST_CASE("finite field oracle: the GF(2) seven-point plane") {
  IntMatrix f7{{1, 0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 1}};
  Matroid m = linear_matroid(make_representation(f7, field_gf(2)));
  CHECK(m.rank() == 3);
  CHECK(epsilon(m) == 7);
  auto lines = flats_of_rank(m, 2);
  REQUIRE(lines.size() == 7);
  for (SubsetMask l : lines) CHECK(popcount_mask(l) == 3);

  // the same columns over the rationals give a different matroid
  Matroid q = linear_matroid(make_representation(f7));
  CHECK_FALSE(same_rank_function(m, q));
}

TEST_CASE("contracting a point of a doubled four-point line") {
  Matroid sum = direct_sum(uniform_matroid(2, 4, "a"), uniform_matroid(2, 4, "b"));
  Matroid contracted = contract_elements(sum, {"a1"});
  Matroid expected = direct_sum(relabel(uniform_matroid(1, 3, "x"), {"a2", "a3", "a4"}), uniform_matroid(2, 4, "b"));
  CHECK(same_rank_function(contracted, expected));
}

TEST_CASE("derived operations compose correctly") {
  Matroid k5 = mk(5);

  SECTION("delete and contract commute on disjoint sets") {
    Matroid a = contract_elements(delete_elements(k5, {"e12"}), {"e34"});
    Matroid b = delete_elements(contract_elements(k5, {"e34"}), {"e12"});
    CHECK(same_rank_function(a, b));
  }

  SECTION("duality exchanges delete and contract") {
    Matroid a = dual(delete_elements(k5, {"e12", "e23"}));
    Matroid b = contract_elements(dual(k5), {"e12", "e23"});
    CHECK(same_rank_function(a, b));
  }

  SECTION("double dual is the identity on 20 generated linear matroids") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      int r = 2 + static_cast<int>(seed % 4);
      Matroid m = linear_matroid(make_representation(random_2modular_matrix(r, 2 + seed % 3, seed)));
      CHECK(same_rank_function(dual(dual(m)), m));
    }
  }

  SECTION("matrix dual agrees with the rank-function dual") {
    Representation std_form = pivot_to_standard_form(make_representation(build_a(3)), "c1");
    CHECK(same_rank_function(linear_matroid(dual_representation(std_form)), dual(linear_matroid(std_form))));
  }

  SECTION("restriction keeps the selected labels") {
    Matroid tri = restrict_to(k5, {"e12", "e13", "e23"});
    CHECK(tri.size() == 3);
    CHECK(tri.rank() == 2);
  }
}

TEST_CASE("simplification collapses parallel classes and drops loops") {
  // e_1, e_2, e_1 again, 2*e_1, and a zero column
  IntMatrix m{{1, 0, 1, 2, 0}, {0, 1, 0, 0, 0}};
  Matroid mat = linear_matroid(make_representation(m));
  SimplifyResult s = simplify(mat);
  CHECK(s.matroid.ground() == std::vector<std::string>{"c1", "c2"});
  CHECK(epsilon(mat) == 2);
  CHECK(s.representative_of.at("c3") == "c1");
  CHECK(s.representative_of.at("c4") == "c1");
  CHECK(s.representative_of.at("c1") == "c1");
  CHECK(s.representative_of.at("c2") == "c2");
  CHECK(s.representative_of.count("c5") == 0);
  CHECK_FALSE(is_simple(mat));
  CHECK(is_simple(s.matroid));

  auto classes = parallel_classes(mat);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0] == std::vector<std::string>{"c1", "c3", "c4"});
  CHECK(classes[1] == std::vector<std::string>{"c2"});

  for (std::uint64_t seed = 40; seed < 44; ++seed) {
    Matroid r = linear_matroid(make_representation(random_2modular_matrix(3, 3, seed)));
    CHECK(epsilon(r) == simplify(r).matroid.size());
  }
}

TEST_CASE("nullity and circuits") {
  Matroid u23 = uniform_matroid(2, 3);
  CHECK(nullity(u23, u23.full_mask()) == 1);
  CHECK(circuits_within(u23, u23.full_mask(), 3) == std::vector<SubsetMask>{u23.full_mask()});
  CHECK(circuits_within(u23, u23.full_mask(), 2).empty());

  Matroid k4 = mk(4);
  SubsetMask tri_plus = k4.mask_of({"e12", "e13", "e23", "e14"});
  auto circs = circuits_within(k4, tri_plus, 4);
  REQUIRE(circs.size() == 1);
  CHECK(circs[0] == k4.mask_of({"e12", "e13", "e23"}));

  // nullity one forces a unique circuit
  for (SubsetMask s : {tri_plus, k4.mask_of({"e12", "e13", "e23"}), k4.mask_of({"e12", "e23", "e13", "e34"})}) {
    if (nullity(k4, s) == 1) CHECK(circuits_within(k4, s, popcount_mask(s)).size() == 1);
  }

  // four-cycle in the graph: 1-2-3-4-1
  SubsetMask cyc = k4.mask_of({"e12", "e23", "e34", "e14"});
  CHECK(nullity(k4, cyc) == 1);
  CHECK(circuits_within(k4, cyc, 4) == std::vector<SubsetMask>{cyc});
}

TEST_CASE("local connectivity of flats") {
  Matroid k6 = mk(6);
  SubsetMask t123 = k6.mask_of({"e12", "e13", "e23"});
  SubsetMask t124 = k6.mask_of({"e12", "e14", "e24"});
  SubsetMask t456 = k6.mask_of({"e45", "e46", "e56"});
  CHECK(local_connectivity(k6, t123, t124) == 1);  // share one point
  CHECK(local_connectivity(k6, t123, t456) == 0);  // vertex-disjoint triangles
  CHECK(local_connectivity(k6, t123, t123) == k6.rank(t123));

  Matroid free = uniform_matroid(4, 4);
  CHECK(local_connectivity(free, free.mask_of({"u1", "u2"}), free.mask_of({"u3", "u4"})) == 0);
}

TEST_CASE("vertical connectivity by exhaustive scan") {
  Matroid sum = direct_sum(uniform_matroid(2, 4, "a"), uniform_matroid(2, 4, "b"));
  CHECK_FALSE(is_vertically_k_connected(sum, 3));
  CHECK_FALSE(is_vertically_k_connected(sum, 2));
  auto sep = vertical_separation_below(sum, 3);
  REQUIRE(sep.has_value());
  // the summand split itself qualifies
  SubsetMask a_side = sum.mask_of({"a1", "a2", "a3", "a4"});
  int lambda = sum.rank(a_side) + sum.rank(sum.full_mask() & ~a_side) - sum.rank();
  CHECK(lambda == 0);

  Matroid free5 = uniform_matroid(5, 5);
  CHECK(is_vertically_k_connected(free5, 1));
  CHECK_FALSE(is_vertically_k_connected(free5, 2));

  CHECK(is_vertically_k_connected(mk(5), 3));
  CHECK(is_vertically_k_connected(mk(4), 3));

  CHECK_THROWS_AS(is_vertically_k_connected(mk(8), 3), std::invalid_argument);  // above cap
}

TEST_CASE("matroid of H over GF(3) matches the rational matroid") {
  for (int r = 4; r <= 6; ++r) {
    CHECK(same_rank_function(h_matroid(r), h_matroid(r, field_gf(3))));
  }
}

TEST_CASE("rank axioms hold for every oracle implementation") {
  std::vector<Matroid> instances{
      uniform_matroid(3, 7),
      linear_matroid(make_representation(build_a(4))),
      h_matroid(4, field_gf(3)),
      contract_elements(mk(5), {"e12"}),
      dual(mk(5)),
      direct_sum(uniform_matroid(2, 4, "a"), uniform_matroid(1, 3, "b")),
      simplify(linear_matroid(make_representation(IntMatrix{{1, 0, 1, 2, 0}, {0, 1, 0, 0, 0}}))).matroid,
  };
  for (size_t i = 0; i < instances.size(); ++i) {
    auto res = props::rank_axioms_on(instances[i], 1000, 500 + i);
    INFO(res.name << " instance " << i << ": " << (res.messages.empty() ? "" : res.messages[0]));
    CHECK(res.trials == 1000);
    CHECK(res.failures == 0);
  }
}

TEST_CASE("ground set and element bookkeeping") {
  Matroid u = uniform_matroid(2, 3);
  CHECK(u.index_of("u2") == 1);
  CHECK(u.has_element("u3"));
  CHECK_FALSE(u.has_element("zz"));
  CHECK_THROWS_AS(u.index_of("zz"), std::invalid_argument);
  CHECK(u.labels_of(u.mask_of({"u3", "u1"})) == std::vector<std::string>{"u1", "u3"});
  CHECK_THROWS_AS(uniform_matroid(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(direct_sum(u, u), std::invalid_argument);

  Matroid k4 = mk(4);
  CHECK(k4.size() == 6);
  CHECK(k4.rank() == 3);
  CHECK(k4.provenance().kind == "linear");
  CHECK(dual(k4).provenance().kind == "dual");
}
