#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "deltamod/constructions.hpp"
#include "deltamod/normal_form.hpp"
#include "deltamod/search.hpp"
#include "support/oracles.hpp"

using namespace deltamod;

namespace {

int rank_of_labels(const Representation& rep, const std::vector<std::string>& subset) {
  std::vector<int> idx;
  for (const auto& l : subset) idx.push_back(rep.column_of(l));
  return rank(rep.matrix.columns(idx));
}

// Exhaustive labeled rank-function comparison over all 2^n subsets.
bool same_labeled_rank_function(const Representation& a, const Representation& b) {
  if (a.labels.size() != b.labels.size()) return false;
  std::vector<std::string> ground = a.labels;
  for (const auto& l : ground) {
    bool found = false;
    for (const auto& m : b.labels) found |= (l == m);
    if (!found) return false;
  }
  const int n = static_cast<int>(ground.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::string> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) subset.push_back(ground[i]);
    if (rank_of_labels(a, subset) != rank_of_labels(b, subset)) return false;
  }
  return true;
}

bool is_standard_form(const IntMatrix& m) {
  if (m.cols() < m.rows()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.rows(); ++j)
      if (m.at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

// Seeded unimodular row scramble plus column permutation, labels carried.
Representation scramble(const Representation& rep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Representation out = rep;
  const int r = out.matrix.rows(), n = out.matrix.cols();
  for (int t = 0; t < 2 * r + 3; ++t) {
    int i = static_cast<int>(rng() % r);
    int j = static_cast<int>(rng() % r);
    while (r > 1 && j == i) j = static_cast<int>(rng() % r);
    switch (rng() % 3) {
      case 0:
        if (i != j) {
          Int c = (rng() % 2) ? 1 : -1;
          for (int col = 0; col < n; ++col) out.matrix.at(i, col) += c * out.matrix.at(j, col);
        }
        break;
      case 1:
        for (int col = 0; col < n; ++col) std::swap(out.matrix.at(i, col), out.matrix.at(j, col));
        break;
      default:
        for (int col = 0; col < n; ++col) out.matrix.at(i, col) = -out.matrix.at(i, col);
        break;
    }
  }
  for (int c = n - 1; c > 0; --c) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(c + 1));
    if (j != c) {
      for (int i = 0; i < r; ++i) std::swap(out.matrix.at(i, c), out.matrix.at(i, j));
      std::swap(out.labels[c], out.labels[j]);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("pivot on a standard-form input permutes at most the rows") {
  Representation rep = make_representation(hstack(IntMatrix::identity(3), build_d(3)));
  Representation out = pivot_to_standard_form(rep, "c1");

  REQUIRE(is_standard_form(out.matrix));
  CHECK(out.labels[0] == "c1");
  CHECK(is_totally_delta_modular(out.matrix, 2));

  std::vector<std::string> sorted_in = rep.labels, sorted_out = out.labels;
  std::sort(sorted_in.begin(), sorted_in.end());
  std::sort(sorted_out.begin(), sorted_out.end());
  REQUIRE(sorted_in == sorted_out);

  // some single row permutation maps every input column to its output column
  std::vector<int> p{0, 1, 2};
  bool matched = false;
  do {
    bool ok = true;
    for (const auto& l : rep.labels) {
      auto in_col = rep.matrix.column(rep.column_of(l));
      auto out_col = out.matrix.column(out.column_of(l));
      for (int i = 0; i < 3 && ok; ++i) ok = (out_col[p[i]] == in_col[i]);
      if (!ok) break;
    }
    matched |= ok;
  } while (!matched && std::next_permutation(p.begin(), p.end()));
  CHECK(matched);

  CHECK(same_labeled_rank_function(rep, out));
}

TEST_CASE("pivot recovers standard form from scrambled inputs with the rank function intact") {
  Representation base = make_representation(build_a(3));
  for (std::uint64_t seed : {11u, 22u, 33u, 44u}) {
    Representation in = scramble(base, seed);
    for (const auto& e : in.labels) {
      Representation out = pivot_to_standard_form(in, e);
      REQUIRE(is_standard_form(out.matrix));
      CHECK(out.labels[0] == e);
      CHECK(is_totally_delta_modular(out.matrix, 2));
      CHECK(same_labeled_rank_function(in, out));
    }
  }
}

TEST_CASE("pivot rejects inputs that are not 2-modular") {
  Representation bad = make_representation(IntMatrix{{1, 1, 1}, {0, 2, 3}});
  CHECK(is_delta_modular(bad.matrix, 3));
  CHECK_FALSE(is_delta_modular(bad.matrix, 2));
  CHECK_THROWS_WITH(pivot_to_standard_form(bad, "c2"), "input not 2-modular");

  // 3-modular in every standardization attempt, so every choice of e fails
  for (const auto& e : bad.labels) CHECK_THROWS_WITH(pivot_to_standard_form(bad, e), "input not 2-modular");
}

TEST_CASE("pivot input validation") {
  Representation rep = make_representation(IntMatrix{{1, 0, 0}, {0, 1, 0}});
  CHECK_THROWS_AS(pivot_to_standard_form(rep, "c3"), std::invalid_argument);  // loop column
  CHECK_THROWS_AS(pivot_to_standard_form(rep, "zz"), std::invalid_argument);  // unknown label

  Representation dep = make_representation(IntMatrix{{1, 1}, {1, 1}});
  CHECK_THROWS_AS(pivot_to_standard_form(dep, "c1"), std::invalid_argument);  // dependent rows

  Representation gf = make_representation(IntMatrix{{1, 0}, {0, 1}}, field_gf(3));
  CHECK_THROWS_AS(pivot_to_standard_form(gf, "c1"), std::invalid_argument);  // finite field
}

TEST_CASE("pivot standardizes inputs without a unimodular basis through e") {
  // the only basis through c1 has determinant two
  Representation rep = make_representation(IntMatrix{{2, 4}, {1, 3}});
  Representation out = pivot_to_standard_form(rep, "c1");
  REQUIRE(is_standard_form(out.matrix));
  CHECK(out.labels[0] == "c1");
  CHECK(same_labeled_rank_function(rep, out));

  Representation neg = make_representation(IntMatrix{{-1, 0, 1}, {0, -1, 1}});
  Representation nout = pivot_to_standard_form(neg, "c3");
  REQUIRE(is_standard_form(nout.matrix));
  CHECK(nout.labels[0] == "c3");
  CHECK(same_labeled_rank_function(neg, nout));
}

TEST_CASE("dual of a one-column extension of the identity") {
  Representation rep = make_representation(IntMatrix{{1, 0, 1}, {0, 1, 1}});
  Representation dual = dual_representation(rep);

  REQUIRE(dual.matrix.rows() == 1);
  REQUIRE(dual.matrix.cols() == 3);
  CHECK(dual.matrix == IntMatrix{{1, -1, -1}});
  CHECK(dual.labels == std::vector<std::string>{"c3", "c1", "c2"});

  // rank function is the dual of the input's: r*(S) = |S| - r(E) + r(E - S)
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    std::vector<std::string> inside, outside;
    for (int i = 0; i < 3; ++i)
      ((mask >> i) & 1 ? inside : outside).push_back(rep.labels[i]);
    int expect = static_cast<int>(inside.size()) - rank(rep.matrix) + rank_of_labels(rep, outside);
    CHECK(rank_of_labels(dual, inside) == expect);
  }

  Representation back = dual_representation(dual);
  CHECK(back.matrix == rep.matrix);
  CHECK(back.labels == rep.labels);
}

TEST_CASE("dual of standardized A_4 is totally 2-modular and satisfies the duality laws") {
  Representation rep = pivot_to_standard_form(make_representation(build_a(4)), "c1");
  Representation dual = dual_representation(rep);

  const int n = rep.matrix.cols();
  REQUIRE(dual.matrix.rows() == n - 4);
  CHECK(rank(dual.matrix) == n - rank(rep.matrix));
  CHECK(is_totally_delta_modular(dual.matrix, 2));

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::string> inside, outside;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1 ? inside : outside).push_back(rep.labels[i]);
    int expect = static_cast<int>(inside.size()) - rank(rep.matrix) + rank_of_labels(rep, outside);
    REQUIRE(rank_of_labels(dual, inside) == expect);
  }

  Representation back = dual_representation(dual);
  CHECK(same_labeled_rank_function(back, rep));
  CHECK(back.matrix == rep.matrix);
}

TEST_CASE("dual rejects inputs without a leading identity block") {
  Representation rep = make_representation(IntMatrix{{1, 1, 0}, {0, 1, 1}});
  CHECK_THROWS_AS(dual_representation(rep), std::invalid_argument);
}

TEST_CASE("dual of a square identity is the rank-zero representation") {
  Representation rep = make_representation(IntMatrix::identity(2));
  Representation dual = dual_representation(rep);
  CHECK(dual.matrix.rows() == 0);
  CHECK(dual.matrix.cols() == 2);
  CHECK(rank(dual.matrix) == 0);
}

TEST_CASE("generated 2-modular inputs standardize with rank function preserved") {
  // A few 2-modular pairs (matrix, e) have no integer standard form at all,
  // e.g. when e is an all-even column with no odd companion relation. At
  // least the r columns inherited from the identity block always work, so
  // every column is tried and at least r of them must standardize.
  int trials = 0;
  for (std::uint64_t seed = 1; seed <= 108; ++seed) {
    int r = 2 + static_cast<int>(seed % 4);        // ranks 2..5
    int extra = static_cast<int>((seed / 4) % 4);  // 0..3 extra columns
    IntMatrix m = random_2modular_matrix(r, extra, seed);
    REQUIRE(is_delta_modular(m, 2));
    Representation in = make_representation(m);

    int successes = 0;
    for (const auto& e : in.labels) {
      bool zero = true;
      for (int i = 0; i < r; ++i) zero &= (m.at(i, in.column_of(e)) == 0);
      if (zero) continue;
      Representation out;
      try {
        out = pivot_to_standard_form(in, e);
      } catch (const std::runtime_error& ex) {
        REQUIRE(std::string(ex.what()) == "input not 2-modular");
        continue;
      }
      ++successes;
      REQUIRE(is_standard_form(out.matrix));
      REQUIRE(out.labels[0] == e);
      REQUIRE(is_totally_delta_modular(out.matrix, 2));
      for (int i = 0; i < out.matrix.rows(); ++i)
        for (int j = 0; j < out.matrix.cols(); ++j) REQUIRE(std::llabs(out.matrix.at(i, j)) <= 2);
      REQUIRE(same_labeled_rank_function(in, out));
    }
    REQUIRE(successes >= r);
    ++trials;
  }
  CHECK(trials >= 100);
}

TEST_CASE("random 2-modular generator is deterministic and unimodular at zero extra columns") {
  IntMatrix a = random_2modular_matrix(4, 3, 7);
  IntMatrix b = random_2modular_matrix(4, 3, 7);
  CHECK(a == b);
  IntMatrix c = random_2modular_matrix(4, 3, 8);
  CHECK(a != c);

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    IntMatrix sq = random_2modular_matrix(3, 0, seed);
    BigInt d = det(sq);
    CHECK((d == 1 || d == -1));
    Representation out = pivot_to_standard_form(make_representation(sq), "c2");
    CHECK(out.matrix == IntMatrix::identity(3));
    CHECK(out.labels[0] == "c2");
  }

  CHECK_THROWS_AS(random_2modular_matrix(9, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_2modular_matrix(0, 1, 1), std::invalid_argument);
}

TEST_CASE("generator samples stay 2-modular at larger sizes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    IntMatrix m = random_2modular_matrix(4, 5, 1000 + seed);
    CHECK(is_delta_modular(m, 2));
    CHECK(rank(m) == 4);
  }
}
