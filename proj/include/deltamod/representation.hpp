#pragma once

#include <set>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

// characteristic 0 = rationals, otherwise the prime p of GF(p).
struct FieldSpec {
  int characteristic = 0;
  bool is_q() const { return characteristic == 0; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
  std::string name() const { return is_q() ? "Q" : "GF(" + std::to_string(characteristic) + ")"; }
};

inline FieldSpec field_q() { return {0}; }
inline FieldSpec field_gf(int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw std::invalid_argument("field_gf: unsupported prime");
  return {p};
}

struct Representation {
  IntMatrix matrix;
  std::vector<std::string> labels;  // one per column, distinct
  FieldSpec field;

  void validate() const {
    if (static_cast<int>(labels.size()) != matrix.cols())
      throw std::invalid_argument("Representation: label count != columns");
    std::set<std::string> s(labels.begin(), labels.end());
    if (s.size() != labels.size()) throw std::invalid_argument("Representation: duplicate labels");
  }

  // Canonical residues for finite fields; no-op over the rationals.
  void canonicalize() {
    if (field.is_q()) return;
    int p = field.characteristic;
    for (int i = 0; i < matrix.rows(); ++i)
      for (int j = 0; j < matrix.cols(); ++j) {
        Int v = matrix.at(i, j) % p;
        if (v < 0) v += p;
        matrix.at(i, j) = v;
      }
  }

  int column_of(const std::string& label) const {
    for (size_t j = 0; j < labels.size(); ++j)
      if (labels[j] == label) return static_cast<int>(j);
    throw std::invalid_argument("Representation: unknown label " + label);
  }
};

inline Representation make_representation(IntMatrix m, FieldSpec field = field_q(), const std::string& prefix = "c") {
  Representation rep;
  rep.labels.reserve(m.cols());
  for (int j = 0; j < m.cols(); ++j) rep.labels.push_back(prefix + std::to_string(j + 1));
  rep.matrix = std::move(m);
  rep.field = field;
  rep.canonicalize();
  return rep;
}

inline Representation make_representation(IntMatrix m, std::vector<std::string> labels, FieldSpec field = field_q()) {
  Representation rep{std::move(m), std::move(labels), field};
  rep.validate();
  rep.canonicalize();
  return rep;
}

}  // namespace deltamod
