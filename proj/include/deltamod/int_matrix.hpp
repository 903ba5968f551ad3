#pragma once

#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace deltamod {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("IntMatrix: negative dimension");
  }
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  Int at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    IntMatrix s(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
    for (size_t i = 0; i < row_idx.size(); ++i)
      for (size_t j = 0; j < col_idx.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
    return s;
  }

  IntMatrix columns(const std::vector<int>& col_idx) const {
    std::vector<int> all_rows(rows_);
    for (int i = 0; i < rows_; ++i) all_rows[i] = i;
    return submatrix(all_rows, col_idx);
  }

  std::vector<Int> column(int j) const {
    std::vector<Int> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<Int> row(int i) const {
    std::vector<Int> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  void set_column(int j, const std::vector<Int>& c) {
    for (int i = 0; i < rows_; ++i) at(i, j) = c[i];
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row counts differ");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

// Text format: first line "ROWS COLS", then ROWS lines of space-separated
// decimal integers; comment lines start with '#'. Labels round-trip through a
// "# labels: a b c" comment after the numeric block.
inline std::string to_text(const IntMatrix& m, const std::vector<std::string>* labels = nullptr) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
  if (labels) {
    out << "# labels:";
    for (const auto& l : *labels) out << ' ' << l;
    out << '\n';
  }
  return out.str();
}

inline IntMatrix parse_matrix_text(const std::string& text, std::vector<std::string>* labels_out = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> data_lines;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      std::istringstream cs(line.substr(pos + 1));
      std::string word;
      cs >> word;
      if (word == "labels:") {
        labels.clear();
        while (cs >> word) labels.push_back(word);
      }
      continue;
    }
    data_lines.push_back(line);
  }
  if (data_lines.empty()) throw std::invalid_argument("matrix text: no data");
  std::istringstream hs(data_lines[0]);
  long long r = 0, c = 0;
  if (!(hs >> r >> c) || r < 0 || c < 0) throw std::invalid_argument("matrix text: bad header");
  std::string extra;
  if (hs >> extra) throw std::invalid_argument("matrix text: bad header");
  if (static_cast<long long>(data_lines.size()) != r + 1) throw std::invalid_argument("matrix text: row count mismatch");
  IntMatrix m(static_cast<int>(r), static_cast<int>(c));
  for (long long i = 0; i < r; ++i) {
    std::istringstream rs(data_lines[static_cast<size_t>(i) + 1]);
    for (long long j = 0; j < c; ++j) {
      std::string tok;
      if (!(rs >> tok)) throw std::invalid_argument("matrix text: short row");
      try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing junk");
        m.at(static_cast<int>(i), static_cast<int>(j)) = v;
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix text: bad entry '" + tok + "'");
      }
    }
    if (rs >> extra) throw std::invalid_argument("matrix text: long row");
  }
  if (labels_out) {
    if (!labels.empty() && static_cast<long long>(labels.size()) != c)
      throw std::invalid_argument("matrix text: label count mismatch");
    *labels_out = labels;
  }
  return m;
}

}  // namespace deltamod
