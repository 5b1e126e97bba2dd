#include "ccoh/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace ccoh {

namespace {

using Row = std::map<int, Rational>;

void check_index(const SparseRationalMatrix& m, int r, int c) {
  if (r < 0 || r >= m.rows || c < 0 || c >= m.cols) {
    throw std::out_of_range("matrix index out of range");
  }
}

/// row -= factor * other, dropping entries that cancel exactly.
void axpy_row(Row& row, const Rational& factor, const Row& other) {
  if (factor == 0) return;
  for (const auto& [c, v] : other) {
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, -factor * v);
    } else {
      it->second -= factor * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

void scale_row(Row& row, const Rational& factor) {
  for (auto& [c, v] : row) v *= factor;
}

struct Echelon {
  std::vector<Row> rows;
  std::vector<int> pivot_columns;  // pivot_columns[i] is the pivot of rows[i]
};

/// Reduced row echelon form via Gauss-Jordan elimination. Columns are
/// processed in increasing order and the pivot is the first remaining row
/// with a nonzero entry in that column, so the result is deterministic.
/// Only columns < pivot_limit are eligible as pivots; trailing columns
/// (e.g. an augmented right-hand side) are carried along.
Echelon reduce(std::vector<Row> rows, int cols, int pivot_limit) {
  Echelon out;
  out.rows = std::move(rows);
  int next_row = 0;
  for (int col = 0; col < pivot_limit && col < cols; ++col) {
    int pivot_row = -1;
    for (int i = next_row; i < static_cast<int>(out.rows.size()); ++i) {
      if (out.rows[i].count(col) != 0) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) continue;
    std::swap(out.rows[next_row], out.rows[pivot_row]);
    Row& pivot = out.rows[next_row];
    scale_row(pivot, Rational(1) / pivot.at(col));
    for (int i = 0; i < static_cast<int>(out.rows.size()); ++i) {
      if (i == next_row) continue;
      auto it = out.rows[i].find(col);
      if (it == out.rows[i].end()) continue;
      const Rational factor = it->second;  // copy: axpy_row erases *it
      axpy_row(out.rows[i], factor, pivot);
    }
    out.pivot_columns.push_back(col);
    ++next_row;
  }
  return out;
}

}  // namespace

void SparseRationalMatrix::set(int r, int c, const Rational& v) {
  check_index(*this, r, c);
  if (v == 0) {
    row_data[r].erase(c);
  } else {
    row_data[r][c] = v;
  }
}

void SparseRationalMatrix::add(int r, int c, const Rational& v) {
  check_index(*this, r, c);
  auto it = row_data[r].find(c);
  if (it == row_data[r].end()) {
    if (v != 0) row_data[r].emplace(c, v);
    return;
  }
  it->second += v;
  if (it->second == 0) row_data[r].erase(it);
}

Rational SparseRationalMatrix::get(int r, int c) const {
  check_index(*this, r, c);
  auto it = row_data[r].find(c);
  return it == row_data[r].end() ? Rational(0) : it->second;
}

long SparseRationalMatrix::nonzeros() const {
  long total = 0;
  for (const auto& row : row_data) total += static_cast<long>(row.size());
  return total;
}

std::vector<Rational> multiply(const SparseRationalMatrix& m,
                            const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != m.cols) {
    throw std::invalid_argument("vector length does not match matrix width");
  }
  std::vector<Rational> out(m.rows, Rational(0));
  for (int r = 0; r < m.rows; ++r) {
    Rational acc(0);
    for (const auto& [c, v] : m.row_data[r]) acc += v * x[c];
    out[r] = acc;
  }
  return out;
}

KernelResult kernel_and_rank(const SparseRationalMatrix& m) {
  Echelon ech = reduce(m.row_data, m.cols, m.cols);
  KernelResult out;
  out.rank = static_cast<int>(ech.pivot_columns.size());
  out.pivot_columns = ech.pivot_columns;

  std::vector<int> pivot_of_column(m.cols, -1);
  for (int i = 0; i < out.rank; ++i) pivot_of_column[ech.pivot_columns[i]] = i;

  for (int col = 0; col < m.cols; ++col) {
    if (pivot_of_column[col] >= 0) continue;
    std::vector<Rational> vec(m.cols, Rational(0));
    vec[col] = 1;
    for (int i = 0; i < out.rank; ++i) {
      auto it = ech.rows[i].find(col);
      if (it != ech.rows[i].end()) vec[ech.pivot_columns[i]] = -it->second;
    }
    out.kernel.push_back(std::move(vec));
  }
  return out;
}

int rank_of(const SparseRationalMatrix& m) {
  return static_cast<int>(reduce(m.row_data, m.cols, m.cols).pivot_columns.size());
}

std::optional<std::vector<Rational>> solve_linear_system(
    const SparseRationalMatrix& m, const std::vector<Rational>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows) {
    throw std::invalid_argument("rhs length does not match matrix height");
  }
  std::vector<Row> rows = m.row_data;
  for (int r = 0; r < m.rows; ++r) {
    if (rhs[r] != 0) rows[r][m.cols] = rhs[r];
  }
  Echelon ech = reduce(std::move(rows), m.cols + 1, m.cols);
  for (const auto& row : ech.rows) {
    if (row.size() == 1 && row.count(m.cols) != 0) return std::nullopt;
  }
  std::vector<Rational> x(m.cols, Rational(0));
  for (std::size_t i = 0; i < ech.pivot_columns.size(); ++i) {
    auto it = ech.rows[i].find(m.cols);
    if (it != ech.rows[i].end()) x[ech.pivot_columns[i]] = it->second;
  }
  return x;
}

int span_dimension(const std::vector<std::vector<Rational>>& v) {
  if (v.empty()) return 0;
  const int cols = static_cast<int>(v.front().size());
  SparseRationalMatrix m(static_cast<int>(v.size()), cols);
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(v[r].size()) != cols) {
      throw std::invalid_argument("span vectors have mixed lengths");
    }
    for (int c = 0; c < cols; ++c) {
      if (v[r][c] != 0) m.row_data[r][c] = v[r][c];
    }
  }
  return rank_of(m);
}

int intersection_dimension(const std::vector<std::vector<Rational>>& u,
                           const std::vector<std::vector<Rational>>& w) {
  const int du = span_dimension(u);
  const int dw = span_dimension(w);
  std::vector<std::vector<Rational>> both = u;
  both.insert(both.end(), w.begin(), w.end());
  return du + dw - span_dimension(both);
}

bool IncrementalSpan::insert(std::map<int, Rational> v) {
  for (auto it = v.begin(); it != v.end();) {
    it = it->second == 0 ? v.erase(it) : std::next(it);
  }
  std::size_t i = 0;
  while (!v.empty()) {
    const int lead = v.begin()->first;
    while (i < rows_.size() && rows_[i].begin()->first < lead) ++i;
    if (i < rows_.size() && rows_[i].begin()->first == lead) {
      const Rational factor = v.begin()->second;
      axpy_row(v, factor, rows_[i]);
      ++i;
    } else {
      const Rational inv = Rational(1) / v.begin()->second;
      for (auto& [c, val] : v) val *= inv;
      rows_.insert(rows_.begin() + static_cast<long>(i), std::move(v));
      return true;
    }
  }
  return false;
}

}  // namespace ccoh
