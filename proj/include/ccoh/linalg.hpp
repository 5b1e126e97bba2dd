#pragma once
/// @file linalg.hpp
/// @brief Exact rational sparse matrices and Gauss-Jordan elimination with a
///        deterministic pivot rule (columns left to right, first available
///        row). Used for kernel/rank computations, linear solves, and span
///        dimensions over coordinate vectors.

#include <map>
#include <optional>
#include <vector>

#include "ccoh/rational.hpp"

namespace ccoh {

struct SparseRationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::map<int, Rational>> row_data;

  SparseRationalMatrix() = default;
  SparseRationalMatrix(int rows, int cols) : rows(rows), cols(cols) {
    row_data.resize(rows);
  }

  void set(int r, int c, const Rational& v);
  void add(int r, int c, const Rational& v);
  [[nodiscard]] Rational get(int r, int c) const;
  [[nodiscard]] long nonzeros() const;
};

/// Matrix-vector product (x has length cols).
[[nodiscard]] std::vector<Rational> multiply(const SparseRationalMatrix& m,
                                          const std::vector<Rational>& x);

struct KernelResult {
  int rank = 0;
  std::vector<int> pivot_columns;
  /// Kernel basis vectors of length cols, one per free column, with the
  /// free coordinate normalized to one.
  std::vector<std::vector<Rational>> kernel;
};

[[nodiscard]] KernelResult kernel_and_rank(const SparseRationalMatrix& m);
[[nodiscard]] int rank_of(const SparseRationalMatrix& m);

/// Exact solution of m x = rhs (free coordinates set to zero), or nullopt
/// when the system is inconsistent.
[[nodiscard]] std::optional<std::vector<Rational>> solve_linear_system(
    const SparseRationalMatrix& m, const std::vector<Rational>& rhs);

/// Dimension of the span of the given coordinate vectors.
[[nodiscard]] int span_dimension(const std::vector<std::vector<Rational>>& v);

/// dim(span u intersect span w) = dim u + dim w - dim(u + w).
[[nodiscard]] int intersection_dimension(
    const std::vector<std::vector<Rational>>& u,
    const std::vector<std::vector<Rational>>& w);

/// Growing echelon basis over sparse coordinate vectors; used to track span
/// dimensions incrementally while streams of vectors are produced.
class IncrementalSpan {
 public:
  /// Reduces v against the stored rows; a surviving remainder is normalized
  /// and inserted. Returns whether the dimension grew.
  bool insert(std::map<int, Rational> v);
  [[nodiscard]] int dimension() const { return static_cast<int>(rows_.size()); }
  [[nodiscard]] const std::vector<std::map<int, Rational>>& rows() const {
    return rows_;
  }

 private:
  std::vector<std::map<int, Rational>> rows_;  // ordered by leading coordinate
};

}  // namespace ccoh
