/**
 * @file linalg.hpp
 * @brief Exact linear algebra over prime fields F_p.
 *
 * Two engines: a dense matrix type with the usual reductions (module theory,
 * structure constants) and an incremental row reducer that consumes equation
 * rows one at a time, keeping one reduced pivot row per column.  The reducer
 * accepts an affine right-hand side so linear-system solving and consistency
 * checks use the same code path.  For p = 2 rows are bit-packed into 64-bit
 * words, which matters for the quadratically large cocycle systems.
 */
#ifndef CHEVLAB_LINALG_HPP
#define CHEVLAB_LINALG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevlab/util.hpp"

namespace chevlab {

/// Dense matrix over F_p with row-major int entries in [0, p).
struct FpMat {
  int p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<int> a;

  FpMat() = default;
  FpMat(int p_, int rows_, int cols_) : p(p_), rows(rows_), cols(cols_), a(std::size_t(rows_) * cols_, 0) {}

  int& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  int at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  static FpMat identity(int p, int n);
  FpMat mul(const FpMat& other) const;
  std::vector<int> apply(const std::vector<int>& v) const;
  FpMat transpose() const;
  bool operator==(const FpMat& other) const { return p == other.p && rows == other.rows && cols == other.cols && a == other.a; }
};

/// Row-echelon reduction in place; returns pivot column of each pivot row.
std::vector<int> rrefInPlace(FpMat& m);

int rankOf(FpMat m);

/// Basis of the right kernel {x : m x = 0}, one column vector per row.
std::vector<std::vector<int>> kernelBasis(const FpMat& m);

/// Inverse of a square matrix; nullopt if singular.
std::optional<FpMat> inverseOf(const FpMat& m);

/// Solves m x = b; nullopt if inconsistent.  Free variables are set to zero.
std::optional<std::vector<int>> solve(const FpMat& m, const std::vector<int>& b);

/// Span of a set of vectors, kept in reduced row-echelon form.  Supports
/// incremental growth, membership tests and canonical keys.
class FpSpan {
public:
  FpSpan(int p, int dim) : p_(p), dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return int(rows_.size()); }

  /// Adds a vector; returns true if it enlarged the span.
  bool add(const std::vector<int>& v);
  bool contains(const std::vector<int>& v) const;
  bool containsSpan(const FpSpan& other) const;
  /// Reduces v modulo the span (the residual after elimination).
  std::vector<int> reduce(const std::vector<int>& v) const;

  const std::vector<std::vector<int>>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Deterministic canonical key (RREF rows concatenated).
  std::string key() const;

  bool operator==(const FpSpan& o) const { return rows_ == o.rows_; }

private:
  int p_;
  int dim_;
  std::vector<std::vector<int>> rows_;  // reduced, pivot-normalised
  std::vector<int> pivots_;
};

/// Incremental Gaussian eliminator over F_p.  Rows are fed one at a time,
/// reduced against the current pivot rows and either absorbed (rank +1),
/// discarded (reduced to zero with zero right-hand side) or recorded as an
/// inconsistency (zero row, nonzero right-hand side).  Memory is bounded by
/// (number of pivots) x (row length), independent of how many rows stream by.
class RowReducer {
public:
  /// cols coefficient columns; rhsLen affine columns (0 for homogeneous use).
  RowReducer(int p, int cols, int rhsLen = 0);

  /// Feeds one row.  Returns false only when the row is inconsistent with
  /// the rows seen so far; such rows are counted but not stored.
  bool addRow(const std::vector<int>& coeffs, const std::vector<int>& rhs = {});

  int rank() const { return rank_; }
  bool consistent() const { return inconsistentRows_ == 0; }
  std::int64_t inconsistentRows() const { return inconsistentRows_; }
  int cols() const { return cols_; }

  /// Back-substituted solution of the affine system with free variables set
  /// to zero; nullopt if any inconsistency was seen.  Component r of the
  /// result is the solution for right-hand-side column r.
  std::optional<std::vector<std::vector<int>>> solution() const;

private:
  struct Row {
    std::vector<std::uint64_t> bits;  // p == 2 storage, coeffs then rhs
    std::vector<int> vals;            // odd p storage, coeffs then rhs
  };

  bool rowIsZeroCoeffs(const Row& r) const;
  bool rowIsZeroRhs(const Row& r) const;
  int firstCoeffCol(const Row& r) const;
  void normalise(Row& r, int pivot);
  void eliminate(Row& target, const Row& pivotRow, int pivotCol);

  int p_;
  int cols_;
  int rhsLen_;
  int words_;  // packed words per row when p == 2
  std::vector<int> pivotRowOfCol_;
  std::vector<Row> rows_;
  std::vector<int> pivotColOfRow_;
  int rank_ = 0;
  std::int64_t inconsistentRows_ = 0;
};

}  // namespace chevlab

#endif
