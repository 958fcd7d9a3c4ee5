#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace linfix {

/// Dense real vector holding a matrix-vector product.
using StateVector = std::vector<double>;
/// Dense 0/1 interpretation vector.
using BitVector = std::vector<std::uint8_t>;

/// Entries below this are dropped by matmul unless the caller asks otherwise.
inline constexpr double kDropTolerance = 1e-12;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double weight;
};

/// Row-major compressed sparse matrix with strictly positive weights.
///
/// Each row's column indices are sorted and unique. Built either from
/// triplets (duplicates summed) or row by row through Builder.
class SparseMatrix {
 public:
  class Builder {
   public:
    Builder(std::size_t rows, std::size_t cols);

    /// Adds to the current row; duplicate columns are summed on finish_row().
    void add(std::size_t col, double weight);
    void finish_row();
    SparseMatrix build() &&;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
  };

  SparseMatrix() : row_ptr_(1, 0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static SparseMatrix from_dense(const std::vector<std::vector<double>>& dense);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return val_.size(); }
  /// nnz / (rows * cols); 0 for an empty shape.
  double density() const noexcept;

  std::span<const std::uint32_t> row_columns(std::size_t i) const {
    return {col_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_weights(std::size_t i) const {
    return {val_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::size_t row_nnz(std::size_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }
  double row_sum(std::size_t i) const;
  double at(std::size_t i, std::size_t j) const;

  /// The first `keep` columns.
  SparseMatrix truncate_columns(std::size_t keep) const;
  /// The first `keep` rows.
  SparseMatrix truncate_rows(std::size_t keep) const;
  /// Same shape with the rows flagged in `clear` emptied.
  SparseMatrix clear_rows(std::span<const std::uint8_t> clear) const;

  std::vector<std::vector<double>> to_dense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<double> val_;
};

/// m * v. Throws std::invalid_argument when v.size() != m.cols().
StateVector matvec(const SparseMatrix& m, std::span<const std::uint8_t> v);
StateVector matvec(const SparseMatrix& m, std::span<const double> v);

/// a * b, dropping entries below `drop_below`.
SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b, double drop_below = kDropTolerance);

/// mq^(2^k) by k squarings; k = 0 returns mq.
SparseMatrix gamma_k(const SparseMatrix& mq, std::size_t k, double drop_below = kDropTolerance);

/// Entrywise sum. With `require_disjoint_rows`, a row populated in both
/// operands is an error.
SparseMatrix add_matrices(const SparseMatrix& a, const SparseMatrix& b, bool require_disjoint_rows = false);

/// Replaces every entry of a row by 1 / (entries in that row). Keeps the
/// sparsity pattern, which is all a 0/1 threshold of a row-stochastic matrix
/// depends on.
SparseMatrix uniform_row_weights(const SparseMatrix& m);

/// Text dump: "rows cols nnz" then one "row col weight" line per entry,
/// weights with 17 significant digits.
void write_matrix(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_matrix(std::istream& in);

}  // namespace linfix
