#include "linfix/sparse_matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace linfix {

SparseMatrix::Builder::Builder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (cols > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("column count exceeds 32-bit index range");
  row_ptr_.reserve(rows + 1);
  row_ptr_.push_back(0);
}

void SparseMatrix::Builder::add(std::size_t col, double weight) {
  if (col >= cols_) throw std::out_of_range("column " + std::to_string(col) + " out of range");
  if (!(weight >= 0.0)) throw std::invalid_argument("matrix weights must be non-negative");
  if (row_ptr_.size() > rows_) throw std::out_of_range("too many rows");
  col_.push_back(static_cast<std::uint32_t>(col));
  val_.push_back(weight);
}

void SparseMatrix::Builder::finish_row() {
  if (row_ptr_.size() > rows_) throw std::out_of_range("too many rows");
  const std::size_t begin = row_ptr_.back();
  const std::size_t count = col_.size() - begin;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), begin);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return col_[a] < col_[b]; });

  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  for (std::size_t k : order) {
    if (!cols.empty() && cols.back() == col_[k])
      vals.back() += val_[k];
    else {
      cols.push_back(col_[k]);
      vals.push_back(val_[k]);
    }
  }
  col_.resize(begin);
  val_.resize(begin);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (vals[k] <= 0.0) continue;
    col_.push_back(cols[k]);
    val_.push_back(vals[k]);
  }
  row_ptr_.push_back(col_.size());
}

SparseMatrix SparseMatrix::Builder::build() && {
  while (row_ptr_.size() <= rows_) row_ptr_.push_back(col_.size());
  SparseMatrix m(rows_, cols_);
  m.row_ptr_ = std::move(row_ptr_);
  m.col_ = std::move(col_);
  m.val_ = std::move(val_);
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  Builder b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    b.add(i, 1.0);
    b.finish_row();
  }
  return std::move(b).build();
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) { return a.row < b.row; });
  Builder b(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (; k < entries.size() && entries[k].row == i; ++k) b.add(entries[k].col, entries[k].weight);
    b.finish_row();
  }
  if (k != entries.size()) throw std::out_of_range("triplet row out of range");
  return std::move(b).build();
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows ? dense.front().size() : 0;
  Builder b(rows, cols);
  for (const auto& row : dense) {
    if (row.size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (row[j] != 0.0) b.add(j, row[j]);
    b.finish_row();
  }
  return std::move(b).build();
}

double SparseMatrix::density() const noexcept {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

double SparseMatrix::row_sum(std::size_t i) const {
  const auto w = row_weights(i);
  return std::accumulate(w.begin(), w.end(), 0.0);
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto cols = row_columns(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_weights(i)[static_cast<std::size_t>(it - cols.begin())];
}

SparseMatrix SparseMatrix::truncate_columns(std::size_t keep) const {
  keep = std::min(keep, cols_);
  Builder b(rows_, keep);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto cols = row_columns(i);
    const auto w = row_weights(i);
    for (std::size_t k = 0; k < cols.size() && cols[k] < keep; ++k) b.add(cols[k], w[k]);
    b.finish_row();
  }
  return std::move(b).build();
}

SparseMatrix SparseMatrix::truncate_rows(std::size_t keep) const {
  keep = std::min(keep, rows_);
  SparseMatrix m(keep, cols_);
  m.row_ptr_.assign(row_ptr_.begin(), row_ptr_.begin() + static_cast<std::ptrdiff_t>(keep) + 1);
  m.col_.assign(col_.begin(), col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[keep]));
  m.val_.assign(val_.begin(), val_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[keep]));
  return m;
}

SparseMatrix SparseMatrix::clear_rows(std::span<const std::uint8_t> clear) const {
  Builder b(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i >= clear.size() || !clear[i]) {
      const auto cols = row_columns(i);
      const auto w = row_weights(i);
      for (std::size_t k = 0; k < cols.size(); ++k) b.add(cols[k], w[k]);
    }
    b.finish_row();
  }
  return std::move(b).build();
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_, 0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto cols = row_columns(i);
    const auto w = row_weights(i);
    for (std::size_t k = 0; k < cols.size(); ++k) out[i][cols[k]] = w[k];
  }
  return out;
}

namespace {

template <typename T>
StateVector matvec_impl(const SparseMatrix& m, std::span<const T> v) {
  if (v.size() != m.cols())
    throw std::invalid_argument("matvec: vector length " + std::to_string(v.size()) + " does not match " +
                                std::to_string(m.cols()) + " columns");
  StateVector out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto cols = m.row_columns(i);
    const auto w = m.row_weights(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (v[cols[k]]) acc += w[k] * static_cast<double>(v[cols[k]]);
    out[i] = acc;
  }
  return out;
}

}  // namespace

StateVector matvec(const SparseMatrix& m, std::span<const std::uint8_t> v) { return matvec_impl(m, v); }
StateVector matvec(const SparseMatrix& m, std::span<const double> v) { return matvec_impl(m, v); }

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b, double drop_below) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()) + " differ");
  // Gustavson's row-by-row product with a dense accumulator.
  SparseMatrix::Builder out(a.rows(), b.cols());
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<std::uint8_t> touched(b.cols(), 0);
  std::vector<std::uint32_t> pattern;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    pattern.clear();
    const auto acols = a.row_columns(i);
    const auto aw = a.row_weights(i);
    for (std::size_t ka = 0; ka < acols.size(); ++ka) {
      const auto bcols = b.row_columns(acols[ka]);
      const auto bw = b.row_weights(acols[ka]);
      for (std::size_t kb = 0; kb < bcols.size(); ++kb) {
        const std::uint32_t j = bcols[kb];
        if (!touched[j]) {
          touched[j] = 1;
          pattern.push_back(j);
        }
        acc[j] += aw[ka] * bw[kb];
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (std::uint32_t j : pattern) {
      if (acc[j] > 0.0 && acc[j] >= drop_below) out.add(j, acc[j]);
      acc[j] = 0.0;
      touched[j] = 0;
    }
    out.finish_row();
  }
  return std::move(out).build();
}

SparseMatrix gamma_k(const SparseMatrix& mq, std::size_t k, double drop_below) {
  if (mq.rows() != mq.cols()) throw std::invalid_argument("gamma_k: matrix must be square");
  SparseMatrix g = mq;
  for (std::size_t i = 0; i < k; ++i) g = matmul(g, g, drop_below);
  return g;
}

SparseMatrix add_matrices(const SparseMatrix& a, const SparseMatrix& b, bool require_disjoint_rows) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add_matrices: shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " differ");
  SparseMatrix::Builder out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (require_disjoint_rows && a.row_nnz(i) && b.row_nnz(i))
      throw std::invalid_argument("add_matrices: row " + std::to_string(i) + " is populated in both operands");
    for (const SparseMatrix* m : {&a, &b}) {
      const auto cols = m->row_columns(i);
      const auto w = m->row_weights(i);
      for (std::size_t k = 0; k < cols.size(); ++k) out.add(cols[k], w[k]);
    }
    out.finish_row();
  }
  return std::move(out).build();
}

SparseMatrix uniform_row_weights(const SparseMatrix& m) {
  SparseMatrix::Builder out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto cols = m.row_columns(i);
    const double w = cols.empty() ? 0.0 : 1.0 / static_cast<double>(cols.size());
    for (std::uint32_t j : cols) out.add(j, w);
    out.finish_row();
  }
  return std::move(out).build();
}

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto cols = m.row_columns(i);
    const auto w = m.row_weights(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", w[k]);
      out << i << ' ' << cols[k] << ' ' << buf << '\n';
    }
  }
}

SparseMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw std::runtime_error("matrix dump: malformed header");
  std::vector<Triplet> entries(nnz);
  for (auto& t : entries)
    if (!(in >> t.row >> t.col >> t.weight)) throw std::runtime_error("matrix dump: truncated entry list");
  return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

}  // namespace linfix
