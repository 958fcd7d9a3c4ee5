#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "linfix/encoding.hpp"
#include "linfix/program.hpp"
#include "linfix/sparse_matrix.hpp"
#include "linfix/transform.hpp"

namespace linfix {

enum class MethodKind { tp, matrix, col_reduct, peval, peval_col_reduct };

/// A least-model engine. `k` counts partial-evaluation squarings and only
/// matters for the peval kinds; k = 0 there is the plain matrix program.
struct Method {
  MethodKind kind = MethodKind::tp;
  std::size_t k = 0;

  static Method tp() { return {MethodKind::tp, 0}; }
  static Method matrix() { return {MethodKind::matrix, 0}; }
  static Method col_reduct() { return {MethodKind::col_reduct, 0}; }
  static Method peval(std::size_t k) { return {MethodKind::peval, k}; }
  static Method peval_col_reduct(std::size_t k) { return {MethodKind::peval_col_reduct, k}; }

  bool uses_k() const noexcept { return kind == MethodKind::peval || kind == MethodKind::peval_col_reduct; }
  /// "peval(k=5)" style label.
  std::string label() const;

  friend bool operator==(const Method&, const Method&) = default;
};

/// CLI spelling: tp, matrix, col-reduct, peval, peval-cr.
std::string_view method_name(MethodKind kind);
std::optional<MethodKind> parse_method_kind(std::string_view name);

using Seconds = std::chrono::duration<double>;

struct SolveResult {
  Interpretation model;  ///< over the original base
  std::size_t iterations = 0;

  Seconds transform_time{};
  Seconds peval_time{};  ///< squaring only
  Seconds encode_time{};
  Seconds fixpoint_time{};
  Seconds total_time{};

  std::size_t matrix_rows = 0;
  std::size_t matrix_cols = 0;
  std::size_t nnz = 0;
  std::size_t n = 0;  ///< original base size
  std::size_t m = 0;  ///< extended base size

  /// (m - n) / m, the column share that column reduction removes.
  double compression() const noexcept {
    return m == 0 ? 0.0 : static_cast<double>(m - n) / static_cast<double>(m);
  }
  double density() const noexcept {
    return matrix_rows && matrix_cols
               ? static_cast<double>(nnz) / (static_cast<double>(matrix_rows) * static_cast<double>(matrix_cols))
               : 0.0;
  }
};

SolveResult solve(const DefiniteProgram& p, Method method);

struct FixpointResult {
  BitVector v;
  std::size_t iterations = 0;  ///< matrix-vector products, including the confirming one
};

/// Called with v0 and then with every computed iterate.
using IterateObserver = std::function<void(const BitVector&)>;

/// v <- theta(M v) from v0 until stable. Throws std::runtime_error if no
/// fixpoint appears within dim + 1 products (only possible when v0 is not
/// contained in its own successor).
FixpointResult fixpoint_matrix(const SparseMatrix& m, const BitVector& v0, const IterateObserver& observe = {});

/// v <- theta_D(N v[0..n)) | v0 from v0 until stable. OR-ing v0 back in
/// keeps fresh atoms that are facts, whose diagonal entries the column
/// truncation removed.
FixpointResult fixpoint_colreduct(const SparseMatrix& nmat, const BitVector& v0, const DRuleIndex& idx,
                                  const IterateObserver& observe = {});

struct PevalMatrix {
  SparseMatrix gamma;         ///< m x m
  std::size_t squarings = 0;  ///< squarings actually computed (<= k)
  Seconds encode_time{};
  Seconds squaring_time{};
};

/// The k-fold partially evaluated program matrix of a d-program: the
/// singly-defined part squared k times, plus the d-rule rows.
///
/// The squaring runs on a row-stochastic (m+1) x (m+1) matrix: d-rule heads
/// hold their own value, atoms without rules point at an absorbing sink, and
/// every product is reset to uniform row weights. Thresholding such a matrix
/// against a 0/1 vector fires a row exactly when its support is true, so the
/// result is independent of k-driven underflow. Squaring stops early once the
/// matrix is idempotent.
PevalMatrix peval_program_matrix(const DProgram& dp, std::size_t k);

struct PevalResult {
  FixpointResult fixpoint;
  std::size_t matrix_rows = 0;
  std::size_t matrix_cols = 0;
  std::size_t nnz = 0;
  Seconds encode_time{};
  Seconds squaring_time{};
  Seconds fixpoint_time{};
};

/// Fixpoint over peval_program_matrix, either full (m x m, theta) or with the
/// columns reduced to the original base (m x n, theta_D).
PevalResult fixpoint_peval(const DProgram& dp, std::size_t k, bool col_reduct, const IterateObserver& observe = {});

}  // namespace linfix
