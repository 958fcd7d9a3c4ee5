#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "linfix/program.hpp"
#include "linfix/sparse_matrix.hpp"
#include "linfix/tp_operator.hpp"
#include "linfix/transform.hpp"

namespace linfix {

/// theta accepts values >= 1 - kThetaTolerance. Absorbs rounding in sums of
/// 1/l weights.
inline constexpr double kThetaTolerance = 1e-9;

/// Program matrix of a singly-defined program, dim x dim: a conjunctive rule
/// with l body atoms puts 1/l in each body column of the head row, a fact
/// puts 1 on its diagonal. Throws std::invalid_argument on non-SD input,
/// disjunctive rules or dim < atom count.
SparseMatrix encode_sd(const DefiniteProgram& q, std::size_t dim);

/// M_D: weight 1 at every body column of each d-rule row, m x m.
SparseMatrix encode_d_rules(std::span<const Rule> d, std::size_t m);

/// Q rows as in encode_sd plus the d-rule rows, m x m.
SparseMatrix encode_d_program(const DProgram& dp);

/// The first n columns of encode_d_program, m x n.
SparseMatrix encode_submatrix(const DProgram& dp);

/// One row per constraint, 1/|body| at each body column, |c| x n. A row whose
/// product reaches 1 marks a violation.
SparseMatrix encode_constraints(const ConstraintSet& c, std::size_t n);

/// 1 exactly at fact heads.
BitVector initial_vector(const DefiniteProgram& p);
/// Over the extended base of size m.
BitVector initial_vector(const DProgram& dp);

BitVector theta(std::span<const double> v);

/// Maps each fresh atom j (n <= j < m) to the head of the d-rule whose body
/// contains it.
class DRuleIndex {
 public:
  DRuleIndex() = default;
  explicit DRuleIndex(const DProgram& dp);
  DRuleIndex(std::size_t n, std::size_t m, std::span<const Rule> d);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return n_ + heads_.size(); }
  bool empty() const noexcept { return heads_.empty(); }
  /// kNoHead when j names no d-rule body atom.
  AtomId head_of(std::size_t j) const { return heads_.at(j - n_); }

  static constexpr AtomId kNoHead = static_cast<AtomId>(-1);

 private:
  std::size_t n_ = 0;
  std::vector<AtomId> heads_;
};

/// theta, then every fresh atom that came out 1 sets its d-rule head.
BitVector theta_d(std::span<const double> v, const DRuleIndex& idx);

/// Sets the d-rule head of every fresh atom that is 1 in `w`.
void propagate_d_heads(BitVector& w, const DRuleIndex& idx);

BitVector to_bits(const Interpretation& i);
Interpretation to_interpretation(std::span<const std::uint8_t> bits);
/// A 0/1 vector as reals.
StateVector embed(std::span<const std::uint8_t> bits);

/// Rows of theta(mc * v) that are 1.
ConstraintReport check_constraints_vec(const SparseMatrix& mc, std::span<const std::uint8_t> v);

}  // namespace linfix
