#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "linfix/program.hpp"

namespace linfix {

/// Every atom heads at most one rule and no rule is disjunctive.
bool is_sd(const DefiniteProgram& p);

/// A definite program split into a singly-defined part and d-rules.
///
/// Atoms 0..n-1 are the original base; n..m-1 are fresh atoms, one per rule
/// of a multiply-defined head. `q` carries the full extended atom table and
/// only conjunctive rules whose bodies use original atoms. Each d-rule's head
/// is an original atom that heads no rule in `q`.
struct DProgram {
  DefiniteProgram q;
  std::vector<Rule> d;
  std::size_t n = 0;
  std::size_t m = 0;
  /// origin[j - n] is the index of the source rule that fresh atom j names,
  /// counted after disjunctive source rules are expanded.
  std::vector<std::size_t> origin;

  const AtomTable& atoms() const noexcept { return q.atoms(); }

  /// Q and D as one program over the extended base.
  DefiniteProgram flatten() const;
};

/// Replaces every rule of a head defined two or more times by a fresh atom
/// `<head>__<ordinal>` and adds  head :- fresh_1 ; ... ; fresh_k.
/// Disjunctive input rules are first expanded into single-atom rules.
DProgram to_d_program(const DefiniteProgram& p);

/// Keeps atom ids below n.
Interpretation restrict_model(const Interpretation& i, std::size_t n);

/// The unique defining rule of every head in a singly-defined program.
class UnfoldContext {
 public:
  explicit UnfoldContext(const DefiniteProgram& sd_program);

  bool defined(AtomId a) const noexcept { return a < defs_.size() && defs_[a].has_value(); }
  const Rule& definition(AtomId a) const { return program_->rules()[*defs_.at(a)]; }

 private:
  const DefiniteProgram* program_;
  std::vector<std::optional<std::size_t>> defs_;
};

/// One unfolding step: every body atom is replaced by the body of its
/// definition. Returns nullopt when the body names an undefined atom.
std::optional<Rule> unfold_rule(const Rule& r, const UnfoldContext& ctx);

/// Unfolds all rules against the input program's definitions at once and
/// drops removed rules. Throws std::invalid_argument on non-SD input.
DefiniteProgram peval_symbolic(const DefiniteProgram& p);

DefiniteProgram peval_symbolic_iter(const DefiniteProgram& p, std::size_t k);

}  // namespace linfix
