#pragma once

#include <cstddef>
#include <vector>

#include "linfix/program.hpp"

namespace linfix {

/// Immediate consequences: heads of conjunctive rules whose body is contained
/// in `i` and of disjunctive rules whose body meets `i`. Facts always fire.
Interpretation tp_step(const DefiniteProgram& p, const Interpretation& i);

struct LeastModel {
  Interpretation model;
  std::size_t iterations = 0;  ///< tp_step applications, including the one that confirmed the fixpoint
};

/// Iterates tp_step from the fact set until it stabilizes.
LeastModel tp_least_model(const DefiniteProgram& p);

bool is_model(const DefiniteProgram& p, const Interpretation& i);

struct ConstraintReport {
  std::vector<std::size_t> violated;  ///< indices into ConstraintSet::bodies

  bool consistent() const noexcept { return violated.empty(); }
};

ConstraintReport check_constraints_symbolic(const ConstraintSet& c, const Interpretation& i);

}  // namespace linfix
