#include "linfix/tp_operator.hpp"

namespace linfix {

namespace {

bool fires(const Rule& r, const Interpretation& i) {
  return r.is_disjunctive() ? i.intersects(r.body) : i.contains_all(r.body);
}

}  // namespace

Interpretation tp_step(const DefiniteProgram& p, const Interpretation& i) {
  Interpretation out(p.atom_count());
  for (const Rule& r : p.rules())
    if (fires(r, i)) out.insert(r.head);
  return out;
}

LeastModel tp_least_model(const DefiniteProgram& p) {
  LeastModel result{Interpretation::of(p.atom_count(), p.facts()), 0};
  for (;;) {
    Interpretation next = tp_step(p, result.model);
    ++result.iterations;
    if (next == result.model) break;
    result.model = std::move(next);
  }
  return result;
}

bool is_model(const DefiniteProgram& p, const Interpretation& i) {
  for (const Rule& r : p.rules())
    if (fires(r, i) && !i.contains(r.head)) return false;
  return true;
}

ConstraintReport check_constraints_symbolic(const ConstraintSet& c, const Interpretation& i) {
  ConstraintReport report;
  for (std::size_t k = 0; k < c.bodies.size(); ++k)
    if (i.contains_all(c.bodies[k])) report.violated.push_back(k);
  return report;
}

}  // namespace linfix
