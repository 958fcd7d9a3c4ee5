#include "linfix/transform.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace linfix {

bool is_sd(const DefiniteProgram& p) {
  if (p.has_disjunctive_rules()) return false;
  std::vector<bool> seen(p.atom_count(), false);
  for (const Rule& r : p.rules()) {
    if (seen[r.head]) return false;
    seen[r.head] = true;
  }
  return true;
}

DefiniteProgram DProgram::flatten() const {
  std::vector<Rule> rules(q.rules().begin(), q.rules().end());
  rules.insert(rules.end(), d.begin(), d.end());
  return DefiniteProgram(q.atoms(), std::move(rules));
}

namespace {

DefiniteProgram expand_disjunctions(const DefiniteProgram& p) {
  if (!p.has_disjunctive_rules()) return p;
  std::vector<Rule> rules;
  for (const Rule& r : p.rules()) {
    if (!r.is_disjunctive()) {
      rules.push_back(r);
      continue;
    }
    for (AtomId b : r.body) rules.push_back(Rule{r.head, {b}, RuleKind::conjunctive});
  }
  return DefiniteProgram(p.atoms(), std::move(rules));
}

std::string fresh_name(const AtomTable& atoms, const std::string& head, std::size_t ordinal) {
  std::string name = head + "__" + std::to_string(ordinal);
  while (atoms.find(name)) name += '_';
  return name;
}

}  // namespace

DProgram to_d_program(const DefiniteProgram& input) {
  const DefiniteProgram p = expand_disjunctions(input);
  const std::size_t n = p.atom_count();

  std::vector<std::size_t> defining(n, 0);
  for (const Rule& r : p.rules()) ++defining[r.head];

  AtomTable atoms = p.atoms();
  std::vector<Rule> q_rules;
  std::vector<std::size_t> origin;
  // Fresh atoms per multiply-defined head, in rule order.
  std::vector<std::vector<AtomId>> fresh(n);
  std::vector<AtomId> d_heads;

  const auto rules = p.rules();
  for (std::size_t idx = 0; idx < rules.size(); ++idx) {
    const Rule& r = rules[idx];
    if (defining[r.head] < 2) {
      q_rules.push_back(r);
      continue;
    }
    if (fresh[r.head].empty()) d_heads.push_back(r.head);
    const AtomId id = atoms.intern(fresh_name(atoms, atoms.name(r.head), fresh[r.head].size() + 1));
    fresh[r.head].push_back(id);
    origin.push_back(idx);
    q_rules.push_back(Rule{id, r.body, RuleKind::conjunctive});
  }

  std::vector<Rule> d;
  d.reserve(d_heads.size());
  for (AtomId h : d_heads) d.push_back(make_rule(h, fresh[h], RuleKind::disjunctive));

  const std::size_t m = atoms.size();
  return DProgram{DefiniteProgram(std::move(atoms), std::move(q_rules)), std::move(d), n, m, std::move(origin)};
}

Interpretation restrict_model(const Interpretation& i, std::size_t n) {
  Interpretation out(std::min(n, i.universe()));
  for (AtomId a : i.members())
    if (a < n) out.insert(a);
  return out;
}

UnfoldContext::UnfoldContext(const DefiniteProgram& sd_program)
    : program_(&sd_program), defs_(sd_program.atom_count()) {
  const auto rules = sd_program.rules();
  for (std::size_t idx = 0; idx < rules.size(); ++idx) {
    const Rule& r = rules[idx];
    if (r.is_disjunctive()) throw std::invalid_argument("unfolding requires conjunctive rules");
    if (defs_[r.head]) throw std::invalid_argument("unfolding requires a singly-defined program");
    defs_[r.head] = idx;
  }
}

std::optional<Rule> unfold_rule(const Rule& r, const UnfoldContext& ctx) {
  std::vector<AtomId> body;
  for (AtomId b : r.body) {
    if (!ctx.defined(b)) return std::nullopt;
    const Rule& def = ctx.definition(b);
    body.insert(body.end(), def.body.begin(), def.body.end());
  }
  return make_rule(r.head, std::move(body), r.kind);
}

DefiniteProgram peval_symbolic(const DefiniteProgram& p) {
  if (!is_sd(p)) throw std::invalid_argument("partial evaluation requires a singly-defined program");
  const UnfoldContext ctx(p);
  std::vector<Rule> out;
  for (const Rule& r : p.rules())
    if (auto u = unfold_rule(r, ctx)) out.push_back(std::move(*u));
  return DefiniteProgram(p.atoms(), std::move(out));
}

DefiniteProgram peval_symbolic_iter(const DefiniteProgram& p, std::size_t k) {
  if (!is_sd(p)) throw std::invalid_argument("partial evaluation requires a singly-defined program");
  DefiniteProgram current = p;
  for (std::size_t i = 0; i < k; ++i) {
    DefiniteProgram next = peval_symbolic(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace linfix
