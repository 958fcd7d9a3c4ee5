#include "linfix/program.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace linfix {

AtomId AtomTable::intern(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<AtomId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

Rule make_rule(AtomId head, std::vector<AtomId> body, RuleKind kind) {
  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());
  return Rule{head, std::move(body), kind};
}

DefiniteProgram::DefiniteProgram(AtomTable atoms, std::vector<Rule> rules) : atoms_(std::move(atoms)) {
  std::set<Rule> seen;
  rules_.reserve(rules.size());
  for (auto& raw : rules) {
    Rule r = make_rule(raw.head, std::move(raw.body), raw.kind);
    if (!atoms_.contains(r.head))
      throw std::invalid_argument("rule head references unknown atom id " + std::to_string(r.head));
    for (AtomId b : r.body)
      if (!atoms_.contains(b))
        throw std::invalid_argument("rule body references unknown atom id " + std::to_string(b));
    if (r.is_disjunctive() && r.body.empty())
      throw std::invalid_argument("disjunctive rule for '" + atoms_.name(r.head) + "' has an empty body");
    // A single-atom disjunction is the same rule as its conjunctive form.
    if (r.is_disjunctive() && r.body.size() == 1) r.kind = RuleKind::conjunctive;
    if (!seen.insert(r).second) continue;
    if (r.is_fact()) facts_.push_back(r.head);
    if (r.is_disjunctive()) ++disjunctive_count_;
    rules_.push_back(std::move(r));
  }
  std::sort(facts_.begin(), facts_.end());
  facts_.erase(std::unique(facts_.begin(), facts_.end()), facts_.end());
}

namespace {

using NamedRule = std::tuple<std::string, std::vector<std::string>, RuleKind>;

std::multiset<NamedRule> named_rules(const DefiniteProgram& p) {
  std::multiset<NamedRule> out;
  for (const Rule& r : p.rules()) {
    std::vector<std::string> body;
    body.reserve(r.body.size());
    for (AtomId b : r.body) body.push_back(p.name(b));
    std::sort(body.begin(), body.end());
    out.emplace(p.name(r.head), std::move(body), r.kind);
  }
  return out;
}

}  // namespace

bool same_rules(const DefiniteProgram& a, const DefiniteProgram& b) {
  return named_rules(a) == named_rules(b);
}

Interpretation Interpretation::of(std::size_t universe, std::span<const AtomId> members) {
  Interpretation i(universe);
  for (AtomId a : members) i.insert(a);
  return i;
}

std::size_t Interpretation::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<AtomId> Interpretation::members() const {
  std::vector<AtomId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<AtomId>(i));
  return out;
}

bool Interpretation::contains_all(std::span<const AtomId> atoms) const {
  return std::all_of(atoms.begin(), atoms.end(), [&](AtomId a) { return contains(a); });
}

bool Interpretation::intersects(std::span<const AtomId> atoms) const {
  return std::any_of(atoms.begin(), atoms.end(), [&](AtomId a) { return contains(a); });
}

bool Interpretation::subset_of(const Interpretation& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.contains(static_cast<AtomId>(i))) return false;
  return true;
}

Interpretation& Interpretation::operator|=(const Interpretation& other) {
  if (other.bits_.size() > bits_.size()) bits_.resize(other.bits_.size(), false);
  for (std::size_t i = 0; i < other.bits_.size(); ++i)
    if (other.bits_[i]) bits_[i] = true;
  return *this;
}

ConstraintSet remap_constraints(const ConstraintSet& c, const AtomTable& from, const AtomTable& to) {
  ConstraintSet out;
  for (const auto& body : c.bodies) {
    std::vector<AtomId> mapped;
    bool known = true;
    for (AtomId a : body) {
      auto id = to.find(from.name(a));
      if (!id) {
        known = false;
        break;
      }
      mapped.push_back(*id);
    }
    if (!known) continue;
    std::sort(mapped.begin(), mapped.end());
    out.bodies.push_back(std::move(mapped));
  }
  return out;
}

std::vector<std::string> sorted_names(const AtomTable& atoms, const Interpretation& i) {
  std::vector<std::string> out;
  for (AtomId a : i.members()) out.push_back(atoms.name(a));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace linfix
