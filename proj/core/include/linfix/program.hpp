#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace linfix {

using AtomId = std::uint32_t;

/// Interns atom names to dense ids 0..size()-1 in order of first insertion.
class AtomTable {
 public:
  AtomId intern(std::string_view name);
  std::optional<AtomId> find(std::string_view name) const;

  const std::string& name(AtomId id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  bool contains(AtomId id) const noexcept { return id < names_.size(); }
  std::span<const std::string> names() const noexcept { return names_; }

  friend bool operator==(const AtomTable& a, const AtomTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> index_;
};

enum class RuleKind : std::uint8_t { conjunctive, disjunctive };

/// h <- b1 & ... & bk  or  h <- b1 | ... | bk. The body is kept sorted and
/// duplicate-free; use make_rule() to build one from arbitrary input.
struct Rule {
  AtomId head = 0;
  std::vector<AtomId> body;
  RuleKind kind = RuleKind::conjunctive;

  bool is_fact() const noexcept { return body.empty(); }
  bool is_disjunctive() const noexcept { return kind == RuleKind::disjunctive; }

  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

Rule make_rule(AtomId head, std::vector<AtomId> body, RuleKind kind = RuleKind::conjunctive);

/// A finite set of rules over an interned atom table. Immutable once built.
///
/// Construction canonicalizes bodies, collapses duplicate rules (keeping the
/// first occurrence so rule order stays deterministic) and rejects rules that
/// reference atoms outside the table or disjunctive rules with an empty body.
/// Disjunctive rules are accepted: a d-program is a definite program.
class DefiniteProgram {
 public:
  DefiniteProgram() = default;
  DefiniteProgram(AtomTable atoms, std::vector<Rule> rules);

  const AtomTable& atoms() const noexcept { return atoms_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::span<const Rule> rules() const noexcept { return rules_; }
  std::size_t rule_count() const noexcept { return rules_.size(); }
  const std::string& name(AtomId id) const { return atoms_.name(id); }

  /// Heads of empty-body rules, ascending.
  std::span<const AtomId> facts() const noexcept { return facts_; }
  bool has_disjunctive_rules() const noexcept { return disjunctive_count_ > 0; }

  friend bool operator==(const DefiniteProgram& a, const DefiniteProgram& b) {
    return a.atoms_ == b.atoms_ && a.rules_ == b.rules_;
  }

 private:
  AtomTable atoms_;
  std::vector<Rule> rules_;
  std::vector<AtomId> facts_;
  std::size_t disjunctive_count_ = 0;
};

/// Same rules by atom name, ignoring rule order and atom numbering.
bool same_rules(const DefiniteProgram& a, const DefiniteProgram& b);

/// A subset of the atom ids 0..universe()-1.
class Interpretation {
 public:
  Interpretation() = default;
  explicit Interpretation(std::size_t universe) : bits_(universe, false) {}

  static Interpretation of(std::size_t universe, std::span<const AtomId> members);

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(AtomId id) const { return id < bits_.size() && bits_[id]; }
  void insert(AtomId id) { bits_.at(id) = true; }
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  std::vector<AtomId> members() const;

  bool contains_all(std::span<const AtomId> atoms) const;
  bool intersects(std::span<const AtomId> atoms) const;
  bool subset_of(const Interpretation& other) const;

  Interpretation& operator|=(const Interpretation& other);

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::vector<bool> bits_;
};

/// Integrity constraints  :- b1, ..., bk.  held apart from the program.
struct ConstraintSet {
  std::vector<std::vector<AtomId>> bodies;

  bool empty() const noexcept { return bodies.empty(); }
  std::size_t size() const noexcept { return bodies.size(); }
};

/// Re-keys constraints parsed against `from` onto `to` by atom name. A body
/// naming an atom unknown to `to` can never be satisfied and is dropped.
ConstraintSet remap_constraints(const ConstraintSet& c, const AtomTable& from, const AtomTable& to);

/// Member names sorted lexicographically.
std::vector<std::string> sorted_names(const AtomTable& atoms, const Interpretation& i);

}  // namespace linfix
