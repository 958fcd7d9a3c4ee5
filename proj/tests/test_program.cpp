#include <doctest.h>

#include <linfix/parser.hpp>
#include <linfix/program.hpp>
#include <linfix/tp_operator.hpp>

#include <random>

#include "support/oracles.hpp"

using namespace linfix;

namespace {

Interpretation interp(const DefiniteProgram& p, std::initializer_list<const char*> names) {
  Interpretation i(p.atom_count());
  for (const char* n : names) i.insert(*p.atoms().find(n));
  return i;
}

std::set<std::string> names(const DefiniteProgram& p, const Interpretation& i) {
  return oracle::name_set(p.atoms(), i);
}

}  // namespace

TEST_SUITE("program") {
  TEST_CASE("atom table interns densely in first-seen order") {
    AtomTable t;
    CHECK(t.intern("p") == 0);
    CHECK(t.intern("q") == 1);
    CHECK(t.intern("p") == 0);
    CHECK(t.size() == 2);
    CHECK(t.find("q") == AtomId{1});
    CHECK_FALSE(t.find("r"));
    CHECK(t.name(1) == "q");
    CHECK_THROWS(t.name(7));
  }

  TEST_CASE("make_rule sorts and deduplicates the body") {
    const Rule r = make_rule(0, {3, 1, 3, 2});
    CHECK(r.body == std::vector<AtomId>{1, 2, 3});
    CHECK_FALSE(r.is_fact());
  }

  TEST_CASE("program construction canonicalizes") {
    AtomTable t;
    for (const char* n : {"p", "q", "r"}) t.intern(n);

    SUBCASE("duplicate rules collapse to the first") {
      DefiniteProgram p(t, {make_rule(0, {1, 2}), make_rule(0, {2, 1}), make_rule(1, {})});
      CHECK(p.rule_count() == 2);
      CHECK(p.facts().size() == 1);
    }
    SUBCASE("single-atom disjunction becomes conjunctive") {
      DefiniteProgram p(t, {make_rule(0, {1}, RuleKind::disjunctive)});
      CHECK_FALSE(p.rules()[0].is_disjunctive());
      CHECK_FALSE(p.has_disjunctive_rules());
    }
    SUBCASE("bad ids and empty disjunctions are rejected") {
      CHECK_THROWS_AS(DefiniteProgram(t, {make_rule(5, {})}), std::invalid_argument);
      CHECK_THROWS_AS(DefiniteProgram(t, {make_rule(0, {9})}), std::invalid_argument);
      CHECK_THROWS_AS(DefiniteProgram(t, {Rule{0, {}, RuleKind::disjunctive}}), std::invalid_argument);
    }
  }

  TEST_CASE("interpretation set operations") {
    Interpretation a(4), b(4);
    a.insert(1);
    b.insert(1);
    b.insert(3);
    CHECK(a.subset_of(b));
    CHECK_FALSE(b.subset_of(a));
    CHECK(b.count() == 2);
    const std::vector<AtomId> q{1, 3};
    CHECK(b.contains_all(q));
    CHECK_FALSE(a.contains_all(q));
    CHECK(a.intersects(q));
    a |= b;
    CHECK(a == b);
    CHECK(b.members() == std::vector<AtomId>{1, 3});
    CHECK_THROWS(a.insert(4));
  }
}

TEST_SUITE("parser") {
  TEST_CASE("parses facts, rules, disjunctions, constraints and comments") {
    const auto parsed = parse_program(
        "% header\n"
        "p :- q, r.  % trailing\n"
        "h :- t ; u.\n"
        "s.\n"
        ":- p, s.\n");
    const auto& p = parsed.program;
    CHECK(p.rule_count() == 3);
    CHECK(p.atom_count() == 7);
    CHECK(p.has_disjunctive_rules());
    REQUIRE(parsed.constraints.size() == 1);
    CHECK(parsed.constraints.bodies[0].size() == 2);
  }

  TEST_CASE("empty input is the empty program") {
    const auto parsed = parse_program("  % nothing\n\n");
    CHECK(parsed.program.rule_count() == 0);
    CHECK(parsed.constraints.empty());
    CHECK(serialize_program(parsed.program).empty());
  }

  TEST_CASE("syntax errors carry a position") {
    auto error_at = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
      try {
        parse_program(text);
      } catch (const ParseError& e) {
        return {e.line(), e.column()};
      }
      return {0, 0};
    };
    CHECK(error_at("p :- q, r ; s.") == std::pair<std::size_t, std::size_t>{1, 11});
    CHECK(error_at("p.\nq :- .") == std::pair<std::size_t, std::size_t>{2, 6});
    CHECK(error_at("P.") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(error_at("p :- q") != std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(error_at(":- a ; b.") != std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(error_at("p q.") != std::pair<std::size_t, std::size_t>{0, 0});
    CHECK_THROWS_WITH_AS(parse_program("p :- a, b; c."), doctest::Contains("cannot mix"), ParseError);
  }

  TEST_CASE("serialization formats") {
    CHECK(serialize_program(oracle::program(oracle::kBlockedCycle)) == "p :- q.\nq :- p, r.\nr :- s.\ns.\n");
    CHECK(serialize_program(oracle::program("h :- t ; u.")) == "h :- t ; u.\n");
    const auto parsed = parse_program(":- b, a.\n:- c.\n");
    CHECK(serialize_constraints(parsed.constraints, parsed.program.atoms()) == ":- b, a.\n:- c.\n");
  }

  TEST_CASE("round trip is the identity up to rule order") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_small_program(rng, 1 + trial % 9, trial % 12, true);
      const auto back = parse_program(serialize_program(p)).program;
      CHECK(same_rules(p, back));
    }
  }
}

TEST_SUITE("tp_operator") {
  const DefiniteProgram cyc = oracle::program(oracle::kBlockedCycle);

  TEST_CASE("single steps on the blocked cycle") {
    CHECK(names(cyc, tp_step(cyc, interp(cyc, {}))) == std::set<std::string>{"s"});
    CHECK(names(cyc, tp_step(cyc, interp(cyc, {"s"}))) == std::set<std::string>{"r", "s"});
    CHECK(names(cyc, tp_step(cyc, interp(cyc, {"r", "s"}))) == std::set<std::string>{"r", "s"});
  }

  TEST_CASE("least models") {
    const auto lm = tp_least_model(cyc);
    CHECK(names(cyc, lm.model) == std::set<std::string>{"r", "s"});
    CHECK(lm.iterations == 2);

    const auto twin = oracle::program(oracle::kTwoRuleHead);
    CHECK(names(twin, tp_least_model(twin).model) == std::set<std::string>{"p", "q", "s"});

    const auto no_facts = oracle::program("p :- q.\nq :- p.\n");
    const auto empty = tp_least_model(no_facts);
    CHECK(empty.model.empty());
    CHECK(empty.iterations == 1);

    CHECK(tp_least_model(DefiniteProgram{}).model.empty());
  }

  TEST_CASE("disjunctive rules fire on any body atom") {
    const auto p = oracle::program("h :- a ; b.\nb.\n");
    CHECK(names(p, tp_least_model(p).model) == std::set<std::string>{"b", "h"});
  }

  TEST_CASE("self-supporting rules never fire first") {
    const auto p = oracle::program("p :- p.\nq :- p, s.\ns.\n");
    CHECK(names(p, tp_least_model(p).model) == std::set<std::string>{"s"});
  }

  TEST_CASE("is_model") {
    CHECK(is_model(cyc, interp(cyc, {"r", "s"})));
    CHECK_FALSE(is_model(cyc, interp(cyc, {"s"})));
    CHECK(is_model(cyc, interp(cyc, {"p", "q", "r", "s"})));
  }

  TEST_CASE("symbolic constraint checks") {
    const auto parsed = parse_program("p :- q.\nq :- p, r.\nr :- s.\ns.\n:- r.\n:- p, q.\n");
    const auto& p = parsed.program;
    const auto lm = tp_least_model(p).model;
    ConstraintSet first{{parsed.constraints.bodies[0]}};
    ConstraintSet second{{parsed.constraints.bodies[1]}};
    CHECK(check_constraints_symbolic(first, lm).violated == std::vector<std::size_t>{0});
    CHECK(check_constraints_symbolic(second, lm).consistent());
    CHECK(check_constraints_symbolic(second, interp(p, {"p"})).consistent());
    CHECK(check_constraints_symbolic(ConstraintSet{}, lm).consistent());
  }

  TEST_CASE("remapping constraints by name") {
    const auto a = parse_program(":- s, zz.\n:- r.\n");
    const auto target = oracle::program(oracle::kBlockedCycle);
    const auto mapped = remap_constraints(a.constraints, a.program.atoms(), target.atoms());
    REQUIRE(mapped.size() == 1);
    CHECK(target.name(mapped.bodies[0][0]) == "r");
  }

  TEST_CASE("property: tp_step is monotone") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + trial % 8;
      const auto p = oracle::random_small_program(rng, n, 2 + trial % 10, true);
      std::uniform_int_distribution<std::uint64_t> mask(0, (1u << n) - 1);
      const auto small_bits = mask(rng);
      const auto big_bits = small_bits | mask(rng);
      Interpretation small(n), big(n);
      for (std::size_t a = 0; a < n; ++a) {
        if (small_bits >> a & 1u) small.insert(static_cast<AtomId>(a));
        if (big_bits >> a & 1u) big.insert(static_cast<AtomId>(a));
      }
      CHECK(tp_step(p, small).subset_of(tp_step(p, big)));
    }
  }

  TEST_CASE("property: least model equals the brute-force intersection of all models") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + trial % 12;
      const auto p = oracle::random_small_program(rng, n, 1 + trial % 16, trial % 2 == 0);
      const auto lm = tp_least_model(p);
      CHECK(is_model(p, lm.model));
      CHECK(names(p, lm.model) == oracle::brute_force_least_model(p));
    }
  }

  TEST_CASE("property: the iteration sequence grows and stabilizes within |atoms| + 1 steps") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 10;
      const auto p = oracle::random_small_program(rng, n, 3 + trial % 14);
      Interpretation prev = Interpretation::of(n, p.facts());
      std::size_t steps = 0;
      for (;;) {
        Interpretation next = tp_step(p, prev);
        ++steps;
        REQUIRE(prev.subset_of(next));
        if (next == prev) break;
        prev = std::move(next);
      }
      CHECK(steps <= n + 1);
      CHECK(steps == tp_least_model(p).iterations);
    }
  }
}
