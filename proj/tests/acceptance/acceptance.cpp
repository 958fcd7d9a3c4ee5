// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <linfix/bench.hpp>
#include <linfix/cross_validate.hpp>
#include <linfix/encoding.hpp>
#include <linfix/generator.hpp>
#include <linfix/parser.hpp>
#include <linfix/rng.hpp>
#include <linfix/solvers.hpp>
#include <linfix/tp_operator.hpp>
#include <linfix/transform.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support/oracles.hpp"

using namespace linfix;
namespace fs = std::filesystem;

namespace {

/// Collects failed expectations for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string note;

 private:
  std::vector<std::string> failures_;
};

BitVector bits(std::initializer_list<int> v) { return BitVector(v.begin(), v.end()); }

std::set<std::string> names(const DefiniteProgram& p, const Interpretation& i) { return oracle::name_set(p.atoms(), i); }

// ---- 1 ----

void golden_examples(Checker& c) {
  const auto cyc = oracle::program(oracle::kBlockedCycle);
  const SparseMatrix m_cyc = encode_sd(cyc, 4);
  const BitVector v0 = initial_vector(cyc);
  const StateVector prod1 = matvec(m_cyc, v0);
  const BitVector v1 = theta(prod1);
  const StateVector prod2 = matvec(m_cyc, v1);
  c.expect(prod1 == StateVector{0, 0, 1, 1}, "cyc: first product");
  c.expect(v1 == bits({0, 0, 1, 1}), "cyc: first iterate");
  c.expect(prod2 == StateVector{0, 0.5, 1, 1}, "cyc: second product");
  c.expect(theta(prod2) == bits({0, 0, 1, 1}), "cyc: second iterate");
  c.expect(names(cyc, solve(cyc, Method::matrix()).model) == std::set<std::string>{"r", "s"}, "cyc: model");

  const auto twin = oracle::program(oracle::kTwoRuleHead);
  const DProgram dp = to_d_program(twin);
  c.expect(dp.n == 4 && dp.m == 6, "twin: six-atom d-program");
  const auto fp = fixpoint_matrix(encode_d_program(dp), initial_vector(dp));
  c.expect(fp.v == bits({1, 1, 0, 1, 0, 1}), "twin: matrix fixpoint");
  c.expect(names(twin, restrict_model(to_interpretation(fp.v), dp.n)) == std::set<std::string>{"p", "q", "s"},
           "twin: restricted model");

  const auto full = solve(twin, Method::matrix());
  const auto reduced = solve(twin, Method::col_reduct());
  c.expect(reduced.model == full.model, "twin: same model");
  c.expect(full.iterations == 4, "twin: matrix iterations " + std::to_string(full.iterations));
  c.expect(reduced.iterations == 3, "twin: col-reduct iterations " + std::to_string(reduced.iterations));

  const auto unf = oracle::program(oracle::kUnfoldable);
  c.expect(same_rules(peval_symbolic(unf), oracle::program("p :- p, t.\nq :- q, s, t.\ns.\nt.\n")),
           "unf: symbolic peval");
  const SparseMatrix m_unf = encode_sd(unf, 4);
  const SparseMatrix sq = matmul(m_unf, m_unf);
  const std::vector<double> row_p{1.0 / 6, 0, 0, 5.0 / 6}, row_q{0, 1.0 / 6, 1.0 / 6, 2.0 / 3};
  for (std::size_t j = 0; j < 4; ++j) {
    c.expect(std::abs(sq.at(0, j) - row_p[j]) <= 1e-12, "unf: squared row p");
    c.expect(std::abs(sq.at(1, j) - row_q[j]) <= 1e-12, "unf: squared row q");
  }
  c.expect(theta(matvec(sq, initial_vector(unf))) == bits({0, 0, 1, 1}), "unf: theta of squared product");
}

// ---- 2 and 5 ----

CrossValidationReport campaign() {
  const std::vector<std::size_t> atoms{10, 25, 50};
  const std::vector<std::size_t> factors{2, 10, 50};
  const auto specs = campaign_specs(1000, atoms, factors, 1);
  const std::vector<Method> methods{Method::matrix(),           Method::col_reduct(),         Method::peval(1),
                                    Method::peval(5),           Method::peval_col_reduct(1), Method::peval_col_reduct(5)};
  return cross_validate(specs, methods);
}

void oracle_equivalence(Checker& c, const CrossValidationReport& r) {
  c.expect(r.instances.size() == 1000, "instance count");
  for (const auto& d : r.disagreements)
    c.expect(false, "instance " + std::to_string(d.instance) + " " + d.method.label() + " disagrees");
  for (const auto& e : r.errors) c.expect(false, "error " + e);
  c.note = std::to_string(r.instances.size()) + " instances x 7 methods, " + std::to_string(r.disagreements.size()) +
           " disagreements";
}

void iteration_order(Checker& c, const CrossValidationReport& r) {
  std::size_t equal = 0;
  for (const auto& inst : r.instances) {
    equal += inst.col_reduct_iterations == inst.matrix_iterations;
    c.expect(inst.col_reduct_iterations >= 1 && inst.matrix_iterations >= 1, "missing iteration count");
  }
  for (std::size_t i : r.iteration_order_violations) c.expect(false, "instance " + std::to_string(i));
  c.note = std::to_string(r.instances.size() - r.iteration_order_violations.size()) + "/" +
           std::to_string(r.instances.size()) + " ordered, " + std::to_string(equal) + " ties";
}

// ---- 3 ----

void squared_iterates(Checker& c) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 10 + seed % 41;
    const auto p = generate_sd_program({.n = n, .m = n / 2 + seed % (n / 2 + 1), .seed = seed});
    const SparseMatrix m = encode_sd(p, n);
    const BitVector v0 = initial_vector(p);
    const DProgram dp = to_d_program(p);
    for (std::size_t k = 1; k <= 3; ++k) {
      BitVector v = v0;
      for (std::size_t s = 0; s < (1u << k); ++s) v = theta(matvec(m, v));
      c.expect(theta(matvec(gamma_k(m, k), v0)) == v, "seed " + std::to_string(seed) + " k=" + std::to_string(k));
      c.expect(theta(matvec(peval_program_matrix(dp, k).gamma, v0)) == v,
               "engine seed " + std::to_string(seed) + " k=" + std::to_string(k));
    }
  }
  c.note = "200 programs x k in {1,2,3}";
}

// ---- 4 ----

void propositions(Checker& c) {
  std::size_t literal = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = std::vector<std::size_t>{10, 25, 50}[seed % 3];
    const auto p = generate_program({.n = n, .m = n * std::vector<std::size_t>{2, 10, 50}[seed / 3 % 3], .seed = seed});
    const DProgram dp = to_d_program(p);
    const auto expected = tp_least_model(p).model;

    // the d-program keeps the least model on the original base.
    c.expect(restrict_model(tp_least_model(dp.flatten()).model, n) == expected, "d-program model, seed " + std::to_string(seed));

    // one column-reduced step is one T_P step on the original base.
    const SparseMatrix nm = encode_submatrix(dp);
    const DRuleIndex idx(dp);
    const BitVector v0 = initial_vector(dp);
    Rng rng(seed);
    Interpretation i(n);
    for (std::size_t a = 0; a < n; ++a)
      if (rng.below(2)) i.insert(static_cast<AtomId>(a));
    for (AtomId f : p.facts()) i.insert(f);
    const Interpretation step = tp_step(p, i);
    BitVector u = theta(matvec(nm, to_bits(i)));
    for (std::size_t j = 0; j < u.size(); ++j) u[j] |= v0[j];
    propagate_d_heads(u, idx);
    c.expect(restrict_model(to_interpretation(u), n) == step, "reduced step, seed " + std::to_string(seed));
    bool fresh_fact = false;
    for (std::size_t j = n; j < dp.m; ++j) fresh_fact = fresh_fact || v0[j];
    if (!fresh_fact) {
      ++literal;
      c.expect(restrict_model(to_interpretation(theta_d(matvec(nm, to_bits(i)), idx)), n) == step,
               "reduced step without repair, seed " + std::to_string(seed));
    }

    // partial evaluation keeps the least model of singly-defined programs.
    const auto sd = generate_sd_program({.n = n, .m = 1 + seed % n, .seed = seed});
    c.expect(tp_least_model(peval_symbolic(sd)).model == tp_least_model(sd).model, "peval model, seed " + std::to_string(seed));
  }
  c.note = "200 instances each; unrepaired reduced step checked on " + std::to_string(literal);
}

// ---- 6 ----

void generator_distribution(Checker& c) {
  const auto p = generate_program({.n = 100, .m = 10000, .seed = 1});
  const auto hist = body_size_histogram(p);
  double rules = 0;
  for (std::size_t s = 1; s <= 8; ++s) rules += static_cast<double>(hist[s]);
  double worst = 0;
  for (std::size_t s = 1; s <= 8; ++s) {
    const double diff = std::abs(static_cast<double>(hist[s]) / rules - kDefaultBodySizeDistribution[s]);
    worst = std::max(worst, diff);
    c.expect(diff <= 0.02, "body size " + std::to_string(s));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max deviation %.2f points", 100 * worst);
  c.note = buf;
}

// ---- 7 ----

void benchmark_harness(Checker& c) {
  const auto dir = fs::temp_directory_path() / "linfix_acceptance_bench";
  fs::remove_all(dir);
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  const std::string csv = (dir / "bench.csv").string();
  fs::create_directories(dir);
  const std::vector<std::string> args{"linfix", "bench",  "--atoms-list", "50",          "--rules-list",
                                      "100,1250,2500",    "--k-list",     "1,5,25,50",  "--reps",
                                      "3",       "--csv", csv,            "--plot-dir", (dir / "plots").string()};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(code == 0, "bench exit code " + std::to_string(code) + ": " + err.str());
  c.expect(seconds < 300, "took " + std::to_string(seconds) + " s");

  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  c.expect(line == kCsvHeader, "csv header");
  std::size_t rows = 0;
  double matrix_fix = 0, cr_fix = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    c.expect(f.size() == 12, "csv row width");
    if (f.size() != 12) continue;
    const double compression = std::stod(f[10]);
    c.expect(compression >= 0 && compression < 1, "compression range");
    c.expect(std::stod(f[5]) >= 1, "iterations");
    if (f[2] != "tp") c.expect(std::stoul(f[9]) > 0, "nnz");
    if (f[1] == "2500" && f[4] == "mean") {
      if (f[2] == "matrix") matrix_fix = std::stod(f[7]);
      if (f[2] == "col-reduct") cr_fix = std::stod(f[7]);
    }
  }
  c.expect(rows == 3 * 11 * 4, "csv row count " + std::to_string(rows));
  c.expect(fs::exists(dir / "plots" / "fixpoint_n50.dat"), "plot file");

  char buf[160];
  std::snprintf(buf, sizeof buf, "%.1f s; m=2500 fixpoint matrix %.3g s vs col-reduct %.3g s (%s, informational)",
                seconds, matrix_fix, cr_fix, cr_fix < matrix_fix ? "col-reduct faster" : "col-reduct not faster");
  c.note = buf;
  fs::remove_all(dir);
}

// ---- 8 ----

void constraints(Checker& c) {
  const auto dir = fs::temp_directory_path() / "linfix_acceptance_constraints";
  fs::create_directories(dir);
  const auto write = [&](const char* name, std::string_view text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string prog = write("cyc.lp", oracle::kBlockedCycle);
  const std::string bottom_r = write("r.lp", ":- r.\n");
  const std::string bottom_pq = write("pq.lp", ":- p, q.\n");
  auto run = [](std::vector<std::string> args, std::string& out) {
    std::vector<const char*> argv{"linfix"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    return code;
  };
  for (const char* method : {"tp", "matrix", "col-reduct"}) {
    std::string out;
    c.expect(run({"solve", prog, "--method", method, "--constraints", bottom_r}, out) == cli::kInconsistent,
             std::string(method) + ": r constraint exit code");
    c.expect(out == "inconsistent\n", std::string(method) + ": message");
    c.expect(run({"solve", prog, "--method", method, "--constraints", bottom_pq}, out) == cli::kOk,
             std::string(method) + ": p,q constraint exit code");
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Checker&)> run;
  };
  CrossValidationReport report;
  bool have_report = false;
  auto ensure_report = [&] {
    if (!have_report) report = campaign();
    have_report = true;
  };

  const std::vector<Criterion> criteria{
      {1, "golden worked examples", [](Checker& c) { golden_examples(c); }},
      {2, "oracle equivalence over 1000 random programs",
       [&](Checker& c) {
         ensure_report();
         oracle_equivalence(c, report);
       }},
      {3, "squared-matrix iterate equals the 2^k-step iterate", [](Checker& c) { squared_iterates(c); }},
      {4, "d-program, column-reduction and peval property suites", [](Checker& c) { propositions(c); }},
      {5, "col-reduct iterations never exceed matrix iterations",
       [&](Checker& c) {
         ensure_report();
         iteration_order(c, report);
       }},
      {6, "generator body-size histogram within 2 points", [](Checker& c) { generator_distribution(c); }},
      {7, "benchmark harness grid, csv and plot output", [](Checker& c) { benchmark_harness(c); }},
      {8, "constraint handling through the cli", [](Checker& c) { constraints(c); }},
  };

  int failed = 0;
  for (const auto& crit : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (crit.id == 1) c.expect(seconds < 1.0, "took " + std::to_string(seconds) + " s");
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::cout << (c.ok() ? "PASS" : "FAIL") << "  criterion " << crit.id << ": " << crit.title << " [" << timing
              << "]" << (c.note.empty() ? "" : " " + c.note) << '\n';
    if (!c.ok()) {
      ++failed;
      std::size_t shown = 0;
      for (const auto& f : c.failures()) {
        if (++shown > 10) {
          std::cout << "      ... " << c.failures().size() - 10 << " more\n";
          break;
        }
        std::cout << "      " << f << '\n';
      }
    }
    std::cout.flush();
  }
  std::cout << (failed ? "FAILED: " : "ALL PASSED: ") << criteria.size() - failed << "/" << criteria.size()
            << " criteria\n";
  return failed ? 1 : 0;
}
