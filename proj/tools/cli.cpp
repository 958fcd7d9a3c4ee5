#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linfix/bench.hpp"
#include "linfix/cross_validate.hpp"
#include "linfix/encoding.hpp"
#include "linfix/generator.hpp"
#include "linfix/parser.hpp"
#include "linfix/solvers.hpp"
#include "linfix/tp_operator.hpp"
#include "linfix/transform.hpp"

namespace linfix::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read from '" + path + "' failed");
  return buf.str();
}

/// Writes to `path`, or to `out` when the path is empty or "-".
void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

ParsedProgram load_program(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_program(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += items[i];
  }
  return s;
}

/// "n" and "n/2" resolve against the atom count; anything else is a literal.
std::vector<std::size_t> resolve_k_list(const std::vector<std::string>& tokens, std::size_t n) {
  std::vector<std::size_t> ks;
  for (const std::string& t : tokens) {
    std::size_t k = 0;
    if (t == "n") {
      k = n;
    } else if (t == "n/2") {
      k = n / 2;
    } else {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(t, &used);
        if (used != t.size() || v < 0) throw std::invalid_argument(t);
        k = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw UsageError("--k-list: '" + t + "' is not a non-negative integer, 'n' or 'n/2'");
      }
    }
    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  return ks;
}

void require_positive(const std::vector<std::size_t>& values, const char* flag) {
  if (values.empty()) throw UsageError(std::string(flag) + " must not be empty");
  for (std::size_t v : values)
    if (v == 0) throw UsageError(std::string(flag) + " values must be positive");
}

// ---- solve ----

struct SolveOptions {
  std::string file;
  std::string method = "col-reduct";
  std::optional<std::size_t> k;
  std::string constraints;
  bool stats = false;
  std::string format = "human";
};

void print_stats_human(const SolveResult& r, std::ostream& os) {
  os << "% transform_s: " << num(r.transform_time.count()) << '\n'
     << "% peval_s: " << num(r.peval_time.count()) << '\n'
     << "% encode_s: " << num(r.encode_time.count()) << '\n'
     << "% fixpoint_s: " << num(r.fixpoint_time.count()) << '\n'
     << "% total_s: " << num(r.total_time.count()) << '\n'
     << "% matrix: " << r.matrix_rows << 'x' << r.matrix_cols << '\n'
     << "% nnz: " << r.nnz << '\n'
     << "% density: " << num(r.density()) << '\n'
     << "% atoms: " << r.n << " original, " << r.m << " extended\n"
     << "% compression: " << num(r.compression()) << '\n';
}

int run_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const auto kind = parse_method_kind(o.method);
  if (!kind) throw UsageError("unknown method '" + o.method + "' (expected tp, matrix, col-reduct, peval or peval-cr)");
  Method method{*kind, 0};
  if (method.uses_k()) {
    if (!o.k) throw UsageError("--method " + o.method + " requires --k");
    method.k = *o.k;
  } else if (o.k) {
    throw UsageError("--k only applies to --method peval and peval-cr");
  }

  const ParsedProgram parsed = load_program(o.file);
  ConstraintSet constraints = parsed.constraints;
  if (!o.constraints.empty()) {
    const ParsedProgram extra = load_program(o.constraints);
    if (!extra.program.rules().empty())
      throw UsageError(o.constraints + ": constraints file may only contain ':- ...' statements");
    const ConstraintSet mapped = remap_constraints(extra.constraints, extra.program.atoms(), parsed.program.atoms());
    constraints.bodies.insert(constraints.bodies.end(), mapped.bodies.begin(), mapped.bodies.end());
  }

  const DefiniteProgram& p = parsed.program;
  const SolveResult r = solve(p, method);
  const ConstraintReport report =
      method.kind == MethodKind::tp
          ? check_constraints_symbolic(constraints, r.model)
          : check_constraints_vec(encode_constraints(constraints, p.atoms().size()), to_bits(r.model));

  const auto model = sorted_names(p.atoms(), r.model);
  if (o.format == "human") {
    if (report.consistent()) {
      for (const auto& a : model) out << a << '\n';
      out << "% iterations: " << r.iterations << '\n';
    } else {
      out << "inconsistent\n";
    }
    if (o.stats) print_stats_human(r, err);
  } else if (o.format == "csv") {
    out << "method,k,consistent,iterations,model_size,model";
    if (o.stats) out << ",peval_s,encode_s,fixpoint_s,total_s,rows,cols,nnz,compression";
    out << '\n'
        << method_name(method.kind) << ',' << method.k << ',' << (report.consistent() ? "true" : "false") << ','
        << r.iterations << ',' << model.size() << ',' << join(model, " ");
    if (o.stats)
      out << ',' << num(r.peval_time.count()) << ',' << num(r.encode_time.count()) << ','
          << num(r.fixpoint_time.count()) << ',' << num(r.total_time.count()) << ',' << r.matrix_rows << ','
          << r.matrix_cols << ',' << r.nnz << ',' << num(r.compression());
    out << '\n';
  } else {
    out << "{\"method\":\"" << method_name(method.kind) << "\",\"k\":" << method.k
        << ",\"consistent\":" << (report.consistent() ? "true" : "false") << ",\"iterations\":" << r.iterations
        << ",\"model\":[";
    for (std::size_t i = 0; i < model.size(); ++i) out << (i ? ",\"" : "\"") << model[i] << '"';
    out << ']';
    if (o.stats)
      out << ",\"peval_s\":" << num(r.peval_time.count()) << ",\"encode_s\":" << num(r.encode_time.count())
          << ",\"fixpoint_s\":" << num(r.fixpoint_time.count()) << ",\"total_s\":" << num(r.total_time.count())
          << ",\"rows\":" << r.matrix_rows << ",\"cols\":" << r.matrix_cols << ",\"nnz\":" << r.nnz
          << ",\"compression\":" << num(r.compression());
    out << "}\n";
  }

  if (!report.consistent()) {
    for (std::size_t i : report.violated) {
      std::vector<std::string> names;
      for (AtomId a : constraints.bodies[i]) names.emplace_back(p.atoms().name(a));
      err << "violated constraint :- " << join(names, ", ") << ".\n";
    }
    return kInconsistent;
  }
  return kOk;
}

// ---- transform / peval / gen ----

struct TransformOptions {
  std::string file;
  std::string output;
};

int run_transform(const TransformOptions& o, std::ostream& out) {
  const ParsedProgram parsed = load_program(o.file);
  const DProgram dp = to_d_program(parsed.program);
  std::string text = "% d-program: " + std::to_string(dp.n) + " original atoms, " + std::to_string(dp.m) +
                     " extended\n" + serialize_program(dp.flatten());
  write_output(o.output, text, out);
  return kOk;
}

struct PevalOptions {
  std::string file;
  std::size_t k = 1;
  std::string output;
};

int run_peval(const PevalOptions& o, std::ostream& out) {
  const ParsedProgram parsed = load_program(o.file);
  if (!parsed.constraints.empty()) throw UsageError(o.file + ": peval does not accept constraints");
  if (!is_sd(parsed.program))
    throw UsageError(o.file + ": peval needs a singly-defined program without disjunctive rules");
  write_output(o.output, serialize_program(peval_symbolic_iter(parsed.program, o.k)), out);
  return kOk;
}

struct GenOptions {
  std::size_t atoms = 0;
  std::size_t rules = 0;
  std::uint64_t seed = 0;
  bool sd = false;
  std::string output;
};

int run_gen(const GenOptions& o, std::ostream& out) {
  GenSpec spec;
  spec.n = o.atoms;
  spec.m = o.rules;
  spec.seed = o.seed;
  const DefiniteProgram p = o.sd ? generate_sd_program(spec) : generate_program(spec);
  std::string text = "% generated: atoms=" + std::to_string(o.atoms) + " rules=" + std::to_string(o.rules) +
                     " seed=" + std::to_string(o.seed) + " facts=" + std::to_string(p.facts().size()) + "\n" +
                     serialize_program(p);
  write_output(o.output, text, out);
  return kOk;
}

// ---- check ----

struct CheckOptions {
  std::size_t instances = 100;
  std::vector<std::size_t> atoms{10, 25, 50};
  std::vector<std::size_t> rule_factors{2, 10, 50};
  std::vector<std::size_t> k_list{1, 5};
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

int run_check(const CheckOptions& o, std::ostream& out) {
  require_positive(o.atoms, "--atoms-list");
  require_positive(o.rule_factors, "--rule-factors");
  std::vector<Method> methods{Method::tp(), Method::matrix(), Method::col_reduct()};
  for (std::size_t k : o.k_list) methods.push_back(Method::peval(k));
  for (std::size_t k : o.k_list) methods.push_back(Method::peval_col_reduct(k));

  const auto specs = campaign_specs(o.instances, o.atoms, o.rule_factors, o.seed);
  const CrossValidationReport report = cross_validate(specs, methods, solve, o.workers);

  for (const Disagreement& d : report.disagreements) {
    const GenSpec& s = specs[d.instance];
    out << "disagreement: instance " << d.instance << " (atoms=" << s.n << " rules=" << s.m << " seed=" << s.seed
        << ") " << d.method.label() << "\n  expected: {" << join(d.expected, ", ") << "}\n  actual:   {"
        << join(d.actual, ", ") << "}\n";
  }
  for (const std::string& e : report.errors) out << "error: instance " << e << '\n';
  for (std::size_t i : report.iteration_order_violations)
    out << "iteration order: instance " << i << " col-reduct " << report.instances[i].col_reduct_iterations
        << " > matrix " << report.instances[i].matrix_iterations << '\n';

  out << "instances: " << report.instances.size() << '\n'
      << "methods: " << methods.size() << '\n'
      << "disagreements: " << report.disagreements.size() << '\n'
      << "errors: " << report.errors.size() << '\n'
      << "col-reduct iterations above matrix: " << report.iteration_order_violations.size() << '\n'
      << (report.ok() ? "ok" : "FAILED") << '\n';
  return report.ok() ? kOk : kDisagreement;
}

// ---- bench ----

struct BenchOptions {
  std::vector<std::size_t> atoms;
  std::vector<std::size_t> rules;
  std::vector<std::string> k_list;
  std::size_t reps = 3;
  std::string csv;
  std::string plot_dir;
  std::uint64_t seed = 1;
};

int run_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  require_positive(o.atoms, "--atoms-list");
  require_positive(o.rules, "--rules-list");
  if (o.reps == 0) throw UsageError("--reps must be at least 1");

  std::vector<GridPoint> grid;
  for (std::size_t n : o.atoms)
    for (std::size_t m : o.rules) grid.push_back({n, m, o.k_list.empty() ? default_k_values(n) : resolve_k_list(o.k_list, n)});

  // Fail on an unwritable destination before spending time on the runs.
  std::ofstream csv(o.csv, std::ios::binary);
  if (!csv) throw IoError("cannot open '" + o.csv + "' for writing");

  const BenchReport report = run_benchmark(grid, o.reps, o.seed);
  write_csv(report, csv);
  csv.flush();
  if (!csv) throw IoError("write to '" + o.csv + "' failed");

  if (!o.plot_dir.empty()) {
    try {
      for (const auto& path : emit_plot_data(report, o.plot_dir)) out << "wrote " << path.string() << '\n';
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }

  out << "n,m,method,mean_fixpoint_s,mean_total_s,iterations,model_size\n";
  for (const BenchRow& r : report.means())
    out << r.n << ',' << r.m << ',' << r.method.label() << ',' << num(r.fixpoint_s) << ',' << num(r.total_s) << ','
        << num(r.iterations) << ',' << r.model_size << '\n';
  for (const std::string& msg : report.model_mismatches) err << "model mismatch: " << msg << '\n';
  return report.model_mismatches.empty() ? kOk : kDisagreement;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least models of definite logic programs by linear-algebraic fixpoint methods", "linfix"};
  app.require_subcommand(1);

  SolveOptions solve_o;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the least model of a program file");
  solve_cmd->add_option("file", solve_o.file, "Program file")->required();
  solve_cmd->add_option("--method", solve_o.method, "tp | matrix | col-reduct | peval | peval-cr")
      ->capture_default_str();
  solve_cmd->add_option("--k", solve_o.k, "Partial-evaluation squarings (peval methods only)");
  solve_cmd->add_option("--constraints", solve_o.constraints, "File of ':- body.' constraints");
  solve_cmd->add_flag("--stats", solve_o.stats, "Report timing and matrix statistics");
  solve_cmd->add_option("--format", solve_o.format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json-lines"}))
      ->capture_default_str();

  TransformOptions transform_o;
  auto* transform_cmd = app.add_subcommand("transform", "Emit the equivalent singly-defined d-program");
  transform_cmd->add_option("file", transform_o.file, "Program file")->required();
  transform_cmd->add_option("-o,--output", transform_o.output, "Output file (stdout if omitted)");

  PevalOptions peval_o;
  auto* peval_cmd = app.add_subcommand("peval", "Partially evaluate a singly-defined program k times");
  peval_cmd->add_option("file", peval_o.file, "Program file")->required();
  peval_cmd->add_option("--k", peval_o.k, "Unfolding rounds")->required();
  peval_cmd->add_option("-o,--output", peval_o.output, "Output file (stdout if omitted)");

  GenOptions gen_o;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random definite program");
  gen_cmd->add_option("--atoms", gen_o.atoms, "Atom count n")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rules", gen_o.rules, "Rule count m, facts included")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_o.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_flag("--sd", gen_o.sd, "Give every atom at most one rule");
  gen_cmd->add_option("-o,--output", gen_o.output, "Output file (stdout if omitted)");

  CheckOptions check_o;
  auto* check_cmd = app.add_subcommand("check", "Cross-validate every method against the T_P oracle");
  check_cmd->add_option("--instances", check_o.instances, "Random programs to test")->capture_default_str();
  check_cmd->add_option("--atoms-list", check_o.atoms, "Atom counts")->delimiter(',')->capture_default_str();
  check_cmd->add_option("--rule-factors", check_o.rule_factors, "Rule counts as multiples of n")
      ->delimiter(',')
      ->capture_default_str();
  check_cmd->add_option("--k-list", check_o.k_list, "peval squarings")->delimiter(',')->capture_default_str();
  check_cmd->add_option("--seed", check_o.seed, "Base seed")->capture_default_str();
  check_cmd->add_option("--workers", check_o.workers, "Worker threads (0 = hardware)")->capture_default_str();

  BenchOptions bench_o;
  auto* bench_cmd = app.add_subcommand("bench", "Time all methods over a grid of random programs");
  bench_cmd->add_option("--atoms-list", bench_o.atoms, "Atom counts")->delimiter(',')->required();
  bench_cmd->add_option("--rules-list", bench_o.rules, "Rule counts")->delimiter(',')->required();
  bench_cmd->add_option("--k-list", bench_o.k_list, "peval squarings; 'n' and 'n/2' allowed (default 1,5,n/2,n)")
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench_o.reps, "Repetitions per method")->capture_default_str();
  bench_cmd->add_option("--csv", bench_o.csv, "CSV output file")->required();
  bench_cmd->add_option("--plot-dir", bench_o.plot_dir, "Directory for per-n plot tables");
  bench_cmd->add_option("--seed", bench_o.seed, "Base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_o, out, err);
    if (*transform_cmd) return run_transform(transform_o, out);
    if (*peval_cmd) return run_peval(peval_o, out);
    if (*gen_cmd) return run_gen(gen_o, out);
    if (*check_cmd) return run_check(check_o, out);
    if (*bench_cmd) return run_bench(bench_o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace linfix::cli
