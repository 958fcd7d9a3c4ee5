#include "linfix/cross_validate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "linfix/tp_operator.hpp"

namespace linfix {

namespace {

struct InstanceOutcome {
  InstanceRecord record;
  std::vector<Disagreement> disagreements;
  bool order_violation = false;
  std::vector<std::string> errors;
};

InstanceOutcome run_instance(std::size_t index, const GenSpec& spec, std::span<const Method> methods,
                             const SolveFn& solver) {
  InstanceOutcome out;
  out.record.spec = spec;
  const DefiniteProgram p = generate_program(spec);
  out.record.facts = p.facts().size();
  const LeastModel oracle = tp_least_model(p);
  out.record.model_size = oracle.model.count();
  const auto expected = sorted_names(p.atoms(), oracle.model);

  for (const Method& method : methods) {
    SolveResult r;
    try {
      r = solver(p, method);
    } catch (const std::exception& e) {
      out.errors.push_back(std::to_string(index) + ": " + method.label() + ": " + e.what());
      continue;
    }
    out.record.extended_base = std::max(out.record.extended_base, r.m);
    if (method.kind == MethodKind::matrix) out.record.matrix_iterations = r.iterations;
    if (method.kind == MethodKind::col_reduct) out.record.col_reduct_iterations = r.iterations;
    if (r.model != oracle.model)
      out.disagreements.push_back({index, method, expected, sorted_names(p.atoms(), r.model)});
  }
  out.order_violation = out.record.matrix_iterations && out.record.col_reduct_iterations &&
                        out.record.col_reduct_iterations > out.record.matrix_iterations;
  return out;
}

}  // namespace

CrossValidationReport cross_validate(std::span<const GenSpec> specs, std::span<const Method> methods,
                                     const SolveFn& solver, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(specs.size(), 1)));

  std::vector<InstanceOutcome> outcomes(specs.size());
  std::vector<std::exception_ptr> failures(specs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        outcomes[i] = run_instance(i, specs[i], methods, solver);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  CrossValidationReport report;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    report.instances.push_back(o.record);
    for (auto& d : o.disagreements) report.disagreements.push_back(std::move(d));
    for (auto& e : o.errors) report.errors.push_back(std::move(e));
    if (o.order_violation) report.iteration_order_violations.push_back(i);
  }
  return report;
}

std::vector<GenSpec> campaign_specs(std::size_t count, std::span<const std::size_t> atoms,
                                    std::span<const std::size_t> rule_factors, std::uint64_t base_seed) {
  if (atoms.empty() || rule_factors.empty()) throw std::invalid_argument("campaign_specs: empty atom or factor list");
  std::vector<GenSpec> specs;
  specs.reserve(count);
  const std::size_t cells = atoms.size() * rule_factors.size();
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec s;
    s.n = atoms[(i % cells) / rule_factors.size()];
    s.m = rule_factors[i % rule_factors.size()] * s.n;
    s.seed = base_seed + i;
    specs.push_back(s);
  }
  return specs;
}

}  // namespace linfix
