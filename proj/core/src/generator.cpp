#include "linfix/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linfix/rng.hpp"

namespace linfix {

namespace {

constexpr std::size_t kRedrawLimit = 10000;

void validate(const GenSpec& spec) {
  if (spec.n == 0 || spec.m == 0) throw std::invalid_argument("generator: n and m must be positive");
  for (double w : spec.body_dist)
    if (!(w >= 0.0)) throw std::invalid_argument("generator: body-size weights must be non-negative");
  if (!(spec.fact_fraction_bound > 0.0)) throw std::invalid_argument("generator: fact bound must be positive");
}

AtomTable make_atoms(std::size_t n) {
  AtomTable atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.intern("p" + std::to_string(i));
  return atoms;
}

class BodySampler {
 public:
  explicit BodySampler(const GenSpec& spec) : n_(spec.n), scratch_(spec.n) {
    double total = 0.0;
    for (std::size_t s = 1; s < spec.body_dist.size(); ++s) total += spec.body_dist[s];
    if (total <= 0.0) throw std::invalid_argument("generator: body-size distribution has no mass on sizes 1..8");
    for (std::size_t s = 1; s < spec.body_dist.size(); ++s) {
      weight_[s] = spec.body_dist[s] / total;
      if (spec.body_dist[s] > 0.0 && s + 1 > spec.n)
        throw std::invalid_argument("generator: body size " + std::to_string(s) + " needs more than n - 1 = " +
                                    std::to_string(spec.n - 1) + " atoms");
    }
  }

  /// Sizes for `count` rules: largest-remainder quotas of the distribution, shuffled.
  /// Each position has the quota proportions as its marginal, and the histogram
  /// deviates from the distribution by less than one rule per bucket.
  std::vector<std::size_t> sizes(Rng& rng, std::size_t count) const {
    std::array<std::size_t, 9> quota{};
    std::array<double, 9> remainder;
    remainder.fill(-1.0);
    std::size_t assigned = 0;
    for (std::size_t s = 1; s < quota.size(); ++s) {
      const double exact = weight_[s] * static_cast<double>(count);
      quota[s] = static_cast<std::size_t>(exact);
      remainder[s] = weight_[s] > 0.0 ? exact - static_cast<double>(quota[s]) : -1.0;
      assigned += quota[s];
    }
    while (assigned < count) {
      const auto it = std::max_element(remainder.begin() + 1, remainder.end());
      ++quota[static_cast<std::size_t>(it - remainder.begin())];
      *it = -1.0;
      ++assigned;
    }
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t s = 1; s < quota.size(); ++s) out.insert(out.end(), quota[s], s);
    for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
    return out;
  }

  /// `count` distinct atoms other than `head`, by partial Fisher-Yates.
  std::vector<AtomId> body(Rng& rng, AtomId head, std::size_t count) {
    std::iota(scratch_.begin(), scratch_.end(), AtomId{0});
    std::swap(scratch_[head], scratch_.back());
    const std::size_t pool = n_ - 1;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.below(pool - i);
      std::swap(scratch_[i], scratch_[j]);
    }
    return {scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(count)};
  }

 private:
  std::size_t n_;
  std::array<double, 9> weight_{};
  std::vector<AtomId> scratch_;
};

/// `count` distinct atoms, in draw order.
std::vector<AtomId> distinct_atoms(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<AtomId> all(n);
  std::iota(all.begin(), all.end(), AtomId{0});
  for (std::size_t i = 0; i < count; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(count);
  return all;
}

}  // namespace

std::size_t max_fact_count(const GenSpec& spec) {
  const double bound = static_cast<double>(spec.n) * spec.fact_fraction_bound;
  const auto strict = static_cast<std::size_t>(std::ceil(bound)) - 1;  // largest integer below bound
  return std::min(std::max<std::size_t>(strict, 1), std::min(spec.m, spec.n));
}

DefiniteProgram generate_program(const GenSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::size_t facts = static_cast<std::size_t>(rng.between(1, max_fact_count(spec)));

  std::vector<Rule> rules;
  rules.reserve(spec.m);
  std::set<Rule> seen;
  for (AtomId h : distinct_atoms(rng, spec.n, facts)) {
    rules.push_back(Rule{h, {}, RuleKind::conjunctive});
    seen.insert(rules.back());
  }
  if (rules.size() == spec.m) return DefiniteProgram(make_atoms(spec.n), std::move(rules));

  BodySampler sampler(spec);
  for (const std::size_t size : sampler.sizes(rng, spec.m - rules.size())) {
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == kRedrawLimit)
        throw std::invalid_argument("generator: cannot find a fresh rule with body size " + std::to_string(size));
      const auto head = static_cast<AtomId>(rng.below(spec.n));
      Rule r = make_rule(head, sampler.body(rng, head, size));
      if (seen.insert(r).second) {
        rules.push_back(std::move(r));
        break;
      }
    }
  }
  return DefiniteProgram(make_atoms(spec.n), std::move(rules));
}

DefiniteProgram generate_sd_program(const GenSpec& spec) {
  validate(spec);
  if (spec.m > spec.n) throw std::invalid_argument("generator: a singly-defined program has at most n rules");
  Rng rng(spec.seed);
  const std::size_t facts = static_cast<std::size_t>(rng.between(1, max_fact_count(spec)));
  const std::vector<AtomId> heads = distinct_atoms(rng, spec.n, spec.m);

  std::vector<Rule> rules;
  rules.reserve(spec.m);
  for (std::size_t i = 0; i < facts; ++i) rules.push_back(Rule{heads[i], {}, RuleKind::conjunctive});
  if (facts < spec.m) {
    BodySampler sampler(spec);
    const std::vector<std::size_t> sizes = sampler.sizes(rng, spec.m - facts);
    for (std::size_t i = facts; i < spec.m; ++i)
      rules.push_back(make_rule(heads[i], sampler.body(rng, heads[i], sizes[i - facts])));
  }
  return DefiniteProgram(make_atoms(spec.n), std::move(rules));
}

std::array<std::size_t, 9> body_size_histogram(const DefiniteProgram& p) {
  std::array<std::size_t, 9> h{};
  for (const Rule& r : p.rules()) ++h[std::min<std::size_t>(r.body.size(), h.size() - 1)];
  return h;
}

std::map<std::size_t, std::size_t> head_multiplicity(const DefiniteProgram& p) {
  std::vector<std::size_t> per_head(p.atom_count(), 0);
  for (const Rule& r : p.rules()) ++per_head[r.head];
  std::map<std::size_t, std::size_t> out;
  for (std::size_t c : per_head) ++out[c];
  return out;
}

}  // namespace linfix
