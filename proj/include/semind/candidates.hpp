#pragma once

#include <set>
#include <string>
#include <vector>

#include "semind/parser.hpp"

namespace semind {

// Syntax-directed candidate construction. Every application node of the goal
// is visited in pre-order; each non-empty order-preserving sublist of its
// arguments becomes an induction-term tuple, first plain, then once per
// induction rule attached to the node's head. A rule is attached when its
// arity matches the node's full argument count. Duplicates keep their first
// position; enumeration stops at `limit` tuples.
inline std::vector<Candidate> generate_candidates(const TheoryEnv& env, const Prop& goal,
                                                  size_t limit = 1000) {
  std::vector<Candidate> out;
  std::set<std::string> seen;
  auto push = [&](const Candidate& c) {
    if (out.size() >= limit) return false;
    if (seen.insert(render_candidate(c)).second) out.push_back(c);
    return out.size() < limit;
  };

  for (const auto& path : term_positions(goal)) {
    Term node = term_at(goal, path);
    if (node.kind() != Term::Kind::Application) continue;

    std::vector<const InductionRule*> rules;
    if (node.head().kind() == Term::Kind::Constant)
      for (const InductionRule* r : applicable_rules(env, node.head().name()))
        if (r->arity == node.arg_count()) rules.push_back(r);

    const std::vector<Term>& args = node.args();
    const size_t n = args.size();
    if (n >= 20) throw EvalError("application with too many arguments for enumeration");
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
      Candidate base;
      for (size_t i = 0; i < n; ++i)
        if (mask & (size_t{1} << i)) base.induction_terms.push_back(args[i]);
      if (!push(base)) return out;
      for (const InductionRule* r : rules) {
        Candidate variant = base;
        variant.rule = r->name;
        if (!push(variant)) return out;
      }
    }
  }
  return out;
}

// Total number of distinct tuples the enumeration would produce.
inline size_t count_candidates(const TheoryEnv& env, const Prop& goal) {
  return generate_candidates(env, goal, static_cast<size_t>(-1)).size();
}

}  // namespace semind
