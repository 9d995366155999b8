#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "semind/candidates.hpp"

namespace semind {

// Outcome of symbolically applying an induction invocation to a goal:
// either one subgoal per rule case, or a failure with a machine-readable
// reason ("arity-mismatch", "ill-typed", "no-datatype", "unknown-rule",
// "occurrence-mismatch").
struct ApplyResult {
  bool ok = false;
  std::string reason;
  std::vector<Prop> subgoals;

  static ApplyResult failure(std::string why) { return {false, std::move(why), {}}; }
};

namespace detail {

// Rewrites the goal so every induction term is a variable. Compound and
// constant terms are generalized wholesale: a fresh variable replaces all
// their occurrences. A variable listed a second (third, ...) time splits off
// one occurrence: each repeat replaces what is currently the second pre-order
// occurrence, which walks through the original occurrences left to right.
struct Generalized {
  Prop goal;
  std::vector<Term> vars;
};

inline bool generalize_terms(const Prop& goal, const std::vector<Term>& terms, Generalized& out,
                             std::string& why) {
  out.goal = goal;
  out.vars.clear();
  std::set<std::string> taken = free_vars(goal);
  std::set<std::string> listed;
  for (const auto& t : terms) {
    if (t.kind() != Term::Kind::Variable) {
      std::string v = fresh_name("v", taken);
      taken.insert(v);
      out.goal = substitute(out.goal, {{t, Term::var(v)}});
      out.vars.push_back(Term::var(v));
      continue;
    }
    if (listed.insert(t.name()).second) {
      out.vars.push_back(t);
      continue;
    }
    auto occs = occurrences_of(out.goal, t);
    if (occs.size() < 2) {
      why = "occurrence-mismatch";
      return false;
    }
    std::string v = fresh_name(t.name(), taken);
    taken.insert(v);
    out.goal = replace_at(out.goal, occs[1], Term::var(v));
    out.vars.push_back(Term::var(v));
  }
  return true;
}

inline Prop wrap_arbitrary(Prop p, const std::set<std::string>& arbitrary) {
  for (auto it = arbitrary.rbegin(); it != arbitrary.rend(); ++it) p = Prop::forall(*it, p);
  return p;
}

}  // namespace detail

// Symbolic application of `induct`. The rule is the explicit one if given,
// otherwise the structural rule of the first term's datatype with trailing
// terms folded into the generalized variables. Each rule case yields one
// subgoal: its hypotheses (universally closed over the generalized
// variables) chained by implication into the instantiated goal.
inline ApplyResult apply_induct(const TheoryEnv& env, const Prop& goal, const Candidate& cand) {
  detail::Generalized gen;
  std::string why;
  if (!detail::generalize_terms(goal, cand.induction_terms, gen, why))
    return ApplyResult::failure(why);

  GoalTyping typing(env, gen.goal);
  std::vector<Type> term_types;
  for (const auto& v : gen.vars) term_types.push_back(typing.infer(v));

  const InductionRule* rule = nullptr;
  std::set<std::string> arbitrary = cand.arbitrary;
  if (cand.rule) {
    rule = env.find_rule(*cand.rule);
    if (!rule) return ApplyResult::failure("unknown-rule");
    if (rule->arity != static_cast<int>(gen.vars.size()))
      return ApplyResult::failure("arity-mismatch");
  } else {
    Type first = typing.resolved(term_types[0]);
    if (first.kind() != Type::Kind::Con || !env.find_datatype(first.name()))
      return ApplyResult::failure("no-datatype");
    rule = env.find_rule(first.name() + ".induct");
    if (!rule) return ApplyResult::failure("unknown-rule");
    for (size_t i = 1; i < gen.vars.size(); ++i) arbitrary.insert(gen.vars[i].name());
    gen.vars.resize(1);
    term_types.resize(1);
  }

  // The rule's position types are a scheme; instantiate before unifying.
  std::vector<std::string> scheme_vars;
  for (const auto& pt : rule->position_types) type_vars(pt, scheme_vars);
  TypeSubst inst;
  for (const auto& sv : scheme_vars) inst[sv] = typing.fresh();
  try {
    for (size_t i = 0; i < gen.vars.size(); ++i)
      typing.unify_with(term_types[i], type_resolve(rule->position_types[i], inst));
  } catch (const TypeError&) {
    return ApplyResult::failure("ill-typed");
  }

  std::set<std::string> induction_names;
  for (const auto& v : gen.vars) induction_names.insert(v.name());
  std::set<std::string> outside = free_vars(gen.goal);
  for (const auto& n : induction_names) outside.erase(n);

  ApplyResult result;
  result.ok = true;
  for (const auto& rc : rule->cases) {
    // Freshen the case bindings against everything that stays free in the
    // subgoal. In a structural rule the recursive binding takes over the
    // induction variable's name, which the instantiation frees up.
    std::set<std::string> taken = outside;
    TermSubst renaming;
    auto in_hypotheses = [&](const std::string& b) {
      for (const auto& tup : rc.ih_tuples)
        for (const auto& t : tup)
          if (t == Term::var(b)) return true;
      return false;
    };
    for (const auto& b : rc.bindings) {
      std::string preferred = b.name;
      if (rule->origin == InductionRule::Origin::Structural && in_hypotheses(b.name))
        preferred = gen.vars[0].name();
      std::string actual = fresh_name(preferred, taken);
      taken.insert(actual);
      if (actual != b.name) renaming.push_back({Term::var(b.name), Term::var(actual)});
    }

    auto instantiate = [&](const std::vector<Term>& tuple) {
      TermSubst theta;
      for (size_t i = 0; i < gen.vars.size(); ++i)
        theta.push_back({gen.vars[i], substitute(tuple[i], renaming)});
      return substitute(gen.goal, theta);
    };

    Prop subgoal = instantiate(rc.conclusion);
    for (auto it = rc.ih_tuples.rbegin(); it != rc.ih_tuples.rend(); ++it)
      subgoal = Prop::implication(detail::wrap_arbitrary(instantiate(*it), arbitrary), subgoal);
    result.subgoals.push_back(subgoal);
  }
  return result;
}

// Keeps the candidates whose symbolic application succeeds and makes
// progress: induction must not hand back the goal itself as a subgoal.
inline std::vector<Candidate> prune_candidates(const TheoryEnv& env, const Prop& goal,
                                               const std::vector<Candidate>& cands) {
  std::vector<Candidate> out;
  for (const auto& c : cands) {
    ApplyResult r = apply_induct(env, goal, c);
    if (!r.ok) continue;
    bool stuck = false;
    for (const auto& sg : r.subgoals)
      if (alpha_equal(sg, goal)) {
        stuck = true;
        break;
      }
    if (!stuck) out.push_back(c);
  }
  return out;
}

}  // namespace semind
