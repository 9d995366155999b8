#pragma once

#include <chrono>

#include "semind/candidates.hpp"
#include "semind/default_heuristics.hpp"
#include "semind/tactic.hpp"

namespace semind {

struct Config {
  int top_n = 10;
  int keep_k = 5;           // survivors of the induction-phase ranking
  int powerset_cap = 10;    // beyond this many free variables, only singletons
  size_t candidate_cap = 1000;
  int timeout_ms = 5000;
  bool use_prelude = true;
};

struct Recommendation {
  int rank = 0;
  Candidate candidate;
  std::string rendered;
  int induction_points = 0;
  int generalisation_points = 0;
  int total = 0;
  ScoreBreakdown induction_breakdown;
  ScoreBreakdown generalisation_breakdown;
};

struct AdviseResult {
  std::vector<Recommendation> recommendations;
  bool timed_out = false;
  double elapsed_ms = 0.0;
};

namespace detail {

struct Deadline {
  std::chrono::steady_clock::time_point end;
  bool expired() const { return std::chrono::steady_clock::now() >= end; }
};

// The induction phase scores the invocation before generalisation: strip the
// arbitrary set so explain and advise agree on the split.
inline Candidate without_arbitrary(const Candidate& c) {
  Candidate base = c;
  base.arbitrary.clear();
  return base;
}

inline bool candidate_order(const std::pair<int, std::string>& a,
                            const std::pair<int, std::string>& b) {
  if (a.first != b.first) return a.first > b.first;
  return a.second < b.second;
}

// Free variables of the goal not already consumed by the induction terms.
inline std::vector<std::string> expansion_variables(const Prop& goal, const Candidate& c) {
  std::set<std::string> used;
  for (const Term& t : c.induction_terms)
    for (const std::string& v : free_vars(t)) used.insert(v);
  std::vector<std::string> out;
  for (const std::string& v : free_vars(goal))
    if (!used.count(v)) out.push_back(v);
  return out;
}

inline std::vector<std::set<std::string>> arbitrary_subsets(const std::vector<std::string>& vars,
                                                            int powerset_cap) {
  std::vector<std::set<std::string>> out;
  if (static_cast<int>(vars.size()) > powerset_cap) {
    out.push_back({});
    for (const std::string& v : vars) out.push_back({v});
    return out;
  }
  size_t n = vars.size();
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    std::set<std::string> s;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) s.insert(vars[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Run the five steps: generate, prune, rank by induction heuristics, expand
// the generalisation powerset, rank by the combined score.
inline AdviseResult advise(const TheoryEnv& env, const Prop& goal, const HeuristicSet& set,
                           const Config& config = {}) {
  auto start = std::chrono::steady_clock::now();
  detail::Deadline deadline{start + std::chrono::milliseconds(config.timeout_ms)};
  AdviseResult result;
  auto finish = [&]() -> AdviseResult& {
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
  };

  // Step 1: syntax-directed enumeration.
  std::vector<Candidate> generated = generate_candidates(env, goal, config.candidate_cap);
  if (deadline.expired()) {
    result.timed_out = true;
    return finish();
  }

  // Step 2: drop invocations that fail or merely restate the goal.
  std::vector<Candidate> survivors;
  for (const Candidate& c : generated) {
    if (deadline.expired()) {
      result.timed_out = true;
      return finish();
    }
    ApplyResult applied = apply_induct(env, goal, c);
    if (!applied.ok) continue;
    bool restates = false;
    for (const Prop& sg : applied.subgoals)
      if (alpha_equal(sg, goal)) restates = true;
    if (!restates) survivors.push_back(c);
  }

  // Step 3: induction-phase scoring, keep the best keep_k.
  struct Scored {
    Candidate candidate;
    std::string rendered;
    int induction_points;
    ScoreBreakdown breakdown;
  };
  std::vector<Scored> scored;
  for (const Candidate& c : survivors) {
    if (deadline.expired()) {
      result.timed_out = true;
      return finish();
    }
    ScoreBreakdown b = score(set, Phase::Induction, env, goal, c);
    scored.push_back({c, render_candidate(c), b.points, std::move(b)});
  }
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return detail::candidate_order({a.induction_points, a.rendered},
                                   {b.induction_points, b.rendered});
  });
  if (static_cast<int>(scored.size()) > config.keep_k) scored.resize(config.keep_k);

  // Steps 4 and 5: expand the arbitrary powerset and add generalisation
  // points. Expansions are re-checked like step 2; failures vanish silently.
  std::vector<Recommendation> expanded;
  for (const Scored& s : scored) {
    std::vector<std::string> vars = detail::expansion_variables(goal, s.candidate);
    for (std::set<std::string>& subset : detail::arbitrary_subsets(vars, config.powerset_cap)) {
      if (deadline.expired()) {
        result.timed_out = true;
        break;
      }
      Candidate c = s.candidate;
      c.arbitrary = std::move(subset);
      if (!c.arbitrary.empty()) {
        ApplyResult applied = apply_induct(env, goal, c);
        if (!applied.ok) continue;
        bool restates = false;
        for (const Prop& sg : applied.subgoals)
          if (alpha_equal(sg, goal)) restates = true;
        if (restates) continue;
      }
      Recommendation r;
      r.candidate = c;
      r.rendered = render_candidate(c);
      r.induction_points = s.induction_points;
      r.induction_breakdown = s.breakdown;
      r.generalisation_breakdown = score(set, Phase::Generalisation, env, goal, c);
      r.generalisation_points = r.generalisation_breakdown.points;
      r.total = r.induction_points + r.generalisation_points;
      expanded.push_back(std::move(r));
    }
    if (result.timed_out) break;
  }

  std::stable_sort(expanded.begin(), expanded.end(),
                   [](const Recommendation& a, const Recommendation& b) {
                     return detail::candidate_order({a.total, a.rendered},
                                                    {b.total, b.rendered});
                   });
  if (static_cast<int>(expanded.size()) > config.top_n) expanded.resize(config.top_n);
  for (size_t i = 0; i < expanded.size(); ++i) expanded[i].rank = static_cast<int>(i) + 1;
  result.recommendations = std::move(expanded);
  return finish();
}

inline AdviseResult advise_with_budget(const TheoryEnv& env, const Prop& goal,
                                       const HeuristicSet& set, Config config, int budget_ms) {
  config.timeout_ms = budget_ms;
  return advise(env, goal, set, config);
}

// Score one invocation the way advise would have: induction points ignore the
// arbitrary set, generalisation points see it. Throws ScopeError if the
// invocation fails to apply, EvalError if it merely restates the goal.
inline Recommendation explain_candidate(const TheoryEnv& env, const Prop& goal,
                                        const HeuristicSet& set, const Candidate& cand) {
  ApplyResult applied = apply_induct(env, goal, cand);
  if (!applied.ok) throw ScopeError("candidate does not apply: " + applied.reason);
  for (const Prop& sg : applied.subgoals)
    if (alpha_equal(sg, goal))
      throw EvalError("candidate restates the goal and would be pruned");

  Recommendation r;
  r.candidate = cand;
  r.rendered = render_candidate(cand);
  r.induction_breakdown =
      score(set, Phase::Induction, env, goal, detail::without_arbitrary(cand));
  r.induction_points = r.induction_breakdown.points;
  r.generalisation_breakdown = score(set, Phase::Generalisation, env, goal, cand);
  r.generalisation_points = r.generalisation_breakdown.points;
  r.total = r.induction_points + r.generalisation_points;
  return r;
}

}  // namespace semind
