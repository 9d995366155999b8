#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "semind/parser.hpp"
#include "semind/pipeline.hpp"
#include "semind/typecheck.hpp"

namespace semind {

// "induct xs rule: list.induct" and "induct xs" invoke the same scheme; for
// scoring-agnostic comparisons the explicit structural rule can be dropped.
inline Candidate normalize_default_rule(const TheoryEnv& env, const Prop& goal, Candidate cand) {
  if (!cand.rule || cand.induction_terms.empty()) return cand;
  const InductionRule* rule = env.find_rule(*cand.rule);
  if (!rule || rule->origin != InductionRule::Origin::Structural) return cand;
  try {
    GoalTyping typing(env, goal);
    Type first = typing.resolved(typing.infer(cand.induction_terms[0]));
    if (first.kind() == Type::Kind::Con && *cand.rule == first.name() + ".induct")
      cand.rule.reset();
  } catch (const Error&) {
    // Leave untypeable invocations as written.
  }
  return cand;
}

struct GoalOutcome {
  std::string file;
  std::string goal;
  std::string expected;           // empty when the goal carries no expectation
  std::vector<std::string> top;   // rendered recommendations in rank order
  int expected_rank = 0;          // 1-based; 0 = absent or unannotated
  double elapsed_ms = 0.0;
  bool timed_out = false;
};

struct EvalReport {
  std::vector<GoalOutcome> goals;
  int annotated = 0;
  std::map<int, double> coincidence;  // cutoff -> fraction of annotated goals hit
  std::map<int, double> return_rate;  // budget ms -> fraction of goals with advice
  double median_ms = 0.0;

  // Everything timing-independent, for byte-comparing two runs.
  std::string signature() const {
    std::ostringstream out;
    for (const auto& g : goals) {
      out << g.file << ' ' << g.goal << " rank=" << g.expected_rank;
      if (!g.expected.empty()) out << " expected={" << g.expected << '}';
      for (const auto& t : g.top) out << " {" << t << '}';
      out << '\n';
    }
    out << "annotated=" << annotated << '\n';
    for (const auto& [k, v] : coincidence) out << "coincidence@" << k << '=' << v << '\n';
    return out.str();
  }

  std::string to_text() const {
    std::ostringstream out;
    for (const auto& g : goals) {
      out << g.file << ' ' << g.goal << ": ";
      if (g.expected.empty())
        out << "(no expectation)";
      else if (g.expected_rank > 0)
        out << "hit at rank " << g.expected_rank;
      else
        out << "missed";
      if (!g.top.empty()) out << "; top: " << g.top.front();
      out << '\n';
    }
    out << "goals: " << goals.size() << " (" << annotated << " annotated)\n";
    for (const auto& [k, v] : coincidence)
      out << "coincidence@" << k << ": " << v * 100.0 << "%\n";
    for (const auto& [ms, v] : return_rate)
      out << "returned within " << ms << "ms: " << v * 100.0 << "%\n";
    out << "median advise: " << median_ms << "ms\n";
    return out.str();
  }
};

inline const std::vector<int>& eval_cutoffs() {
  static const std::vector<int> ks = {1, 3, 5, 10};
  return ks;
}

inline const std::vector<int>& eval_budgets_ms() {
  static const std::vector<int> budgets = {200, 500, 1000, 2000, 5000};
  return budgets;
}

namespace detail {

inline std::vector<std::string> corpus_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".thy")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw EvalError("no .thy files under " + dir);
  return files;
}

}  // namespace detail

inline EvalReport run_eval(const std::string& corpus_dir, const HeuristicSet& set,
                           const Config& config = {}, bool normalize = false,
                           bool sweep_budgets = true) {
  EvalReport report;
  std::vector<double> elapsed;
  std::map<int, int> returned;

  for (const auto& path : detail::corpus_files(corpus_dir)) {
    TheoryEnv env = parse_theory_file(path, config.use_prelude);
    std::string base = std::filesystem::path(path).filename().string();
    for (const GoalDecl& decl : env.goals) {
      AdviseResult r = advise(env, decl.prop, set, config);
      GoalOutcome outcome;
      outcome.file = base;
      outcome.goal = decl.name;
      outcome.elapsed_ms = r.elapsed_ms;
      outcome.timed_out = r.timed_out;
      for (const auto& rec : r.recommendations) {
        Candidate c = rec.candidate;
        if (normalize) c = normalize_default_rule(env, decl.prop, c);
        outcome.top.push_back(render_candidate(c));
      }
      if (decl.expected) {
        ++report.annotated;
        Candidate want = *decl.expected;
        if (normalize) want = normalize_default_rule(env, decl.prop, want);
        outcome.expected = render_candidate(want);
        auto it = std::find(outcome.top.begin(), outcome.top.end(), outcome.expected);
        if (it != outcome.top.end())
          outcome.expected_rank = static_cast<int>(it - outcome.top.begin()) + 1;
      }
      elapsed.push_back(r.elapsed_ms);
      report.goals.push_back(std::move(outcome));

      if (sweep_budgets)
        for (int budget : eval_budgets_ms()) {
          AdviseResult b = advise_with_budget(env, decl.prop, set, config, budget);
          if (!b.recommendations.empty()) ++returned[budget];
        }
    }
  }

  for (int k : eval_cutoffs()) {
    int hits = 0;
    for (const auto& g : report.goals)
      if (!g.expected.empty() && g.expected_rank > 0 && g.expected_rank <= k) ++hits;
    report.coincidence[k] =
        report.annotated == 0 ? 0.0 : static_cast<double>(hits) / report.annotated;
  }

  if (sweep_budgets && !report.goals.empty())
    for (int budget : eval_budgets_ms())
      report.return_rate[budget] =
          static_cast<double>(returned[budget]) / static_cast<double>(report.goals.size());

  if (!elapsed.empty()) {
    std::sort(elapsed.begin(), elapsed.end());
    size_t mid = elapsed.size() / 2;
    report.median_ms =
        elapsed.size() % 2 ? elapsed[mid] : (elapsed[mid - 1] + elapsed[mid]) / 2.0;
  }
  return report;
}

}  // namespace semind
