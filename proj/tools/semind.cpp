#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semind/semind.hpp"

using nlohmann::ordered_json;
using namespace semind;

namespace {

struct Options {
  std::string path;
  std::string goal_name;
  std::string heuristics_path;
  std::string candidate_text;
  int top_n = 10;
  int timeout_ms = 5000;
  bool json = false;
  bool no_prelude = false;
  bool normalize = false;
  bool dump_candidates = false;
  bool dump_subgoals = false;
};

Config make_config(const Options& opt) {
  Config config;
  config.top_n = opt.top_n;
  config.timeout_ms = opt.timeout_ms;
  config.use_prelude = !opt.no_prelude;
  return config;
}

const HeuristicSet& heuristics_for(const Options& opt, HeuristicSet& storage) {
  if (opt.heuristics_path.empty()) return default_heuristics();
  std::ifstream in(opt.heuristics_path);
  if (!in) throw EvalError("cannot open heuristics file: " + opt.heuristics_path);
  std::stringstream ss;
  ss << in.rdbuf();
  storage = load_heuristics(ss.str());
  return storage;
}

const GoalDecl& goal_for(const TheoryEnv& env, const Options& opt) {
  if (env.goals.empty()) throw UnknownGoalError("(none declared)");
  if (opt.goal_name.empty()) return env.goals.front();
  const GoalDecl* goal = env.find_goal(opt.goal_name);
  if (!goal) throw UnknownGoalError(opt.goal_name);
  return *goal;
}

ordered_json config_json(const Options& opt, const Config& config) {
  return ordered_json{{"top_n", config.top_n},
                      {"keep_k", config.keep_k},
                      {"powerset_cap", config.powerset_cap},
                      {"timeout_ms", config.timeout_ms},
                      {"prelude", config.use_prelude},
                      {"heuristics",
                       opt.heuristics_path.empty() ? std::string("default") : opt.heuristics_path},
                      {"normalize_default_rule", opt.normalize}};
}

ordered_json goal_json(const GoalDecl& goal) {
  return ordered_json{{"name", goal.name}, {"prop", to_string(goal.prop)}};
}

int run_advise(const Options& opt) {
  TheoryEnv env = parse_theory_file(opt.path, !opt.no_prelude);
  const GoalDecl& goal = goal_for(env, opt);
  Config config = make_config(opt);

  if (opt.dump_candidates) {
    std::vector<Candidate> generated = generate_candidates(env, goal.prop, config.candidate_cap);
    if (opt.json) {
      ordered_json out{{"tool_version", tool_version}, {"goal", goal_json(goal)}};
      out["candidates"] = ordered_json::array();
      for (const auto& c : generated) out["candidates"].push_back(render_candidate(c));
      std::cout << out.dump(2) << '\n';
    } else {
      for (const auto& c : generated) std::cout << render_candidate(c) << '\n';
    }
    return 0;
  }

  HeuristicSet storage;
  const HeuristicSet& set = heuristics_for(opt, storage);
  AdviseResult r = advise(env, goal.prop, set, config);
  if (r.timed_out)
    std::cerr << "note: budget exhausted; the ranking covers the work that finished\n";

  auto tactic_of = [&](const Recommendation& rec) {
    if (!opt.normalize) return rec.rendered;
    return render_candidate(normalize_default_rule(env, goal.prop, rec.candidate));
  };

  if (opt.json) {
    ordered_json out{{"tool_version", tool_version},
                     {"goal", goal_json(goal)},
                     {"config", config_json(opt, config)}};
    out["recommendations"] = ordered_json::array();
    for (const auto& rec : r.recommendations)
      out["recommendations"].push_back(ordered_json{
          {"rank", rec.rank},
          {"tactic", tactic_of(rec)},
          {"total", rec.total},
          {"induction_points", rec.induction_points},
          {"generalisation_points", rec.generalisation_points}});
    out["timed_out"] = r.timed_out;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "goal " << goal.name << ": " << to_string(goal.prop) << '\n';
    for (const auto& rec : r.recommendations) {
      std::cout << "  " << rec.rank << ". " << tactic_of(rec) << "  (" << rec.total << " = "
                << rec.induction_points << " + " << rec.generalisation_points << ")\n";
    }
    if (r.recommendations.empty()) std::cout << "  no applicable induction\n";
  }
  return 0;
}

void print_breakdown(const char* label, const ScoreBreakdown& b) {
  std::cout << label << ": " << b.points << '\n';
  for (const auto& f : b.fires)
    if (f.fired)
      std::cout << "  " << (f.weight >= 0 ? "+" : "") << f.weight << ' ' << f.name << '\n';
}

ordered_json breakdown_json(const ScoreBreakdown& b) {
  ordered_json fired = ordered_json::array();
  for (const auto& f : b.fires)
    if (f.fired) fired.push_back(ordered_json{{"name", f.name}, {"weight", f.weight}});
  return ordered_json{{"points", b.points}, {"fired", fired}};
}

int run_explain(const Options& opt) {
  TheoryEnv env = parse_theory_file(opt.path, !opt.no_prelude);
  const GoalDecl& goal = goal_for(env, opt);
  HeuristicSet storage;
  const HeuristicSet& set = heuristics_for(opt, storage);
  Candidate cand = parse_candidate(env, goal.prop, opt.candidate_text);

  Recommendation rec;
  ApplyResult applied;
  try {
    rec = explain_candidate(env, goal.prop, set, cand);
    applied = apply_induct(env, goal.prop, cand);
  } catch (const ScopeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (opt.json) {
    ordered_json out{{"tool_version", tool_version},
                     {"goal", goal_json(goal)},
                     {"tactic", rec.rendered},
                     {"induction", breakdown_json(rec.induction_breakdown)},
                     {"generalisation", breakdown_json(rec.generalisation_breakdown)},
                     {"total", rec.total}};
    if (opt.dump_subgoals) {
      out["subgoals"] = ordered_json::array();
      for (const auto& s : applied.subgoals) out["subgoals"].push_back(to_string(s));
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "goal " << goal.name << ": " << to_string(goal.prop) << '\n';
    std::cout << "tactic: " << rec.rendered << '\n';
    print_breakdown("induction", rec.induction_breakdown);
    print_breakdown("generalisation", rec.generalisation_breakdown);
    std::cout << "total: " << rec.total << '\n';
    if (opt.dump_subgoals) {
      std::cout << "subgoals:\n";
      for (const auto& s : applied.subgoals) std::cout << "  " << to_string(s) << '\n';
    }
  }
  return 0;
}

int run_eval_cmd(const Options& opt) {
  HeuristicSet storage;
  const HeuristicSet& set = heuristics_for(opt, storage);
  Config config = make_config(opt);
  EvalReport report = run_eval(opt.path, set, config, opt.normalize);

  if (opt.json) {
    ordered_json out{{"tool_version", tool_version},
                     {"corpus", opt.path},
                     {"config", config_json(opt, config)}};
    out["goals"] = ordered_json::array();
    for (const auto& g : report.goals) {
      ordered_json gj{{"file", g.file},
                      {"goal", g.goal},
                      {"expected", g.expected},
                      {"rank", g.expected_rank},
                      {"top", g.top},
                      {"elapsed_ms", g.elapsed_ms}};
      out["goals"].push_back(std::move(gj));
    }
    out["annotated"] = report.annotated;
    for (const auto& [k, v] : report.coincidence)
      out["coincidence"]["@" + std::to_string(k)] = v;
    for (const auto& [ms, v] : report.return_rate)
      out["return_rate"][std::to_string(ms) + "ms"] = v;
    out["median_ms"] = report.median_ms;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << report.to_text();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank induction invocations for equational goals over small functional programs"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_goal) {
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_flag("--no-prelude", opt.no_prelude, "do not preload the shared prelude");
    sub->add_option("--heuristics", opt.heuristics_path, "score with this heuristic file");
    if (with_goal) sub->add_option("--goal", opt.goal_name, "goal name (default: first)");
  };

  CLI::App* adv = app.add_subcommand("advise", "rank induction invocations for a goal");
  adv->add_option("file", opt.path, "theory file")->required();
  add_common(adv, true);
  adv->add_option("--top", opt.top_n, "number of recommendations to keep");
  adv->add_option("--timeout-ms", opt.timeout_ms, "advice budget in milliseconds");
  adv->add_flag("--normalize-default-rule", opt.normalize,
                "render structural rules implicitly");
  adv->add_flag("--dump-candidates", opt.dump_candidates,
                "print every generated candidate before pruning and exit");

  CLI::App* exp = app.add_subcommand("explain", "score one invocation and show why");
  exp->add_option("file", opt.path, "theory file")->required();
  exp->add_option("--candidate", opt.candidate_text, "invocation, e.g. \"induct xs\"")
      ->required();
  add_common(exp, true);
  exp->add_flag("--dump-subgoals", opt.dump_subgoals, "also print the generated subgoals");

  CLI::App* ev = app.add_subcommand("eval", "replay every annotated goal under a corpus");
  ev->add_option("dir", opt.path, "corpus directory")->required();
  add_common(ev, false);
  ev->add_option("--top", opt.top_n, "recommendations per goal");
  ev->add_option("--timeout-ms", opt.timeout_ms, "advice budget in milliseconds");
  ev->add_flag("--normalize-default-rule", opt.normalize,
               "compare invocations modulo structural rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 64;
  }

  try {
    if (adv->parsed()) return run_advise(opt);
    if (exp->parsed()) return run_explain(opt);
    if (ev->parsed()) return run_eval_cmd(opt);
  } catch (const UnknownGoalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
