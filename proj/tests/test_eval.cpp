#include <catch2/catch_amalgamated.hpp>

#include "semind/default_heuristics.hpp"
#include "semind/eval.hpp"

using namespace semind;

namespace {

const EvalReport& corpus_report() {
  static const EvalReport report = run_eval(SEMIND_CORPUS_DIR, default_heuristics());
  return report;
}

int rank_of(const EvalReport& r, const std::string& goal) {
  for (const auto& g : r.goals)
    if (g.goal == goal) return g.expected_rank;
  FAIL("no goal named " << goal);
  return -1;
}

}  // namespace

TEST_CASE("the corpus is large enough and mostly hit at rank one") {
  const EvalReport& r = corpus_report();
  CHECK(r.goals.size() >= 25);
  CHECK(r.annotated >= 25);
  CHECK(r.coincidence.at(1) >= 0.60);
  CHECK(r.coincidence.at(10) >= 0.90);
}

TEST_CASE("per-goal outcomes are pinned") {
  const EvalReport& r = corpus_report();

  // The two deliberate rank-two placements: the same-score twin of the
  // winning invocation, and a commutation goal where either variable works.
  CHECK(rank_of(r, "rev2_rev1") == 2);
  CHECK(rank_of(r, "add_comm") == 2);

  for (const auto& g : r.goals) {
    INFO(g.file << ' ' << g.goal);
    if (g.expected.empty()) {
      CHECK(g.goal == "rep_comm");
      CHECK_FALSE(g.top.empty());
    } else if (g.goal != "rev2_rev1" && g.goal != "add_comm") {
      CHECK(g.expected_rank == 1);
    }
  }

  CHECK(r.annotated == 29);
  CHECK(r.coincidence.at(1) == Catch::Approx(27.0 / 29.0));
  CHECK(r.coincidence.at(3) == Catch::Approx(1.0));
  CHECK(r.coincidence.at(10) == Catch::Approx(1.0));
}

TEST_CASE("coincidence grows with the cutoff and return rate with the budget") {
  const EvalReport& r = corpus_report();
  double prev = 0.0;
  for (int k : eval_cutoffs()) {
    CHECK(r.coincidence.at(k) >= prev);
    prev = r.coincidence.at(k);
  }
  prev = 0.0;
  for (int ms : eval_budgets_ms()) {
    CHECK(r.return_rate.at(ms) >= prev);
    prev = r.return_rate.at(ms);
  }
  CHECK(r.median_ms < 1000.0);
}

TEST_CASE("the timing-independent signature is reproducible") {
  Config config;
  EvalReport a = run_eval(SEMIND_CORPUS_DIR, default_heuristics(), config, false, false);
  EvalReport b = run_eval(SEMIND_CORPUS_DIR, default_heuristics(), config, false, false);
  CHECK(a.signature() == b.signature());
  CHECK(a.signature().find("rev2_rev1") != std::string::npos);
  CHECK(a.return_rate.empty());
}

TEST_CASE("normalization strips exactly the matching structural rule") {
  TheoryEnv env = parse_theory(
      "fun rev2 : list a => list a => list a where\n"
      "  rev2 Nil ys = ys\n"
      "| rev2 (Cons x xs) ys = rev2 xs (Cons x ys)\n"
      "goal g : rev2 xs ys = append (rev xs) ys");
  const Prop& goal = env.goals[0].prop;

  auto norm = [&](const std::string& s) {
    return render_candidate(normalize_default_rule(env, goal, parse_candidate(env, goal, s)));
  };
  CHECK(norm("induct xs rule: list.induct") == "induct xs");
  CHECK(norm("induct xs arbitrary: ys rule: list.induct") == "induct xs arbitrary: ys");
  CHECK(norm("induct xs ys rule: rev2.induct") == "induct xs ys rule: rev2.induct");
  CHECK(norm("induct xs rule: rev_induct") == "induct xs rule: rev_induct");
  CHECK(norm("induct xs") == "induct xs");

  TheoryEnv nats = parse_theory("goal g : add n m = add m n");
  Candidate odd = parse_candidate(nats, nats.goals[0].prop, "induct n rule: list.induct");
  CHECK(render_candidate(normalize_default_rule(nats, nats.goals[0].prop, odd)) ==
        "induct n rule: list.induct");
}

TEST_CASE("an empty corpus directory is an error") {
  CHECK_THROWS_AS(run_eval(SEMIND_FIXTURE_DIR "/empty", default_heuristics()), Error);
}
