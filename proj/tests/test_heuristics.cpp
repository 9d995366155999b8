#include <catch2/catch_amalgamated.hpp>

#include "naive_interp.hpp"
#include "semind/default_heuristics.hpp"
#include "semind/parser.hpp"

using namespace semind;

namespace {

const HeuristicExpr& heuristic_root(const HeuristicSet& set, const std::string& name) {
  for (const auto& h : set.heuristics)
    if (h.name == name) return *h.root;
  throw Error("no heuristic named " + name);
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("the generalisation heuristic recognises the accumulator") {
  TheoryEnv env = parse_theory_file(std::string(SEMIND_FIXTURE_DIR) + "/program1.thy", false);
  const Prop& goal = env.goals[0].prop;
  const HeuristicSet& set = default_heuristics();
  const HeuristicExpr& p2 = heuristic_root(set, "nipkow_generalisation");

  Candidate with_ys = parse_candidate(env, goal, "induct xs arbitrary: ys");
  EvalContext ctx = make_goal_context(env, goal, with_ys);
  CHECK(eval_heuristic_expr(set, p2, ctx));

  Candidate without = parse_candidate(env, goal, "induct xs");
  EvalContext ctx2 = make_goal_context(env, goal, without);
  CHECK(eval_heuristic_expr(set, p2, ctx2));  // vacuous over the empty set
}

TEST_CASE("the generalisation heuristic rejects an unchanged argument") {
  TheoryEnv env = parse_theory("goal rep_self : replicate n y = replicate n y");
  const Prop& goal = env.goals[0].prop;
  const HeuristicSet& set = default_heuristics();
  const HeuristicExpr& p2 = heuristic_root(set, "nipkow_generalisation");

  Candidate c = parse_candidate(env, goal, "induct n arbitrary: y");
  EvalContext ctx = make_goal_context(env, goal, c);
  CHECK_FALSE(eval_heuristic_expr(set, p2, ctx));
}

TEST_CASE("naive and production interpreters agree on randomized pairs") {
  naive::Agreement a = naive::run_agreement(600, 20260814);
  INFO(a.first_disagreement);
  CHECK(a.pairs == 600);
  REQUIRE(a.agreements == a.pairs);
}

TEST_CASE("quantifiers satisfy de Morgan duality") {
  TheoryEnv env = parse_theory("goal g : rev (append xs ys) = append (rev ys) (rev xs)");
  const Prop& goal = env.goals[0].prop;
  Candidate cand;
  cand.induction_terms.push_back(Term::var("xs"));

  HeuristicSet set = load_heuristics(R"(
(heuristic all_vars induction 1
  (forall t (terms) (is_variable t)))
(heuristic not_exists_nonvar induction 1
  (not (exists t (terms) (not (is_variable t)))))
(heuristic some_const induction 1
  (exists t (terms) (is_constant t)))
(heuristic not_all_nonconst induction 1
  (not (forall t (terms) (not (is_constant t)))))
)");
  Phase p = Phase::Induction;
  ScoreBreakdown b = score(set, p, env, goal, cand);
  REQUIRE(b.fires.size() == 4);
  CHECK(b.fires[0].fired == b.fires[1].fired);
  CHECK(b.fires[2].fired == b.fires[3].fired);
}

TEST_CASE("empty domains give vacuous truth for forall and falsity for exists") {
  TheoryEnv env = parse_theory("goal g : Zero = Zero");
  const Prop& goal = env.goals[0].prop;
  Candidate cand;
  cand.induction_terms.push_back(Term::var("n"));  // arbitrary stays empty

  HeuristicSet set = load_heuristics(R"(
(heuristic vacuous_all generalisation 1
  (forall t (in-terms arbitrary_terms) false))
(heuristic vacuous_some generalisation 1
  (exists t (in-terms arbitrary_terms) true))
)");
  ScoreBreakdown b = score(set, Phase::Generalisation, env, goal, cand);
  CHECK(b.fires[0].fired);
  CHECK_FALSE(b.fires[1].fired);
}

TEST_CASE("scores add the weights of exactly the fired heuristics") {
  TheoryEnv env = parse_theory("goal g : Zero = Zero");
  Candidate cand;
  cand.induction_terms.push_back(Term::var("n"));
  HeuristicSet set = load_heuristics(
      "(heuristic yes induction 10 true)\n"
      "(heuristic no induction 3 false)\n"
      "(heuristic neg induction -7 true)\n");
  ScoreBreakdown b = score(set, Phase::Induction, env, env.goals[0].prop, cand);
  CHECK(b.points == 3);
  REQUIRE(b.fires.size() == 3);
  CHECK(b.fires[0].contribution() == 10);
  CHECK(b.fires[1].contribution() == 0);
  CHECK(b.fires[2].contribution() == -7);
}

TEST_CASE("generic heuristics are invariant under constant renaming") {
  const char* original =
      "datatype list a = Nil | Cons a (list a)\n"
      "fun append : list a => list a => list a where\n"
      "  append Nil ys = ys\n"
      "| append (Cons x xs) ys = Cons x (append xs ys)\n"
      "fun rev1 : list a => list a where\n"
      "  rev1 Nil = Nil\n"
      "| rev1 (Cons x xs) = append (rev1 xs) (Cons x Nil)\n"
      "fun rev2 : list a => list a => list a where\n"
      "  rev2 Nil ys = ys\n"
      "| rev2 (Cons x xs) ys = rev2 xs (Cons x ys)\n"
      "goal g : rev2 xs ys = append (rev1 xs) ys\n";
  const char* renamed =
      "datatype stack a = Empty | Push a (stack a)\n"
      "fun glue : stack a => stack a => stack a where\n"
      "  glue Empty ys = ys\n"
      "| glue (Push x xs) ys = Push x (glue xs ys)\n"
      "fun undo : stack a => stack a where\n"
      "  undo Empty = Empty\n"
      "| undo (Push x xs) = glue (undo xs) (Push x Empty)\n"
      "fun deposit : stack a => stack a => stack a where\n"
      "  deposit Empty ys = ys\n"
      "| deposit (Push x xs) ys = deposit xs (Push x ys)\n"
      "goal g : deposit xs ys = glue (undo xs) ys\n";

  TheoryEnv env1 = parse_theory(original, false);
  TheoryEnv env2 = parse_theory(renamed, false);
  const HeuristicSet& set = default_heuristics();

  auto check_pair = [&](const std::string& cand1, const std::string& cand2) {
    Candidate c1 = parse_candidate(env1, env1.goals[0].prop, cand1);
    Candidate c2 = parse_candidate(env2, env2.goals[0].prop, cand2);
    for (Phase phase : {Phase::Induction, Phase::Generalisation}) {
      ScoreBreakdown b1 = score(set, phase, env1, env1.goals[0].prop, c1);
      ScoreBreakdown b2 = score(set, phase, env2, env2.goals[0].prop, c2);
      REQUIRE(b1.fires.size() == b2.fires.size());
      for (size_t i = 0; i < b1.fires.size(); ++i) {
        bool generic = true;
        for (const auto& h : set.heuristics)
          if (h.name == b1.fires[i].name) generic = !h.prelude;
        if (!generic) continue;
        INFO(b1.fires[i].name);
        CHECK(b1.fires[i].fired == b2.fires[i].fired);
      }
    }
  };
  check_pair("induct xs arbitrary: ys", "induct xs arbitrary: ys");
  check_pair("induct xs ys rule: rev2.induct", "induct xs ys rule: deposit.induct");
  check_pair("induct ys", "induct ys");
  check_pair("induct (rev1 xs)", "induct (undo xs)");
}

TEST_CASE("clause-side predicates are rejected outside clause contexts") {
  TheoryEnv env = parse_theory("goal g : add n m = add m n");
  Candidate cand;
  cand.induction_terms.push_back(Term::var("n"));
  HeuristicSet set = load_heuristics(
      "(heuristic bad induction 1 (exists o (occurrences) (is_left_hand_side o)))");
  CHECK_THROWS_AS(score(set, Phase::Induction, env, env.goals[0].prop, cand), ContextError);
}

TEST_CASE("kind mismatches raise domain errors") {
  TheoryEnv env = parse_theory("goal g : add n m = add m n");
  Candidate cand;
  cand.induction_terms.push_back(Term::var("n"));
  HeuristicSet set = load_heuristics(
      "(heuristic bad1 induction 1 (exists t (terms) (exists u (terms) "
      "(exists v (terms) (is_nth_argument_of t u v)))))\n"
      "(heuristic bad2 induction 1 (exists n (numbers) (is_variable n)))\n");
  EvalContext ctx = make_goal_context(env, env.goals[0].prop, cand);
  CHECK_THROWS_AS(eval_heuristic_expr(set, *set.heuristics[0].root, ctx), DomainError);
  EvalContext ctx2 = make_goal_context(env, env.goals[0].prop, cand);
  CHECK_THROWS_AS(eval_heuristic_expr(set, *set.heuristics[1].root, ctx2), DomainError);
}

TEST_CASE("the loader rejects malformed heuristic files") {
  // unknown predicate
  CHECK_THROWS_AS(load_heuristics("(heuristic h induction 1 (no_such_thing x))"), ScopeError);
  // unbound variable
  CHECK_THROWS_AS(load_heuristics("(heuristic h induction 1 (is_variable t))"), ScopeError);
  // duplicate names
  CHECK_THROWS_AS(load_heuristics("(heuristic h induction 1 true)\n"
                                  "(heuristic h induction 2 true)"),
                  ScopeError);
  // zero weight
  CHECK_THROWS_AS(load_heuristics("(heuristic h induction 0 true)"), ParseError);
  // bad phase
  CHECK_THROWS_AS(load_heuristics("(heuristic h sideways 1 true)"), ParseError);
  // unknown assertion in exists-def
  CHECK_THROWS_AS(
      load_heuristics("(heuristic h induction 1 (exists t (terms) (exists-def t nope (t))))"),
      ScopeError);
  // arity mismatch on assertion call
  CHECK_THROWS_AS(load_heuristics("(assertion a (n f) true)\n"
                                  "(heuristic h induction 1 "
                                  "(exists t (terms) (exists-def t a (t))))"),
                  ScopeError);
  // atom arity
  CHECK_THROWS_AS(load_heuristics("(heuristic h induction 1 (is_variable))"), ParseError);
  // callee parameters are the assertion's whole scope
  CHECK_THROWS_AS(load_heuristics("(assertion a (n) (is_variable f))\n"), ScopeError);
  // unclosed form
  CHECK_THROWS_AS(load_heuristics("(heuristic h induction 1 true"), ParseError);
  // recursive assertions
  CHECK_THROWS_AS(load_heuristics("(assertion a (f) (exists-def f b (f)))\n"
                                  "(assertion b (f) (exists-def f a (f)))\n"),
                  ScopeError);
  CHECK_THROWS_AS(load_heuristics("(assertion a (f) (exists-def f a (f)))"), ScopeError);
}

TEST_CASE("the definitional quantifier needs a defined constant target") {
  TheoryEnv env = parse_theory("goal g : append xs ys = append ys xs");
  const Prop& goal = env.goals[0].prop;
  Candidate cand;
  cand.induction_terms.push_back(Term::var("xs"));
  HeuristicSet set = load_heuristics("(assertion always (f) true)");

  // Bind targets by hand: a variable target and a constructor target are
  // simply false, not errors.
  HeuristicExpr call;
  call.kind = HeuristicExpr::Kind::DefQuantifier;
  call.target = "probe";
  call.callee = "always";
  HeuristicArg arg;
  arg.kind = HeuristicArg::Kind::Name;
  arg.name = "probe";
  call.args = {arg};

  for (Term target : {Term::var("xs"), Term::constant("Cons")}) {
    EvalContext ctx = make_goal_context(env, goal, cand);
    ctx.bindings["probe"] = HValue::of(target);
    CHECK_FALSE(eval_heuristic_expr(set, call, ctx));
  }
  EvalContext ctx = make_goal_context(env, goal, cand);
  ctx.bindings["probe"] = HValue::of(Term::constant("append"));
  CHECK(eval_heuristic_expr(set, call, ctx));
}

TEST_CASE("the default set loads with the documented shape") {
  const HeuristicSet& set = default_heuristics();
  int induction = 0, generalisation = 0, prelude = 0;
  for (const auto& h : set.heuristics) {
    if (h.phase == Phase::Induction) ++induction;
    if (h.phase == Phase::Generalisation) ++generalisation;
    if (h.prelude) ++prelude;
  }
  CHECK(induction >= 10);
  CHECK(generalisation >= 4);
  CHECK(prelude == 3);
  CHECK(set.assertions.count("generalise_nth_argument_of") == 1);
  CHECK(set.assertions.count("changes_nth_accumulating") == 1);
}

TEST_CASE("accumulator detection separates rev2 from append and replicate") {
  TheoryEnv env = parse_theory(
      "fun rev2 : list a => list a => list a where\n"
      "  rev2 Nil ys = ys\n"
      "| rev2 (Cons x xs) ys = rev2 xs (Cons x ys)\n"
      "goal g : rev2 xs ys = ys\n");
  Candidate cand;
  cand.induction_terms.push_back(Term::var("xs"));
  HeuristicSet set = load_heuristics(R"(
(assertion changes (n f)
  (exists fo (occurrences-of f)
    (exists lhs_arg (occurrences)
      (and (is_left_hand_side fo)
           (is_nth_argument_of lhs_arg n fo)
           (is_variable lhs_arg)
           (exists fo2 (occurrences-of f)
             (exists rhs_arg (occurrences)
               (and (is_right_hand_side fo2)
                    (is_nth_argument_of rhs_arg n fo2)
                    (not (are_of_same_term rhs_arg lhs_arg)))))))))
)");
  auto probe = [&](const std::string& fname, int n) {
    Prop goal = parse_prop_string(env, fname + " xs ys = ys");
    HeuristicExpr call;
    call.kind = HeuristicExpr::Kind::DefQuantifier;
    call.target = "f0";
    call.callee = "changes";
    HeuristicArg na;
    na.kind = HeuristicArg::Kind::Number;
    na.number = n;
    HeuristicArg fa;
    fa.kind = HeuristicArg::Kind::Name;
    fa.name = "f0";
    call.args = {na, fa};
    EvalContext ctx = make_goal_context(env, goal, cand);
    ctx.bindings["f0"] = HValue::of(Term::constant(fname));
    return eval_heuristic_expr(set, call, ctx);
  };
  CHECK(probe("rev2", 2));        // accumulator position
  CHECK_FALSE(probe("rev2", 1));  // pattern-matched, not accumulating
  CHECK_FALSE(probe("append", 2));
  CHECK_FALSE(probe("replicate", 2));
}
