#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "semind/kernel.hpp"

using namespace semind;

namespace {

// Independent path enumerator used as an oracle: recursion returning whole
// vectors instead of the production in-place walk.
std::vector<OccPath> oracle_paths(const Term& t) {
  std::vector<OccPath> out{OccPath{}};
  if (t.kind() != Term::Kind::Application) return out;
  for (int i = 0; i <= t.arg_count(); ++i)
    for (const auto& sub : oracle_paths(t.child(i))) {
      OccPath p;
      p.indices.push_back(i);
      p.indices.insert(p.indices.end(), sub.indices.begin(), sub.indices.end());
      out.push_back(p);
    }
  return out;
}

std::vector<OccPath> oracle_paths(const Prop& p) {
  std::vector<OccPath> out;
  auto under = [&](int idx, const std::vector<OccPath>& subs) {
    for (const auto& sub : subs) {
      OccPath q;
      q.indices.push_back(idx);
      q.indices.insert(q.indices.end(), sub.indices.begin(), sub.indices.end());
      out.push_back(q);
    }
  };
  switch (p.kind()) {
    case Prop::Kind::Equation:
      under(1, oracle_paths(p.lhs()));
      under(2, oracle_paths(p.rhs()));
      break;
    case Prop::Kind::Implication:
      under(1, oracle_paths(p.antecedent()));
      under(2, oracle_paths(p.consequent()));
      break;
    case Prop::Kind::Forall:
      under(1, oracle_paths(p.body()));
      break;
  }
  return out;
}

Term random_term(std::mt19937& rng, int depth) {
  static const std::vector<std::string> vars = {"x", "y", "z"};
  static const std::vector<std::string> consts = {"f", "g", "c"};
  std::uniform_int_distribution<int> coin(0, 2);
  if (depth == 0 || coin(rng) == 0) {
    if (coin(rng) < 2) return Term::var(vars[static_cast<size_t>(coin(rng))]);
    return Term::constant(consts[static_cast<size_t>(coin(rng))]);
  }
  std::uniform_int_distribution<int> nargs(1, 2);
  int n = nargs(rng);
  std::vector<Term> args;
  for (int i = 0; i < n; ++i) args.push_back(random_term(rng, depth - 1));
  return Term::app(Term::constant(consts[static_cast<size_t>(coin(rng))]), std::move(args));
}

Prop random_prop(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 3);
  int k = depth == 0 ? 0 : pick(rng);
  if (k == 2) return Prop::implication(random_prop(rng, depth - 1), random_prop(rng, depth - 1));
  if (k == 3) return Prop::forall("x", random_prop(rng, depth - 1));
  return Prop::equation(random_term(rng, 2), random_term(rng, 2));
}

const Term xs = Term::var("xs");
const Term ys = Term::var("ys");

Term rev1(const Term& t) { return Term::app(Term::constant("rev1"), {t}); }
Term append(const Term& a, const Term& b) { return Term::app(Term::constant("append"), {a, b}); }

}  // namespace

TEST_CASE("path enumeration agrees with the oracle on random trees") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng, 3);
    REQUIRE(term_positions(t) == oracle_paths(t));
  }
  for (int i = 0; i < 200; ++i) {
    Prop p = random_prop(rng, 2);
    REQUIRE(term_positions(p) == oracle_paths(p));
  }
}

TEST_CASE("every enumerated path resolves and foreign paths throw") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Prop p = random_prop(rng, 2);
    for (const auto& path : term_positions(p)) {
      TreeNode n = subterm_at(p, path);
      REQUIRE(std::holds_alternative<Term>(n));
    }
  }
  Prop p = Prop::equation(xs, ys);
  CHECK_THROWS_AS(subterm_at(p, OccPath{{3}}), InvalidPathError);
  CHECK_THROWS_AS(subterm_at(p, OccPath{{1, 1}}), InvalidPathError);
}

TEST_CASE("subterm lookup inside an application spine") {
  Term t = append(rev1(xs), ys);  // children: head, rev1 xs, ys
  CHECK(std::get<Term>(subterm_at(t, OccPath{{1, 1}})) == xs);
  CHECK(std::get<Term>(subterm_at(t, OccPath{{0}})) == Term::constant("append"));
  CHECK(std::get<Term>(subterm_at(t, OccPath{{1, 0}})) == Term::constant("rev1"));
  CHECK(std::get<Term>(subterm_at(t, OccPath{{2}})) == ys);
}

TEST_CASE("occurrence search finds every copy in pre-order") {
  Term t = append(rev1(xs), rev1(rev1(xs)));
  auto occs = occurrences_of(t, rev1(xs));
  REQUIRE(occs == std::vector<OccPath>{OccPath{{1}}, OccPath{{2, 1}}});

  Prop goal = Prop::equation(rev1(append(xs, ys)), append(rev1(ys), rev1(xs)));
  auto xs_occs = occurrences_of(goal, xs);
  REQUIRE(xs_occs == std::vector<OccPath>{OccPath{{1, 1, 1}}, OccPath{{2, 2, 1}}});
}

TEST_CASE("distinct subterms keep first-appearance order") {
  Term t = append(xs, append(xs, ys));
  auto subs = distinct_subterms(t);
  REQUIRE(subs.size() == 5);
  CHECK(subs[0] == t);
  CHECK(subs[1] == Term::constant("append"));
  CHECK(subs[2] == xs);
  CHECK(subs[3] == append(xs, ys));
  CHECK(subs[4] == ys);
}

TEST_CASE("free variables respect binders") {
  Prop p = Prop::implication(Prop::equation(xs, ys), Prop::forall("xs", Prop::equation(xs, ys)));
  CHECK(free_vars(p) == std::set<std::string>{"xs", "ys"});
  CHECK(free_vars(Prop::forall("xs", Prop::equation(xs, ys))) == std::set<std::string>{"ys"});
}

TEST_CASE("fresh names pick the smallest unused suffix") {
  CHECK(fresh_name("v", {}) == "v");
  CHECK(fresh_name("v", {"v"}) == "v1");
  CHECK(fresh_name("v", {"v", "v1"}) == "v2");
  CHECK(fresh_name("v", {"v", "v2"}) == "v1");
}

TEST_CASE("substitution is simultaneous and first-match") {
  Term t = append(xs, ys);
  Term swapped = substitute(t, {{xs, ys}, {ys, xs}});
  CHECK(swapped == append(ys, xs));

  // A key matching the whole node wins over keys matching inside it.
  Term u = substitute(rev1(xs), {{rev1(xs), ys}, {xs, Term::var("z")}});
  CHECK(u == ys);

  // Replacements are not rewritten again.
  Term v = substitute(xs, {{xs, ys}, {ys, Term::var("z")}});
  CHECK(v == ys);
}

TEST_CASE("substitution under a binder renames on capture") {
  // [xs -> ys] inside (forall ys. xs = ys): the binder must move aside.
  Prop p = Prop::forall("ys", Prop::equation(xs, ys));
  Prop q = substitute(p, {{xs, ys}});
  REQUIRE(q.kind() == Prop::Kind::Forall);
  CHECK(q.binder() == "ys1");
  CHECK(q.body() == Prop::equation(ys, Term::var("ys1")));
  CHECK(alpha_equal(q, Prop::forall("k", Prop::equation(ys, Term::var("k")))));

  // Keys mentioning the binder stop applying underneath it.
  Prop r = substitute(p, {{ys, xs}});
  CHECK(r == p);
}

TEST_CASE("single-occurrence replacement changes exactly one spot") {
  Prop goal = Prop::equation(append(xs, ys), append(ys, xs));
  Prop out = replace_at(goal, OccPath{{1, 1}}, Term::var("v"));
  CHECK(out == Prop::equation(append(Term::var("v"), ys), append(ys, xs)));
  // Other occurrences of xs stay put.
  CHECK(occurrences_of(out, xs) == std::vector<OccPath>{OccPath{{2, 2}}});

  for (const auto& path : term_positions(goal)) {
    Term here = term_at(goal, path);
    CHECK(replace_at(goal, path, here) == goal);
  }
}

TEST_CASE("alpha equivalence is an equivalence relation that tracks binders") {
  std::mt19937 rng(42);
  for (int i = 0; i < 100; ++i) {
    Prop a = random_prop(rng, 2);
    Prop b = random_prop(rng, 2);
    CHECK(alpha_equal(a, a));
    CHECK(alpha_equal(a, b) == alpha_equal(b, a));
  }

  CHECK(alpha_equal(Prop::forall("x", Prop::equation(Term::var("x"), xs)),
                    Prop::forall("y", Prop::equation(Term::var("y"), xs))));
  // Free variables must match by name.
  CHECK_FALSE(alpha_equal(Prop::equation(xs, xs), Prop::equation(ys, ys)));
  // The renaming must stay a bijection.
  Prop two = Prop::forall(
      "x", Prop::forall("y", Prop::equation(append(Term::var("x"), Term::var("y")), xs)));
  Prop collapsed = Prop::forall(
      "a", Prop::forall("a", Prop::equation(append(Term::var("a"), Term::var("a")), xs)));
  CHECK_FALSE(alpha_equal(two, collapsed));
}
