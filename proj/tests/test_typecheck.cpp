#include <catch2/catch_amalgamated.hpp>

#include "semind/typecheck.hpp"

using namespace semind;

namespace {

TheoryEnv tiny_env() {
  Type a = Type::var("a");
  Type lista = Type::con("list", {a});
  Type nat = Type::con("nat", {});

  TheoryEnv env;
  env.datatypes.push_back({"list", {"a"}, {{"Nil", {}}, {"Cons", {a, lista}}}, false});
  env.datatypes.push_back({"nat", {}, {{"Zero", {}}, {"Suc", {nat}}}, false});

  Term x = Term::var("x"), xs = Term::var("xs"), ys = Term::var("ys");
  Term nil = Term::constant("Nil");
  auto cons = [](Term h, Term t) { return Term::app(Term::constant("Cons"), {h, t}); };
  auto app2 = [](Term l, Term r) { return Term::app(Term::constant("append"), {l, r}); };

  FunctionDef append;
  append.name = "append";
  append.signature = Type::arrow(lista, Type::arrow(lista, lista));
  append.arity = 2;
  append.clauses = {{app2(nil, ys), ys}, {app2(cons(x, xs), ys), cons(x, app2(xs, ys))}};
  env.functions.push_back(append);
  return env;
}

std::string type_of(const std::map<std::string, Type>& types, const std::string& var) {
  return to_string(types.at(var));
}

Term app2(Term l, Term r) { return Term::app(Term::constant("append"), {l, r}); }
const Term xs = Term::var("xs");
const Term ys = Term::var("ys");

}  // namespace

TEST_CASE("free variables of a goal get most general types") {
  TheoryEnv env = tiny_env();
  Prop goal = Prop::equation(app2(xs, ys), app2(ys, xs));
  auto types = infer_types(env, goal);
  REQUIRE(types.size() == 2);
  CHECK(type_of(types, "xs") == "list a");
  CHECK(type_of(types, "ys") == "list a");
}

TEST_CASE("one variable used at two datatypes is a type error") {
  TheoryEnv env = tiny_env();
  Prop goal = Prop::equation(app2(xs, ys), Term::app(Term::constant("Suc"), {xs}));
  CHECK_THROWS_AS(infer_types(env, goal), TypeError);
}

TEST_CASE("constants instantiate fresh per occurrence") {
  TheoryEnv env = tiny_env();
  Term zero = Term::constant("Zero");
  auto cons = [](Term h, Term t) { return Term::app(Term::constant("Cons"), {h, t}); };
  Prop goal = Prop::implication(
      Prop::equation(cons(Term::var("x"), Term::constant("Nil")), xs),
      Prop::equation(cons(zero, Term::constant("Nil")), ys));
  auto types = infer_types(env, goal);
  CHECK(type_of(types, "x") == "a");
  CHECK(type_of(types, "xs") == "list a");
  CHECK(type_of(types, "ys") == "list nat");
}

TEST_CASE("unknown constants act as shared opaque values") {
  TheoryEnv env = tiny_env();
  Term foo = Term::constant("foo");
  Prop goal = Prop::equation(Term::app(foo, {Term::var("x")}), Term::app(foo, {Term::var("y")}));
  auto types = infer_types(env, goal);
  CHECK(type_of(types, "x") == type_of(types, "y"));
}

TEST_CASE("self application fails the occurs check") {
  TheoryEnv env = tiny_env();
  Prop goal = Prop::equation(Term::app(Term::var("x"), {Term::var("x")}), ys);
  CHECK_THROWS_AS(infer_types(env, goal), TypeError);
}

TEST_CASE("quantified variables type independently of the free scope") {
  TheoryEnv env = tiny_env();
  // forall xs. xs = Zero, with a free xs used as a list outside.
  Prop inner = Prop::forall("xs", Prop::equation(xs, Term::constant("Zero")));
  Prop goal = Prop::implication(Prop::equation(app2(xs, ys), ys), inner);
  auto types = infer_types(env, goal);
  CHECK(type_of(types, "xs") == "list a");
}

TEST_CASE("clause checking yields pattern variable types in scheme variables") {
  TheoryEnv env = tiny_env();
  const FunctionDef& append = env.functions[0];
  auto types = check_clause(env, append, append.clauses[1]);
  CHECK(type_of(types, "x") == "a");
  CHECK(type_of(types, "xs") == "list a");
  CHECK(type_of(types, "ys") == "list a");
}

TEST_CASE("clause checking rejects ill-typed and over-applied clauses") {
  TheoryEnv env = tiny_env();
  const FunctionDef& append = env.functions[0];

  Clause bad{app2(Term::constant("Nil"), ys), Term::app(Term::constant("Suc"), {ys})};
  CHECK_THROWS_AS(check_clause(env, append, bad), TypeError);

  Clause wide{Term::app(Term::constant("append"), {Term::constant("Nil"), ys, Term::var("zs")}),
              ys};
  CHECK_THROWS_AS(check_clause(env, append, wide), TypeError);

  // Recursion is monomorphic: the recursive call may not specialize the
  // signature's type variables.
  Clause poly{app2(Term::constant("Nil"), ys),
              app2(Term::app(Term::constant("Cons"), {Term::constant("Zero"), Term::constant("Nil")}),
                   ys)};
  CHECK_THROWS_AS(check_clause(env, append, poly), TypeError);
}
