#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "semind/typecheck.hpp"

namespace semind {

// Structural induction rule of a datatype: one case per constructor, one
// hypothesis per constructor argument of the datatype itself.
inline InductionRule structural_rule(const DatatypeDecl& dt) {
  InductionRule rule;
  rule.name = dt.name + ".induct";
  rule.origin = InductionRule::Origin::Structural;
  rule.target = dt.name;
  rule.arity = 1;
  std::vector<Type> params;
  for (const auto& p : dt.params) params.push_back(Type::var(p));
  rule.position_types = {Type::con(dt.name, params)};

  for (const auto& ctor : dt.ctors) {
    RuleCase c;
    int plain = 0, recursive = 0;
    std::vector<Term> args;
    for (const auto& ty : ctor.arg_types) {
      bool is_rec = ty.kind() == Type::Kind::Con && ty.name() == dt.name;
      std::string base;
      if (is_rec) {
        // Renamed to the induction variable when the rule is applied.
        base = std::string(1, static_cast<char>('x' + recursive % 3));
        if (recursive >= 3) base += std::to_string(recursive / 3);
        ++recursive;
      } else {
        base = std::string(1, static_cast<char>('a' + plain % 8));
        if (plain >= 8) base += std::to_string(plain / 8);
        ++plain;
      }
      c.bindings.push_back({base, ty});
      args.push_back(Term::var(base));
      if (is_rec) c.ih_tuples.push_back({Term::var(base)});
    }
    c.conclusion = {Term::app(Term::constant(ctor.name), args)};
    rule.cases.push_back(std::move(c));
  }
  return rule;
}

namespace detail {

// Pre-order collection of recursive calls, including calls nested inside the
// arguments of other recursive calls. Unapplied or partially applied
// recursion cannot be turned into hypothesis tuples.
inline void collect_recursive_calls(const Term& t, const std::string& fname, int arity,
                                    std::vector<std::vector<Term>>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return;
    case Term::Kind::Constant:
      if (t.name() == fname)
        throw TypeError("unapplied recursive reference to " + fname);
      return;
    case Term::Kind::Application: {
      if (t.head().kind() == Term::Kind::Constant && t.head().name() == fname) {
        if (t.arg_count() != arity)
          throw TypeError("recursive call to " + fname + " with " +
                          std::to_string(t.arg_count()) + " arguments, expected " +
                          std::to_string(arity));
        out.push_back(t.args());
      } else {
        collect_recursive_calls(t.head(), fname, arity, out);
      }
      for (int i = 1; i <= t.arg_count(); ++i)
        collect_recursive_calls(t.child(i), fname, arity, out);
      return;
    }
  }
}

// Pattern variables in left-to-right first-occurrence order.
inline void lhs_vars_ordered(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
      return;
    case Term::Kind::Constant:
      return;
    case Term::Kind::Application:
      for (int i = 1; i <= t.arg_count(); ++i) lhs_vars_ordered(t.child(i), out);
      return;
  }
}

}  // namespace detail

// Computation induction rule of a defined function: one case per clause, one
// hypothesis per syntactic recursive call, conclusion the clause's patterns.
inline InductionRule computation_rule(const TheoryEnv& env, const FunctionDef& fun) {
  InductionRule rule;
  rule.name = fun.name + ".induct";
  rule.origin = InductionRule::Origin::Computation;
  rule.target = fun.name;
  rule.arity = fun.arity;
  rule.position_types = fun.arg_types();

  for (const auto& clause : fun.clauses) {
    RuleCase c;
    auto var_types = check_clause(env, fun, clause);
    std::vector<std::string> names;
    detail::lhs_vars_ordered(clause.lhs, names);
    for (const auto& n : names) c.bindings.push_back({n, var_types.at(n)});
    detail::collect_recursive_calls(clause.rhs, fun.name, fun.arity, c.ih_tuples);
    c.conclusion = clause.lhs.args();
    rule.cases.push_back(std::move(c));
  }
  return rule;
}

// Raw handcrafted rule declaration as it appears in a theory file; terms are
// already elaborated, binding types are not yet known.
struct RawRuleDecl {
  std::string name;
  std::string target;
  struct Case {
    std::vector<std::string> bindings;
    std::vector<std::vector<Term>> assumes;
    std::vector<Term> conclusion;
  };
  std::vector<Case> cases;
};

// Types a handcrafted declaration: position types are unified across cases,
// binding types fall out of the same pass.
inline InductionRule elaborate_handcrafted(const TheoryEnv& env, const RawRuleDecl& raw) {
  if (raw.cases.empty()) throw ScopeError("rule " + raw.name + " has no cases");
  size_t arity = raw.cases[0].conclusion.size();
  if (arity == 0) throw ScopeError("rule " + raw.name + " has an empty conclusion tuple");

  InductionRule rule;
  rule.name = raw.name;
  rule.origin = InductionRule::Origin::Handcrafted;
  rule.target = raw.target;
  rule.arity = static_cast<int>(arity);

  GoalTyping typing(env);
  std::vector<Type> positions;
  for (size_t i = 0; i < arity; ++i) positions.push_back(typing.fresh());

  // Case bindings are local; tag them per case so one shared typing pass can
  // relate every tuple to the same position metas.
  int case_no = 0;
  auto tag = [&](const Term& t, const std::vector<std::string>& bindings) {
    TermSubst s;
    for (const auto& b : bindings) s.push_back({Term::var(b), Term::var(b + "@" + std::to_string(case_no))});
    return substitute(t, s);
  };

  for (const auto& rc : raw.cases) {
    if (rc.conclusion.size() != arity)
      throw ScopeError("rule " + raw.name + ": conclusion tuples disagree in length");
    for (const auto& tup : rc.assumes)
      if (tup.size() != arity)
        throw ScopeError("rule " + raw.name + ": hypothesis tuple length differs from conclusion");
    std::set<std::string> declared(rc.bindings.begin(), rc.bindings.end());
    auto check_scope = [&](const Term& t) {
      for (const auto& v : free_vars(t))
        if (!declared.count(v))
          throw ScopeError("rule " + raw.name + ": variable " + v + " is not a case binding");
    };
    for (const auto& t : rc.conclusion) check_scope(t);
    for (const auto& tup : rc.assumes)
      for (const auto& t : tup) check_scope(t);

    for (size_t i = 0; i < arity; ++i)
      typing.unify_with(typing.infer(tag(rc.conclusion[i], rc.bindings)), positions[i]);
    for (const auto& tup : rc.assumes)
      for (size_t i = 0; i < arity; ++i)
        typing.unify_with(typing.infer(tag(tup[i], rc.bindings)), positions[i]);
    ++case_no;
  }

  std::map<std::string, std::string> rename;
  for (const auto& p : positions)
    rule.position_types.push_back(typing.canonical(typing.resolved(p), rename));

  case_no = 0;
  for (const auto& rc : raw.cases) {
    RuleCase c;
    for (const auto& b : rc.bindings) {
      Type bt = typing.resolved(typing.infer(Term::var(b + "@" + std::to_string(case_no))));
      c.bindings.push_back({b, typing.canonical(bt, rename)});
    }
    c.ih_tuples = rc.assumes;
    c.conclusion = rc.conclusion;
    rule.cases.push_back(std::move(c));
    ++case_no;
  }
  return rule;
}

namespace detail {

inline void signature_type_names(const Type& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return;
    case Type::Kind::Con:
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
      for (const auto& a : t.args()) signature_type_names(a, out);
      return;
    case Type::Kind::Arrow:
      signature_type_names(t.dom(), out);
      signature_type_names(t.cod(), out);
      return;
  }
}

}  // namespace detail

// Rules worth attaching to candidates headed by the given constant: the
// function's own computation rule, then handcrafted rules registered for the
// function, then handcrafted rules registered for any type constructor in its
// signature. Constructors get nothing.
inline std::vector<const InductionRule*> applicable_rules(const TheoryEnv& env,
                                                          const std::string& constant) {
  std::vector<const InductionRule*> out;
  const FunctionDef* f = env.find_function(constant);
  if (!f) return out;

  auto push = [&](const InductionRule* r) {
    if (r && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };

  if (const InductionRule* own = env.find_rule(constant + ".induct");
      own && own->origin == InductionRule::Origin::Computation)
    push(own);

  auto push_target = [&](const std::string& target) {
    auto it = env.handcrafted_by_target.find(target);
    if (it == env.handcrafted_by_target.end()) return;
    for (const auto& name : it->second) push(env.find_rule(name));
  };

  push_target(constant);
  std::vector<std::string> tynames;
  detail::signature_type_names(f->signature, tynames);
  for (const auto& ty : tynames) push_target(ty);
  return out;
}

}  // namespace semind
