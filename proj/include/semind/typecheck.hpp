#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semind/theory.hpp"

namespace semind {

// Unification-based typing of one goal (or one term in the goal's scope).
// Free variables share a single meta variable per name across the whole
// proposition; whatever stays unresolved is polymorphic.
class GoalTyping {
 public:
  GoalTyping(const TheoryEnv& env, const Prop& goal) : env_(env) {
    check_prop(goal, {});
  }

  // Typing context for lone terms (used on candidate terms).
  explicit GoalTyping(const TheoryEnv& env) : env_(env) {}

  Type fresh() { return Type::var("?" + std::to_string(counter_++)); }

  // Types a term in the goal's variable scope. Variables unseen so far get
  // fresh meta variables, which makes absent induction variables typeable.
  Type infer(const Term& t) { return infer_term(t, {}); }

  void unify_with(const Type& a, const Type& b) { unify(a, b, subst_); }

  Type resolved(const Type& t) const { return type_resolve(t, subst_); }

  // Fully resolved types of the free variables, leftover meta variables
  // renamed a, b, c, ... in order of appearance.
  std::map<std::string, Type> free_var_types() const {
    std::map<std::string, Type> out;
    std::map<std::string, std::string> rename;
    for (const auto& [name, ty] : var_types_) out[name] = canonical(resolved(ty), rename);
    return out;
  }

  Type canonical(const Type& t, std::map<std::string, std::string>& rename) const {
    switch (t.kind()) {
      case Type::Kind::Var: {
        auto it = rename.find(t.name());
        if (it == rename.end()) {
          std::string fresh(1, static_cast<char>('a' + rename.size() % 26));
          if (rename.size() >= 26) fresh += std::to_string(rename.size() / 26);
          it = rename.emplace(t.name(), fresh).first;
        }
        return Type::var(it->second);
      }
      case Type::Kind::Con: {
        std::vector<Type> args;
        for (const auto& a : t.args()) args.push_back(canonical(a, rename));
        return Type::con(t.name(), std::move(args));
      }
      case Type::Kind::Arrow:
        return Type::arrow(canonical(t.dom(), rename), canonical(t.cod(), rename));
    }
    return t;
  }

 private:
  Type instantiate(const Type& scheme) {
    std::vector<std::string> vars;
    type_vars(scheme, vars);
    TypeSubst inst;
    for (const auto& v : vars) inst[v] = fresh();
    return type_resolve(scheme, inst);
  }

  Type infer_term(const Term& t, const std::map<std::string, Type>& bound) {
    switch (t.kind()) {
      case Term::Kind::Variable: {
        if (auto it = bound.find(t.name()); it != bound.end()) return it->second;
        auto it = var_types_.find(t.name());
        if (it == var_types_.end()) it = var_types_.emplace(t.name(), fresh()).first;
        return it->second;
      }
      case Term::Kind::Constant: {
        if (auto sig = env_.signature_of(t.name())) return instantiate(*sig);
        // Unknown constants act as opaque values of unconstrained type.
        auto it = const_types_.find(t.name());
        if (it == const_types_.end()) it = const_types_.emplace(t.name(), fresh()).first;
        return it->second;
      }
      case Term::Kind::Application: {
        Type fun = infer_term(t.head(), bound);
        for (int i = 1; i <= t.arg_count(); ++i) {
          Type arg = infer_term(t.child(i), bound);
          Type result = fresh();
          unify(fun, Type::arrow(arg, result), subst_);
          fun = result;
        }
        return fun;
      }
    }
    return fresh();
  }

  void check_prop(const Prop& p, std::map<std::string, Type> bound) {
    switch (p.kind()) {
      case Prop::Kind::Equation: {
        Type l = infer_term(p.lhs(), bound);
        Type r = infer_term(p.rhs(), bound);
        unify(l, r, subst_);
        return;
      }
      case Prop::Kind::Implication:
        check_prop(p.antecedent(), bound);
        check_prop(p.consequent(), bound);
        return;
      case Prop::Kind::Forall:
        bound[p.binder()] = fresh();
        check_prop(p.body(), std::move(bound));
        return;
    }
  }

  const TheoryEnv& env_;
  TypeSubst subst_;
  std::map<std::string, Type> var_types_;
  std::map<std::string, Type> const_types_;
  int counter_ = 0;
};

// Most general types of the goal's free variables. Throws TypeError when the
// goal cannot be typed at all.
inline std::map<std::string, Type> infer_types(const TheoryEnv& env, const Prop& goal) {
  GoalTyping typing(env, goal);
  return typing.free_var_types();
}

namespace detail {

// Rewrites a scheme's variables into rigid skolem constructors so a clause is
// checked against the declared signature rather than a specialization of it.
inline Type skolemize(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return Type::con("!" + t.name(), {});
    case Type::Kind::Con: {
      std::vector<Type> args;
      for (const auto& a : t.args()) args.push_back(skolemize(a));
      return Type::con(t.name(), std::move(args));
    }
    case Type::Kind::Arrow:
      return Type::arrow(skolemize(t.dom()), skolemize(t.cod()));
  }
  return t;
}

inline Type unskolemize(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return t;
    case Type::Kind::Con: {
      if (!t.name().empty() && t.name()[0] == '!' && t.args().empty())
        return Type::var(t.name().substr(1));
      std::vector<Type> args;
      for (const auto& a : t.args()) args.push_back(unskolemize(a));
      return Type::con(t.name(), std::move(args));
    }
    case Type::Kind::Arrow:
      return Type::arrow(unskolemize(t.dom()), unskolemize(t.cod()));
  }
  return t;
}

// Recursive occurrences must not re-instantiate the signature, so they are
// swapped for a placeholder constant carrying the rigid type.
inline Term swap_constant(const Term& t, const std::string& from, const std::string& to) {
  if (t.kind() == Term::Kind::Constant && t.name() == from) return Term::constant(to);
  if (t.kind() != Term::Kind::Application) return t;
  std::vector<Term> args;
  for (int i = 1; i <= t.arg_count(); ++i) args.push_back(swap_constant(t.child(i), from, to));
  return Term::app(swap_constant(t.head(), from, to), std::move(args));
}

}  // namespace detail

// Checks one defining clause against the function's signature and returns the
// types of the clause's pattern variables. Recursion is monomorphic.
inline std::map<std::string, Type> check_clause(const TheoryEnv& env, const FunctionDef& fun,
                                                const Clause& clause) {
  TheoryEnv scratch = env;
  FunctionDef placeholder;
  placeholder.name = "!" + fun.name;
  placeholder.signature = detail::skolemize(fun.signature);
  placeholder.arity = fun.arity;
  scratch.functions.push_back(placeholder);

  Term lhs = detail::swap_constant(clause.lhs, fun.name, placeholder.name);
  Term rhs = detail::swap_constant(clause.rhs, fun.name, placeholder.name);

  GoalTyping typing(scratch);
  try {
    Type l = typing.infer(lhs);
    Type r = typing.infer(rhs);
    typing.unify_with(l, r);
    // Clauses must consume exactly the declared argument positions.
    Type want = placeholder.signature;
    for (int i = 0; i < clause.lhs.arg_count(); ++i) {
      if (want.kind() != Type::Kind::Arrow)
        throw TypeError("too many clause arguments");
      want = want.cod();
    }
    typing.unify_with(l, want);
  } catch (const TypeError& e) {
    throw TypeError("in clause " + to_string(clause.lhs) + " = " + to_string(clause.rhs) + ": " +
                    e.what());
  }

  std::map<std::string, Type> out;
  for (const auto& v : free_vars(clause.lhs))
    out[v] = detail::unskolemize(typing.resolved(typing.infer(Term::var(v))));
  return out;
}

}  // namespace semind
