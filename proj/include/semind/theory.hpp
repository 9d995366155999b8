#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semind/kernel.hpp"
#include "semind/type.hpp"

namespace semind {

struct Constructor {
  std::string name;
  std::vector<Type> arg_types;

  bool operator==(const Constructor& o) const {
    return name == o.name && arg_types == o.arg_types;
  }
};

struct DatatypeDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<Constructor> ctors;
  bool from_prelude = false;

  bool operator==(const DatatypeDecl& o) const {
    return name == o.name && params == o.params && ctors == o.ctors;
  }
};

struct Clause {
  Term lhs;  // f p1 ... pn
  Term rhs;

  bool operator==(const Clause& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct FunctionDef {
  std::string name;
  Type signature;
  int arity = 0;
  std::vector<Clause> clauses;
  bool from_prelude = false;

  std::vector<Type> arg_types() const {
    std::vector<Type> out;
    Type cur = signature;
    for (int i = 0; i < arity; ++i) {
      out.push_back(cur.dom());
      cur = cur.cod();
    }
    return out;
  }

  bool operator==(const FunctionDef& o) const {
    return name == o.name && signature == o.signature && arity == o.arity && clauses == o.clauses;
  }
};

// An induction invocation: what would be written after `induct`.
struct Candidate {
  std::vector<Term> induction_terms;     // nonempty, order matters
  std::set<std::string> arbitrary;       // disjoint from variables of the terms
  std::optional<std::string> rule;

  bool operator==(const Candidate& o) const {
    return induction_terms == o.induction_terms && arbitrary == o.arbitrary && rule == o.rule;
  }
  bool operator!=(const Candidate& o) const { return !(*this == o); }
};

struct GoalDecl {
  std::string name;
  Prop prop;
  std::optional<std::string> expect_text;
  std::optional<Candidate> expected;

  bool operator==(const GoalDecl& o) const {
    return name == o.name && prop == o.prop && expect_text == o.expect_text;
  }
};

struct RuleBinding {
  std::string name;
  Type type;

  bool operator==(const RuleBinding& o) const { return name == o.name && type == o.type; }
};

struct RuleCase {
  std::vector<RuleBinding> bindings;          // fresh variables of the case
  std::vector<std::vector<Term>> ih_tuples;   // one tuple per induction hypothesis
  std::vector<Term> conclusion;               // arity-length tuple

  bool operator==(const RuleCase& o) const {
    return bindings == o.bindings && ih_tuples == o.ih_tuples && conclusion == o.conclusion;
  }
};

struct InductionRule {
  enum class Origin { Structural, Computation, Handcrafted };

  std::string name;
  Origin origin = Origin::Structural;
  std::string target;  // datatype or function the rule belongs to
  int arity = 0;
  std::vector<Type> position_types;
  std::vector<RuleCase> cases;

  bool operator==(const InductionRule& o) const {
    return name == o.name && origin == o.origin && target == o.target && arity == o.arity &&
           position_types == o.position_types && cases == o.cases;
  }
};

class TheoryEnv {
 public:
  std::vector<DatatypeDecl> datatypes;
  std::vector<FunctionDef> functions;
  std::vector<GoalDecl> goals;

  // Rule registry, insertion-ordered. Derived structural and computation
  // rules plus handcrafted declarations, all fixed at elaboration time.
  std::vector<InductionRule> rules;
  // Handcrafted rule names keyed by target, declaration order preserved.
  std::map<std::string, std::vector<std::string>> handcrafted_by_target;

  const DatatypeDecl* find_datatype(const std::string& name) const {
    for (const auto& d : datatypes)
      if (d.name == name) return &d;
    return nullptr;
  }

  const FunctionDef* find_function(const std::string& name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }

  // Returns the datatype owning the constructor, or nullptr.
  const DatatypeDecl* find_constructor(const std::string& name, const Constructor** out = nullptr) const {
    for (const auto& d : datatypes)
      for (const auto& c : d.ctors)
        if (c.name == name) {
          if (out) *out = &c;
          return &d;
        }
    return nullptr;
  }

  const GoalDecl* find_goal(const std::string& name) const {
    for (const auto& g : goals)
      if (g.name == name) return &g;
    return nullptr;
  }

  const InductionRule* find_rule(const std::string& name) const {
    for (const auto& r : rules)
      if (r.name == name) return &r;
    return nullptr;
  }

  bool is_constant(const std::string& name) const {
    return find_function(name) != nullptr || find_constructor(name) != nullptr;
  }

  // Declared type scheme of a constant; scheme variables are the type
  // variables appearing in it.
  std::optional<Type> signature_of(const std::string& name) const {
    if (const FunctionDef* f = find_function(name)) return f->signature;
    const Constructor* c = nullptr;
    if (const DatatypeDecl* d = find_constructor(name, &c)) {
      std::vector<Type> params;
      for (const auto& p : d->params) params.push_back(Type::var(p));
      Type result = Type::con(d->name, params);
      for (auto it = c->arg_types.rbegin(); it != c->arg_types.rend(); ++it)
        result = Type::arrow(*it, result);
      return result;
    }
    return std::nullopt;
  }

  // Largest argument count over every declared signature; bounds the
  // heuristic DSL's number domain and the oracle's sequence length.
  int max_arity() const {
    int m = 0;
    for (const auto& f : functions) m = std::max(m, f.arity);
    for (const auto& d : datatypes)
      for (const auto& c : d.ctors) m = std::max(m, static_cast<int>(c.arg_types.size()));
    return m;
  }

  bool operator==(const TheoryEnv& o) const {
    return datatypes == o.datatypes && functions == o.functions && goals == o.goals &&
           rules == o.rules && handcrafted_by_target == o.handcrafted_by_target;
  }
};

}  // namespace semind
