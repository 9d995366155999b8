#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semind/theory.hpp"

namespace semind {

// ---------------------------------------------------------------------------
// Assertion language: values and expressions
// ---------------------------------------------------------------------------

// A value bound to an assertion variable: a term, an occurrence path into the
// context tree, or a number.
struct HValue {
  enum class Kind { Term, Occ, Number };

  Kind kind;
  std::optional<Term> term;
  OccPath occ;
  int number = 0;

  static HValue of(Term t) {
    HValue v;
    v.kind = Kind::Term;
    v.term = std::move(t);
    return v;
  }
  static HValue of(OccPath p) {
    HValue v;
    v.kind = Kind::Occ;
    v.occ = std::move(p);
    return v;
  }
  static HValue of(int n) {
    HValue v;
    v.kind = Kind::Number;
    v.number = n;
    return v;
  }
};

// Syntactic argument of an atom or assertion call: a bound name, a number
// literal, or a string literal (rule and constant names).
struct HeuristicArg {
  enum class Kind { Name, Number, String };
  Kind kind;
  std::string name;
  int number = 0;
  std::string text;
};

struct HeuristicExpr;
using HExprPtr = std::shared_ptr<const HeuristicExpr>;

struct HeuristicExpr {
  enum class Kind { Const, Not, And, Or, Implies, Quantifier, DefQuantifier, Atom };
  enum class Domain { Terms, Occurrences, OccurrencesOf, Numbers, InTerms };

  Kind kind;

  bool value = false;                 // Const
  std::vector<HExprPtr> children;     // Not / And / Or / Implies

  bool is_forall = false;             // Quantifier
  std::string var;
  Domain domain = Domain::Terms;
  std::string domain_arg;             // OccurrencesOf: bound name; InTerms: builtin list name
  HExprPtr body;

  std::string callee;                 // Atom: predicate name; DefQuantifier: assertion name
  std::vector<HeuristicArg> args;     // Atom / DefQuantifier arguments
  std::string target;                 // DefQuantifier: bound name of the function term
};

// A named auxiliary assertion, evaluated against defining clauses via the
// definitional quantifier. Parameters are its only lexical scope.
struct AssertionDef {
  std::string name;
  std::vector<std::string> params;
  HExprPtr body;
};

enum class Phase { Induction, Generalisation };

struct Heuristic {
  std::string name;
  Phase phase;
  int weight = 0;
  bool prelude = false;  // declared under (section prelude)
  HExprPtr root;
};

struct HeuristicSet {
  std::vector<Heuristic> heuristics;
  std::map<std::string, AssertionDef> assertions;
};

// ---------------------------------------------------------------------------
// Evaluation contexts
// ---------------------------------------------------------------------------

struct EvalContext {
  const TheoryEnv* env;
  const Prop* tree;          // the goal, or a defining clause as an equation
  bool in_clause = false;    // lhs/rhs predicates only make sense here
  const Candidate* candidate;
  std::map<std::string, HValue> bindings;
};

namespace detail {

inline Term coerce_term(const EvalContext& ctx, const HValue& v, const std::string& where) {
  if (v.kind == HValue::Kind::Term) return *v.term;
  if (v.kind == HValue::Kind::Occ) return term_at(*ctx.tree, v.occ);
  throw DomainError("number used where a term was expected in " + where);
}

inline const OccPath& coerce_occ(const HValue& v, const std::string& where) {
  if (v.kind != HValue::Kind::Occ)
    throw DomainError("occurrence expected in " + where);
  return v.occ;
}

inline int coerce_number(const HValue& v, const std::string& where) {
  if (v.kind != HValue::Kind::Number)
    throw DomainError("number expected in " + where);
  return v.number;
}


// Atom signatures checked at load time: argument count and which positions
// accept string literals. Value kinds are checked dynamically.
struct AtomSig {
  int arity;
  std::vector<int> string_positions;
};

inline const std::map<std::string, AtomSig>& atom_signatures() {
  static const std::map<std::string, AtomSig> sigs = {
      {"is_nth_argument_of", {3, {}}},
      {"is_or_below_nth_argument_of", {3, {}}},
      {"is_left_hand_side", {1, {}}},
      {"is_right_hand_side", {1, {}}},
      {"are_of_same_term", {2, {}}},
      {"is_variable", {1, {}}},
      {"is_constant", {1, {}}},
      {"is_defined_function", {1, {}}},
      {"occurs_in", {2, {}}},
      {"is_induction_term", {1, {}}},
      {"is_in_arbitrary", {1, {}}},
      {"head_of", {2, {}}},
      {"is_nth_induction_term", {2, {}}},
      {"uses_rule", {0, {}}},
      {"rule_is_computation", {0, {}}},
      {"rule_is_computation_of", {1, {}}},
      {"rule_named", {1, {0}}},
      {"is_constant_named", {2, {1}}},
      {"are_different_numbers", {2, {}}},
  };
  return sigs;
}

inline HValue resolve_arg(const EvalContext& ctx, const HeuristicArg& a) {
  switch (a.kind) {
    case HeuristicArg::Kind::Name: {
      auto it = ctx.bindings.find(a.name);
      if (it == ctx.bindings.end()) throw UnboundVariableError(a.name);
      return it->second;
    }
    case HeuristicArg::Kind::Number:
      return HValue::of(a.number);
    case HeuristicArg::Kind::String:
      throw DomainError("string literal used where a value was expected");
  }
  throw DomainError("unreachable");
}

inline bool eval_atom(const EvalContext& ctx, const HeuristicExpr& e) {
  const std::string& name = e.callee;
  auto val = [&](size_t i) { return resolve_arg(ctx, e.args[i]); };
  auto term = [&](size_t i) { return coerce_term(ctx, val(i), name); };
  auto occ = [&](size_t i) { return coerce_occ(val(i), name); };
  auto num = [&](size_t i) { return coerce_number(val(i), name); };
  auto text = [&](size_t i) { return e.args[i].text; };
  const Candidate& cand = *ctx.candidate;

  if (name == "is_nth_argument_of" || name == "is_or_below_nth_argument_of") {
    OccPath o = occ(0);
    int n = num(1);
    OccPath fo = occ(2);
    if (n < 1) return false;
    if (fo.empty() || fo.indices.back() != 0) return false;  // not a head occurrence
    OccPath arg_root = fo;
    arg_root.indices.back() = n;
    if (name == "is_nth_argument_of") return o == arg_root;
    return arg_root.is_prefix_of(o);
  }
  if (name == "is_left_hand_side" || name == "is_right_hand_side") {
    if (!ctx.in_clause)
      throw ContextError(name + " outside a defining-clause context");
    OccPath o = occ(0);
    int side = name == "is_left_hand_side" ? 1 : 2;
    return !o.empty() && o.indices.front() == side;
  }
  if (name == "are_of_same_term") return term(0) == term(1);
  if (name == "is_variable") return term(0).kind() == Term::Kind::Variable;
  if (name == "is_constant") return term(0).kind() == Term::Kind::Constant;
  if (name == "is_defined_function") {
    Term t = term(0);
    return t.kind() == Term::Kind::Constant && ctx.env->find_function(t.name()) != nullptr;
  }
  if (name == "occurs_in") return !occurrences_of(term(1), term(0)).empty();
  if (name == "is_induction_term") {
    Term t = term(0);
    return std::find(cand.induction_terms.begin(), cand.induction_terms.end(), t) !=
           cand.induction_terms.end();
  }
  if (name == "is_in_arbitrary") {
    Term t = term(0);
    return t.kind() == Term::Kind::Variable && cand.arbitrary.count(t.name()) > 0;
  }
  if (name == "head_of") {
    Term h = term(0), t = term(1);
    return t.kind() == Term::Kind::Application && t.child(0) == h;
  }
  if (name == "is_nth_induction_term") {
    Term t = term(0);
    int n = num(1);
    return n >= 1 && static_cast<size_t>(n) <= cand.induction_terms.size() &&
           cand.induction_terms[n - 1] == t;
  }
  if (name == "uses_rule") return cand.rule.has_value();
  if (name == "rule_is_computation") {
    if (!cand.rule) return false;
    const InductionRule* r = ctx.env->find_rule(*cand.rule);
    return r && r->origin == InductionRule::Origin::Computation;
  }
  if (name == "rule_is_computation_of") {
    Term t = term(0);
    if (t.kind() != Term::Kind::Constant || !cand.rule) return false;
    const InductionRule* r = ctx.env->find_rule(*cand.rule);
    return r && r->origin == InductionRule::Origin::Computation && r->target == t.name();
  }
  if (name == "rule_named") return cand.rule && *cand.rule == text(0);
  if (name == "is_constant_named") {
    Term t = term(0);
    return t.kind() == Term::Kind::Constant && t.name() == text(1);
  }
  if (name == "are_different_numbers") return num(0) != num(1);
  throw UnknownAssertionError(name);
}

inline std::vector<HValue> domain_values(const EvalContext& ctx, const HeuristicExpr& e) {
  std::vector<HValue> out;
  switch (e.domain) {
    case HeuristicExpr::Domain::Terms:
      for (Term& t : distinct_subterms(*ctx.tree)) out.push_back(HValue::of(std::move(t)));
      break;
    case HeuristicExpr::Domain::Occurrences:
      for (OccPath& p : term_positions(*ctx.tree)) out.push_back(HValue::of(std::move(p)));
      break;
    case HeuristicExpr::Domain::OccurrencesOf: {
      auto it = ctx.bindings.find(e.domain_arg);
      if (it == ctx.bindings.end()) throw UnboundVariableError(e.domain_arg);
      Term needle = coerce_term(ctx, it->second, "occurrences-of");
      for (OccPath& p : occurrences_of(*ctx.tree, needle)) out.push_back(HValue::of(std::move(p)));
      break;
    }
    case HeuristicExpr::Domain::Numbers: {
      int m = ctx.env->max_arity();
      for (int n = 1; n <= m; ++n) out.push_back(HValue::of(n));
      break;
    }
    case HeuristicExpr::Domain::InTerms:
      if (e.domain_arg == "induction_terms") {
        for (const Term& t : ctx.candidate->induction_terms) out.push_back(HValue::of(t));
      } else {  // arbitrary_terms
        for (const std::string& v : ctx.candidate->arbitrary)
          out.push_back(HValue::of(Term::var(v)));
      }
      break;
  }
  return out;
}

inline bool eval_expr(const HeuristicSet& set, const HeuristicExpr& e, EvalContext& ctx);

inline bool eval_def_quantifier(const HeuristicSet& set, const HeuristicExpr& e,
                                EvalContext& ctx) {
  auto it = ctx.bindings.find(e.target);
  if (it == ctx.bindings.end()) throw UnboundVariableError(e.target);
  Term target = coerce_term(ctx, it->second, "exists-def");
  if (target.kind() != Term::Kind::Constant) return false;
  const FunctionDef* fn = ctx.env->find_function(target.name());
  if (!fn || fn->clauses.empty()) return false;

  auto cit = set.assertions.find(e.callee);
  if (cit == set.assertions.end()) throw UnknownAssertionError(e.callee);
  const AssertionDef& callee = cit->second;

  // Occurrence paths are meaningless across trees; hand terms over instead.
  std::map<std::string, HValue> params;
  for (size_t i = 0; i < e.args.size(); ++i) {
    HValue v = resolve_arg(ctx, e.args[i]);
    if (v.kind == HValue::Kind::Occ) v = HValue::of(term_at(*ctx.tree, v.occ));
    params[callee.params[i]] = std::move(v);
  }

  for (const Clause& cl : fn->clauses) {
    Prop clause_tree = Prop::equation(cl.lhs, cl.rhs);
    EvalContext cctx;
    cctx.env = ctx.env;
    cctx.tree = &clause_tree;
    cctx.in_clause = true;
    cctx.candidate = ctx.candidate;
    cctx.bindings = params;
    if (eval_expr(set, *callee.body, cctx)) return true;
  }
  return false;
}

inline bool eval_expr(const HeuristicSet& set, const HeuristicExpr& e, EvalContext& ctx) {
  switch (e.kind) {
    case HeuristicExpr::Kind::Const:
      return e.value;
    case HeuristicExpr::Kind::Not:
      return !eval_expr(set, *e.children[0], ctx);
    case HeuristicExpr::Kind::And:
      for (const auto& c : e.children)
        if (!eval_expr(set, *c, ctx)) return false;
      return true;
    case HeuristicExpr::Kind::Or:
      for (const auto& c : e.children)
        if (eval_expr(set, *c, ctx)) return true;
      return false;
    case HeuristicExpr::Kind::Implies:
      return !eval_expr(set, *e.children[0], ctx) || eval_expr(set, *e.children[1], ctx);
    case HeuristicExpr::Kind::Quantifier: {
      auto saved = ctx.bindings.find(e.var) != ctx.bindings.end()
                       ? std::optional<HValue>(ctx.bindings[e.var])
                       : std::nullopt;
      bool result = e.is_forall;
      for (HValue& v : domain_values(ctx, e)) {
        ctx.bindings[e.var] = std::move(v);
        bool b = eval_expr(set, *e.body, ctx);
        if (e.is_forall && !b) {
          result = false;
          break;
        }
        if (!e.is_forall && b) {
          result = true;
          break;
        }
      }
      if (saved)
        ctx.bindings[e.var] = *saved;
      else
        ctx.bindings.erase(e.var);
      return result;
    }
    case HeuristicExpr::Kind::DefQuantifier:
      return eval_def_quantifier(set, e, ctx);
    case HeuristicExpr::Kind::Atom:
      return eval_atom(ctx, e);
  }
  throw EvalError("unreachable expression kind");
}

}  // namespace detail

// Evaluate an expression against a goal (or clause) context.
inline bool eval_heuristic_expr(const HeuristicSet& set, const HeuristicExpr& expr,
                                EvalContext& ctx) {
  return detail::eval_expr(set, expr, ctx);
}

inline EvalContext make_goal_context(const TheoryEnv& env, const Prop& goal,
                                     const Candidate& cand) {
  EvalContext ctx;
  ctx.env = &env;
  ctx.tree = &goal;
  ctx.in_clause = false;
  ctx.candidate = &cand;
  return ctx;
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

struct HeuristicFire {
  std::string name;
  int weight;
  bool fired;

  int contribution() const { return fired ? weight : 0; }
};

struct ScoreBreakdown {
  int points = 0;
  std::vector<HeuristicFire> fires;
};

inline ScoreBreakdown score(const HeuristicSet& set, Phase phase, const TheoryEnv& env,
                            const Prop& goal, const Candidate& cand) {
  ScoreBreakdown out;
  for (const Heuristic& h : set.heuristics) {
    if (h.phase != phase) continue;
    EvalContext ctx = make_goal_context(env, goal, cand);
    bool fired = detail::eval_expr(set, *h.root, ctx);
    out.fires.push_back({h.name, h.weight, fired});
    if (fired) out.points += h.weight;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loading: s-expression reader and scope checks
// ---------------------------------------------------------------------------

namespace detail {

struct SNode {
  enum class Kind { List, Symbol, Number, String };
  Kind kind;
  std::vector<SNode> items;
  std::string text;
  int number = 0;
  int line = 0, col = 0;
};

struct SReader {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit SReader(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[pos]))) {
        advance();
      } else if (src[pos] == ';') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos >= src.size();
  }

  SNode read() {
    skip_space();
    if (pos >= src.size()) fail("unexpected end of input");
    SNode n;
    n.line = line;
    n.col = col;
    char c = src[pos];
    if (c == '(') {
      advance();
      n.kind = SNode::Kind::List;
      while (true) {
        skip_space();
        if (pos >= src.size()) fail("unclosed parenthesis");
        if (src[pos] == ')') {
          advance();
          break;
        }
        n.items.push_back(read());
      }
      return n;
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      advance();
      n.kind = SNode::Kind::String;
      while (pos < src.size() && src[pos] != '"' && src[pos] != '\n') {
        n.text += src[pos];
        advance();
      }
      if (pos >= src.size() || src[pos] != '"') fail("unterminated string");
      advance();
      return n;
    }
    std::string tok;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != '"' && src[pos] != ';') {
      tok += src[pos];
      advance();
    }
    bool numeric = !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) ||
                                    (tok[0] == '-' && tok.size() > 1 &&
                                     std::isdigit(static_cast<unsigned char>(tok[1]))));
    if (numeric) {
      n.kind = SNode::Kind::Number;
      try {
        n.number = std::stoi(tok);
      } catch (const std::exception&) {
        fail("bad number literal: " + tok);
      }
    } else {
      n.kind = SNode::Kind::Symbol;
      n.text = tok;
    }
    return n;
  }
};

struct AssertionHeader {
  size_t param_count;
};

struct HeuristicCompiler {
  std::map<std::string, AssertionHeader> assertion_headers;
  // exists-def edges between assertions, for cycle rejection
  std::map<std::string, std::set<std::string>> edges;
  std::string current_assertion;

  [[noreturn]] static void fail(const SNode& n, const std::string& msg) {
    throw ParseError(msg, n.line, n.col);
  }

  static const std::string& sym(const SNode& n, const std::string& what) {
    if (n.kind != SNode::Kind::Symbol) fail(n, what + " expected");
    return n.text;
  }

  HeuristicArg compile_arg(const SNode& n, const std::set<std::string>& scope,
                           bool allow_string) const {
    HeuristicArg a;
    switch (n.kind) {
      case SNode::Kind::Symbol:
        if (!scope.count(n.text))
          throw ScopeError("unbound name '" + n.text + "' in heuristic expression");
        a.kind = HeuristicArg::Kind::Name;
        a.name = n.text;
        return a;
      case SNode::Kind::Number:
        a.kind = HeuristicArg::Kind::Number;
        a.number = n.number;
        return a;
      case SNode::Kind::String:
        if (!allow_string) fail(n, "string literal not allowed here");
        a.kind = HeuristicArg::Kind::String;
        a.text = n.text;
        return a;
      case SNode::Kind::List:
        fail(n, "atom argument must be a name, number, or string");
    }
    fail(n, "unreachable");
  }

  HExprPtr compile(const SNode& n, std::set<std::string> scope) {
    auto node = std::make_shared<HeuristicExpr>();
    if (n.kind == SNode::Kind::Symbol) {
      if (n.text == "true" || n.text == "false") {
        node->kind = HeuristicExpr::Kind::Const;
        node->value = n.text == "true";
        return node;
      }
      fail(n, "expected an expression");
    }
    if (n.kind != SNode::Kind::List || n.items.empty() ||
        n.items[0].kind != SNode::Kind::Symbol)
      fail(n, "expected an expression list");
    const std::string& head = n.items[0].text;

    if (head == "not") {
      if (n.items.size() != 2) fail(n, "not takes one argument");
      node->kind = HeuristicExpr::Kind::Not;
      node->children.push_back(compile(n.items[1], scope));
      return node;
    }
    if (head == "and" || head == "or") {
      if (n.items.size() < 2) fail(n, head + " needs at least one argument");
      node->kind = head == "and" ? HeuristicExpr::Kind::And : HeuristicExpr::Kind::Or;
      for (size_t i = 1; i < n.items.size(); ++i)
        node->children.push_back(compile(n.items[i], scope));
      return node;
    }
    if (head == "implies") {
      if (n.items.size() != 3) fail(n, "implies takes two arguments");
      node->kind = HeuristicExpr::Kind::Implies;
      node->children.push_back(compile(n.items[1], scope));
      node->children.push_back(compile(n.items[2], scope));
      return node;
    }
    if (head == "forall" || head == "exists") {
      if (n.items.size() != 4) fail(n, head + " takes a variable, a domain, and a body");
      node->kind = HeuristicExpr::Kind::Quantifier;
      node->is_forall = head == "forall";
      node->var = sym(n.items[1], "quantified variable");
      compile_domain(n.items[2], scope, *node);
      scope.insert(node->var);
      node->body = compile(n.items[3], scope);
      return node;
    }
    if (head == "exists-def") {
      if (n.items.size() != 4 || n.items[3].kind != SNode::Kind::List)
        fail(n, "exists-def takes a target, an assertion name, and an argument list");
      node->kind = HeuristicExpr::Kind::DefQuantifier;
      node->target = sym(n.items[1], "exists-def target");
      if (!scope.count(node->target))
        throw ScopeError("unbound name '" + node->target + "' in exists-def");
      node->callee = sym(n.items[2], "assertion name");
      auto hit = assertion_headers.find(node->callee);
      if (hit == assertion_headers.end()) throw ScopeError("unknown assertion: " + node->callee);
      for (const SNode& a : n.items[3].items)
        node->args.push_back(compile_arg(a, scope, false));
      if (node->args.size() != hit->second.param_count)
        throw ScopeError("assertion " + node->callee + " expects " +
                         std::to_string(hit->second.param_count) + " arguments, got " +
                         std::to_string(node->args.size()));
      if (!current_assertion.empty()) edges[current_assertion].insert(node->callee);
      return node;
    }

    auto sit = atom_signatures().find(head);
    if (sit == atom_signatures().end()) throw ScopeError("unknown predicate: " + head);
    node->kind = HeuristicExpr::Kind::Atom;
    node->callee = head;
    if (static_cast<int>(n.items.size()) - 1 != sit->second.arity)
      fail(n, head + " expects " + std::to_string(sit->second.arity) + " arguments");
    for (size_t i = 1; i < n.items.size(); ++i) {
      bool allow_string =
          std::find(sit->second.string_positions.begin(), sit->second.string_positions.end(),
                    static_cast<int>(i - 1)) != sit->second.string_positions.end();
      HeuristicArg a = compile_arg(n.items[i], scope, allow_string);
      if (allow_string && a.kind != HeuristicArg::Kind::String)
        fail(n.items[i], head + " expects a string literal here");
      node->args.push_back(a);
    }
    return node;
  }

  void compile_domain(const SNode& n, const std::set<std::string>& scope,
                      HeuristicExpr& node) const {
    if (n.kind != SNode::Kind::List || n.items.empty() ||
        n.items[0].kind != SNode::Kind::Symbol)
      fail(n, "expected a quantifier domain");
    const std::string& head = n.items[0].text;
    if (head == "terms" && n.items.size() == 1) {
      node.domain = HeuristicExpr::Domain::Terms;
      return;
    }
    if (head == "occurrences" && n.items.size() == 1) {
      node.domain = HeuristicExpr::Domain::Occurrences;
      return;
    }
    if (head == "occurrences-of" && n.items.size() == 2) {
      node.domain = HeuristicExpr::Domain::OccurrencesOf;
      node.domain_arg = sym(n.items[1], "term variable");
      if (!scope.count(node.domain_arg))
        throw ScopeError("unbound name '" + node.domain_arg + "' in occurrences-of");
      return;
    }
    if (head == "numbers" && n.items.size() == 1) {
      node.domain = HeuristicExpr::Domain::Numbers;
      return;
    }
    if (head == "in-terms" && n.items.size() == 2) {
      const std::string& which = sym(n.items[1], "term list name");
      if (which != "induction_terms" && which != "arbitrary_terms")
        fail(n.items[1], "in-terms expects induction_terms or arbitrary_terms");
      node.domain = HeuristicExpr::Domain::InTerms;
      node.domain_arg = which;
      return;
    }
    fail(n, "unknown quantifier domain");
  }
};

}  // namespace detail

inline HeuristicSet load_heuristics(const std::string& text) {
  detail::SReader reader(text);
  std::vector<detail::SNode> forms;
  while (!reader.at_end()) forms.push_back(reader.read());

  detail::HeuristicCompiler compiler;

  // First pass: assertion headers, so bodies may reference later definitions.
  for (const auto& f : forms) {
    if (f.kind != detail::SNode::Kind::List || f.items.empty() ||
        f.items[0].kind != detail::SNode::Kind::Symbol)
      detail::HeuristicCompiler::fail(f, "expected a top-level form");
    if (f.items[0].text != "assertion") continue;
    if (f.items.size() != 4 || f.items[2].kind != detail::SNode::Kind::List)
      detail::HeuristicCompiler::fail(f, "assertion takes a name, parameters, and a body");
    const std::string& name = detail::HeuristicCompiler::sym(f.items[1], "assertion name");
    if (compiler.assertion_headers.count(name))
      throw ScopeError("duplicate assertion: " + name);
    compiler.assertion_headers[name] = {f.items[2].items.size()};
  }

  HeuristicSet set;
  bool prelude_section = false;
  std::set<std::string> heuristic_names;

  for (const auto& f : forms) {
    const std::string& head = f.items[0].text;
    if (head == "section") {
      if (f.items.size() != 2) detail::HeuristicCompiler::fail(f, "section takes a name");
      const std::string& s = detail::HeuristicCompiler::sym(f.items[1], "section name");
      if (s != "generic" && s != "prelude")
        detail::HeuristicCompiler::fail(f.items[1], "section must be generic or prelude");
      prelude_section = s == "prelude";
      continue;
    }
    if (head == "assertion") {
      AssertionDef def;
      def.name = f.items[1].text;
      std::set<std::string> scope;
      for (const auto& p : f.items[2].items) {
        def.params.push_back(detail::HeuristicCompiler::sym(p, "parameter name"));
        if (!scope.insert(def.params.back()).second)
          throw ScopeError("duplicate parameter: " + def.params.back());
      }
      compiler.current_assertion = def.name;
      def.body = compiler.compile(f.items[3], scope);
      compiler.current_assertion.clear();
      set.assertions[def.name] = std::move(def);
      continue;
    }
    if (head == "heuristic") {
      if (f.items.size() != 5)
        detail::HeuristicCompiler::fail(f, "heuristic takes a name, phase, weight, and body");
      Heuristic h;
      h.name = detail::HeuristicCompiler::sym(f.items[1], "heuristic name");
      if (!heuristic_names.insert(h.name).second)
        throw ScopeError("duplicate heuristic: " + h.name);
      const std::string& phase = detail::HeuristicCompiler::sym(f.items[2], "phase");
      if (phase == "induction")
        h.phase = Phase::Induction;
      else if (phase == "generalisation")
        h.phase = Phase::Generalisation;
      else
        detail::HeuristicCompiler::fail(f.items[2], "phase must be induction or generalisation");
      if (f.items[3].kind != detail::SNode::Kind::Number || f.items[3].number == 0)
        detail::HeuristicCompiler::fail(f.items[3], "weight must be a nonzero integer");
      h.weight = f.items[3].number;
      h.prelude = prelude_section;
      h.root = compiler.compile(f.items[4], {});
      set.heuristics.push_back(std::move(h));
      continue;
    }
    detail::HeuristicCompiler::fail(f, "unknown top-level form: " + head);
  }

  // Reject recursion among assertions: the definitional quantifier must
  // bottom out.
  std::map<std::string, int> state;  // 0 unseen, 1 visiting, 2 done
  auto dfs = [&](auto&& self, const std::string& a) -> void {
    state[a] = 1;
    for (const auto& next : compiler.edges[a]) {
      if (state[next] == 1)
        throw ScopeError("recursive assertion cycle through " + next);
      if (state[next] == 0) self(self, next);
    }
    state[a] = 2;
  };
  for (const auto& [name, _] : set.assertions)
    if (state[name] == 0) dfs(dfs, name);

  return set;
}

}  // namespace semind
