#pragma once

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semind/prelude.hpp"
#include "semind/rules.hpp"

namespace semind {

namespace detail {

struct Token {
  enum class Kind { Ident, String, Symbol, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  const size_t n = src.size();
  auto push = [&](Token::Kind k, std::string text, int l, int c) {
    out.push_back({k, std::move(text), l, c});
  };
  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && src[i + 1] == '-') {
      if (i + 2 < n && src[i + 2] == '>') {
        push(Token::Kind::Symbol, "-->", line, col);
        i += 3;
        col += 3;
        continue;
      }
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      int l = line, cc = col;
      size_t j = i;
      while (j < n && ident_char(src[j])) ++j;
      // Dotted names such as rev2.induct are one identifier.
      while (j < n && src[j] == '.' && j + 1 < n && ident_start(src[j + 1])) {
        ++j;
        while (j < n && ident_char(src[j])) ++j;
      }
      push(Token::Kind::Ident, src.substr(i, j - i), l, cc);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '"') {
      int l = line, cc = col;
      size_t j = i + 1;
      while (j < n && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= n || src[j] != '"') throw ParseError("unterminated string", l, cc);
      push(Token::Kind::String, src.substr(i + 1, j - i - 1), l, cc);
      col += static_cast<int>(j + 1 - i);
      i = j + 1;
      continue;
    }
    if (c == '=') {
      if (i + 1 < n && src[i + 1] == '>') {
        push(Token::Kind::Symbol, "=>", line, col);
        i += 2;
        col += 2;
      } else {
        push(Token::Kind::Symbol, "=", line, col);
        ++i;
        ++col;
      }
      continue;
    }
    if (std::string("(){};:,|").find(c) != std::string::npos) {
      push(Token::Kind::Symbol, std::string(1, c), line, col);
      ++i;
      ++col;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
  }
  push(Token::Kind::End, "", line, col);
  return out;
}

inline bool reserved_word(const std::string& s) {
  static const std::set<std::string> kw = {"datatype", "fun",    "goal",     "rule",   "where",
                                           "for",      "case",   "assume",   "conclude", "expect"};
  return kw.count(s) > 0;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& get() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool at_sym(const std::string& s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }
  bool at_ident() const { return peek().kind == Token::Kind::Ident; }
  bool at_word(const std::string& w) const { return at_ident() && peek().text == w; }

  bool accept_sym(const std::string& s) {
    if (!at_sym(s)) return false;
    get();
    return true;
  }
  bool accept_word(const std::string& w) {
    if (!at_word(w)) return false;
    get();
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s)) fail("expected '" + s + "'");
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("expected '" + w + "'");
  }
  std::string expect_name() {
    if (!at_ident() || reserved_word(peek().text)) fail("expected an identifier");
    return get().text;
  }

  size_t save() const { return pos_; }
  void restore(size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + got, t.line, t.col);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

inline Term parse_term(Cursor& c, const TheoryEnv& env) {
  std::vector<Term> atoms;
  for (;;) {
    if (c.at_ident() && !reserved_word(c.peek().text)) {
      std::string name = c.get().text;
      atoms.push_back(env.is_constant(name) ? Term::constant(name) : Term::var(name));
    } else if (c.at_sym("(")) {
      c.get();
      atoms.push_back(parse_term(c, env));
      c.expect_sym(")");
    } else {
      break;
    }
  }
  if (atoms.empty()) c.fail("expected a term");
  if (atoms.size() == 1) return atoms[0];
  Term head = atoms.front();
  atoms.erase(atoms.begin());
  return Term::app(head, std::move(atoms));
}

inline Prop parse_prop(Cursor& c, const TheoryEnv& env);

inline Prop parse_prop_atom(Cursor& c, const TheoryEnv& env) {
  if (c.at_sym("(")) {
    size_t mark = c.save();
    try {
      c.get();
      Prop p = parse_prop(c, env);
      c.expect_sym(")");
      return p;
    } catch (const ParseError&) {
      c.restore(mark);  // parenthesized term, not a proposition
    }
  }
  Term lhs = parse_term(c, env);
  c.expect_sym("=");
  Term rhs = parse_term(c, env);
  return Prop::equation(lhs, rhs);
}

inline Prop parse_prop(Cursor& c, const TheoryEnv& env) {
  Prop left = parse_prop_atom(c, env);
  if (c.accept_sym("-->")) return Prop::implication(left, parse_prop(c, env));
  return left;
}

// Type syntax context: type variables in a datatype declaration must be
// declared parameters, anywhere else they are implicitly polymorphic.
struct TypeScope {
  const std::vector<std::string>* params = nullptr;
};

inline Type parse_type(Cursor& c, const TheoryEnv& env, const TypeScope& scope);

inline Type resolve_type_name(Cursor& c, const TheoryEnv& env, const TypeScope& scope,
                              const std::string& name, std::vector<Type> args) {
  if (const DatatypeDecl* d = env.find_datatype(name)) {
    if (args.size() != d->params.size())
      c.fail("type " + name + " expects " + std::to_string(d->params.size()) + " argument(s)");
    return Type::con(name, std::move(args));
  }
  if (!args.empty()) c.fail("type variable " + name + " cannot take arguments");
  if (scope.params &&
      std::find(scope.params->begin(), scope.params->end(), name) == scope.params->end())
    throw UnknownDatatypeError("unknown type name: " + name);
  return Type::var(name);
}

// Atomic positions (constructor arguments) take a bare name or parentheses;
// type application such as `list a` needs a full type context.
inline Type parse_atomic_type(Cursor& c, const TheoryEnv& env, const TypeScope& scope) {
  if (c.accept_sym("(")) {
    Type t = parse_type(c, env, scope);
    c.expect_sym(")");
    return t;
  }
  return resolve_type_name(c, env, scope, c.expect_name(), {});
}

inline Type parse_type(Cursor& c, const TheoryEnv& env, const TypeScope& scope) {
  Type left;
  if (c.at_ident() && !reserved_word(c.peek().text)) {
    std::string name = c.get().text;
    if (const DatatypeDecl* d = env.find_datatype(name); d && !d->params.empty()) {
      std::vector<Type> args;
      for (size_t i = 0; i < d->params.size(); ++i)
        args.push_back(parse_atomic_type(c, env, scope));
      left = Type::con(name, std::move(args));
    } else {
      left = resolve_type_name(c, env, scope, name, {});
    }
  } else {
    left = parse_atomic_type(c, env, scope);
  }
  if (c.accept_sym("=>")) return Type::arrow(left, parse_type(c, env, scope));
  return left;
}

}  // namespace detail

// Parses an induction invocation string against a goal, checking that every
// variable it mentions is free in the goal, that generalized variables stay
// out of the induction terms, and that a named rule exists.
inline Candidate parse_candidate(const TheoryEnv& env, const Prop& goal, const std::string& text) {
  detail::Cursor c(detail::lex(text));
  c.expect_word("induct");

  Candidate cand;
  for (;;) {
    if (c.at_sym("(")) {
      c.get();
      cand.induction_terms.push_back(detail::parse_term(c, env));
      c.expect_sym(")");
    } else if (c.at_ident() && !c.at_word("arbitrary") && !c.at_word("rule") &&
               !detail::reserved_word(c.peek().text)) {
      std::string name = c.get().text;
      cand.induction_terms.push_back(env.is_constant(name) ? Term::constant(name)
                                                           : Term::var(name));
    } else {
      break;
    }
  }
  if (cand.induction_terms.empty()) c.fail("expected at least one induction term");

  if (c.accept_word("arbitrary")) {
    c.expect_sym(":");
    if (!c.at_ident()) c.fail("expected a variable after arbitrary:");
    while (c.at_ident() && !c.at_word("rule")) cand.arbitrary.insert(c.get().text);
  }
  if (c.accept_word("rule")) {
    c.expect_sym(":");
    cand.rule = c.expect_name();
  }
  if (!c.at_end()) c.fail("unexpected trailing input");

  std::set<std::string> goal_vars = free_vars(goal);
  std::set<std::string> term_vars;
  for (const auto& t : cand.induction_terms)
    for (const auto& v : free_vars(t)) {
      if (!goal_vars.count(v)) throw ScopeError("unknown variable in induction term: " + v);
      term_vars.insert(v);
    }
  for (const auto& a : cand.arbitrary) {
    if (!goal_vars.count(a)) throw ScopeError("unknown variable in arbitrary: " + a);
    if (term_vars.count(a))
      throw ScopeError("arbitrary variable " + a + " occurs in an induction term");
  }
  if (cand.rule && !env.find_rule(*cand.rule)) throw ScopeError("unknown rule: " + *cand.rule);

  GoalTyping typing(env, goal);
  for (const auto& t : cand.induction_terms) typing.infer(t);
  return cand;
}

inline std::string render_candidate(const Candidate& cand) {
  std::string s = "induct";
  for (const auto& t : cand.induction_terms) {
    std::string ts = to_string(t);
    if (t.kind() == Term::Kind::Application) ts = "(" + ts + ")";
    s += " " + ts;
  }
  if (!cand.arbitrary.empty()) {
    s += " arbitrary:";
    for (const auto& a : cand.arbitrary) s += " " + a;
  }
  if (cand.rule) s += " rule: " + *cand.rule;
  return s;
}

namespace detail {

class TheoryParser {
 public:
  TheoryParser(Cursor& c, TheoryEnv& env) : c_(c), env_(env) {}

  void run() {
    while (!c_.at_end()) {
      if (c_.at_word("datatype"))
        parse_datatype();
      else if (c_.at_word("fun"))
        parse_fun();
      else if (c_.at_word("goal"))
        parse_goal();
      else if (c_.at_word("rule"))
        parse_rule();
      else
        c_.fail("expected datatype, fun, goal, or rule");
    }
  }

 private:
  void check_fresh_constant(const std::string& name) {
    if (env_.is_constant(name) || env_.find_datatype(name))
      throw ScopeError("redeclared name: " + name);
  }

  void parse_datatype() {
    c_.expect_word("datatype");
    std::string name = c_.expect_name();
    check_fresh_constant(name);
    std::vector<std::string> params;
    while (!c_.at_sym("=")) {
      std::string p = c_.expect_name();
      if (std::find(params.begin(), params.end(), p) != params.end())
        throw ScopeError("duplicate type parameter: " + p);
      params.push_back(p);
    }
    c_.expect_sym("=");

    env_.datatypes.push_back({name, params, {}, false});
    DatatypeDecl& decl = env_.datatypes.back();
    TypeScope scope{&decl.params};
    do {
      std::string ctor = c_.expect_name();
      check_fresh_constant(ctor);
      std::vector<Type> arg_types;
      while ((c_.at_ident() && !reserved_word(c_.peek().text)) || c_.at_sym("("))
        arg_types.push_back(parse_atomic_type(c_, env_, scope));
      decl.ctors.push_back({ctor, std::move(arg_types)});
    } while (c_.accept_sym("|"));

    env_.rules.push_back(structural_rule(decl));
  }

  static bool is_pattern(const TheoryEnv& env, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Variable:
        return true;
      case Term::Kind::Constant: {
        const Constructor* ctor = nullptr;
        return env.find_constructor(t.name(), &ctor) != nullptr && ctor->arg_types.empty();
      }
      case Term::Kind::Application: {
        if (t.head().kind() != Term::Kind::Constant) return false;
        const Constructor* ctor = nullptr;
        if (!env.find_constructor(t.head().name(), &ctor)) return false;
        if (static_cast<int>(ctor->arg_types.size()) != t.arg_count()) return false;
        for (int i = 1; i <= t.arg_count(); ++i)
          if (!is_pattern(env, t.child(i))) return false;
        return true;
      }
    }
    return false;
  }

  static void pattern_vars(const Term& t, std::vector<std::string>& out) {
    switch (t.kind()) {
      case Term::Kind::Variable:
        out.push_back(t.name());
        return;
      case Term::Kind::Constant:
        return;
      case Term::Kind::Application:
        for (int i = 1; i <= t.arg_count(); ++i) pattern_vars(t.child(i), out);
        return;
    }
  }

  void parse_fun() {
    c_.expect_word("fun");
    std::string name = c_.expect_name();
    check_fresh_constant(name);
    c_.expect_sym(":");
    TypeScope scope;  // free type variables allowed
    Type sig = parse_type(c_, env_, scope);
    c_.expect_word("where");

    env_.functions.push_back({name, sig, 0, {}, false});
    FunctionDef& fun = env_.functions.back();

    std::vector<Clause> raw;
    do {
      Term lhs = parse_term(c_, env_);
      c_.expect_sym("=");
      Term rhs = parse_term(c_, env_);
      raw.push_back({lhs, rhs});
    } while (c_.accept_sym("|"));

    for (size_t k = 0; k < raw.size(); ++k) {
      const Clause& cl = raw[k];
      bool heads_fun =
          (cl.lhs.kind() == Term::Kind::Constant && cl.lhs.name() == name) ||
          (cl.lhs.kind() == Term::Kind::Application &&
           cl.lhs.head().kind() == Term::Kind::Constant && cl.lhs.head().name() == name);
      if (!heads_fun) throw ScopeError("clause does not define " + name + ": " + to_string(cl.lhs));
      if (k == 0)
        fun.arity = cl.lhs.arg_count();
      else if (cl.lhs.arg_count() != fun.arity)
        throw ScopeError("clauses of " + name + " disagree in argument count");

      std::vector<std::string> vars;
      for (int i = 1; i <= cl.lhs.arg_count(); ++i) {
        if (!is_pattern(env_, cl.lhs.child(i)))
          throw ScopeError("left-hand side of " + name +
                           " is not a constructor pattern: " + to_string(cl.lhs.child(i)));
        pattern_vars(cl.lhs.child(i), vars);
      }
      std::set<std::string> seen;
      for (const auto& v : vars)
        if (!seen.insert(v).second)
          throw ScopeError("duplicate pattern variable " + v + " in clause of " + name);
      for (const auto& v : free_vars(cl.rhs))
        if (!seen.count(v))
          throw ScopeError("variable " + v + " is not bound on the left-hand side in clause of " +
                           name);

      check_clause(env_, fun, cl);
      fun.clauses.push_back(cl);
    }

    if (fun.arity > 0) env_.rules.push_back(computation_rule(env_, fun));
  }

  void parse_goal() {
    c_.expect_word("goal");
    std::string name = c_.expect_name();
    if (env_.find_goal(name)) throw ScopeError("redeclared goal: " + name);
    c_.expect_sym(":");
    Prop prop = parse_prop(c_, env_);
    infer_types(env_, prop);

    GoalDecl goal{name, prop, std::nullopt, std::nullopt};
    if (c_.accept_word("expect")) {
      if (c_.peek().kind != Token::Kind::String) c_.fail("expected a quoted invocation");
      goal.expect_text = c_.get().text;
      goal.expected = parse_candidate(env_, prop, *goal.expect_text);
    }
    env_.goals.push_back(std::move(goal));
  }

  void parse_rule() {
    c_.expect_word("rule");
    std::string name = c_.expect_name();
    if (env_.find_rule(name)) throw ScopeError("redeclared rule: " + name);
    c_.expect_word("for");
    std::string target = c_.expect_name();
    if (!env_.find_datatype(target) && !env_.find_function(target))
      throw ScopeError("rule target is neither a datatype nor a function: " + target);

    RawRuleDecl raw;
    raw.name = name;
    raw.target = target;
    c_.expect_sym("{");
    while (c_.accept_word("case")) {
      RawRuleDecl::Case rc;
      while (c_.at_ident() && !reserved_word(c_.peek().text)) {
        std::string b = c_.get().text;
        if (env_.is_constant(b)) throw ScopeError("case binding shadows a constant: " + b);
        if (std::find(rc.bindings.begin(), rc.bindings.end(), b) != rc.bindings.end())
          throw ScopeError("duplicate case binding: " + b);
        rc.bindings.push_back(b);
      }
      if (c_.accept_word("assume")) {
        do {
          rc.assumes.push_back(parse_tuple());
        } while (c_.at_sym("("));
      }
      c_.expect_word("conclude");
      rc.conclusion = parse_tuple();
      c_.expect_sym(";");
      raw.cases.push_back(std::move(rc));
    }
    c_.expect_sym("}");

    env_.rules.push_back(elaborate_handcrafted(env_, raw));
    env_.handcrafted_by_target[target].push_back(name);
  }

  std::vector<Term> parse_tuple() {
    c_.expect_sym("(");
    std::vector<Term> out;
    do {
      out.push_back(parse_term(c_, env_));
    } while (c_.accept_sym(","));
    c_.expect_sym(")");
    return out;
  }

  Cursor& c_;
  TheoryEnv& env_;
};

inline void parse_into(TheoryEnv& env, const std::string& text) {
  Cursor c(lex(text));
  TheoryParser(c, env).run();
}

}  // namespace detail

inline const TheoryEnv& prelude_env() {
  static const TheoryEnv base = [] {
    TheoryEnv env;
    detail::parse_into(env, prelude_text());
    for (auto& d : env.datatypes) d.from_prelude = true;
    for (auto& f : env.functions) f.from_prelude = true;
    return env;
  }();
  return base;
}

inline TheoryEnv parse_theory(const std::string& text, bool use_prelude = true) {
  TheoryEnv env = use_prelude ? prelude_env() : TheoryEnv{};
  detail::parse_into(env, text);
  return env;
}

inline TheoryEnv parse_theory_file(const std::string& path, bool use_prelude = true) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_theory(ss.str(), use_prelude);
}

inline Term parse_term_string(const TheoryEnv& env, const std::string& text) {
  detail::Cursor c(detail::lex(text));
  Term t = detail::parse_term(c, env);
  if (!c.at_end()) c.fail("unexpected trailing input");
  return t;
}

inline Prop parse_prop_string(const TheoryEnv& env, const std::string& text) {
  detail::Cursor c(detail::lex(text));
  Prop p = detail::parse_prop(c, env);
  if (!c.at_end()) c.fail("unexpected trailing input");
  return p;
}

namespace detail {

inline std::string render_atomic_type(const Type& t) {
  std::string s = to_string(t);
  bool compound = t.kind() == Type::Kind::Arrow ||
                  (t.kind() == Type::Kind::Con && !t.args().empty());
  return compound ? "(" + s + ")" : s;
}

inline std::string render_tuple(const std::vector<Term>& terms) {
  std::string s = "(";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) s += ", ";
    s += to_string(terms[i]);
  }
  return s + ")";
}

}  // namespace detail

// Renders everything declared outside the prelude back into source syntax.
// Items are grouped by kind; within a group declaration order is preserved,
// which keeps every reference pointing backwards.
inline std::string render_theory(const TheoryEnv& env) {
  std::string out;
  for (const auto& d : env.datatypes) {
    if (d.from_prelude) continue;
    out += "datatype " + d.name;
    for (const auto& p : d.params) out += " " + p;
    out += " =";
    for (size_t i = 0; i < d.ctors.size(); ++i) {
      out += i ? " | " : " ";
      out += d.ctors[i].name;
      for (const auto& ty : d.ctors[i].arg_types) out += " " + detail::render_atomic_type(ty);
    }
    out += "\n";
  }
  for (const auto& f : env.functions) {
    if (f.from_prelude) continue;
    out += "fun " + f.name + " : " + to_string(f.signature) + " where\n";
    for (size_t i = 0; i < f.clauses.size(); ++i) {
      out += i ? "| " : "  ";
      out += to_string(f.clauses[i].lhs) + " = " + to_string(f.clauses[i].rhs) + "\n";
    }
  }
  for (const auto& r : env.rules) {
    if (r.origin != InductionRule::Origin::Handcrafted) continue;
    if (const InductionRule* p = prelude_env().find_rule(r.name); p && *p == r) continue;
    out += "rule " + r.name + " for " + r.target + " {\n";
    for (const auto& rc : r.cases) {
      out += "  case";
      for (const auto& b : rc.bindings) out += " " + b.name;
      if (!rc.ih_tuples.empty()) {
        out += " assume";
        for (const auto& tup : rc.ih_tuples) out += " " + detail::render_tuple(tup);
      }
      out += " conclude " + detail::render_tuple(rc.conclusion) + ";\n";
    }
    out += "}\n";
  }
  for (const auto& g : env.goals) {
    out += "goal " + g.name + " : " + to_string(g.prop);
    if (g.expect_text) out += " expect \"" + *g.expect_text + "\"";
    out += "\n";
  }
  return out;
}

}  // namespace semind
