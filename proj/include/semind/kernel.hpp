#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semind/term.hpp"

namespace semind {

// ---- path resolution --------------------------------------------------

inline TreeNode subterm_at(const Term& t, const OccPath& path, size_t from = 0) {
  const Term* cur = &t;
  for (size_t i = from; i < path.indices.size(); ++i) {
    int idx = path.indices[i];
    if (cur->kind() != Term::Kind::Application || idx < 0 || idx > cur->arg_count())
      throw InvalidPathError("path " + to_string(path) + " does not resolve in term");
    cur = &cur->child(idx);
  }
  return *cur;
}

inline TreeNode subterm_at(const Prop& p, const OccPath& path, size_t from = 0) {
  if (from == path.indices.size()) return p;
  int idx = path.indices[from];
  switch (p.kind()) {
    case Prop::Kind::Equation:
      if (idx == 1) return subterm_at(p.lhs(), path, from + 1);
      if (idx == 2) return subterm_at(p.rhs(), path, from + 1);
      break;
    case Prop::Kind::Implication:
      if (idx == 1) return subterm_at(p.antecedent(), path, from + 1);
      if (idx == 2) return subterm_at(p.consequent(), path, from + 1);
      break;
    case Prop::Kind::Forall:
      if (idx == 1) return subterm_at(p.body(), path, from + 1);
      break;
  }
  throw InvalidPathError("path " + to_string(path) + " does not resolve in prop");
}

inline Term term_at(const Prop& p, const OccPath& path) {
  TreeNode n = subterm_at(p, path);
  if (const Term* t = std::get_if<Term>(&n)) return *t;
  throw InvalidPathError("path " + to_string(path) + " resolves to a proposition");
}

// ---- occurrence enumeration (pre-order, left to right) -----------------

namespace detail {

inline void collect_term_positions(const Term& t, OccPath& here, std::vector<OccPath>& out) {
  out.push_back(here);
  if (t.kind() != Term::Kind::Application) return;
  for (int i = 0; i <= t.arg_count(); ++i) {
    here.indices.push_back(i);
    collect_term_positions(t.child(i), here, out);
    here.indices.pop_back();
  }
}

inline void collect_term_positions(const Prop& p, OccPath& here, std::vector<OccPath>& out) {
  switch (p.kind()) {
    case Prop::Kind::Equation:
      here.indices.push_back(1);
      collect_term_positions(p.lhs(), here, out);
      here.indices.back() = 2;
      collect_term_positions(p.rhs(), here, out);
      here.indices.pop_back();
      break;
    case Prop::Kind::Implication:
      here.indices.push_back(1);
      collect_term_positions(p.antecedent(), here, out);
      here.indices.back() = 2;
      collect_term_positions(p.consequent(), here, out);
      here.indices.pop_back();
      break;
    case Prop::Kind::Forall:
      here.indices.push_back(1);
      collect_term_positions(p.body(), here, out);
      here.indices.pop_back();
      break;
  }
}

}  // namespace detail

// All positions of term nodes, pre-order. Heads count as positions.
template <class Tree>
inline std::vector<OccPath> term_positions(const Tree& tree) {
  std::vector<OccPath> out;
  OccPath here;
  detail::collect_term_positions(tree, here, out);
  return out;
}

template <class Tree>
inline std::vector<OccPath> occurrences_of(const Tree& tree, const Term& needle) {
  std::vector<OccPath> out;
  for (const auto& p : term_positions(tree)) {
    TreeNode n = subterm_at(tree, p);
    if (const Term* t = std::get_if<Term>(&n); t && *t == needle) out.push_back(p);
  }
  return out;
}

// All distinct subterms, in order of first pre-order appearance.
template <class Tree>
inline std::vector<Term> distinct_subterms(const Tree& tree) {
  std::vector<Term> out;
  for (const auto& p : term_positions(tree)) {
    TreeNode n = subterm_at(tree, p);
    const Term& t = std::get<Term>(n);
    bool seen = false;
    for (const auto& u : out)
      if (u == t) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(t);
  }
  return out;
}

// ---- free variables ----------------------------------------------------

namespace detail {

inline void free_vars_into(const Term& t, const std::set<std::string>& bound,
                           std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Term::Kind::Constant:
      return;
    case Term::Kind::Application:
      for (int i = 0; i <= t.arg_count(); ++i) free_vars_into(t.child(i), bound, out);
      return;
  }
}

inline void free_vars_into(const Prop& p, std::set<std::string> bound,
                           std::set<std::string>& out) {
  switch (p.kind()) {
    case Prop::Kind::Equation:
      free_vars_into(p.lhs(), bound, out);
      free_vars_into(p.rhs(), bound, out);
      return;
    case Prop::Kind::Implication:
      free_vars_into(p.antecedent(), bound, out);
      free_vars_into(p.consequent(), bound, out);
      return;
    case Prop::Kind::Forall:
      bound.insert(p.binder());
      free_vars_into(p.body(), std::move(bound), out);
      return;
  }
}

}  // namespace detail

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  detail::free_vars_into(t, {}, out);
  return out;
}

inline std::set<std::string> free_vars(const Prop& p) {
  std::set<std::string> out;
  detail::free_vars_into(p, {}, out);
  return out;
}

// Smallest unused name with the given base: base, base1, base2, ...
inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

// ---- substitution -------------------------------------------------------

// Simultaneous first-match substitution. Keys may be arbitrary terms; a
// replaced occurrence is not rewritten again. Binders are renamed when they
// would capture a variable of an incoming replacement.
using TermSubst = std::vector<std::pair<Term, Term>>;

namespace detail {

inline Term substitute_term(const Term& t, const TermSubst& subst) {
  for (const auto& [key, value] : subst)
    if (t == key) return value;
  if (t.kind() != Term::Kind::Application) return t;
  std::vector<Term> args;
  args.reserve(static_cast<size_t>(t.arg_count()));
  Term head = substitute_term(t.head(), subst);
  for (int i = 1; i <= t.arg_count(); ++i) args.push_back(substitute_term(t.child(i), subst));
  return Term::app(head, std::move(args));
}

inline Prop substitute_prop(const Prop& p, const TermSubst& subst) {
  switch (p.kind()) {
    case Prop::Kind::Equation:
      return Prop::equation(substitute_term(p.lhs(), subst), substitute_term(p.rhs(), subst));
    case Prop::Kind::Implication:
      return Prop::implication(substitute_prop(p.antecedent(), subst),
                               substitute_prop(p.consequent(), subst));
    case Prop::Kind::Forall: {
      const std::string& x = p.binder();
      // Occurrences of a key mentioning the binder are bound here, so those
      // entries stop applying under the binder.
      TermSubst inner;
      std::set<std::string> incoming;
      for (const auto& [key, value] : subst) {
        if (free_vars(key).count(x)) continue;
        inner.push_back({key, value});
        auto fv = free_vars(value);
        incoming.insert(fv.begin(), fv.end());
      }
      if (inner.empty()) return p;
      if (!incoming.count(x)) return Prop::forall(x, substitute_prop(p.body(), inner));
      // Capture: rename the binder before substituting.
      std::set<std::string> taken = incoming;
      auto bodyfv = free_vars(p.body());
      taken.insert(bodyfv.begin(), bodyfv.end());
      std::string x2 = fresh_name(x, taken);
      Prop renamed = substitute_prop(p.body(), {{Term::var(x), Term::var(x2)}});
      return Prop::forall(x2, substitute_prop(renamed, inner));
    }
  }
  return p;
}

}  // namespace detail

inline Term substitute(const Term& t, const TermSubst& subst) {
  return detail::substitute_term(t, subst);
}

inline Prop substitute(const Prop& p, const TermSubst& subst) {
  return detail::substitute_prop(p, subst);
}

// Replaces the single term occurrence at `path`.
inline Term replace_at(const Term& t, const OccPath& path, size_t from, const Term& replacement) {
  if (from == path.indices.size()) return replacement;
  int idx = path.indices[from];
  if (t.kind() != Term::Kind::Application || idx < 0 || idx > t.arg_count())
    throw InvalidPathError("path " + to_string(path) + " does not resolve in term");
  Term head = t.head();
  std::vector<Term> args = t.args();
  if (idx == 0)
    head = replace_at(t.head(), path, from + 1, replacement);
  else
    args[static_cast<size_t>(idx) - 1] = replace_at(t.child(idx), path, from + 1, replacement);
  return Term::app(head, std::move(args));
}

inline Prop replace_at(const Prop& p, const OccPath& path, const Term& replacement,
                       size_t from = 0) {
  if (from == path.indices.size())
    throw InvalidPathError("path " + to_string(path) + " names a proposition, not a term");
  int idx = path.indices[from];
  switch (p.kind()) {
    case Prop::Kind::Equation:
      if (idx == 1) return Prop::equation(replace_at(p.lhs(), path, from + 1, replacement), p.rhs());
      if (idx == 2) return Prop::equation(p.lhs(), replace_at(p.rhs(), path, from + 1, replacement));
      break;
    case Prop::Kind::Implication:
      if (idx == 1)
        return Prop::implication(replace_at(p.antecedent(), path, replacement, from + 1),
                                 p.consequent());
      if (idx == 2)
        return Prop::implication(p.antecedent(),
                                 replace_at(p.consequent(), path, replacement, from + 1));
      break;
    case Prop::Kind::Forall:
      if (idx == 1) return Prop::forall(p.binder(), replace_at(p.body(), path, replacement, from + 1));
      break;
  }
  throw InvalidPathError("path " + to_string(path) + " does not resolve in prop");
}

// ---- alpha equivalence ---------------------------------------------------

namespace detail {

// Bound-name maps in both directions keep the renaming a bijection.
inline bool alpha_term(const Term& a, const Term& b, const std::map<std::string, std::string>& ab,
                       const std::map<std::string, std::string>& ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Constant:
      return a.name() == b.name();
    case Term::Kind::Variable: {
      auto ita = ab.find(a.name());
      auto itb = ba.find(b.name());
      if (ita != ab.end() || itb != ba.end())
        return ita != ab.end() && itb != ba.end() && ita->second == b.name() &&
               itb->second == a.name();
      return a.name() == b.name();
    }
    case Term::Kind::Application: {
      if (a.arg_count() != b.arg_count()) return false;
      for (int i = 0; i <= a.arg_count(); ++i)
        if (!alpha_term(a.child(i), b.child(i), ab, ba)) return false;
      return true;
    }
  }
  return false;
}

inline bool alpha_prop(const Prop& a, const Prop& b, std::map<std::string, std::string> ab,
                       std::map<std::string, std::string> ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Prop::Kind::Equation:
      return alpha_term(a.lhs(), b.lhs(), ab, ba) && alpha_term(a.rhs(), b.rhs(), ab, ba);
    case Prop::Kind::Implication:
      return alpha_prop(a.antecedent(), b.antecedent(), ab, ba) &&
             alpha_prop(a.consequent(), b.consequent(), ab, ba);
    case Prop::Kind::Forall:
      ab[a.binder()] = b.binder();
      ba[b.binder()] = a.binder();
      return alpha_prop(a.body(), b.body(), std::move(ab), std::move(ba));
  }
  return false;
}

}  // namespace detail

inline bool alpha_equal(const Prop& a, const Prop& b) {
  return detail::alpha_prop(a, b, {}, {});
}

}  // namespace semind
