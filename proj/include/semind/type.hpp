#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "semind/errors.hpp"

namespace semind {

// First-order types: type variables, constructor applications (`list a`),
// and right-nested arrows that only appear in signatures.
class Type {
 public:
  enum class Kind { Var, Con, Arrow };

  static Type var(std::string name) {
    Type t;
    t.node_ = std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}});
    return t;
  }

  static Type con(std::string name, std::vector<Type> args = {}) {
    Type t;
    t.node_ = std::make_shared<const Node>(Node{Kind::Con, std::move(name), std::move(args)});
    return t;
  }

  static Type arrow(Type dom, Type cod) {
    Type t;
    t.node_ = std::make_shared<const Node>(
        Node{Kind::Arrow, "", std::vector<Type>{std::move(dom), std::move(cod)}});
    return t;
  }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<Type>& args() const { return node_->args; }
  const Type& dom() const { return node_->args[0]; }
  const Type& cod() const { return node_->args[1]; }

  bool operator==(const Type& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    if (node_->name != other.node_->name) return false;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (size_t i = 0; i < node_->args.size(); ++i)
      if (!(node_->args[i] == other.node_->args[i])) return false;
    return true;
  }
  bool operator!=(const Type& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Type> args;
  };
  std::shared_ptr<const Node> node_;
};

inline std::string to_string(const Type& t) {
  auto atom = [](const Type& u, auto&& self) -> std::string {
    std::string s = to_string(u);
    if (u.kind() == Type::Kind::Arrow || (u.kind() == Type::Kind::Con && !u.args().empty()))
      return "(" + s + ")";
    (void)self;
    return s;
  };
  switch (t.kind()) {
    case Type::Kind::Var:
      return t.name();
    case Type::Kind::Con: {
      std::string s = t.name();
      for (const auto& a : t.args()) s += " " + atom(a, atom);
      return s;
    }
    case Type::Kind::Arrow: {
      std::string lhs = to_string(t.dom());
      if (t.dom().kind() == Type::Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " => " + to_string(t.cod());
    }
  }
  return "";
}

// Substitution on type variable names. Bindings may chain; `walk` follows them.
using TypeSubst = std::map<std::string, Type>;

inline Type type_walk(const Type& t, const TypeSubst& s) {
  Type cur = t;
  while (cur.kind() == Type::Kind::Var) {
    auto it = s.find(cur.name());
    if (it == s.end()) return cur;
    cur = it->second;
  }
  return cur;
}

inline Type type_resolve(const Type& t, const TypeSubst& s) {
  Type w = type_walk(t, s);
  switch (w.kind()) {
    case Type::Kind::Var:
      return w;
    case Type::Kind::Con: {
      std::vector<Type> args;
      args.reserve(w.args().size());
      for (const auto& a : w.args()) args.push_back(type_resolve(a, s));
      return Type::con(w.name(), std::move(args));
    }
    case Type::Kind::Arrow:
      return Type::arrow(type_resolve(w.dom(), s), type_resolve(w.cod(), s));
  }
  return w;
}

inline bool type_occurs(const std::string& var, const Type& t, const TypeSubst& s) {
  Type w = type_walk(t, s);
  if (w.kind() == Type::Kind::Var) return w.name() == var;
  for (const auto& a : w.args())
    if (type_occurs(var, a, s)) return true;
  return false;
}

inline void unify(const Type& a, const Type& b, TypeSubst& s) {
  Type x = type_walk(a, s);
  Type y = type_walk(b, s);
  if (x.kind() == Type::Kind::Var) {
    if (y.kind() == Type::Kind::Var && y.name() == x.name()) return;
    if (type_occurs(x.name(), y, s))
      throw TypeError("occurs check failed: " + x.name() + " in " + to_string(type_resolve(y, s)));
    s[x.name()] = y;
    return;
  }
  if (y.kind() == Type::Kind::Var) {
    unify(y, x, s);
    return;
  }
  if (x.kind() != y.kind() || x.name() != y.name() || x.args().size() != y.args().size())
    throw TypeError("cannot unify " + to_string(type_resolve(x, s)) + " with " +
                    to_string(type_resolve(y, s)));
  for (size_t i = 0; i < x.args().size(); ++i) unify(x.args()[i], y.args()[i], s);
}

// Collects type variable names in first-occurrence order.
inline void type_vars(const Type& t, std::vector<std::string>& out) {
  if (t.kind() == Type::Kind::Var) {
    for (const auto& n : out)
      if (n == t.name()) return;
    out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) type_vars(a, out);
}

}  // namespace semind
