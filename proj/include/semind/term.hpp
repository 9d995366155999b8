#pragma once

#include <cassert>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "semind/errors.hpp"

namespace semind {

// First-order terms. Applications are spine-flattened: the head of an
// Application is always a Variable or a Constant, never another Application.
class Term {
 public:
  enum class Kind { Variable, Constant, Application };

  static Term var(std::string name) { return leaf(Kind::Variable, std::move(name)); }
  static Term constant(std::string name) { return leaf(Kind::Constant, std::move(name)); }

  // Builds an application, splicing argument lists when the head is itself
  // an application so the flattened-spine invariant holds by construction.
  static Term app(const Term& head, std::vector<Term> args) {
    if (args.empty()) return head;
    std::vector<Term> children;
    if (head.kind() == Kind::Application) {
      children = head.node_->children;
    } else {
      children.push_back(head);
    }
    for (auto& a : args) children.push_back(std::move(a));
    Term t;
    t.node_ = std::make_shared<const Node>(Node{Kind::Application, "", std::move(children)});
    return t;
  }

  Kind kind() const { return node_->kind; }

  const std::string& name() const {
    assert(node_->kind != Kind::Application);
    return node_->name;
  }

  const Term& head() const {
    assert(node_->kind == Kind::Application);
    return node_->children[0];
  }

  // Number of argument positions (0 for leaves).
  int arg_count() const {
    if (node_->kind != Kind::Application) return 0;
    return static_cast<int>(node_->children.size()) - 1;
  }

  // 1-based argument access; index 0 is the head.
  const Term& child(int i) const {
    assert(node_->kind == Kind::Application);
    return node_->children[static_cast<size_t>(i)];
  }

  std::vector<Term> args() const {
    std::vector<Term> out;
    if (node_->kind != Kind::Application) return out;
    out.assign(node_->children.begin() + 1, node_->children.end());
    return out;
  }

  bool operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    if (node_->kind != Kind::Application) return node_->name == other.node_->name;
    if (node_->children.size() != other.node_->children.size()) return false;
    for (size_t i = 0; i < node_->children.size(); ++i)
      if (!(node_->children[i] == other.node_->children[i])) return false;
    return true;
  }
  bool operator!=(const Term& other) const { return !(*this == other); }

  // Structural order, used for deterministic sets and tie-breaking.
  bool operator<(const Term& other) const { return compare(other) < 0; }

  int compare(const Term& other) const {
    if (node_ == other.node_) return 0;
    if (node_->kind != other.node_->kind)
      return static_cast<int>(node_->kind) < static_cast<int>(other.node_->kind) ? -1 : 1;
    if (node_->kind != Kind::Application) return node_->name.compare(other.node_->name);
    size_t n = std::min(node_->children.size(), other.node_->children.size());
    for (size_t i = 0; i < n; ++i) {
      int c = node_->children[i].compare(other.node_->children[i]);
      if (c != 0) return c;
    }
    if (node_->children.size() == other.node_->children.size()) return 0;
    return node_->children.size() < other.node_->children.size() ? -1 : 1;
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> children;  // applications only: [head, arg1, ..., argn]
  };

  static Term leaf(Kind k, std::string name) {
    Term t;
    t.node_ = std::make_shared<const Node>(Node{k, std::move(name), {}});
    return t;
  }

  std::shared_ptr<const Node> node_;
};

// Propositions: equations between terms, implications, and universal
// quantification. Forall nodes are only ever machine-generated (induction
// hypotheses); the surface grammar has no binder syntax.
class Prop {
 public:
  enum class Kind { Equation, Implication, Forall };

  static Prop equation(Term lhs, Term rhs) {
    Prop p;
    p.node_ = std::make_shared<const Node>(
        Node{Kind::Equation, "", std::vector<Term>{std::move(lhs), std::move(rhs)}, {}});
    return p;
  }

  static Prop implication(Prop ante, Prop conseq) {
    Prop p;
    p.node_ = std::make_shared<const Node>(
        Node{Kind::Implication, "", {}, std::vector<Prop>{std::move(ante), std::move(conseq)}});
    return p;
  }

  static Prop forall(std::string binder, Prop body) {
    Prop p;
    p.node_ = std::make_shared<const Node>(
        Node{Kind::Forall, std::move(binder), {}, std::vector<Prop>{std::move(body)}});
    return p;
  }

  Kind kind() const { return node_->kind; }
  const Term& lhs() const { return node_->terms[0]; }
  const Term& rhs() const { return node_->terms[1]; }
  const Prop& antecedent() const { return node_->props[0]; }
  const Prop& consequent() const { return node_->props[1]; }
  const std::string& binder() const { return node_->name; }
  const Prop& body() const { return node_->props[0]; }

  bool operator==(const Prop& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    if (node_->name != other.node_->name) return false;
    for (size_t i = 0; i < node_->terms.size(); ++i)
      if (!(node_->terms[i] == other.node_->terms[i])) return false;
    if (node_->props.size() != other.node_->props.size()) return false;
    for (size_t i = 0; i < node_->props.size(); ++i)
      if (!(node_->props[i] == other.node_->props[i])) return false;
    return true;
  }
  bool operator!=(const Prop& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    std::string name;  // Forall binder
    std::vector<Term> terms;
    std::vector<Prop> props;
  };
  std::shared_ptr<const Node> node_;
};

// Position of a node inside a Term or Prop. At an application, child 0 is
// the head and child i (i >= 1) the i-th argument. Prop children are 1-based:
// an Equation has the left side at 1 and the right side at 2, an Implication
// its antecedent at 1 and consequent at 2, a Forall its body at 1.
struct OccPath {
  std::vector<int> indices;

  OccPath() = default;
  OccPath(std::initializer_list<int> init) : indices(init) {}
  explicit OccPath(std::vector<int> v) : indices(std::move(v)) {}

  bool operator==(const OccPath& other) const { return indices == other.indices; }
  bool operator!=(const OccPath& other) const { return indices != other.indices; }
  bool operator<(const OccPath& other) const { return indices < other.indices; }

  bool empty() const { return indices.empty(); }
  size_t size() const { return indices.size(); }

  OccPath child(int i) const {
    OccPath p = *this;
    p.indices.push_back(i);
    return p;
  }

  bool is_prefix_of(const OccPath& other) const {
    if (indices.size() > other.indices.size()) return false;
    for (size_t i = 0; i < indices.size(); ++i)
      if (indices[i] != other.indices[i]) return false;
    return true;
  }
};

inline std::string to_string(const OccPath& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.indices[i]);
  }
  return s + "]";
}

// Either kind of tree node, as returned by subterm_at.
using TreeNode = std::variant<Term, Prop>;

inline std::string to_string(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      return t.name();
    case Term::Kind::Application: {
      std::string s = to_string(t.head());
      for (int i = 1; i <= t.arg_count(); ++i) {
        const Term& a = t.child(i);
        std::string as = to_string(a);
        if (a.kind() == Term::Kind::Application) as = "(" + as + ")";
        s += " " + as;
      }
      return s;
    }
  }
  return "";
}

inline std::string to_string(const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Equation:
      return to_string(p.lhs()) + " = " + to_string(p.rhs());
    case Prop::Kind::Implication: {
      std::string a = to_string(p.antecedent());
      if (p.antecedent().kind() != Prop::Kind::Equation) a = "(" + a + ")";
      return a + " --> " + to_string(p.consequent());
    }
    case Prop::Kind::Forall:
      return "forall " + p.binder() + ". " + to_string(p.body());
  }
  return "";
}

}  // namespace semind
