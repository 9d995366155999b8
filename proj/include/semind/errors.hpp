#pragma once

#include <stdexcept>
#include <string>

namespace semind {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A path did not resolve against a term or proposition.
struct InvalidPathError : Error {
  explicit InvalidPathError(const std::string& msg) : Error(msg) {}
};

// Substitution produced a term whose type clashes with the context.
struct TypeMismatchError : Error {
  explicit TypeMismatchError(const std::string& msg) : Error(msg) {}
};

// Unification failure while typing a goal or clause.
struct TypeError : Error {
  explicit TypeError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Name resolution failures: unknown constants, rules, variables not in the
// goal, out-of-scope clause variables, and candidate invariant violations.
struct ScopeError : Error {
  explicit ScopeError(const std::string& msg) : Error(msg) {}
};

struct UnknownDatatypeError : Error {
  explicit UnknownDatatypeError(const std::string& name) : Error("unknown datatype: " + name) {}
};

struct UnknownFunctionError : Error {
  explicit UnknownFunctionError(const std::string& name) : Error("unknown function: " + name) {}
};

struct UnknownGoalError : Error {
  explicit UnknownGoalError(const std::string& name) : Error("unknown goal: " + name) {}
};

// Heuristic evaluation errors.
struct EvalError : Error {
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

struct UnboundVariableError : EvalError {
  explicit UnboundVariableError(const std::string& name)
      : EvalError("unbound heuristic variable: " + name) {}
};

struct UnknownAssertionError : EvalError {
  explicit UnknownAssertionError(const std::string& name)
      : EvalError("unknown assertion: " + name) {}
};

// A bound value had the wrong kind for the position it was used in.
struct DomainError : EvalError {
  explicit DomainError(const std::string& msg) : EvalError(msg) {}
};

// A clause-only predicate was evaluated outside a defining-clause context.
struct ContextError : EvalError {
  explicit ContextError(const std::string& msg) : EvalError(msg) {}
};

}  // namespace semind
