#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tps/chart.hpp"
#include "tps/dual.hpp"
#include "tps/errors.hpp"

namespace tps::expr {

/// Syntax failure; pos is the 0-based column in the source text.
struct ParseError : Error {
  int pos;
  ParseError(const std::string& msg, int position);
};

/// Evaluation failure (ln of a non-positive value, division by zero, general
/// power of a non-positive base); pos locates the offending sub-expression.
struct EvalError : Error {
  int pos;
  EvalError(const std::string& msg, int position);
};

enum class TokenKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  TokenKind kind;
  std::string text;
  double number = 0;
  int pos = 0;
};

std::vector<Token> tokenize(const std::string& src);

enum class NodeKind { number, variable, neg, add, sub, mul, div, pow, call };

struct Node;
using Ast = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double number = 0;
  std::string name;  // variable or function name
  int slot = -1;     // variable slot in the evaluation vector
  Ast a, b;          // operands (call uses a)
  int pos = 0;
};

/// Grammar, loosest to tightest: {+,-} < {*,/} < unary minus < ^ (right
/// associative), so "-x^2" is −(x²). Every identifier must be a declared
/// variable or one of exp, ln, sqrt.
Ast parse(const std::string& src, const std::vector<std::string>& variables);

/// Precedence-aware printing: parse(to_string(parse(src))) is structurally
/// identical to parse(src). Numbers print with %.17g (exact round trip).
std::string to_string(const Ast& ast);

bool structurally_equal(const Ast& a, const Ast& b);
bool is_constant(const Ast& ast);

/// Replaces variable nodes by name. Replacement trees must already be
/// resolved against the target variable list.
Ast substitute(const Ast& ast, const std::map<std::string, Ast>& replacements);

template <class T>
T evaluate(const Ast& ast, std::span<const T> vars);

ScalarField to_field(const Ast& ast);

/// Darboux variable set w, p1..pn, q1..qn for an n-dof chart.
std::vector<std::string> darboux_variables(int n);
Ast parse_darboux(const std::string& src, int n);

/// Physical aliases (closed system, n = 2 slots): energy chart maps
/// u→w, s→q1, v→q2, T→−p1, p→p2; entropy chart maps s→w, u→q1, v→q2,
/// T→−1/p1, p→p2/p1. The result evaluates on Darboux coordinates.
std::map<std::string, Ast> energy_aliases(int n);
std::map<std::string, Ast> entropy_aliases(int n);
Ast parse_with_representation(const std::string& src, int n, const std::string& rep);

namespace detail {

inline double check_positive(double primal_value, const char* what, int pos) {
  if (!(primal_value > 0)) throw EvalError(std::string(what), pos);
  return primal_value;
}

template <class T>
T eval_node(const Node* node, std::span<const T> vars) {
  switch (node->kind) {
    case NodeKind::number:
      return T(node->number);
    case NodeKind::variable:
      if (node->slot < 0 || node->slot >= static_cast<int>(vars.size())) {
        throw EvalError("variable '" + node->name + "' is not bound", node->pos);
      }
      return vars[static_cast<size_t>(node->slot)];
    case NodeKind::neg:
      return -eval_node(node->a.get(), vars);
    case NodeKind::add:
      return eval_node(node->a.get(), vars) + eval_node(node->b.get(), vars);
    case NodeKind::sub:
      return eval_node(node->a.get(), vars) - eval_node(node->b.get(), vars);
    case NodeKind::mul:
      return eval_node(node->a.get(), vars) * eval_node(node->b.get(), vars);
    case NodeKind::div: {
      T den = eval_node(node->b.get(), vars);
      if (primal(den) == 0.0) throw EvalError("division by zero", node->pos);
      return eval_node(node->a.get(), vars) / den;
    }
    case NodeKind::pow: {
      T base = eval_node(node->a.get(), vars);
      if (is_constant(node->b)) {
        double c = evaluate<double>(node->b, {});
        if (std::floor(c) == c && std::abs(c) <= 1e9) {
          return powi(base, static_cast<long long>(c));
        }
        check_positive(primal(base), "power of a non-positive base", node->pos);
        return exp(T(c) * log(base));
      }
      T expo = eval_node(node->b.get(), vars);
      check_positive(primal(base), "power of a non-positive base", node->pos);
      return exp(expo * log(base));
    }
    case NodeKind::call: {
      T arg = eval_node(node->a.get(), vars);
      if (node->name == "exp") return exp(arg);
      if (node->name == "ln") {
        check_positive(primal(arg), "ln of a non-positive value", node->pos);
        return log(arg);
      }
      // sqrt
      if (primal(arg) < 0) throw EvalError("sqrt of a negative value", node->pos);
      return sqrt(arg);
    }
  }
  throw EvalError("malformed expression node", node->pos);
}

}  // namespace detail

template <class T>
T evaluate(const Ast& ast, std::span<const T> vars) {
  return detail::eval_node<T>(ast.get(), vars);
}

}  // namespace tps::expr
