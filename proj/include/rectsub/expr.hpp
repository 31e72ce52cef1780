#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectsub/error.hpp"
#include "rectsub/jet.hpp"

namespace rectsub {

enum class Op { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Call };

enum class Function { Sin, Cos, Tan, Sinh, Cosh, Tanh, Asinh, Atanh, Atan, Sqrt, Exp, Log, Abs, Pow };

std::string_view function_name(Function f);
int function_arity(Function f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Parsed literals are never negative; a leading minus
/// is always a Negate node.
struct Node {
  Op op = Op::Number;
  double number = 0.0;
  int variable = -1;
  Function function = Function::Sin;
  std::vector<NodePtr> args;
};

NodePtr make_number(double value);
NodePtr make_variable(int index);
NodePtr make_negate(NodePtr operand);
NodePtr make_binary(Op op, NodePtr lhs, NodePtr rhs);
NodePtr make_call(Function f, std::vector<NodePtr> args);

bool structurally_equal(const Node& a, const Node& b);

/// Syntax error with 1-based position and the set of tokens that would have
/// been accepted.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::vector<std::string> expected);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// A parsed scalar expression over a fixed, ordered list of variable names.
/// Grammar (loosest to tightest): + -, * /, unary -, ^ (right-assoc),
/// primary; calls are name(args). `pi` is a reserved constant.
class Expression {
 public:
  Expression();
  Expression(NodePtr root, std::vector<std::string> variables);

  static Expression parse(std::string_view text, std::vector<std::string> variables);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  const std::vector<std::string>& variables() const { return variables_; }

  std::string to_string() const;
  bool uses_variable(int index) const;

  double evaluate(std::span<const double> values) const;
  /// Evaluates with every variable replaced by a jet. The jets may live in any
  /// variable space, which composes this expression with them.
  Jet evaluate(std::span<const Jet> values) const;

  /// Rewrites variable i as new_index[i] over a new variable list.
  Expression remap(std::span<const int> new_index, std::vector<std::string> new_variables) const;

 private:
  NodePtr root_;
  std::vector<std::string> variables_;
};

std::string to_string(const Node& node, std::span<const std::string> variables);

/// Taylor jet of `expr` at `point`; coefficients are exact partials divided
/// by multi-index factorials.
Jet eval_jet(const Expression& expr, std::span<const double> point, int order);

}  // namespace rectsub
