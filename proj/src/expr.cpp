#include "rectsub/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace rectsub {
namespace {

struct FunctionInfo {
  Function function;
  std::string_view name;
  int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {Function::Sin, "sin", 1},     {Function::Cos, "cos", 1},     {Function::Tan, "tan", 1},
    {Function::Sinh, "sinh", 1},   {Function::Cosh, "cosh", 1},   {Function::Tanh, "tanh", 1},
    {Function::Asinh, "asinh", 1}, {Function::Atanh, "atanh", 1}, {Function::Atan, "atan", 1},
    {Function::Sqrt, "sqrt", 1},   {Function::Exp, "exp", 1},     {Function::Log, "log", 1},
    {Function::Abs, "abs", 1},     {Function::Pow, "pow", 2},
};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& info : kFunctions) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

// Tokenizer -------------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::End, {}, 0.0, line, column};
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      tok.kind = Tok::Number;
      tok.text = std::string(text.substr(i, j - i));
      char* end = nullptr;
      tok.number = std::strtod(tok.text.c_str(), &end);
      if (end != tok.text.c_str() + tok.text.size()) {
        throw ParseError("malformed number '" + tok.text + "'", line, column, {"number"});
      }
      tokens.push_back(tok);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tok.kind = Tok::Ident;
      tok.text = std::string(text.substr(i, j - i));
      tokens.push_back(tok);
      advance(j - i);
      continue;
    }
    switch (c) {
      case '+': tok.kind = Tok::Plus; break;
      case '-': tok.kind = Tok::Minus; break;
      case '*': tok.kind = Tok::Star; break;
      case '/': tok.kind = Tok::Slash; break;
      case '^': tok.kind = Tok::Caret; break;
      case '(': tok.kind = Tok::LParen; break;
      case ')': tok.kind = Tok::RParen; break;
      case ',': tok.kind = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, column,
                         {"number", "identifier", "operator", "'('", "')'", "','"});
    }
    tok.text = std::string(1, c);
    tokens.push_back(tok);
    advance(1);
  }
  tokens.push_back({Tok::End, {}, 0.0, line, column});
  return tokens;
}

// Recursive-descent parser -----------------------------------------------------

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::vector<std::string>& variables)
      : tokens_(std::move(tokens)), variables_(variables) {}

  NodePtr parse() {
    NodePtr root = expression();
    if (peek().kind != Tok::End) fail({Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash, Tok::Caret, Tok::End});
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.push_back(describe(t));
    fail_with(names);
  }

  [[noreturn]] void fail_with(const std::vector<std::string>& expected) const {
    const Token& tok = peek();
    std::string found = tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'";
    std::string message = "unexpected " + found + "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) message += i + 1 == expected.size() ? " or " : ", ";
      message += expected[i];
    }
    throw ParseError(message, tok.line, tok.column, expected);
  }

  void expect(Tok kind) {
    if (peek().kind != kind) fail({kind});
    ++pos_;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Op op = next().kind == Tok::Plus ? Op::Add : Op::Subtract;
      lhs = make_binary(op, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Op op = next().kind == Tok::Star ? Op::Multiply : Op::Divide;
      lhs = make_binary(op, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (peek().kind == Tok::Minus) {
      ++pos_;
      return make_negate(unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().kind == Tok::Caret) {
      ++pos_;
      return make_binary(Op::Power, base, unary());
    }
    return base;
  }

  NodePtr primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Number:
        ++pos_;
        return make_number(tok.number);
      case Tok::LParen: {
        ++pos_;
        NodePtr inner = expression();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail({Tok::Number, Tok::Ident, Tok::LParen, Tok::Minus});
    }
  }

  NodePtr identifier() {
    const Token tok = next();
    const bool call = peek().kind == Tok::LParen;
    if (!call) {
      auto it = std::find(variables_.begin(), variables_.end(), tok.text);
      if (it != variables_.end()) return make_variable(static_cast<int>(it - variables_.begin()));
      if (tok.text == "pi") return make_number(std::numbers::pi);
      --pos_;
      std::vector<std::string> expected;
      expected.reserve(variables_.size());
      for (const auto& v : variables_) expected.push_back("'" + v + "'");
      if (find_function(tok.text)) {
        ++pos_;
        fail({Tok::LParen});
      }
      expected.push_back("number");
      expected.push_back("'('");
      throw ParseError("unknown identifier '" + tok.text + "'", tok.line, tok.column, expected);
    }
    const FunctionInfo* info = find_function(tok.text);
    if (!info) {
      std::vector<std::string> expected;
      for (const auto& f : kFunctions) expected.emplace_back(f.name);
      throw ParseError("unknown function '" + tok.text + "'", tok.line, tok.column, expected);
    }
    expect(Tok::LParen);
    std::vector<NodePtr> args;
    args.push_back(expression());
    while (peek().kind == Tok::Comma) {
      ++pos_;
      args.push_back(expression());
    }
    if (static_cast<int>(args.size()) != info->arity) {
      if (static_cast<int>(args.size()) < info->arity) fail({Tok::Comma});
      throw ParseError(std::string(info->name) + " takes " + std::to_string(info->arity) + " argument(s)",
                       tok.line, tok.column, {"')'"});
    }
    expect(Tok::RParen);
    return make_call(info->function, std::move(args));
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

// Printing --------------------------------------------------------------------

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Subtract: return 1;
    case Op::Multiply:
    case Op::Divide: return 2;
    case Op::Negate: return 3;
    case Op::Power: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void print(const Node& n, std::span<const std::string> vars, std::string& out);

void print_child(const Node& child, bool parens, std::span<const std::string> vars, std::string& out) {
  if (parens) out += '(';
  print(child, vars, out);
  if (parens) out += ')';
}

void print(const Node& n, std::span<const std::string> vars, std::string& out) {
  switch (n.op) {
    case Op::Number:
      out += format_number(n.number);
      return;
    case Op::Variable:
      if (n.variable >= 0 && n.variable < static_cast<int>(vars.size())) {
        out += vars[n.variable];
      } else {
        out += "$" + std::to_string(n.variable);
      }
      return;
    case Op::Negate:
      out += '-';
      print_child(*n.args[0], precedence(*n.args[0]) < 3, vars, out);
      return;
    case Op::Add:
    case Op::Subtract:
    case Op::Multiply:
    case Op::Divide: {
      const int p = precedence(n);
      const char* sym = n.op == Op::Add ? " + " : n.op == Op::Subtract ? " - " : n.op == Op::Multiply ? "*" : "/";
      print_child(*n.args[0], precedence(*n.args[0]) < p, vars, out);
      out += sym;
      print_child(*n.args[1], precedence(*n.args[1]) <= p, vars, out);
      return;
    }
    case Op::Power:
      print_child(*n.args[0], precedence(*n.args[0]) <= 4, vars, out);
      out += '^';
      print_child(*n.args[1], precedence(*n.args[1]) < 3, vars, out);
      return;
    case Op::Call:
      out += function_name(n.function);
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], vars, out);
      }
      out += ')';
      return;
  }
}

// Evaluation ------------------------------------------------------------------

Jet apply_function(Function f, const std::vector<Jet>& a) {
  switch (f) {
    case Function::Sin: return sin(a[0]);
    case Function::Cos: return cos(a[0]);
    case Function::Tan: return tan(a[0]);
    case Function::Sinh: return sinh(a[0]);
    case Function::Cosh: return cosh(a[0]);
    case Function::Tanh: return tanh(a[0]);
    case Function::Asinh: return asinh(a[0]);
    case Function::Atanh: return atanh(a[0]);
    case Function::Atan: return atan(a[0]);
    case Function::Sqrt: return sqrt(a[0]);
    case Function::Exp: return exp(a[0]);
    case Function::Log: return log(a[0]);
    case Function::Abs: return abs(a[0]);
    case Function::Pow: return pow(a[0], a[1]);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function");
}

struct Evaluator {
  std::span<const Jet> values;
  std::span<const std::string> names;
  int nvars;
  int order;

  Jet eval(const Node& n) const {
    switch (n.op) {
      case Op::Number: return Jet(nvars, order, n.number);
      case Op::Variable:
        if (n.variable < 0 || n.variable >= static_cast<int>(values.size())) {
          throw Error(ErrorCode::InvalidArgument, "expression variable index out of range");
        }
        return values[n.variable];
      case Op::Negate: return -eval(*n.args[0]);
      case Op::Add: return eval(*n.args[0]) + eval(*n.args[1]);
      case Op::Subtract: return eval(*n.args[0]) - eval(*n.args[1]);
      case Op::Multiply: return eval(*n.args[0]) * eval(*n.args[1]);
      case Op::Divide: {
        Jet lhs = eval(*n.args[0]);
        Jet rhs = eval(*n.args[1]);
        return guarded(n, [&] { return lhs / rhs; });
      }
      case Op::Power: {
        Jet lhs = eval(*n.args[0]);
        Jet rhs = eval(*n.args[1]);
        return guarded(n, [&] { return pow(lhs, rhs); });
      }
      case Op::Call: {
        std::vector<Jet> args;
        args.reserve(n.args.size());
        for (const auto& a : n.args) args.push_back(eval(*a));
        return guarded(n, [&] { return apply_function(n.function, args); });
      }
    }
    throw Error(ErrorCode::InvalidArgument, "malformed expression node");
  }

  template <class F>
  Jet guarded(const Node& n, F&& f) const {
    try {
      return f();
    } catch (const DomainError& e) {
      if (!e.subexpression().empty()) throw;
      throw DomainError(e.reason(), to_string(n, names));
    }
  }
};

bool uses(const Node& n, int index) {
  if (n.op == Op::Variable) return n.variable == index;
  return std::any_of(n.args.begin(), n.args.end(), [&](const NodePtr& a) { return uses(*a, index); });
}

NodePtr remap_node(const NodePtr& n, std::span<const int> new_index) {
  if (n->op == Op::Variable) return make_variable(new_index[n->variable]);
  if (n->args.empty()) return n;
  auto copy = std::make_shared<Node>(*n);
  for (auto& a : copy->args) a = remap_node(a, new_index);
  return copy;
}

}  // namespace

std::string_view function_name(Function f) {
  for (const auto& info : kFunctions) {
    if (info.function == f) return info.name;
  }
  return "?";
}

int function_arity(Function f) {
  for (const auto& info : kFunctions) {
    if (info.function == f) return info.arity;
  }
  return 0;
}

NodePtr make_number(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Number;
  n->number = value;
  return n;
}

NodePtr make_variable(int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->variable = index;
  return n;
}

NodePtr make_negate(NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->op = Op::Negate;
  n->args.push_back(std::move(operand));
  return n;
}

NodePtr make_binary(Op op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = {std::move(lhs), std::move(rhs)};
  return n;
}

NodePtr make_call(Function f, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = Op::Call;
  n->function = f;
  n->args = std::move(args);
  return n;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case Op::Number:
      if (a.number != b.number) return false;
      break;
    case Op::Variable:
      if (a.variable != b.variable) return false;
      break;
    case Op::Call:
      if (a.function != b.function) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

ParseError::ParseError(const std::string& message, int line, int column, std::vector<std::string> expected)
    : Error(ErrorCode::Parse, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Expression::Expression() : root_(make_number(0.0)) {}

Expression::Expression(NodePtr root, std::vector<std::string> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {}

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Parser parser(tokenize(text), variables);
  NodePtr root = parser.parse();
  return Expression(std::move(root), std::move(variables));
}

std::string to_string(const Node& node, std::span<const std::string> variables) {
  std::string out;
  print(node, variables, out);
  return out;
}

std::string Expression::to_string() const { return rectsub::to_string(*root_, variables_); }

bool Expression::uses_variable(int index) const { return uses(*root_, index); }

double Expression::evaluate(std::span<const double> values) const {
  const int nvars = std::max<int>(1, static_cast<int>(values.size()));
  std::vector<Jet> jets;
  jets.reserve(values.size());
  for (double v : values) jets.emplace_back(nvars, 0, v);
  return evaluate(jets).value();
}

Jet Expression::evaluate(std::span<const Jet> values) const {
  if (values.size() < variables_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "expression '" + to_string() + "' needs " +
                                                  std::to_string(variables_.size()) + " variable values");
  }
  const int nvars = values.empty() ? 1 : values[0].nvars();
  int order = kMaxJetOrder;
  for (const Jet& j : values) order = std::min(order, j.order());
  if (values.empty()) order = 0;
  Evaluator ev{values, variables_, nvars, order};
  return ev.eval(*root_);
}

Expression Expression::remap(std::span<const int> new_index, std::vector<std::string> new_variables) const {
  return Expression(remap_node(root_, new_index), std::move(new_variables));
}

Jet eval_jet(const Expression& expr, std::span<const double> point, int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorCode::InvalidArgument, "jet order must be in [0, 3]");
  }
  if (point.size() < expr.variables().size()) {
    throw Error(ErrorCode::DimensionMismatch, "point has fewer coordinates than the expression has variables");
  }
  const int nvars = std::max<int>(1, static_cast<int>(point.size()));
  std::vector<Jet> vars;
  vars.reserve(point.size());
  for (int i = 0; i < static_cast<int>(point.size()); ++i) vars.push_back(Jet::variable(nvars, order, i, point[i]));
  if (vars.empty()) return expr.evaluate(std::span<const Jet>{}).truncated(order);
  return expr.evaluate(vars);
}

}  // namespace rectsub
