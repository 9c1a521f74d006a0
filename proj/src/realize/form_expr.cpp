#include "realize/form_expr.hpp"

#include <cctype>

#include "common/error.hpp"

namespace gformal::realize {

using xalg::QForm;

struct FormExpr::Node {
  enum Kind { Number, Name, Volume, Interior, Sum, Wedge, Power, Negate } kind;
  Rational value;
  std::string name;  // form or vector name
  int exponent = 0;
  std::vector<std::shared_ptr<const Node>> args;
  std::vector<int> signs;  // Sum: +1 / -1 per arg
};

namespace {

using NodePtr = std::shared_ptr<const FormExpr::Node>;
using Node = FormExpr::Node;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    if (peek() != '\0') error("unexpected character '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::InvalidArgument,
         "cannot parse form expression \"" + std::string(s_) + "\" at position " + std::to_string(i_) + ": " + msg);
  }
  char peek() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++i_;
  }

  NodePtr expr() {
    auto sum = std::make_shared<Node>();
    sum->kind = Node::Sum;
    char c = peek();
    int sign = 1;
    if (c == '+' || c == '-') {
      sign = c == '-' ? -1 : 1;
      ++i_;
    }
    sum->args.push_back(term());
    sum->signs.push_back(sign);
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++i_;
      sum->args.push_back(term());
      sum->signs.push_back(c == '-' ? -1 : 1);
    }
    if (sum->args.size() == 1 && sum->signs[0] == 1) return sum->args[0];
    return sum;
  }

  NodePtr term() {
    NodePtr f = factor();
    if (peek() != '*') return f;
    auto w = std::make_shared<Node>();
    w->kind = Node::Wedge;
    w->args.push_back(f);
    while (peek() == '*') {
      ++i_;
      w->args.push_back(factor());
    }
    return w;
  }

  NodePtr factor() {
    NodePtr base = primary();
    if (peek() != '^') return base;
    ++i_;
    peek();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) error("expected an exponent");
    auto p = std::make_shared<Node>();
    p->kind = Node::Power;
    p->exponent = std::stoi(std::string(s_.substr(start, i_ - start)));
    p->args.push_back(base);
    return p;
  }

  std::string identifier() {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  NodePtr primary() {
    char c = peek();
    auto n = std::make_shared<Node>();
    if (c == '(') {
      ++i_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++i_;
      n->kind = Node::Negate;
      n->args.push_back(factor());
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/' || s_[i_] == '.'))
        ++i_;
      n->kind = Node::Number;
      n->value = parse_rational(s_.substr(start, i_ - start));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id = identifier();
      if (id == "i" && peek() == '(') {
        ++i_;
        peek();
        n->kind = Node::Interior;
        n->name = identifier();
        if (n->name.empty()) error("expected a vector name");
        expect(',');
        n->args.push_back(expr());
        expect(')');
        return n;
      }
      n->kind = id == "vol" ? Node::Volume : Node::Name;
      n->name = id;
      return n;
    }
    error(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

QForm eval_node(const Node& node, const FormEnv& env) {
  switch (node.kind) {
    case Node::Number:
      return QForm::scalar(env.n, node.value);
    case Node::Volume:
      return QForm::volume(env.n);
    case Node::Name: {
      auto it = env.forms.find(node.name);
      if (it == env.forms.end()) fail(ErrorCode::InvalidArgument, "unbound form '" + node.name + "'");
      return it->second;
    }
    case Node::Interior: {
      auto it = env.vectors.find(node.name);
      if (it == env.vectors.end()) fail(ErrorCode::InvalidArgument, "unbound vector '" + node.name + "'");
      QForm a = eval_node(*node.args[0], env);
      if (a.is_zero() || a.homogeneous_grade() == 0) return QForm(env.n);
      return xalg::interior(it->second, a);
    }
    case Node::Sum: {
      QForm r(env.n);
      for (std::size_t k = 0; k < node.args.size(); ++k) {
        QForm t = eval_node(*node.args[k], env);
        if (node.signs[k] < 0)
          r -= t;
        else
          r += t;
      }
      return r;
    }
    case Node::Wedge: {
      QForm r = eval_node(*node.args[0], env);
      for (std::size_t k = 1; k < node.args.size(); ++k) r = xalg::wedge(r, eval_node(*node.args[k], env));
      return r;
    }
    case Node::Power:
      return xalg::power(eval_node(*node.args[0], env), node.exponent);
    case Node::Negate:
      return -eval_node(*node.args[0], env);
  }
  fail(ErrorCode::Internal, "bad expression node");
}

}  // namespace

FormExpr FormExpr::parse(std::string_view text) {
  FormExpr e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

QForm FormExpr::eval(const FormEnv& env) const { return eval_node(*root_, env); }

}  // namespace gformal::realize
