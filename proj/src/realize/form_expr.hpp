#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "xalg/multivector.hpp"

namespace gformal::realize {

// Values bound to names when evaluating a form expression.
struct FormEnv {
  int n = 0;
  std::map<std::string, xalg::QForm> forms;
  std::map<std::string, std::vector<Rational>> vectors;
};

// Exact expressions over forms on R^n:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*          wedge; numbers are 0-forms
//   factor := primary ['^' int]             wedge power
//   primary:= number | form name | vol | i(vector name, expr) | (expr)
class FormExpr {
 public:
  static FormExpr parse(std::string_view text);
  xalg::QForm eval(const FormEnv& env) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace gformal::realize
