#include <cctype>
#include <string_view>

#include "diagasym/polynomial.hpp"

namespace diagasym {

namespace {

// Recursive-descent parser for
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | var | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    if (peek() == '/')
      throw ParseError("'/' is only allowed between integer literals", pos_);
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      const char c = peek();
      if (c == '-')
        throw ParseError("negative or non-integer exponent", pos_);
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("negative or non-integer exponent", pos_);
      return b.pow(static_cast<unsigned>(uint_literal()));
    }
    return b;
  }

  Polynomial base() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    throw ParseError("expected a number, variable, or '('", pos_);
  }

  Polynomial rational_literal() {
    BigInt num = uint_literal();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      const std::size_t denom_pos = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("'/' is only allowed between integer literals", denom_pos);
      BigInt den = uint_literal();
      if (den == 0) throw ParseError("division by zero", denom_pos);
      return Polynomial::constant(vars_, Rational(num, den));
    }
    return Polynomial::constant(vars_, Rational(num));
  }

  BigInt uint_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw ParseError("expected an integer", start);
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial variable() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return Polynomial::variable(vars_, i);
    throw ParseError("undeclared variable '" + name + "'", start);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

}  // namespace diagasym
