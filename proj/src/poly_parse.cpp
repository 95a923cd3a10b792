#include <cctype>

#include "gramdet/error.hpp"
#include "gramdet/poly.hpp"

namespace gramdet {

namespace {

// expr  := term (('+' | '-') term)*
// term  := unary ('*' unary)*
// unary := '-' unary | power
// power := atom ('^' integer)?
// atom  := integer | variable | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      skip();
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected non-negative integer exponent", at);
      mpz_class e = integer();
      if (e > Monomial::kMaxExponent) throw ParseError("exponent too large", at);
      return pow(base, e.get_ui());
    }
    return base;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    mpz_class v(std::string(s_.substr(start, pos_ - start)), 10);
    skip();
    return v;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial(integer());
    if (auto v = var_from_name(c)) {
      ++pos_;
      skip();
      return Polynomial::var(*v);
    }
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      skip();
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("unbalanced parenthesis opened", open);
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace gramdet
