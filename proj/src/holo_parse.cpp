#include <cctype>
#include <charconv>
#include <optional>

#include "ias/holo.hpp"

namespace ias::holo {

namespace {

// Recursive-descent parser for
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] digits)?
//   primary := number ['j'] | 'j' | 'z' | 'exp' '(' expr ')'
//            | '(' literal ')' | '(' expr ')'
// A unary minus applied to a constant folds into the constant.
class Parser {
 public:
  Parser(std::string_view text, int eps) : s_(text), eps_(eps) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 0, static_cast<int>(i_) + 1);
  }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool peek(char c) {
    skip_ws();
    return i_ < s_.size() && s_[i_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (eat('+')) {
        e = e + term();
      } else if (eat('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (eat('*')) {
        e = e * unary();
      } else if (eat('/')) {
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  static CEps negate(const CEps& c) {
    // Zeros keep their sign so printed literals re-parse bit-exactly.
    return {c.re() == 0.0 ? c.re() : -c.re(), c.im() == 0.0 ? c.im() : -c.im(), c.eps()};
  }

  Expr unary() {
    if (eat('-')) {
      Expr operand = unary();
      if (operand.is_constant()) return Expr::constant(negate(operand.value()));
      return Expr::constant(-1.0, eps_) * operand;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!eat('^')) return base;
    skip_ws();
    bool negative = false;
    if (i_ < s_.size() && s_[i_] == '-') {
      negative = true;
      ++i_;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an integer exponent");
    int n = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, n);
    if (ec != std::errc() || ptr != s_.data() + i_) fail("exponent out of range");
    return base.pow(negative ? -n : n);
  }

  // Number token at i_ (unsigned). Returns nullopt when no digits are present.
  std::optional<double> number() {
    skip_ws();
    std::size_t end = i_;
    bool digits = false;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.')) {
      digits = digits || s_[end] != '.';
      ++end;
    }
    if (!digits) return std::nullopt;
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        end = k;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + i_, s_.data() + end, v);
    if (ec != std::errc() || ptr != s_.data() + end) fail("malformed number");
    i_ = end;
    return v;
  }

  // Tries '(' [-] num [j] [(+|-) num j] ')' starting after '('. Restores
  // the cursor and returns nullopt when the text is not a bare literal.
  std::optional<CEps> literal_in_parens() {
    const std::size_t save = i_;
    auto restore = [&] {
      i_ = save;
      return std::nullopt;
    };
    double re = 0.0, im = 0.0;
    bool have_re = false, have_im = false;
    for (int term = 0; term < 2; ++term) {
      double sign = 1.0;
      if (eat('-')) {
        sign = -1.0;
      } else if (term > 0 && !eat('+')) {
        break;
      }
      skip_ws();
      double v = 1.0;
      bool imag = false;
      if (i_ < s_.size() && s_[i_] == 'j') {
        ++i_;
        imag = true;
      } else {
        auto n = number();
        if (!n) return restore();
        v = *n;
        if (i_ < s_.size() && s_[i_] == 'j') {
          ++i_;
          imag = true;
        }
      }
      const double val = v == 0.0 ? 0.0 : sign * v;
      if (imag) {
        if (have_im) return restore();
        im = val;
        have_im = true;
      } else {
        if (have_re || have_im) return restore();
        re = val;
        have_re = true;
      }
    }
    if (!eat(')')) return restore();
    return CEps{re, im, eps_};
  }

  Expr primary() {
    skip_ws();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      if (auto lit = literal_in_parens()) return Expr::constant(*lit);
      Expr e = expr();
      expect(')');
      return e;
    }
    if (s_.compare(i_, 3, "exp") == 0) {
      i_ += 3;
      expect('(');
      Expr e = expr();
      expect(')');
      return exp(e);
    }
    if (s_[i_] == 'z') {
      ++i_;
      return Expr::variable(eps_);
    }
    if (s_[i_] == 'j') {
      ++i_;
      return Expr::constant(CEps::unit_j(eps_));
    }
    if (auto v = number()) {
      if (i_ < s_.size() && s_[i_] == 'j') {
        ++i_;
        return Expr::constant(CEps{0.0, *v, eps_});
      }
      return Expr::constant(CEps::real(*v, eps_));
    }
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int eps_;
};

}  // namespace

Expr parse(std::string_view text, int eps) {
  require_eps(eps);
  return Parser(text, eps).run();
}

}  // namespace ias::holo
