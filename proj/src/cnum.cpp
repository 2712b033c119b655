#include "ias/cnum.hpp"

#include <cctype>
#include <charconv>
#include <ostream>

#include "ias/format.hpp"

namespace ias {

CEps pow(const CEps& z, int n) {
  CEps result = CEps::real(1.0, z.eps());
  CEps base = z;
  unsigned m = n < 0 ? static_cast<unsigned>(-(n + 1)) + 1u : static_cast<unsigned>(n);
  while (m != 0) {
    if (m & 1u) result *= base;
    m >>= 1;
    if (m != 0) base *= base;
  }
  if (n < 0) return CEps::real(1.0, z.eps()) / result;
  return result;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool done() {
    skip_ws();
    return i == s.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in literal '" + std::string(s) + "'", 0, static_cast<int>(i) + 1);
  }
};

// Reads an unsigned number optionally followed by 'j'. A bare 'j' means 1j.
bool read_term(Cursor& c, double& value, bool& imaginary) {
  c.skip_ws();
  imaginary = false;
  if (c.i < c.s.size() && c.s[c.i] == 'j') {
    ++c.i;
    value = 1.0;
    imaginary = true;
    return true;
  }
  std::size_t end = c.i;
  while (end < c.s.size()) {
    const char ch = c.s[end];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      ++end;
    } else if ((ch == 'e' || ch == 'E') && end > c.i) {
      ++end;
      if (end < c.s.size() && (c.s[end] == '+' || c.s[end] == '-')) ++end;
    } else {
      break;
    }
  }
  if (end == c.i) return false;
  auto [ptr, ec] = std::from_chars(c.s.data() + c.i, c.s.data() + end, value);
  if (ec != std::errc() || ptr != c.s.data() + end) c.fail("malformed number");
  c.i = end;
  if (c.i < c.s.size() && c.s[c.i] == 'j') {
    ++c.i;
    imaginary = true;
  }
  return true;
}

}  // namespace

CEps parse_ceps(std::string_view text, int eps) {
  require_eps(eps);
  Cursor c{text};
  const bool paren = c.eat('(');
  double re = 0.0, im = 0.0;
  bool first = true;
  int terms = 0;
  while (true) {
    double sign = 1.0;
    if (c.eat('-')) {
      sign = -1.0;
    } else if (!c.eat('+') && !first) {
      break;
    }
    double v = 0.0;
    bool imag = false;
    if (!read_term(c, v, imag)) c.fail("expected a number");
    (imag ? im : re) += sign * v;
    ++terms;
    first = false;
    if (terms > 2) c.fail("too many terms");
  }
  if (paren && !c.eat(')')) c.fail("missing ')'");
  if (!c.done()) c.fail("unexpected trailing text");
  return {re, im, eps};
}

std::string to_string(const CEps& z) {
  if (z.im() == 0.0 && !std::signbit(z.im())) return format_double(z.re());
  if (z.re() == 0.0 && !std::signbit(z.re())) return format_double(z.im()) + "j";
  std::string s = format_double(z.re());
  const std::string im = format_double(z.im());
  if (im.front() != '-') s += '+';
  return s + im + "j";
}

std::ostream& operator<<(std::ostream& os, const CEps& z) { return os << to_string(z); }

}  // namespace ias
