#include <bit>
#include <cstdint>

#include "ias/format.hpp"
#include "ias/holo.hpp"

namespace ias::holo {

struct Expr::Node {
  Kind kind = Kind::constant;
  int eps = 1;
  CEps value{};
  int exponent = 0;
  // Null for leaves; a default Expr would recurse into zero_node().
  Expr a{std::shared_ptr<const Node>{}};
  Expr b{std::shared_ptr<const Node>{}};
  std::shared_ptr<const PowerSeries> series;
};

namespace {

const std::shared_ptr<const Expr::Node>& zero_node() {
  static const auto n = std::make_shared<const Expr::Node>();
  return n;
}

void same_eps(const Expr& a, const Expr& b) {
  if (a.eps() != b.eps()) throw AlgebraMismatch();
}

}  // namespace

Expr::Expr() : n_(zero_node()) {}

Expr Expr::make(Kind k, int eps, const Expr* a, const Expr* b, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->eps = eps;
  n->exponent = exponent;
  if (a) n->a = *a;
  if (b) n->b = *b;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::variable(int eps) {
  require_eps(eps);
  return make(Kind::variable, eps, nullptr, nullptr);
}

Expr Expr::constant(const CEps& c) {
  require_eps(c.eps());
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->eps = c.eps();
  n->value = c;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::extension(PowerSeries series, int eps) {
  require_eps(eps);
  auto n = std::make_shared<Node>();
  n->kind = Kind::extension;
  n->eps = eps;
  n->series = std::make_shared<const PowerSeries>(std::move(series));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Kind Expr::kind() const { return n_->kind; }
int Expr::eps() const { return n_->eps; }
const CEps& Expr::value() const { return n_->value; }
int Expr::exponent() const { return n_->exponent; }
const Expr& Expr::lhs() const { return n_->a; }
const Expr& Expr::rhs() const { return n_->b; }
const PowerSeries& Expr::series() const { return *n_->series; }

bool Expr::is_zero() const {
  return kind() == Kind::constant && value().re() == 0.0 && value().im() == 0.0;
}

bool Expr::is_one() const {
  return kind() == Kind::constant && value().re() == 1.0 && value().im() == 0.0;
}

Expr operator+(const Expr& a, const Expr& b) {
  same_eps(a, b);
  return Expr::make(Kind::add, a.eps(), &a, &b);
}
Expr operator-(const Expr& a, const Expr& b) {
  same_eps(a, b);
  return Expr::make(Kind::sub, a.eps(), &a, &b);
}
Expr operator*(const Expr& a, const Expr& b) {
  same_eps(a, b);
  return Expr::make(Kind::mul, a.eps(), &a, &b);
}
Expr operator/(const Expr& a, const Expr& b) {
  same_eps(a, b);
  return Expr::make(Kind::div, a.eps(), &a, &b);
}
Expr operator-(const Expr& a) { return Expr::constant(-1.0, a.eps()) * a; }
Expr exp(const Expr& a) { return Expr::make(Kind::exp, a.eps(), &a, nullptr); }
Expr Expr::pow(int n) const { return make(Kind::int_pow, eps(), this, nullptr, n); }

CEps Expr::eval(const CEps& z) const {
  if (z.eps() != eps()) throw AlgebraMismatch();
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::variable:
      return z;
    case Kind::constant:
      return n.value;
    case Kind::add:
      return n.a.eval(z) + n.b.eval(z);
    case Kind::sub:
      return n.a.eval(z) - n.b.eval(z);
    case Kind::mul:
      return n.a.eval(z) * n.b.eval(z);
    case Kind::div: {
      const CEps num = n.a.eval(z);
      const CEps den = n.b.eval(z);
      try {
        return num / den;
      } catch (const SingularDivisor&) {
        throw SingularDivisor("'" + str() + "' at z = " + to_string(z));
      }
    }
    case Kind::int_pow: {
      const CEps base = n.a.eval(z);
      try {
        return ias::pow(base, n.exponent);
      } catch (const SingularDivisor&) {
        throw SingularDivisor("'" + str() + "' at z = " + to_string(z));
      }
    }
    case Kind::exp:
      return ias::exp(n.a.eval(z));
    case Kind::extension:
      return n.series->extend(z);
  }
  return n.value;
}

Expr simplify_add(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  return a + b;
}

Expr simplify_sub(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  return a - b;
}

Expr simplify_mul(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr::constant(0.0, a.eps());
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  return a * b;
}

Expr simplify_div(const Expr& a, const Expr& b) {
  if (a.is_zero()) return Expr::constant(0.0, a.eps());
  if (b.is_one()) return a;
  return a / b;
}

Expr Expr::derive() const {
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::variable:
      return constant(1.0, n.eps);
    case Kind::constant:
      return constant(0.0, n.eps);
    case Kind::add:
      return simplify_add(n.a.derive(), n.b.derive());
    case Kind::sub:
      return simplify_sub(n.a.derive(), n.b.derive());
    case Kind::mul:
      return simplify_add(simplify_mul(n.a.derive(), n.b), simplify_mul(n.a, n.b.derive()));
    case Kind::div: {
      // (a/b)' = (a' b - a b') / b^2
      const Expr num = simplify_sub(simplify_mul(n.a.derive(), n.b), simplify_mul(n.a, n.b.derive()));
      return simplify_div(num, n.b.pow(2));
    }
    case Kind::int_pow: {
      if (n.exponent == 0) return constant(0.0, n.eps);
      const Expr k = constant(static_cast<double>(n.exponent), n.eps);
      const Expr lower = n.exponent == 1   ? constant(1.0, n.eps)
                         : n.exponent == 2 ? n.a
                                           : n.a.pow(n.exponent - 1);
      return simplify_mul(simplify_mul(k, lower), n.a.derive());
    }
    case Kind::exp:
      return simplify_mul(*this, n.a.derive());
    case Kind::extension:
      return extension(n.series->derivative(), n.eps);
  }
  return constant(0.0, n.eps);
}

// ---------------------------------------------------------------- printing

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecPrimary = 4;

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::add:
    case Kind::sub:
      return kPrecAdd;
    case Kind::mul:
    case Kind::div:
      return kPrecMul;
    case Kind::int_pow:
      return 3;
    default:
      return kPrecPrimary;
  }
}

std::string constant_text(const CEps& c) {
  // Negative and two-part literals are parenthesized; parse() reads a
  // parenthesized literal back as a single constant. Signs inside an
  // exponent ("1e-05") do not count.
  const std::string lit = to_string(c);
  for (std::size_t i = 0; i < lit.size(); ++i) {
    if ((lit[i] == '+' || lit[i] == '-') && (i == 0 || lit[i - 1] != 'e')) return "(" + lit + ")";
  }
  return lit;
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, bool paren, std::string& out) {
  if (paren) out += '(';
  print(child, out);
  if (paren) out += ')';
}

std::string series_text(const PowerSeries& s) {
  std::string out = "(";
  const std::string shift =
      s.center() == 0.0 ? "z" : "(z-" + constant_text(CEps::real(s.center(), 1)) + ")";
  bool first = true;
  for (std::size_t k = 0; k < s.coeffs().size(); ++k) {
    if (s.coeffs()[k] == 0.0) continue;
    if (!first) out += '+';
    first = false;
    out += constant_text(CEps::real(s.coeffs()[k], 1));
    if (k >= 1) out += "*" + shift;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  if (first) out += "0";
  return out + ")";
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::variable:
      out += 'z';
      return;
    case Kind::constant:
      out += constant_text(e.value());
      return;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: {
      const int p = precedence(e);
      print_child(e.lhs(), precedence(e.lhs()) < p, out);
      out += e.kind() == Kind::add ? '+' : e.kind() == Kind::sub ? '-' : e.kind() == Kind::mul ? '*' : '/';
      print_child(e.rhs(), precedence(e.rhs()) <= p, out);
      return;
    }
    case Kind::int_pow:
      print_child(e.lhs(), precedence(e.lhs()) < kPrecPrimary, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case Kind::exp:
      out += "exp(";
      print(e.lhs(), out);
      out += ')';
      return;
    case Kind::extension:
      out += series_text(e.series());
      return;
  }
}

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace

std::string Expr::str() const {
  std::string out;
  print(*this, out);
  return out;
}

bool identical(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind() || a.eps() != b.eps()) return false;
  switch (a.kind()) {
    case Kind::variable:
      return true;
    case Kind::constant:
      return bits(a.value().re()) == bits(b.value().re()) &&
             bits(a.value().im()) == bits(b.value().im());
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div:
      return identical(a.lhs(), b.lhs()) && identical(a.rhs(), b.rhs());
    case Kind::int_pow:
      return a.exponent() == b.exponent() && identical(a.lhs(), b.lhs());
    case Kind::exp:
      return identical(a.lhs(), b.lhs());
    case Kind::extension: {
      const auto& sa = a.series();
      const auto& sb = b.series();
      if (bits(sa.center()) != bits(sb.center()) || sa.coeffs().size() != sb.coeffs().size())
        return false;
      for (std::size_t k = 0; k < sa.coeffs().size(); ++k)
        if (bits(sa.coeffs()[k]) != bits(sb.coeffs()[k])) return false;
      return true;
    }
  }
  return false;
}

}  // namespace ias::holo
