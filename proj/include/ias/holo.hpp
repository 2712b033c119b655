#pragma once

// Closed-form holomorphic (split-holomorphic) functions of one variable z,
// stored as immutable expression trees with exact symbolic derivatives.

#include <memory>
#include <string>
#include <string_view>

#include "ias/cnum.hpp"
#include "ias/series.hpp"

namespace ias::holo {

enum class Kind { variable, constant, add, sub, mul, div, int_pow, exp, extension };

class Expr {
 public:
  /// The constant 0 over C_{+1}.
  Expr();

  static Expr variable(int eps);
  static Expr constant(const CEps& c);
  static Expr constant(double x, int eps) { return constant(CEps::real(x, eps)); }
  /// Holomorphic extension of a real-analytic series (see PowerSeries::extend).
  static Expr extension(PowerSeries series, int eps);

  Kind kind() const;
  int eps() const;
  const CEps& value() const;  // constant nodes
  int exponent() const;       // int_pow nodes
  const Expr& lhs() const;    // binary nodes; int_pow base; exp argument
  const Expr& rhs() const;
  const PowerSeries& series() const;  // extension nodes

  CEps eval(const CEps& z) const;

  /// Exact derivative d/dz, lightly simplified (0 and 1 are folded away).
  Expr derive() const;

  /// Infix text in the grammar accepted by parse(); parse(str()) rebuilds an
  /// identical tree for every tree that parse() can produce.
  std::string str() const;

  bool is_constant() const { return kind() == Kind::constant; }
  bool is_zero() const;
  bool is_one() const;

  Expr pow(int n) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr exp(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Expr make(Kind k, int eps, const Expr* a, const Expr* b, int exponent = 0);

  std::shared_ptr<const Node> n_;
};

/// Structural equality with bit-exact constants.
bool identical(const Expr& a, const Expr& b);

/// Parses the infix grammar: literals `2`, `1.5e-3`, `3j`, `j`, `(1+2j)`;
/// the variable `z`; operators `+ - * /`; integer powers `^n` (n may be
/// negative); and `exp(...)`.
Expr parse(std::string_view text, int eps);

/// Convenience builders that fold zeros and ones, used by derive().
Expr simplify_add(const Expr& a, const Expr& b);
Expr simplify_sub(const Expr& a, const Expr& b);
Expr simplify_mul(const Expr& a, const Expr& b);
Expr simplify_div(const Expr& a, const Expr& b);

}  // namespace ias::holo
