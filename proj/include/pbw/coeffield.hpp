#pragma once

// Exact multivariate rational functions over Q.
//
// Variables are interned symbols compared by name, so canonical forms do not
// depend on the order in which names were first seen.  Monomials are ordered
// graded-lexicographically (total degree first, then lexicographic with
// variables sorted by name).  A RationalFunction is always stored reduced:
// gcd(num, den) = 1 and the leading coefficient of den is 1.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbw/error.hpp"

namespace pbw {

using Rational = mpq_class;

std::string rational_to_string(const Rational& q);
Rational parse_rational(std::string_view text);

class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  const std::string& name() const { return *name_; }
  bool valid() const { return name_ != nullptr; }

  friend bool operator==(Symbol a, Symbol b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name() <=> b.name();
  }

 private:
  const std::string* name_ = nullptr;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Symbol v, int exp = 1);

  int degree() const { return degree_; }
  int exponent(Symbol v) const;
  bool is_one() const { return powers_.empty(); }
  const std::vector<std::pair<Symbol, int>>& powers() const { return powers_; }

  Monomial operator*(const Monomial& o) const;
  // Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const;
  bool divisible_by(const Monomial& o) const;
  Monomial without(Symbol v) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<Symbol, int>> powers_;  // sorted by symbol, exps > 0
  int degree_ = 0;
};

// Strict "greater" in graded-lex order; maps keyed with it start at the
// leading term.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class RationalFunction;

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(implicit)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(implicit)
  static Polynomial variable(Symbol v);
  static Polynomial term(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  const Terms& terms() const { return terms_; }
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }
  int total_degree() const;
  int degree_in(Symbol v) const;
  std::set<Symbol> variables() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned n) const;

  // Coefficients as a univariate polynomial in v: result[k] multiplies v^k.
  std::vector<Polynomial> coefficients_in(Symbol v) const;
  static Polynomial from_coefficients(Symbol v, const std::vector<Polynomial>& cs);

  // Exact quotient; throws std::logic_error if `d` does not divide *this.
  Polynomial exact_div(const Polynomial& d) const;
  // Divides by the leading coefficient (zero stays zero).
  Polynomial monic() const;

  Rational evaluate(const std::map<Symbol, Rational>& point) const;
  RationalFunction substitute(const std::map<Symbol, RationalFunction>& images) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

// Monic gcd in the grlex order; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// Monic least common multiple.
Polynomial lcm(const Polynomial& a, const Polynomial& b);
// Pseudo-remainder of a by b viewed as univariate polynomials in v.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Symbol v);

class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT(implicit)
  RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT(implicit)
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(implicit)
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction variable(std::string_view name);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()
  std::set<Symbol> variables() const;

  RationalFunction operator-() const;
  RationalFunction plus(const RationalFunction& o) const;
  RationalFunction times(const RationalFunction& o) const;
  RationalFunction divided_by(const RationalFunction& o) const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return a.plus(b); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a.plus(-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) { return a.times(b); }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a.divided_by(b); }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction pow(int n) const;

  Rational evaluate(const std::map<Symbol, Rational>& point) const;

  // Canonical text in the DSL expression grammar; parse(to_string()) == *this.
  std::string to_string() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Canonical {};
  RationalFunction(Polynomial num, Polynomial den, Canonical)
      : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

enum class ArithOp { Add, Sub, Mul, Div };
RationalFunction rf_arith(const RationalFunction& a, const RationalFunction& b, ArithOp op);
Rational rf_eval(const RationalFunction& a, const std::map<std::string, Rational>& point);

// Field endomorphism of K given by images of variables (identity elsewhere).
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<Symbol, RationalFunction> images);

  void set(Symbol v, RationalFunction image);
  RationalFunction image(Symbol v) const;
  const std::map<Symbol, RationalFunction>& images() const { return images_; }
  bool is_identity() const { return images_.empty(); }

  RationalFunction apply(const RationalFunction& a) const;
  // (this ∘ inner)(x) = this(inner(x)).
  Substitution after(const Substitution& inner) const;
  // True iff the two maps agree on every variable in `vars`.
  bool agrees_on(const Substitution& o, const std::set<Symbol>& vars) const;

  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Symbol, RationalFunction> images_;  // non-identity entries only
};

RationalFunction rf_substitute(const RationalFunction& a, const Substitution& s);

// Inverse of a substitution whose every image is a Möbius map in its own
// variable with coefficients free of `moved` variables.  Returns false if
// the shape does not allow automatic inversion.
bool invert_mobius(const Substitution& s, const std::set<Symbol>& moved, Substitution& out);

}  // namespace pbw
