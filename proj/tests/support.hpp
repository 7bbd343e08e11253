#pragma once

// Hand-rolled generators shared by the unit tests.

#include <random>
#include <string>
#include <vector>

#include "pbw/catalog.hpp"

namespace pbw::testing {

inline Rational random_rational(std::mt19937& rng, int span = 7, int den = 5) {
  std::uniform_int_distribution<int> num(-span, span), d(1, den);
  return Rational(num(rng), d(rng));
}

// A rational not in `avoid`.
inline Rational random_rational_avoiding(std::mt19937& rng, const std::vector<Rational>& avoid) {
  while (true) {
    Rational r = random_rational(rng);
    r.canonicalize();
    if (std::find(avoid.begin(), avoid.end(), r) == avoid.end()) return r;
  }
}

inline Polynomial random_h0(std::mt19937& rng, int max_degree = 3) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  Polynomial p;
  int d = deg(rng);
  Polynomial t = Polynomial::variable(Symbol("t"));
  for (int k = 0; k <= d; ++k) p += t.pow(static_cast<unsigned>(k)).scaled(random_rational(rng, 3, 2));
  if (p.is_zero()) p = Polynomial(1);
  return p;
}

// Generic parameters for a catalog entry: random h0 and random scalar values.
inline Params random_params(const CatalogEntry& e, std::mt19937& rng) {
  Params ps;
  for (const auto& r : e.required)
    if (r == "h0") ps[r] = random_h0(rng);
  for (const auto& o : e.optional) {
    Rational v = random_rational_avoiding(rng, {Rational(0), Rational(1), Rational(-1)});
    if (o == "qR") v = abs(v);
    ps[o] = v;
  }
  return ps;
}

inline Params default_params(const CatalogEntry& e) {
  Params ps;
  for (const auto& r : e.required)
    if (r == "h0") ps[r] = RationalFunction(Polynomial(1) + Polynomial::variable(Symbol("t")).pow(2));
  return ps;
}

inline Word random_word(std::mt19937& rng, std::size_t ngens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> g(0, static_cast<int>(ngens) - 1);
  Word w(len(rng));
  for (auto& x : w) x = g(rng);
  return w;
}

// Random coefficient: rational, or affine in the first coefficient variable.
inline RationalFunction random_coeff(std::mt19937& rng, const AlgebraPresentation& p) {
  Rational a = random_rational(rng, 4, 3);
  if (a == 0) a = 1;
  if (p.coeffs.empty() || rng() % 2) return a;
  return RationalFunction(Polynomial::variable(p.coeffs.front())) * random_rational(rng, 3, 2) + a;
}

// Random element in normal form with up to `terms` terms.
inline Element random_element(std::mt19937& rng, const AlgebraPresentation& p, int terms, std::size_t max_len) {
  Element raw;
  for (int i = 0; i < terms; ++i) raw.add(random_word(rng, p.size(), max_len), random_coeff(rng, p));
  return normal_form(p, raw);
}

}  // namespace pbw::testing
