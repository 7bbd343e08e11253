#pragma once

// Skew-PBW algebras over K = Q(scalars)(coefficient variables).
//
// Elements are sums c_w * w with coefficients on the LEFT and ascending words
// w.  A generator g transports coefficients by its exchange automorphism:
// g * c = sigma_g(c) * g.  Descending adjacent pairs g_j g_i (j > i) are
// rewritten by the presentation's rules.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pbw/coeffield.hpp"

namespace pbw {

using Word = std::vector<int>;

// Longer words first, then lexicographic; Elements iterate in this order.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  }
};

class Element {
 public:
  using Terms = std::map<Word, RationalFunction, WordOrder>;

  Element() = default;
  Element(const RationalFunction& c);  // NOLINT(implicit): scalar times the empty word
  static Element generator(int g);
  static Element monomial(const RationalFunction& c, Word w);

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  RationalFunction coefficient(const Word& w) const;
  // Returns the scalar if the element only involves the empty word.
  std::optional<RationalFunction> as_scalar() const;
  std::size_t max_length() const { return terms_.empty() ? 0 : terms_.begin()->first.size(); }

  void add(const Word& w, const RationalFunction& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator-() const;
  // Left multiplication by a coefficient.
  Element scaled(const RationalFunction& c) const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  Terms terms_;
};

// One factor of an unreduced product: a generator or a coefficient.
using Factor = std::variant<int, RationalFunction>;
struct RawTerm {
  RationalFunction coeff{1};
  std::vector<Factor> factors;
};
using RawSum = std::vector<RawTerm>;

struct RuleKey {
  int high;
  int low;
  friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
};

class AlgebraPresentation {
 public:
  std::string name;
  std::vector<Symbol> scalars;
  std::vector<Symbol> coeffs;
  std::vector<std::string> generators;  // ascending order
  std::vector<Substitution> sigma;      // one per generator
  std::vector<Substitution> sigma_inv;  // filled by validate() when empty
  std::map<RuleKey, Element> rules;     // g_high * g_low -> rhs

  int generator_index(const std::string& g) const;  // throws UnknownGenerator
  bool has_generator(const std::string& g) const;
  bool is_coefficient(Symbol s) const;
  bool is_scalar(Symbol s) const;
  std::set<Symbol> coefficient_set() const { return {coeffs.begin(), coeffs.end()}; }
  std::size_t size() const { return generators.size(); }
  const Element& rule(int high, int low) const;
  bool quadratic() const;
  bool lie_type() const;  // no rule has an empty-word component

  // Checks well-formedness, completes sigma/sigma_inv, verifies sigma are
  // automorphisms.  Throws InvalidPresentation.
  void validate();

  // sigma of a word: w * c = sigma_w(c) * w.
  Substitution word_sigma(const Word& w) const;

  friend bool operator==(const AlgebraPresentation&, const AlgebraPresentation&) = default;
};

enum class Strategy { Leftmost, Rightmost, Random };

struct RewriteOptions {
  Strategy strategy = Strategy::Leftmost;
  std::uint64_t seed = 0;
  std::uint64_t step_budget = 0;  // 0: default_step_budget()
};

// 10^6 unless overridden by the PBW_STEP_BUDGET environment variable.
std::uint64_t default_step_budget();

bool is_ascending(const Word& w);

Element normal_form(const AlgebraPresentation& p, const RawSum& raw, const RewriteOptions& opt = {});
// Normal form of an element whose words need not be ascending.
Element normal_form(const AlgebraPresentation& p, const Element& e, const RewriteOptions& opt = {});

// Serial reference product.
Element multiply_serial(const AlgebraPresentation& p, const Element& a, const Element& b,
                        const RewriteOptions& opt = {});
// OpenMP kernel: splits the terms of `a` across threads.  Same result as the
// serial reference.
Element multiply_parallel(const AlgebraPresentation& p, const Element& a, const Element& b,
                          const RewriteOptions& opt = {});
Element multiply(const AlgebraPresentation& p, const Element& a, const Element& b);
Element commutator(const AlgebraPresentation& p, const Element& a, const Element& b);
Element power(const AlgebraPresentation& p, const Element& a, unsigned n);

struct CriticalPairReport {
  enum class Kind { Overlap, Coefficient };
  Kind kind;
  std::vector<int> gens;  // (k, j, i) for overlaps, (j, i) for coefficient checks
  Symbol variable;        // coefficient checks only
  Element left;
  Element right;
  bool resolved = false;

  std::string label(const AlgebraPresentation& p) const;
};

std::vector<CriticalPairReport> check_confluence_serial(const AlgebraPresentation& p);
std::vector<CriticalPairReport> check_confluence(const AlgebraPresentation& p);
bool is_confluent(const std::vector<CriticalPairReport>& reports);

struct Twist {
  RationalFunction coeff;  // x^(a) = sigma_a(x)
  int generator;           // a^(a) = a
  int witnesses_checked = 0;
};

// mu(a, x) = sigma_a(x) (x) a, verified on a(x b) = sigma_a(x) (a b) for every
// word b of length <= 2.  Throws TwistAxiomFailure.
Twist derive_twist(const AlgebraPresentation& p, int a, Symbol x);

std::string render_word(const AlgebraPresentation& p, const Word& w);
std::string render(const AlgebraPresentation& p, const Element& e);
std::string render_twist(const AlgebraPresentation& p, const Twist& t);

}  // namespace pbw
