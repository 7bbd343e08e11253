#include "pbw/coeffield.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace pbw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::TwistAxiomFailure: return "TwistAxiomFailure";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::ConfluenceFailure: return "ConfluenceFailure";
    case ErrorKind::RelationViolation: return "RelationViolation";
    case ErrorKind::NonInvertibleImage: return "NonInvertibleImage";
    case ErrorKind::DependenceFound: return "DependenceFound";
    case ErrorKind::PoleInF: return "PoleInF";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::NonAscendingRuleRHS: return "NonAscendingRuleRHS";
    case ErrorKind::MisorientedRule: return "MisorientedRule";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0)
    throw Error(ErrorKind::SyntaxError, "bad rational '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Symbol

namespace {
std::mutex intern_mutex;
std::unordered_set<std::string>& intern_table() {
  static std::unordered_set<std::string> table;
  return table;
}
}  // namespace

Symbol::Symbol(std::string_view name) {
  std::lock_guard lock(intern_mutex);
  auto [it, inserted] = intern_table().emplace(name);
  name_ = &*it;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Symbol v, int exp) {
  if (exp > 0) {
    powers_.emplace_back(v, exp);
    degree_ = exp;
  }
}

int Monomial::exponent(Symbol v) const {
  for (const auto& [s, e] : powers_)
    if (s == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.powers_.reserve(powers_.size() + o.powers_.size());
  auto i = powers_.begin();
  auto j = o.powers_.begin();
  while (i != powers_.end() || j != o.powers_.end()) {
    if (j == o.powers_.end() || (i != powers_.end() && i->first < j->first)) {
      r.powers_.push_back(*i++);
    } else if (i == powers_.end() || j->first < i->first) {
      r.powers_.push_back(*j++);
    } else {
      r.powers_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divisible_by(const Monomial& o) const {
  for (const auto& [s, e] : o.powers_)
    if (exponent(s) < e) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (const auto& [s, e] : powers_) {
    int d = e - o.exponent(s);
    if (d < 0) throw std::logic_error("monomial not divisible");
    if (d > 0) r.powers_.emplace_back(s, d);
  }
  r.degree_ = degree_ - o.degree_;
  return r;
}

Monomial Monomial::without(Symbol v) const {
  Monomial r;
  for (const auto& p : powers_)
    if (!(p.first == v)) {
      r.powers_.push_back(p);
      r.degree_ += p.second;
    }
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  std::size_t i = 0;
  for (; i < pa.size() && i < pb.size(); ++i) {
    if (!(pa[i].first == pb[i].first)) return pa[i].first < pb[i].first;
    if (pa[i].second != pb[i].second) return pa[i].second > pb[i].second;
  }
  return i < pa.size() && i >= pb.size();
}

// ---------------------------------------------------------------- Polynomial

namespace {
// mpq_class values built from (num, den) are not reduced automatically.
Rational reduced(const Rational& c) {
  Rational r = c;
  r.canonicalize();
  return r;
}
}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, reduced(c));
}

Polynomial Polynomial::variable(Symbol v) { return term(Monomial(v), 1); }

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, reduced(c));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_.begin()->second;
}

int Polynomial::total_degree() const { return terms_.empty() ? -1 : leading_monomial().degree(); }

int Polynomial::degree_in(Symbol v) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

std::set<Symbol> Polynomial::variables() const {
  std::set<Symbol> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [s, e] : m.powers()) vs.insert(s);
  return vs;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  const Rational rc = reduced(c);
  auto [it, inserted] = terms_.try_emplace(m, rc);
  if (!inserted) {
    it->second += rc;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  const Rational rc = reduced(c);
  for (auto& [m, x] : r.terms_) x *= rc;
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

std::vector<Polynomial> Polynomial::coefficients_in(Symbol v) const {
  std::vector<Polynomial> cs(static_cast<std::size_t>(std::max(degree_in(v), 0)) + 1);
  for (const auto& [m, c] : terms_) cs[static_cast<std::size_t>(m.exponent(v))].add_term(m.without(v), c);
  return cs;
}

Polynomial Polynomial::from_coefficients(Symbol v, const std::vector<Polynomial>& cs) {
  Polynomial r;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Monomial vk(v, static_cast<int>(k));
    for (const auto& [m, c] : cs[k].terms_) r.add_term(m * vk, c);
  }
  return r;
}

Polynomial Polynomial::exact_div(const Polynomial& d) const {
  if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (d.is_constant()) return scaled(1 / d.constant_value());
  Polynomial q;
  Polynomial r = *this;
  const Monomial& lm = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& rm = r.leading_monomial();
    if (!rm.divisible_by(lm)) throw std::logic_error("inexact polynomial division");
    Polynomial t = term(rm / lm, r.leading_coefficient() / lc);
    q += t;
    r -= t * d;
  }
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading_coefficient());
}

Rational Polynomial::evaluate(const std::map<Symbol, Rational>& point) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [s, e] : m.powers()) {
      auto it = point.find(s);
      if (it == point.end()) throw Error(ErrorKind::MissingParameter, "no value for '" + s.name() + "'");
      Rational p = 1;
      for (int k = 0; k < e; ++k) p *= it->second;
      t *= p;
    }
    sum += t;
  }
  return sum;
}

RationalFunction Polynomial::substitute(const std::map<Symbol, RationalFunction>& images) const {
  // Sum over terms of c * prod image(v)^e, with a small power cache.
  std::map<std::pair<Symbol, int>, RationalFunction> cache;
  auto power_of = [&](Symbol s, int e) -> RationalFunction {
    auto key = std::make_pair(s, e);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto img = images.find(s);
    RationalFunction base =
        img == images.end() ? RationalFunction(Polynomial::variable(s)) : img->second;
    RationalFunction p = base.pow(e);
    cache.emplace(key, p);
    return p;
  };
  // Collect terms with identical image-free parts first so the common case
  // (substitution touching few variables) stays polynomial.
  Polynomial untouched;
  RationalFunction touched;
  for (const auto& [m, c] : terms_) {
    bool hit = false;
    for (const auto& [s, e] : m.powers())
      if (images.count(s)) hit = true;
    if (!hit) {
      untouched.add_term(m, c);
      continue;
    }
    RationalFunction t(c);
    Monomial rest;
    for (const auto& [s, e] : m.powers()) {
      if (images.count(s))
        t *= power_of(s, e);
      else
        rest = rest * Monomial(s, e);
    }
    touched += t * RationalFunction(term(rest, 1));
  }
  return touched + RationalFunction(untouched);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool printed = false;
    if (m.is_one() || a != 1) {
      os << rational_to_string(a);
      printed = true;
    }
    for (const auto& [s, e] : m.powers()) {
      if (printed) os << "*";
      os << s.name();
      if (e != 1) os << "^" << e;
      printed = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- gcd

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Symbol v) {
  int n = b.degree_in(v);
  auto bc = b.coefficients_in(v);
  const Polynomial lc = bc.back();
  Polynomial r = a;
  while (!r.is_zero()) {
    int m = r.degree_in(v);
    if (m < n) break;
    Polynomial lr = r.coefficients_in(v).back();
    Polynomial shift = Polynomial::term(Monomial(v, m - n), 1);
    r = lc * r - lr * shift * b;
  }
  return r;
}

namespace {

Polynomial content_in(const Polynomial& p, Symbol v) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

// Univariate gcd over Q via the Euclidean algorithm; the common fast path.
// Dense coefficients, lowest degree first, no trailing zeros.
std::vector<Rational> dense(const Polynomial& p, Symbol v) {
  std::vector<Rational> out;
  for (const auto& c : p.coefficients_in(v)) out.push_back(c.constant_value());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Polynomial univariate_gcd(const Polynomial& pa, const Polynomial& pb, Symbol v) {
  std::vector<Rational> a = dense(pa, v), b = dense(pb, v);
  // Euclid with monic divisors keeps the coefficients small.
  auto make_monic = [](std::vector<Rational>& x) {
    const Rational lc = x.back();
    for (auto& c : x) c /= lc;
  };
  while (!b.empty()) {
    make_monic(b);
    while (a.size() >= b.size()) {
      const Rational lr = a.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= lr * b[i];
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  make_monic(a);
  Polynomial out;
  const Polynomial x = Polynomial::variable(v);
  for (std::size_t i = a.size(); i-- > 0;) out = out * x + Polynomial(a[i]);
  return out;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a.monic();
  auto vars = a.variables();
  auto vb = b.variables();
  vars.insert(vb.begin(), vb.end());
  Symbol v = *vars.begin();
  if (vars.size() == 1) return univariate_gcd(a, b, v);
  if (a.degree_in(v) <= 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) <= 0) return gcd(content_in(a, v), b);

  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial g = gcd(ca, cb);
  Polynomial pa = a.exact_div(ca);
  Polynomial pb = b.exact_div(cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // Primitive polynomial remainder sequence.
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = r.exact_div(content_in(r, v));
  }
  if (!pb.is_constant()) pb = pb.exact_div(content_in(pb, v));
  return (g * pb).monic();
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = num.exact_div(g);
      den = den.exact_div(g);
    }
  }
  Rational lc = den.leading_coefficient();
  num_ = num.scaled(1 / lc);
  den_ = den.scaled(1 / lc);
}

RationalFunction RationalFunction::variable(std::string_view name) {
  return RationalFunction(Polynomial::variable(Symbol(name)));
}

bool RationalFunction::is_one() const { return den_.is_constant() && num_ == den_; }

Rational RationalFunction::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

std::set<Symbol> RationalFunction::variables() const {
  auto vs = num_.variables();
  auto vd = den_.variables();
  vs.insert(vd.begin(), vd.end());
  return vs;
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_, Canonical{}}; }

RationalFunction RationalFunction::plus(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_constant() && o.den_.is_constant()) return {num_ + o.num_, Polynomial(1), Canonical{}};
  if (den_ == o.den_) return {num_ + o.num_, den_};
  Polynomial g = gcd(den_, o.den_);
  Polynomial da = den_.exact_div(g);
  Polynomial db = o.den_.exact_div(g);
  return {num_ * db + o.num_ * da, den_ * db};
}

RationalFunction RationalFunction::times(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (den_.is_constant() && o.den_.is_constant()) return {num_ * o.num_, Polynomial(1), Canonical{}};
  if (o.is_constant()) return {num_.scaled(o.constant_value()), den_, Canonical{}};
  if (is_constant()) return {o.num_.scaled(constant_value()), o.den_, Canonical{}};
  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  Polynomial n = num_.exact_div(g1) * o.num_.exact_div(g2);
  Polynomial d = den_.exact_div(g2) * o.den_.exact_div(g1);
  Rational lc = d.leading_coefficient();
  return {n.scaled(1 / lc), d.scaled(1 / lc), Canonical{}};
}

RationalFunction RationalFunction::divided_by(const RationalFunction& o) const {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero rational function");
  return *this * RationalFunction(o.den_, o.num_);
}

RationalFunction RationalFunction::pow(int n) const {
  if (n < 0) return RationalFunction(1) / pow(-n);
  return {num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), Canonical{}};
}

Rational RationalFunction::evaluate(const std::map<Symbol, Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "pole of " + to_string());
  return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool bare = den_.terms().size() == 1 && den_.leading_coefficient() == 1 &&
              den_.leading_monomial().powers().size() == 1;
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

RationalFunction rf_arith(const RationalFunction& a, const RationalFunction& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return {};
}

Rational rf_eval(const RationalFunction& a, const std::map<std::string, Rational>& point) {
  std::map<Symbol, Rational> p;
  for (const auto& [k, v] : point) p.emplace(Symbol(k), v);
  return a.evaluate(p);
}

// ---------------------------------------------------------------- Substitution

Substitution::Substitution(std::map<Symbol, RationalFunction> images) {
  for (auto& [v, img] : images) set(v, std::move(img));
}

void Substitution::set(Symbol v, RationalFunction image) {
  if (image == RationalFunction(Polynomial::variable(v)))
    images_.erase(v);
  else
    images_.insert_or_assign(v, std::move(image));
}

RationalFunction Substitution::image(Symbol v) const {
  auto it = images_.find(v);
  return it == images_.end() ? RationalFunction(Polynomial::variable(v)) : it->second;
}

RationalFunction Substitution::apply(const RationalFunction& a) const {
  if (images_.empty()) return a;
  bool touches = false;
  for (Symbol s : a.variables())
    if (images_.count(s)) touches = true;
  if (!touches) return a;
  RationalFunction n = a.numerator().substitute(images_);
  RationalFunction d = a.denominator().substitute(images_);
  if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "substitution sends denominator of " + a.to_string() + " to 0");
  return n / d;
}

Substitution Substitution::after(const Substitution& inner) const {
  Substitution r;
  for (const auto& [v, img] : inner.images_) r.set(v, apply(img));
  for (const auto& [v, img] : images_)
    if (!inner.images_.count(v)) r.set(v, img);
  return r;
}

bool Substitution::agrees_on(const Substitution& o, const std::set<Symbol>& vars) const {
  for (Symbol v : vars)
    if (!(image(v) == o.image(v))) return false;
  return true;
}

std::string Substitution::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [v, img] : images_) {
    os << (first ? "" : ", ") << v.name() << " -> " << img.to_string();
    first = false;
  }
  os << "}";
  return os.str();
}

RationalFunction rf_substitute(const RationalFunction& a, const Substitution& s) { return s.apply(a); }

bool invert_mobius(const Substitution& s, const std::set<Symbol>& moved, Substitution& out) {
  Substitution inv;
  for (const auto& [v, img] : s.images()) {
    const Polynomial& n = img.numerator();
    const Polynomial& d = img.denominator();
    if (n.degree_in(v) > 1 || d.degree_in(v) > 1) return false;
    auto nc = n.coefficients_in(v);
    auto dc = d.coefficients_in(v);
    nc.resize(2);
    dc.resize(2);
    for (const auto* cs : {&nc, &dc})
      for (const auto& c : *cs)
        for (Symbol w : c.variables())
          if (moved.count(w)) return false;
    // img = (a v + b) / (c v + d)  ->  inverse (d v - b) / (-c v + a)
    const Polynomial& a = nc[1];
    const Polynomial& b = nc[0];
    const Polynomial& c = dc[1];
    const Polynomial& dd = dc[0];
    if ((a * dd - b * c).is_zero()) return false;
    Polynomial x = Polynomial::variable(v);
    inv.set(v, RationalFunction(dd * x - b, -(c * x) + a));
  }
  out = inv;
  return true;
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a * b).exact_div(gcd(a, b)).monic();
}

}  // namespace pbw
