#include "pbw/skewpbw.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

namespace pbw {

// ---------------------------------------------------------------- Element

Element::Element(const RationalFunction& c) {
  if (!c.is_zero()) terms_.emplace(Word{}, c);
}

Element Element::generator(int g) { return monomial(RationalFunction(1), Word{g}); }

Element Element::monomial(const RationalFunction& c, Word w) {
  Element e;
  e.add(w, c);
  return e;
}

RationalFunction Element::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? RationalFunction() : it->second;
}

std::optional<RationalFunction> Element::as_scalar() const {
  if (terms_.empty()) return RationalFunction();
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

void Element::add(const Word& w, const RationalFunction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Element Element::operator-() const {
  Element r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

Element Element::scaled(const RationalFunction& c) const {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [w, x] : terms_) r.add(w, c * x);
  return r;
}

bool is_ascending(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

// ---------------------------------------------------------------- presentation

int AlgebraPresentation::generator_index(const std::string& g) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == g) return static_cast<int>(i);
  throw Error(ErrorKind::UnknownGenerator, "'" + g + "' is not a generator of " + name);
}

bool AlgebraPresentation::has_generator(const std::string& g) const {
  return std::find(generators.begin(), generators.end(), g) != generators.end();
}

bool AlgebraPresentation::is_coefficient(Symbol s) const {
  return std::find(coeffs.begin(), coeffs.end(), s) != coeffs.end();
}

bool AlgebraPresentation::is_scalar(Symbol s) const {
  return std::find(scalars.begin(), scalars.end(), s) != scalars.end();
}

const Element& AlgebraPresentation::rule(int high, int low) const {
  auto it = rules.find({high, low});
  if (it == rules.end())
    throw Error(ErrorKind::InvalidPresentation,
                "no rule for " + generators.at(high) + "*" + generators.at(low));
  return it->second;
}

bool AlgebraPresentation::quadratic() const {
  for (const auto& [k, rhs] : rules)
    if (rhs.max_length() > 2) return false;
  return true;
}

bool AlgebraPresentation::lie_type() const {
  for (const auto& [k, rhs] : rules)
    if (!rhs.coefficient(Word{}).is_zero()) return false;
  return true;
}

namespace {

void require(bool ok, const AlgebraPresentation& p, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidPresentation, p.name + ": " + what);
}

void require_known_variables(const AlgebraPresentation& p, const RationalFunction& c, const std::string& where) {
  for (Symbol s : c.variables())
    require(p.is_scalar(s) || p.is_coefficient(s), p, "undeclared symbol '" + s.name() + "' in " + where);
}

}  // namespace

void AlgebraPresentation::validate() {
  const std::size_t n = generators.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) require(generators[i] != generators[j], *this, "duplicate generator");
  for (const auto& g : generators) {
    require(!is_coefficient(Symbol(g)) && !is_scalar(Symbol(g)), *this,
            "'" + g + "' is both a generator and a coefficient symbol");
  }
  for (Symbol c : coeffs) require(!is_scalar(c), *this, "'" + c.name() + "' is both scalar and coefficient");

  require(sigma.size() <= n, *this, "more exchange maps than generators");
  sigma.resize(n);
  require(sigma_inv.empty() || sigma_inv.size() == n, *this, "inverse exchange list has wrong length");
  sigma_inv.resize(n);

  const auto moved = coefficient_set();
  for (std::size_t g = 0; g < n; ++g) {
    const std::string where = "sigma of " + generators[g];
    for (const auto& [v, img] : sigma[g].images()) {
      require(is_coefficient(v), *this, where + " moves non-coefficient '" + v.name() + "'");
      require_known_variables(*this, img, where);
    }
    if (sigma_inv[g].is_identity() && !sigma[g].is_identity()) {
      Substitution inv;
      require(invert_mobius(sigma[g], moved, inv), *this, where + " is not invertible automatically; give its inverse");
      sigma_inv[g] = inv;
    }
    for (const auto& [v, img] : sigma_inv[g].images()) {
      require(is_coefficient(v), *this, "inverse " + where + " moves non-coefficient '" + v.name() + "'");
      require_known_variables(*this, img, "inverse " + where);
    }
    require(sigma[g].after(sigma_inv[g]).agrees_on(Substitution{}, moved) &&
                sigma_inv[g].after(sigma[g]).agrees_on(Substitution{}, moved),
            *this, where + " is not an automorphism (inverse check failed)");
  }

  for (const auto& [key, rhs] : rules) {
    require(key.high >= 0 && key.low >= 0 && static_cast<std::size_t>(key.high) < n &&
                static_cast<std::size_t>(key.low) < n,
            *this, "rule refers to an unknown generator");
    if (key.high <= key.low)
      throw Error(ErrorKind::MisorientedRule, name + ": rule " + generators[key.high] + "*" +
                                                  generators[key.low] + " is not descending");
    for (const auto& [w, c] : rhs.terms()) {
      if (!is_ascending(w))
        throw Error(ErrorKind::NonAscendingRuleRHS,
                    name + ": rule " + generators[key.high] + "*" + generators[key.low] + " has non-normal word " +
                        render_word(*this, w));
      require_known_variables(*this, c, "rule " + generators[key.high] + "*" + generators[key.low]);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      require(rules.count({static_cast<int>(j), static_cast<int>(i)}) == 1, *this,
              "missing rule for " + generators[j] + "*" + generators[i]);
}

Substitution AlgebraPresentation::word_sigma(const Word& w) const {
  Substitution s;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto& g = sigma.at(static_cast<std::size_t>(*it));
    if (!g.is_identity()) s = g.after(s);
  }
  return s;
}

std::uint64_t default_step_budget() {
  if (const char* env = std::getenv("PBW_STEP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1'000'000;
}

// ---------------------------------------------------------------- rewriting

namespace {

class Rewriter {
 public:
  Rewriter(const AlgebraPresentation& p, const RewriteOptions& opt)
      : p_(p), opt_(opt), rng_(opt.seed), budget_(opt.step_budget ? opt.step_budget : default_step_budget()) {
    n_ = p.size();
    table_.assign(n_ * n_, nullptr);
    for (const auto& [k, rhs] : p.rules) table_[static_cast<std::size_t>(k.high) * n_ + static_cast<std::size_t>(k.low)] = &rhs;
    trivial_sigma_ = std::all_of(p.sigma.begin(), p.sigma.end(), [](const Substitution& s) { return s.is_identity(); });
  }

  // c * (word) where coefficient factors have already been moved left.
  void push(const Word& w, const RationalFunction& c) { add(todo_, w, c); }

  void push_raw(const RawTerm& t) {
    RationalFunction c = t.coeff;
    Word w;
    for (const auto& f : t.factors) {
      if (const int* g = std::get_if<int>(&f)) {
        if (*g < 0 || static_cast<std::size_t>(*g) >= n_)
          throw Error(ErrorKind::UnknownGenerator, "generator index out of range");
        w.push_back(*g);
      } else {
        c *= transport(w, std::get<RationalFunction>(f));
      }
    }
    push(w, c);
  }

  RationalFunction transport(const Word& prefix, const RationalFunction& c) {
    if (trivial_sigma_ || prefix.empty()) return c;
    return sigma_of(prefix).apply(c);
  }

  Element run() {
    Element result;
    while (!todo_.empty()) {
      auto node = todo_.extract(todo_.begin());
      const Word& w = node.key();
      const RationalFunction& c = node.mapped();
      auto pos = find_descent(w);
      if (!pos) {
        result.add(w, c);
        continue;
      }
      if (++steps_ > budget_)
        throw Error(ErrorKind::NonTerminating,
                    "step budget of " + std::to_string(budget_) + " exceeded while reducing " + render_word(p_, w));
      const std::size_t i = *pos;
      const Element* rhs = table_[static_cast<std::size_t>(w[i]) * n_ + static_cast<std::size_t>(w[i + 1])];
      if (!rhs)
        throw Error(ErrorKind::InvalidPresentation,
                    "no rule for " + p_.generators[static_cast<std::size_t>(w[i])] + "*" +
                        p_.generators[static_cast<std::size_t>(w[i + 1])]);
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      for (const auto& [rw, rc] : rhs->terms()) {
        Word nw = prefix;
        nw.insert(nw.end(), rw.begin(), rw.end());
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        add(todo_, nw, c * transport(prefix, rc));
      }
    }
    return result;
  }

 private:
  using Todo = std::map<Word, RationalFunction, WordOrder>;

  static void add(Todo& t, const Word& w, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }

  std::optional<std::size_t> find_descent(const Word& w) {
    if (w.size() < 2) return std::nullopt;
    switch (opt_.strategy) {
      case Strategy::Leftmost:
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
          if (w[i] > w[i + 1]) return i;
        return std::nullopt;
      case Strategy::Rightmost:
        for (std::size_t i = w.size() - 1; i-- > 0;)
          if (w[i] > w[i + 1]) return i;
        return std::nullopt;
      case Strategy::Random: {
        std::vector<std::size_t> cands;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
          if (w[i] > w[i + 1]) cands.push_back(i);
        if (cands.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
        return cands[pick(rng_)];
      }
    }
    return std::nullopt;
  }

  const Substitution& sigma_of(const Word& prefix) {
    auto it = sigma_cache_.find(prefix);
    if (it != sigma_cache_.end()) return it->second;
    Substitution s;
    if (prefix.size() == 1) {
      s = p_.sigma[static_cast<std::size_t>(prefix[0])];
    } else {
      Word tail(prefix.begin() + 1, prefix.end());
      const Substitution& inner = sigma_of(tail);
      const Substitution& head = p_.sigma[static_cast<std::size_t>(prefix[0])];
      s = head.is_identity() ? inner : head.after(inner);
    }
    return sigma_cache_.emplace(prefix, std::move(s)).first->second;
  }

  const AlgebraPresentation& p_;
  RewriteOptions opt_;
  std::mt19937_64 rng_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::size_t n_ = 0;
  bool trivial_sigma_ = true;
  std::vector<const Element*> table_;
  std::map<Word, Substitution> sigma_cache_;
  Todo todo_;
};

}  // namespace

Element normal_form(const AlgebraPresentation& p, const RawSum& raw, const RewriteOptions& opt) {
  Rewriter rw(p, opt);
  for (const auto& t : raw) rw.push_raw(t);
  return rw.run();
}

Element normal_form(const AlgebraPresentation& p, const Element& e, const RewriteOptions& opt) {
  Rewriter rw(p, opt);
  for (const auto& [w, c] : e.terms()) rw.push(w, c);
  return rw.run();
}

namespace {

void push_products(Rewriter& rw, const AlgebraPresentation& p, const Element::Terms::value_type& ta, const Element& b) {
  const auto& [wa, ca] = ta;
  Substitution s = p.word_sigma(wa);
  for (const auto& [wb, cb] : b.terms()) {
    Word w = wa;
    w.insert(w.end(), wb.begin(), wb.end());
    rw.push(w, ca * s.apply(cb));
  }
}

}  // namespace

Element multiply_serial(const AlgebraPresentation& p, const Element& a, const Element& b, const RewriteOptions& opt) {
  Rewriter rw(p, opt);
  for (const auto& ta : a.terms()) push_products(rw, p, ta, b);
  return rw.run();
}

Element multiply_parallel(const AlgebraPresentation& p, const Element& a, const Element& b, const RewriteOptions& opt) {
  std::vector<const Element::Terms::value_type*> terms;
  for (const auto& t : a.terms()) terms.push_back(&t);
  const auto n = static_cast<std::ptrdiff_t>(terms.size());
  std::vector<Element> partial(terms.size());
  std::vector<std::string> errors(terms.size());
  std::vector<int> error_kind(terms.size(), -1);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      Rewriter rw(p, opt);
      push_products(rw, p, *terms[static_cast<std::size_t>(i)], b);
      partial[static_cast<std::size_t>(i)] = rw.run();
    } catch (const Error& e) {
      error_kind[static_cast<std::size_t>(i)] = static_cast<int>(e.kind());
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  Element sum;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (error_kind[i] >= 0) throw Error(static_cast<ErrorKind>(error_kind[i]), errors[i]);
    sum += partial[i];
  }
  return sum;
}

Element multiply(const AlgebraPresentation& p, const Element& a, const Element& b) {
  if (omp_get_max_threads() > 1 && a.terms().size() >= 4 && a.terms().size() * b.terms().size() >= 32)
    return multiply_parallel(p, a, b);
  return multiply_serial(p, a, b);
}

Element commutator(const AlgebraPresentation& p, const Element& a, const Element& b) {
  return multiply(p, a, b) - multiply(p, b, a);
}

Element power(const AlgebraPresentation& p, const Element& a, unsigned n) {
  Element r(RationalFunction(1));
  for (unsigned k = 0; k < n; ++k) r = multiply(p, r, a);
  return r;
}

// ---------------------------------------------------------------- confluence

std::string CriticalPairReport::label(const AlgebraPresentation& p) const {
  std::ostringstream os;
  if (kind == Kind::Overlap) {
    os << "overlap " << render_word(p, gens);
  } else {
    os << "exchange " << render_word(p, gens) << " with " << variable.name();
  }
  return os.str();
}

namespace {

struct ConfluenceJob {
  CriticalPairReport::Kind kind;
  std::vector<int> gens;
  Symbol variable;
};

std::vector<ConfluenceJob> confluence_jobs(const AlgebraPresentation& p) {
  std::vector<ConfluenceJob> jobs;
  const int n = static_cast<int>(p.size());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) jobs.push_back({CriticalPairReport::Kind::Overlap, {k, j, i}, {}});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      for (Symbol x : p.coeffs) jobs.push_back({CriticalPairReport::Kind::Coefficient, {j, i}, x});
  return jobs;
}

CriticalPairReport run_job(const AlgebraPresentation& p, const ConfluenceJob& job) {
  CriticalPairReport r{job.kind, job.gens, job.variable, {}, {}, false};
  try {
    if (job.kind == CriticalPairReport::Kind::Overlap) {
      const int k = job.gens[0], j = job.gens[1], i = job.gens[2];
      RawSum left, right;
      for (const auto& [w, c] : p.rule(k, j).terms()) {
        RawTerm t{c, {}};
        for (int g : w) t.factors.emplace_back(g);
        t.factors.emplace_back(i);
        left.push_back(std::move(t));
      }
      for (const auto& [w, c] : p.rule(j, i).terms()) {
        RawTerm t{RationalFunction(1), {}};
        t.factors.emplace_back(k);
        t.factors.emplace_back(c);
        for (int g : w) t.factors.emplace_back(g);
        right.push_back(std::move(t));
      }
      r.left = normal_form(p, left);
      r.right = normal_form(p, right);
    } else {
      const int j = job.gens[0], i = job.gens[1];
      const RationalFunction x = RationalFunction(Polynomial::variable(job.variable));
      const Element& rhs = p.rule(j, i);
      for (const auto& [w, c] : rhs.terms()) r.left.add(w, c * p.word_sigma(w).apply(x));
      r.right = rhs.scaled(p.word_sigma({j, i}).apply(x));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonTerminating)
      throw Error(ErrorKind::NonTerminating, r.label(p) + ": " + e.what());
    throw;
  }
  r.resolved = r.left == r.right;
  return r;
}

}  // namespace

std::vector<CriticalPairReport> check_confluence_serial(const AlgebraPresentation& p) {
  std::vector<CriticalPairReport> out;
  for (const auto& job : confluence_jobs(p)) out.push_back(run_job(p, job));
  return out;
}

std::vector<CriticalPairReport> check_confluence(const AlgebraPresentation& p) {
  const auto jobs = confluence_jobs(p);
  std::vector<std::optional<CriticalPairReport>> out(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::vector<int> kinds(jobs.size(), -1);
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      out[u] = run_job(p, jobs[u]);
    } catch (const Error& e) {
      kinds[u] = static_cast<int>(e.kind());
      errors[u] = e.what();
    }
  }
  std::vector<CriticalPairReport> reports;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (kinds[i] >= 0) throw Error(static_cast<ErrorKind>(kinds[i]), errors[i]);
    reports.push_back(std::move(*out[i]));
  }
  return reports;
}

bool is_confluent(const std::vector<CriticalPairReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.resolved; });
}

// ---------------------------------------------------------------- twist

Twist derive_twist(const AlgebraPresentation& p, int a, Symbol x) {
  if (a < 0 || static_cast<std::size_t>(a) >= p.size()) throw Error(ErrorKind::UnknownGenerator, "bad generator index");
  if (!p.is_coefficient(x) && !p.is_scalar(x))
    throw Error(ErrorKind::UndeclaredSymbol, "'" + x.name() + "' is not a coefficient of " + p.name);
  const RationalFunction xv(Polynomial::variable(x));
  Twist t{p.sigma[static_cast<std::size_t>(a)].apply(xv), a, 0};

  std::vector<Word> witnesses{{}};
  const int n = static_cast<int>(p.size());
  for (int g = 0; g < n; ++g) witnesses.push_back({g});
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) witnesses.push_back({g, h});

  const RewriteOptions rightmost{Strategy::Rightmost, 0, 0};
  for (const Word& b : witnesses) {
    // a (x b): reduce b first, then multiply with the opposite strategy.
    Element nb = normal_form(p, Element::monomial(1, b));
    Element lhs = multiply_serial(p, Element::generator(a), nb.scaled(xv), rightmost);
    RawTerm ab{RationalFunction(1), {}};
    ab.factors.emplace_back(a);
    for (int g : b) ab.factors.emplace_back(g);
    Element rhs = normal_form(p, RawSum{ab}).scaled(t.coeff);
    ++t.witnesses_checked;
    if (!(lhs == rhs))
      throw Error(ErrorKind::TwistAxiomFailure, "twist of " + p.generators[static_cast<std::size_t>(a)] + " with " +
                                                    x.name() + " fails on b = " + render_word(p, b) + ": " +
                                                    render(p, lhs) + " != " + render(p, rhs));
  }
  return t;
}

// ---------------------------------------------------------------- rendering

std::string render_word(const AlgebraPresentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i) os << "*";
    const auto g = static_cast<std::size_t>(w[i]);
    os << (g < p.generators.size() ? p.generators[g] : "?" + std::to_string(w[i]));
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

namespace {

bool needs_parens(const RationalFunction& c) {
  // A product "c*w" parses back correctly when c is a single signed term
  // (possibly over a denominator).
  return c.numerator().terms().size() > 1;
}

}  // namespace

std::string render(const AlgebraPresentation& p, const Element& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    std::string term;
    if (w.empty()) {
      term = needs_parens(c) && !first ? "(" + c.to_string() + ")" : c.to_string();
    } else if (c.is_one()) {
      term = render_word(p, w);
    } else if ((-c).is_one()) {
      term = "-" + render_word(p, w);
    } else if (needs_parens(c)) {
      term = "(" + c.to_string() + ")*" + render_word(p, w);
    } else {
      term = c.to_string() + "*" + render_word(p, w);
    }
    if (first) {
      os << term;
    } else if (term.front() == '-') {
      os << " - " << term.substr(1);
    } else {
      os << " + " << term;
    }
    first = false;
  }
  return os.str();
}

std::string render_twist(const AlgebraPresentation& p, const Twist& t) {
  return "(" + t.coeff.to_string() + ") (x) " + p.generators.at(static_cast<std::size_t>(t.generator));
}

}  // namespace pbw
