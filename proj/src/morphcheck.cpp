#include "pbw/morphcheck.hpp"

#include <algorithm>
#include <sstream>

namespace pbw {

namespace {

const Element& assigned(const GeneratorMorphism& m, const std::string& sym) {
  auto it = m.assignment.find(sym);
  if (it == m.assignment.end())
    throw Error(ErrorKind::InvalidPresentation, m.name + ": no image assigned to '" + sym + "'");
  return it->second;
}

void check_complete(const GeneratorMorphism& m) {
  for (const auto& g : m.source.generators) (void)assigned(m, g);
  for (Symbol c : m.source.coeffs) (void)assigned(m, c.name());
  for (const auto& [sym, e] : m.assignment) {
    if (!m.source.has_generator(sym) && !m.source.is_coefficient(Symbol(sym)) && !m.source.is_scalar(Symbol(sym)))
      throw Error(ErrorKind::UndeclaredSymbol, m.name + ": '" + sym + "' is not a symbol of " + m.source.name);
  }
}

// Splits a polynomial into (monomial in `vars`) -> coefficient polynomial
// in the remaining variables.
std::map<std::vector<std::pair<std::string, int>>, Polynomial> split_by(const Polynomial& p,
                                                                       const std::set<Symbol>& vars) {
  std::map<std::vector<std::pair<std::string, int>>, Polynomial> out;
  for (const auto& [mono, c] : p.terms()) {
    std::vector<std::pair<std::string, int>> key;
    Monomial rest;
    for (const auto& [v, e] : mono.powers()) {
      if (vars.count(v))
        key.emplace_back(v.name(), e);
      else
        rest = rest * Monomial(v, e);
    }
    out[key] += Polynomial::term(rest, c);
  }
  return out;
}

// Coordinates of the elements over Q(scalars): one column per element, rows
// indexed by (word, monomial in coefficient variables).
Matrix<RationalFunction> scalar_coordinates(const std::vector<Element>& elems, const std::set<Symbol>& coeffs) {
  Polynomial den(1);
  for (const auto& e : elems)
    for (const auto& [w, c] : e.terms()) den = lcm(den, c.denominator());
  using Key = std::pair<Word, std::vector<std::pair<std::string, int>>>;
  std::map<Key, std::size_t> rows;
  Matrix<RationalFunction> a;
  for (std::size_t col = 0; col < elems.size(); ++col) {
    for (const auto& [w, c] : elems[col].terms()) {
      Polynomial num = c.numerator() * den.exact_div(c.denominator());
      for (auto& [mono, coeff] : split_by(num, coeffs)) {
        auto [it, inserted] = rows.try_emplace(Key{w, mono}, a.size());
        if (inserted) a.emplace_back(elems.size(), RationalFunction());
        a[it->second][col] += RationalFunction(coeff);
      }
    }
  }
  return a;
}

// Coordinates over K: rows indexed by word.
Matrix<RationalFunction> field_coordinates(const std::vector<Element>& elems, std::map<Word, std::size_t>& rows) {
  Matrix<RationalFunction> a;
  for (std::size_t col = 0; col < elems.size(); ++col)
    for (const auto& [w, c] : elems[col].terms()) {
      auto [it, inserted] = rows.try_emplace(w, a.size());
      if (inserted) a.emplace_back(elems.size(), RationalFunction());
      a[it->second][col] = c;
    }
  return a;
}

std::string render_combination(const std::vector<RationalFunction>& k, const std::vector<std::string>& basis) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << k[i].to_string() << ")*[" << basis[i] << "]";
    first = false;
  }
  return os.str();
}

void all_words(std::size_t n, std::size_t len, Word& cur, std::vector<Word>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::size_t g = 0; g < n; ++g) {
    cur.push_back(static_cast<int>(g));
    all_words(n, len, cur, out);
    cur.pop_back();
  }
}

void ascending_words(std::size_t n, std::size_t len, int from, Word& cur, std::vector<Word>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (int g = from; g < static_cast<int>(n); ++g) {
    cur.push_back(g);
    ascending_words(n, len, g, cur, out);
    cur.pop_back();
  }
}

// Monomials of total degree exactly d in the given variables.
void monomials(const std::vector<Symbol>& vars, std::size_t from, int d, Polynomial cur, std::vector<Polynomial>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < vars.size(); ++i)
    monomials(vars, i, d - 1, cur * Polynomial::variable(vars[i]), out);
}

}  // namespace

GeneratorMorphism identity_morphism(const AlgebraPresentation& p) {
  GeneratorMorphism m{"id_" + p.name, p, p, {}, MorphKind::Generic};
  for (std::size_t g = 0; g < p.size(); ++g) m.assignment[p.generators[g]] = Element::generator(static_cast<int>(g));
  for (Symbol c : p.coeffs) m.assignment[c.name()] = Element(RationalFunction(Polynomial::variable(c)));
  return m;
}

GeneratorMorphism compose(const GeneratorMorphism& first, const GeneratorMorphism& second) {
  if (!(first.target == second.source))
    throw Error(ErrorKind::InvalidPresentation,
                "cannot compose " + first.name + " with " + second.name + ": target and source differ");
  GeneratorMorphism m{second.name + "*" + first.name, first.source, second.target, {}, MorphKind::Generic};
  for (const auto& [sym, e] : first.assignment) m.assignment[sym] = image(second, e);
  return m;
}

Element image(const GeneratorMorphism& m, const RationalFunction& c) {
  // Variables whose images are target scalars are substituted directly.
  Substitution direct;
  std::map<Symbol, const Element*> element_images;
  for (Symbol v : c.variables()) {
    auto it = m.assignment.find(v.name());
    if (it == m.assignment.end()) {
      if (m.source.is_coefficient(v))
        throw Error(ErrorKind::InvalidPresentation, m.name + ": no image assigned to '" + v.name() + "'");
      continue;  // scalar mapped to itself
    }
    if (auto s = it->second.as_scalar())
      direct.set(v, *s);
    else
      element_images[v] = &it->second;
  }
  RationalFunction reduced = direct.apply(c);
  if (element_images.empty()) return Element(reduced);

  std::set<Symbol> lifted;
  for (const auto& [v, e] : element_images) lifted.insert(v);
  for (Symbol v : reduced.denominator().variables())
    if (lifted.count(v))
      throw Error(ErrorKind::NonInvertibleImage,
                  "denominator of " + c.to_string() + " involves '" + v.name() + "', whose image is not invertible");

  Element out;
  const RationalFunction inv_den = RationalFunction(1) / RationalFunction(reduced.denominator());
  for (const auto& [mono, coeff] : reduced.numerator().terms()) {
    Monomial rest;
    Element prod(RationalFunction(1));
    for (const auto& [v, e] : mono.powers()) {
      if (lifted.count(v)) {
        for (int k = 0; k < e; ++k) prod = multiply(m.target, prod, *element_images[v]);
      } else {
        rest = rest * Monomial(v, e);
      }
    }
    out += prod.scaled(RationalFunction(Polynomial::term(rest, coeff)) * inv_den);
  }
  return out;
}

Element image(const GeneratorMorphism& m, const Element& e) {
  std::vector<const Element*> gens;
  for (const auto& g : m.source.generators) gens.push_back(&assigned(m, g));
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Element prod = image(m, c);
    for (int g : w) prod = multiply(m.target, prod, *gens.at(static_cast<std::size_t>(g)));
    out += prod;
  }
  return out;
}

Report verify_homomorphism(const GeneratorMorphism& m, unsigned depth) {
  check_complete(m);
  const auto& src = m.source;
  const auto& dst = m.target;
  Report r;
  r.title = "homomorphism " + m.name;

  std::vector<Symbol> lifted;
  for (Symbol c : src.coeffs)
    if (!assigned(m, c.name()).as_scalar()) lifted.push_back(c);
  for (std::size_t i = 0; i < lifted.size(); ++i)
    for (std::size_t j = i + 1; j < lifted.size(); ++j) {
      Element k = commutator(dst, assigned(m, lifted[i].name()), assigned(m, lifted[j].name()));
      r.add("images of " + lifted[i].name() + " and " + lifted[j].name() + " commute", k.is_zero(),
            "RelationViolation", render(dst, k));
    }

  auto residue_item = [&](const std::string& label, const auto& compute) {
    try {
      Element res = compute();
      r.add(label, res.is_zero(), "RelationViolation", render(dst, res));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonInvertibleImage) throw;
      r.defer(label, e.what());
    }
  };

  for (const auto& [key, rhs] : src.rules) {
    const std::string label = "rule " + render_word(src, {key.high, key.low});
    residue_item(label, [&] {
      Element lhs = multiply(dst, assigned(m, src.generators[static_cast<std::size_t>(key.high)]),
                             assigned(m, src.generators[static_cast<std::size_t>(key.low)]));
      return lhs - image(m, rhs);
    });
  }

  for (std::size_t g = 0; g < src.size(); ++g)
    for (Symbol x : src.coeffs) {
      const std::string label = "exchange " + src.generators[g] + " with " + x.name();
      residue_item(label, [&] {
        const Element& gi = assigned(m, src.generators[g]);
        Element lhs = multiply(dst, gi, assigned(m, x.name()));
        RationalFunction moved = src.sigma[g].apply(RationalFunction(Polynomial::variable(x)));
        return lhs - multiply(dst, image(m, moved), gi);
      });
    }

  for (unsigned len = 3; len <= depth; ++len) {
    std::vector<Word> words;
    Word cur;
    all_words(src.size(), len, cur, words);
    std::string witness;
    try {
      for (const auto& w : words) {
        Element direct(RationalFunction(1));
        for (int g : w) direct = multiply(dst, direct, assigned(m, src.generators[static_cast<std::size_t>(g)]));
        Element via = image(m, normal_form(src, Element::monomial(1, w)));
        if (!(direct == via)) {
          witness = render_word(src, w) + ": " + render(dst, direct - via);
          break;
        }
      }
      r.add("products of " + std::to_string(words.size()) + " words of length " + std::to_string(len),
            witness.empty(), "RelationViolation", witness);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonInvertibleImage) throw;
      r.defer("products of words of length " + std::to_string(len), e.what());
    }
  }

  if (m.kind == MorphKind::Projection) {
    std::vector<Element> span;
    for (std::size_t len = 0; len <= 2; ++len) {
      std::vector<Word> words;
      Word cur;
      ascending_words(src.size(), len, 0, cur, words);
      for (const auto& w : words) span.push_back(image(m, Element::monomial(1, w)));
    }
    for (std::size_t t = 0; t < dst.size(); ++t) {
      std::vector<Element> cols = span;
      cols.push_back(Element::generator(static_cast<int>(t)));
      std::map<Word, std::size_t> rows;
      auto a = field_coordinates(cols, rows);
      std::vector<RationalFunction> b;
      for (auto& row : a) {
        b.push_back(row.back());
        row.pop_back();
      }
      bool in_span = solve(a, b, span.size()).has_value();
      r.add("target generator " + dst.generators[t] + " in image span (degree 2)", in_span, "NotSurjective",
            dst.generators[t] + " is not reached");
    }
    r.note("surjectivity is checked on generators against images of source words of degree <= 2");
  }
  return r;
}

MonomorphismResult verify_monomorphism(const GeneratorMorphism& m, unsigned degree) {
  check_complete(m);
  MonomorphismResult out;
  out.report.title = "monomorphism " + m.name;
  const auto& src = m.source;

  std::vector<Element> images;
  std::set<Symbol> target_coeffs = m.target.coefficient_set();
  for (unsigned d = 0; d <= degree; ++d) {
    // basis elements of total degree d: coefficient monomial of degree d - |w| times ascending w
    std::vector<Element> level;
    for (unsigned len = 0; len <= d; ++len) {
      std::vector<Word> words;
      Word cur;
      ascending_words(src.size(), len, 0, cur, words);
      std::vector<Polynomial> monos;
      monomials(src.coeffs, 0, static_cast<int>(d - len), Polynomial(1), monos);
      for (const auto& mono : monos)
        for (const auto& w : words) {
          Element e = Element::monomial(RationalFunction(mono), w);
          std::string label = render(src, e);
          out.basis.push_back(label);
          images.push_back(image(m, e));
        }
    }
    auto a = scalar_coordinates(images, target_coeffs);
    auto kernel = nullspace(a, images.size());
    if (!kernel.empty()) {
      out.kernel = kernel.front();
      out.report.fail("images independent up to degree " + std::to_string(d), "DependenceFound",
                      render_combination(out.kernel, out.basis) + " = 0");
      return out;
    }
    out.verified_degree = d;
  }
  out.report.pass("images independent up to degree " + std::to_string(degree),
                  std::to_string(images.size()) + " basis elements");
  return out;
}

Rational LieConstants::constant(int i, int j, int k) const {
  if (i == j) return 0;
  int sign = 1;
  if (i < j) {
    std::swap(i, j);
    sign = -1;
  }
  auto it = bracket.find({i, j});
  if (it == bracket.end()) return 0;
  auto jt = it->second.find(k);
  return jt == it->second.end() ? Rational(0) : Rational(sign * jt->second);
}

LieConstants lie_constants(const AlgebraPresentation& lie, std::vector<std::string> labels) {
  LieConstants g;
  g.labels = labels.empty() ? lie.generators : std::move(labels);
  if (g.labels.size() != lie.size()) throw Error(ErrorKind::InvalidPresentation, "wrong number of labels");
  for (const auto& [key, rhs] : lie.rules) {
    Element lin = rhs - Element::monomial(1, {key.low, key.high});
    for (const auto& [w, c] : lin.terms()) {
      if (w.size() != 1 || !c.is_constant())
        throw Error(ErrorKind::InvalidPresentation, lie.name + " is not a Lie algebra presentation");
      g.bracket[{key.high, key.low}][w[0]] = c.constant_value();
    }
  }
  return g;
}

namespace {

// q(e_k) = scale * generator.
struct ScaledGenerator {
  int generator;
  RationalFunction scale;
};

std::vector<ScaledGenerator> quantized_basis(const LieConstants& g, const GeneratorMorphism& q) {
  if (q.source.size() != g.dim())
    throw Error(ErrorKind::InvalidPresentation, q.name + ": source dimension does not match the Lie constants");
  std::vector<ScaledGenerator> out;
  for (const auto& name : q.source.generators) {
    const Element& e = assigned(q, name);
    if (e.terms().size() != 1 || e.terms().begin()->first.size() != 1)
      throw Error(ErrorKind::InvalidPresentation, q.name + ": '" + name + "' must map to a multiple of a generator");
    out.push_back({e.terms().begin()->first[0], e.terms().begin()->second});
  }
  return out;
}

std::string triple(const LieConstants& g, int i, int j, int k) {
  return "(" + g.labels[static_cast<std::size_t>(i)] + "," + g.labels[static_cast<std::size_t>(j)] + "," +
         g.labels[static_cast<std::size_t>(k)] + ")";
}

}  // namespace

Report check_quantization_of_constants(const LieConstants& g, const GeneratorMorphism& q) {
  auto basis = quantized_basis(g, q);
  const auto& a = q.target;
  Report r;
  r.title = "quantization of constants " + q.name;
  const int n = static_cast<int>(g.dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      const auto& bi = basis[static_cast<std::size_t>(i)];
      const auto& bj = basis[static_cast<std::size_t>(j)];
      Element c = commutator(a, Element::monomial(bi.scale, {bi.generator}), Element::monomial(bj.scale, {bj.generator}));
      bool all_zero = true;
      for (int k = 0; k < n; ++k) {
        if (g.constant(i, j, k) != 0) {
          all_zero = false;
          continue;
        }
        const auto& bk = basis[static_cast<std::size_t>(k)];
        RationalFunction comp = c.coefficient({bk.generator}) / bk.scale;
        r.add("c" + triple(g, i, j, k) + " = 0 forces f" + triple(g, i, j, k) + " = 0", comp.is_zero(),
              "VanishingViolation", triple(g, i, j, k) + ": component " + comp.to_string());
      }
      if (all_zero) {
        r.add("[" + g.labels[static_cast<std::size_t>(i)] + "," + g.labels[static_cast<std::size_t>(j)] +
                  "] = 0 forces a vanishing bracket",
              c.is_zero(), "VanishingViolation", render(a, c));
      }
    }
  r.note("components outside the span of the quantized basis are attributed to the nonzero constants");
  return r;
}

Report check_quasilinear(const AlgebraPresentation& a) {
  Report r;
  r.title = "quasilinear " + a.name;
  const auto moved = a.coefficient_set();
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (a.sigma[g].is_identity()) continue;
    bool ok = g < a.sigma_inv.size() && a.sigma[g].after(a.sigma_inv[g]).agrees_on(Substitution{}, moved) &&
              a.sigma_inv[g].after(a.sigma[g]).agrees_on(Substitution{}, moved);
    r.add("exchange map of " + a.generators[g] + " is an automorphism", ok, "NotAutomorphism",
          a.sigma[g].to_string());
  }
  for (const auto& rep : check_confluence(a)) {
    if (rep.kind != CriticalPairReport::Kind::Coefficient) continue;
    r.add(rep.label(a), rep.resolved, "ExchangeIncompatible",
          render(a, rep.left) + " != " + render(a, rep.right));
  }
  for (std::size_t g = 0; g < a.size(); ++g)
    for (Symbol x : a.coeffs) {
      const std::string label = "twist of " + a.generators[g] + " with " + x.name();
      try {
        Twist t = derive_twist(a, static_cast<int>(g), x);
        r.pass(label, render_twist(a, t));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TwistAxiomFailure) throw;
        r.fail(label, "TwistAxiomFailure", e.detail());
      }
    }
  return r;
}

Report check_subalgebra_preserving(const LieConstants& g, const GeneratorMorphism& q,
                                   const std::vector<Subalgebra>& subs) {
  auto basis = quantized_basis(g, q);
  const auto& a = q.target;
  Report r;
  r.title = "subalgebra preservation " + q.name;
  auto img = [&](int k) {
    const auto& b = basis[static_cast<std::size_t>(k)];
    return Element::monomial(b.scale, {b.generator});
  };
  for (const auto& sub : subs) {
    for (std::size_t x = 0; x < sub.basis.size(); ++x)
      for (std::size_t y = 0; y < x; ++y) {
        int i = sub.basis[x], j = sub.basis[y];
        Element lhs = commutator(a, img(i), img(j));
        Element rhs;
        for (int k = 0; k < static_cast<int>(g.dim()); ++k) rhs += img(k).scaled(g.constant(i, j, k));
        r.add(sub.name + ": [" + g.labels[static_cast<std::size_t>(i)] + "," + g.labels[static_cast<std::size_t>(j)] +
                  "]",
              lhs == rhs, "BracketMismatch", render(a, lhs) + " != " + render(a, rhs));
      }
    std::vector<Element> imgs;
    std::vector<std::string> names;
    for (int k : sub.basis) {
      imgs.push_back(img(k));
      names.push_back(g.labels[static_cast<std::size_t>(k)]);
    }
    auto kernel = nullspace(scalar_coordinates(imgs, a.coefficient_set()), imgs.size());
    r.add(sub.name + ": images independent", kernel.empty(), "DependenceFound",
          kernel.empty() ? "" : render_combination(kernel.front(), names) + " = 0");
  }
  return r;
}

std::vector<std::string> list_morphisms() {
  return {"nonlinear_sl2.iota", "nonlinear_sl2.pi", "nonlinear_sl2.q", "uq_sl2.iota", "uq_sl2.pi", "uq_sl2.q"};
}

namespace {

Params only(const Params& ps, const std::vector<std::string>& keys) {
  Params out;
  for (const auto& [k, v] : ps)
    if (std::find(keys.begin(), keys.end(), k) != keys.end()) out[k] = v;
  return out;
}

Element gen(const AlgebraPresentation& p, const std::string& g) { return Element::generator(p.generator_index(g)); }

Element coeff(const std::string& v) { return Element(RationalFunction::variable(v)); }

}  // namespace

GeneratorMorphism build_morphism(const std::string& key, const Params& params) {
  const auto& keys = list_morphisms();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw Error(ErrorKind::UnknownKey, "no shipped morphism '" + key + "'");
  for (const auto& [k, v] : params)
    if (k != "h0" && k != "q") throw Error(ErrorKind::UnknownKey, key + " takes no parameter '" + k + "'");
  const bool nonlinear = key.rfind("nonlinear_sl2.", 0) == 0;
  const std::string lin_key = nonlinear ? "nonlinear_sl2_linearization" : "uq_sl2_linearization";
  AlgebraPresentation lin = build(lin_key, only(params, nonlinear ? std::vector<std::string>{"h0"} : std::vector<std::string>{"q"}));
  const std::string tail = key.substr(key.find('.') + 1);

  GeneratorMorphism m;
  m.name = key;
  if (tail == "pi") {
    m.kind = MorphKind::Projection;
    m.source = lin;
    m.target = nonlinear ? build("nonlinear_sl2", only(params, {"h0"})) : build("uq_sl2", only(params, {"q"}));
    m.assignment = {{"am", gen(m.target, "em")}, {"a0", gen(m.target, "e0")}, {"ap", gen(m.target, "ep")}};
    if (nonlinear) {
      m.assignment["eta"] = gen(m.target, "e0");
    } else {
      m.assignment["eta_p"] = coeff("kappa_p");
      m.assignment["eta_m"] = coeff("kappa_m");
    }
  } else if (tail == "iota") {
    m.kind = MorphKind::Inclusion;
    m.target = lin;
    if (nonlinear) {
      m.source = build("poly_x");
      m.assignment = {{"x", coeff("eta")}};
    } else {
      m.source = build("poly_xpm");
      m.assignment = {{"xm", coeff("eta_m")}, {"xp", coeff("eta_p")}};
    }
  } else {
    m.kind = MorphKind::Quantization;
    m.source = build("sl2");
    m.target = lin;
    m.assignment = {{"em", gen(lin, "am")}, {"e0", gen(lin, "a0")}, {"ep", gen(lin, "ap")}};
  }
  return m;
}

std::vector<Subalgebra> sl2_borels() { return {{"b+", {1, 2}}, {"b-", {0, 1}}}; }

LieConstants sl2_constants() { return lie_constants(build("sl2"), {"-1", "0", "1"}); }

}  // namespace pbw
