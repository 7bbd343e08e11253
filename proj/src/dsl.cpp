#include "pbw/dsl.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "pbw/catalog.hpp"

namespace pbw {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1, col = 1;
};

std::string where(const Token& t) { return std::to_string(t.line) + ":" + std::to_string(t.col); }

[[noreturn]] void fail_at(const Token& t, ErrorKind kind, const std::string& msg) {
  throw Error(kind, where(t) + ": " + msg);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.')) ++j;
      t.type = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.type = Tok::Number;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      j = i + 2;
      t.type = Tok::Punct;
    } else if (std::string_view("{}:;,<*=^/+-()").find(c) != std::string_view::npos) {
      j = i + 1;
      t.type = Tok::Punct;
    } else {
      Token bad = t;
      throw Error(ErrorKind::SyntaxError, where(bad) + ": unexpected character '" + std::string(1, c) + "'");
    }
    t.text = std::string(s.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------- raw sums

bool coefficient_only(const RawSum& v) {
  for (const auto& t : v)
    for (const auto& f : t.factors)
      if (std::holds_alternative<int>(f)) return false;
  return true;
}

RationalFunction collapse(const RawSum& v) {
  RationalFunction r;
  for (const auto& t : v) {
    RationalFunction c = t.coeff;
    for (const auto& f : t.factors) c = c * std::get<RationalFunction>(f);
    r = r + c;
  }
  return r;
}

RawSum constant(const RationalFunction& c) {
  if (c.is_zero()) return {};
  return {RawTerm{c, {}}};
}

RawSum negate(RawSum v) {
  for (auto& t : v) t.coeff = -t.coeff;
  return v;
}

void append_factor(RawTerm& t, const Factor& f) {
  if (const auto* c = std::get_if<RationalFunction>(&f)) {
    if (c->is_one()) return;
    if (t.factors.empty()) {
      t.coeff = t.coeff * *c;
      return;
    }
    if (auto* last = std::get_if<RationalFunction>(&t.factors.back())) {
      *last = *last * *c;
      return;
    }
  }
  t.factors.push_back(f);
}

RawSum product(const RawSum& a, const RawSum& b) {
  RawSum out;
  for (const auto& ta : a)
    for (const auto& tb : b) {
      RawTerm t = ta;
      append_factor(t, tb.coeff);
      for (const auto& f : tb.factors) append_factor(t, f);
      if (!t.coeff.is_zero()) out.push_back(std::move(t));
    }
  return out;
}

// ---------------------------------------------------------------- expressions

// Resolves an identifier to a generator index or a coefficient symbol.
using Resolver = std::function<Factor(const Token&)>;

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t& pos, Resolver resolve)
      : t_(toks), pos_(pos), resolve_(std::move(resolve)) {}

  RawSum expr() {
    RawSum v = term();
    while (is("+") || is("-")) {
      const bool minus = take().text == "-";
      RawSum r = term();
      if (minus) r = negate(std::move(r));
      v.insert(v.end(), r.begin(), r.end());
    }
    return v;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  bool is(const char* p) const { return peek().type == Tok::Punct && peek().text == p; }
  const Token& take() { return t_[t_[pos_].type == Tok::End ? pos_ : pos_++]; }

  RawSum term() {
    RawSum v = unary();
    while (is("*") || is("/")) {
      const Token& op = take();
      const Token& at = peek();
      RawSum r = unary();
      if (op.text == "*") {
        v = product(v, r);
        continue;
      }
      if (!coefficient_only(r)) fail_at(at, ErrorKind::SyntaxError, "division by an expression with generators");
      const RationalFunction d = collapse(r);
      if (d.is_zero()) fail_at(at, ErrorKind::DivisionByZero, "division by zero");
      v = product(v, constant(RationalFunction(1) / d));
    }
    return v;
  }

  RawSum unary() {
    if (is("-")) {
      take();
      return negate(unary());
    }
    if (is("+")) {
      take();
      return unary();
    }
    return power();
  }

  RawSum power() {
    RawSum base = atom();
    if (!is("^")) return base;
    take();
    bool neg = false;
    if (is("-")) {
      take();
      neg = true;
    }
    const Token& n = take();
    if (n.type != Tok::Number) fail_at(n, ErrorKind::SyntaxError, "expected an integer exponent");
    if (n.text.size() > 4) fail_at(n, ErrorKind::SyntaxError, "exponent too large");
    const int e = std::stoi(n.text);
    if (coefficient_only(base)) {
      const RationalFunction c = collapse(base);
      if (neg && c.is_zero()) fail_at(n, ErrorKind::DivisionByZero, "negative power of zero");
      return constant(c.pow(neg ? -e : e));
    }
    if (neg) fail_at(n, ErrorKind::SyntaxError, "negative power of an expression with generators");
    RawSum out = constant(RationalFunction(1));
    for (int k = 0; k < e; ++k) out = product(out, base);
    return out;
  }

  RawSum atom() {
    const Token& t = take();
    if (t.type == Tok::Number) return constant(RationalFunction(parse_rational(t.text)));
    if (t.type == Tok::Ident) {
      Factor f = resolve_(t);
      if (const auto* c = std::get_if<RationalFunction>(&f)) return constant(*c);
      return {RawTerm{RationalFunction(1), {f}}};
    }
    if (t.type == Tok::Punct && t.text == "(") {
      RawSum v = expr();
      const Token& close = take();
      if (close.type != Tok::Punct || close.text != ")") fail_at(close, ErrorKind::SyntaxError, "expected ')'");
      return v;
    }
    fail_at(t, ErrorKind::SyntaxError, t.type == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  const std::vector<Token>& t_;
  std::size_t& pos_;
  Resolver resolve_;
};

Resolver resolver_for(const AlgebraPresentation& p, bool allow_generators) {
  return [&p, allow_generators](const Token& t) -> Factor {
    if (p.has_generator(t.text)) {
      if (!allow_generators) fail_at(t, ErrorKind::SyntaxError, "generator '" + t.text + "' in a coefficient expression");
      return p.generator_index(t.text);
    }
    const Symbol s(t.text);
    if (p.is_coefficient(s) || p.is_scalar(s)) return RationalFunction(Polynomial::variable(s));
    fail_at(t, ErrorKind::UndeclaredSymbol, "'" + t.text + "' is not declared in " + p.name);
  };
}

// ---------------------------------------------------------------- blocks

class FileParser {
 public:
  explicit FileParser(std::string_view text) : t_(lex(text)) {}

  SourceFile run() {
    while (peek().type != Tok::End) {
      const Token& kw = take();
      if (kw.type == Tok::Ident && kw.text == "algebra")
        algebra();
      else if (kw.type == Tok::Ident && kw.text == "map")
        map_block();
      else
        fail_at(kw, ErrorKind::SyntaxError, "expected 'algebra' or 'map'");
    }
    return std::move(out_);
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  const Token& take() { return t_[t_[pos_].type == Tok::End ? pos_ : pos_++]; }
  bool is(const char* p) const { return peek().type == Tok::Punct && peek().text == p; }

  const Token& expect(const char* p) {
    const Token& t = take();
    if (t.type != Tok::Punct || t.text != p)
      fail_at(t, ErrorKind::SyntaxError, std::string("expected '") + p + "'" + (t.type == Tok::End ? "" : ", got '" + t.text + "'"));
    return t;
  }
  const Token& ident(const char* what) {
    const Token& t = take();
    if (t.type != Tok::Ident) fail_at(t, ErrorKind::SyntaxError, std::string("expected ") + what);
    return t;
  }

  std::vector<std::string> list(const char* sep, const char* what) {
    std::vector<std::string> out;
    if (is(";")) return out;
    out.push_back(ident(what).text);
    while (is(sep)) {
      take();
      out.push_back(ident(what).text);
    }
    return out;
  }

  void declare(std::set<std::string>& seen, const Token& at, const std::string& name) {
    if (!seen.insert(name).second) fail_at(at, ErrorKind::SyntaxError, "'" + name + "' declared twice");
  }

  RawSum expression(const AlgebraPresentation& p, bool allow_generators) {
    ExprParser e(t_, pos_, resolver_for(p, allow_generators));
    return e.expr();
  }

  void algebra() {
    const Token& name = ident("an algebra name");
    AlgebraPresentation p;
    p.name = name.text;
    std::set<std::string> seen;
    bool have_gens = false;
    expect("{");
    while (!is("}")) {
      const Token& kw = ident("a section keyword");
      if (kw.text == "scalars" || kw.text == "coeffs" || kw.text == "gens") {
        expect(":");
        const Token& at = peek();
        const bool gens = kw.text == "gens";
        if (gens && have_gens) fail_at(kw, ErrorKind::SyntaxError, "second 'gens' section");
        for (const auto& n : list(gens ? "<" : ",", "an identifier")) {
          declare(seen, at, n);
          if (gens)
            p.generators.push_back(n);
          else
            (kw.text == "scalars" ? p.scalars : p.coeffs).emplace_back(n);
        }
        if (gens) {
          have_gens = true;
          p.sigma.assign(p.generators.size(), Substitution());
        }
        expect(";");
      } else if (kw.text == "sigma") {
        const Token& g = ident("a generator");
        if (!p.has_generator(g.text)) fail_at(g, ErrorKind::UndeclaredSymbol, "'" + g.text + "' is not a generator");
        expect(":");
        const Token& var = ident("a coefficient variable");
        if (!p.is_coefficient(Symbol(var.text)))
          fail_at(var, ErrorKind::UndeclaredSymbol, "'" + var.text + "' is not a coefficient variable");
        expect("->");
        const RationalFunction img = collapse(expression(p, false));
        auto& sub = p.sigma[static_cast<std::size_t>(p.generator_index(g.text))];
        if (sub.images().count(Symbol(var.text)))
          fail_at(var, ErrorKind::SyntaxError, "sigma " + g.text + " of " + var.text + " given twice");
        sub.set(Symbol(var.text), img);
        expect(";");
      } else if (kw.text == "rule") {
        expect(":");
        rule(p);
        expect(";");
      } else {
        fail_at(kw, ErrorKind::SyntaxError, "unknown section '" + kw.text + "'");
      }
    }
    expect("}");
    if (!have_gens) fail_at(name, ErrorKind::SyntaxError, "algebra " + p.name + " has no 'gens' section");
    if (out_.find_algebra(p.name)) fail_at(name, ErrorKind::SyntaxError, "algebra " + p.name + " defined twice");
    try {
      p.validate();
    } catch (const Error& e) {
      fail_at(name, e.kind(), e.detail());
    }
    out_.algebras.push_back(std::move(p));
  }

  void rule(AlgebraPresentation& p) {
    const Token& a = ident("a generator");
    expect("*");
    const Token& b = ident("a generator");
    for (const Token* t : {&a, &b})
      if (!p.has_generator(t->text)) fail_at(*t, ErrorKind::UndeclaredSymbol, "'" + t->text + "' is not a generator");
    const int high = p.generator_index(a.text), low = p.generator_index(b.text);
    if (high <= low)
      fail_at(a, ErrorKind::MisorientedRule,
              "rule left side " + a.text + "*" + b.text + " must be descending (" + b.text + " < " + a.text + " fails)");
    if (p.rules.count({high, low})) fail_at(a, ErrorKind::SyntaxError, "second rule for " + a.text + "*" + b.text);
    expect("=");
    const Token& at = peek();
    Element rhs;
    for (const auto& t : expression(p, true)) {
      Word w;
      for (const auto& f : t.factors) {
        if (const auto* g = std::get_if<int>(&f)) {
          w.push_back(*g);
        } else {
          fail_at(at, ErrorKind::NonAscendingRuleRHS, "coefficient to the right of a generator in rule " + a.text + "*" + b.text);
        }
      }
      if (!is_ascending(w))
        fail_at(at, ErrorKind::NonAscendingRuleRHS,
                "word " + render_word(p, w) + " in rule " + a.text + "*" + b.text + " is not ascending");
      rhs.add(w, t.coeff);
    }
    p.rules[{high, low}] = rhs;
  }

  AlgebraPresentation endpoint(const Token& t) {
    if (const auto* p = out_.find_algebra(t.text)) return *p;
    try {
      return build(t.text);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownKey)
        fail_at(t, ErrorKind::UndeclaredSymbol, "no algebra or catalog entry '" + t.text + "'");
      fail_at(t, e.kind(), e.detail());
    }
  }

  void map_block() {
    const Token& name = ident("a map name");
    GeneratorMorphism m;
    m.name = name.text;
    expect(":");
    m.source = endpoint(ident("a source algebra"));
    expect("->");
    m.target = endpoint(ident("a target algebra"));
    expect("{");
    while (!is("}")) {
      const Token& sym = ident("a source symbol or 'kind'");
      if (sym.text == "kind" && is(":")) {
        take();
        const Token& k = ident("a morphism kind");
        if (k.text == "projection") m.kind = MorphKind::Projection;
        else if (k.text == "inclusion") m.kind = MorphKind::Inclusion;
        else if (k.text == "quantization") m.kind = MorphKind::Quantization;
        else if (k.text == "generic") m.kind = MorphKind::Generic;
        else fail_at(k, ErrorKind::SyntaxError, "unknown kind '" + k.text + "'");
        expect(";");
        continue;
      }
      const Symbol s(sym.text);
      if (!m.source.has_generator(sym.text) && !m.source.is_coefficient(s) && !m.source.is_scalar(s))
        fail_at(sym, ErrorKind::UndeclaredSymbol, "'" + sym.text + "' is not a symbol of " + m.source.name);
      if (m.assignment.count(sym.text)) fail_at(sym, ErrorKind::SyntaxError, "'" + sym.text + "' assigned twice");
      expect("->");
      m.assignment[sym.text] = normal_form(m.target, expression(m.target, true));
      expect(";");
    }
    expect("}");
    if (out_.find_map(m.name)) fail_at(name, ErrorKind::SyntaxError, "map " + m.name + " defined twice");
    out_.maps.push_back(std::move(m));
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  SourceFile out_;
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::vector<std::string> names(const std::vector<Symbol>& xs) {
  std::vector<std::string> out;
  for (Symbol s : xs) out.push_back(s.name());
  return out;
}

std::string map_text(const GeneratorMorphism& m) {
  std::ostringstream os;
  os << "map " << m.name << ": " << m.source.name << " -> " << m.target.name << " {\n";
  for (const auto& [sym, img] : m.assignment) os << "  " << sym << " -> " << render(m.target, img) << ";\n";
  os << "  kind: " << to_string(m.kind) << ";\n}\n";
  return os.str();
}

}  // namespace

const AlgebraPresentation* SourceFile::find_algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.name == name) return &a;
  return nullptr;
}

const GeneratorMorphism* SourceFile::find_map(const std::string& name) const {
  for (const auto& m : maps)
    if (m.name == name) return &m;
  return nullptr;
}

SourceFile parse_source(std::string_view text) { return FileParser(text).run(); }

SourceFile parse_source_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_source(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ":" + e.detail());
  }
}

std::string to_string(MorphKind k) {
  switch (k) {
    case MorphKind::Projection: return "projection";
    case MorphKind::Inclusion: return "inclusion";
    case MorphKind::Quantization: return "quantization";
    case MorphKind::Generic: return "generic";
  }
  return "generic";
}

std::string print(const AlgebraPresentation& p) {
  std::ostringstream os;
  os << "algebra " << p.name << " {\n";
  if (!p.scalars.empty()) os << "  scalars: " << join(names(p.scalars), ", ") << ";\n";
  if (!p.coeffs.empty()) os << "  coeffs: " << join(names(p.coeffs), ", ") << ";\n";
  os << "  gens: " << join(p.generators, " < ") << ";\n";
  for (std::size_t g = 0; g < p.sigma.size(); ++g)
    for (const auto& [var, img] : p.sigma[g].images())
      os << "  sigma " << p.generators[g] << ": " << var.name() << " -> " << img.to_string() << ";\n";
  for (const auto& [key, rhs] : p.rules)
    os << "  rule: " << p.generators[static_cast<std::size_t>(key.high)] << "*"
       << p.generators[static_cast<std::size_t>(key.low)] << " = " << render(p, rhs) << ";\n";
  os << "}\n";
  return os.str();
}

std::string print(const GeneratorMorphism& m) {
  std::ostringstream os;
  os << print(m.source);
  if (m.target.name != m.source.name) os << "\n" << print(m.target);
  os << "\n" << map_text(m);
  return os.str();
}

std::string print(const SourceFile& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& a : f.algebras) {
    os << (first ? "" : "\n") << print(a);
    first = false;
  }
  for (const auto& m : f.maps) {
    os << (first ? "" : "\n") << map_text(m);
    first = false;
  }
  return os.str();
}

RawSum parse_expression(const AlgebraPresentation& p, std::string_view text) {
  const auto toks = lex(text);
  std::size_t pos = 0;
  ExprParser e(toks, pos, resolver_for(p, true));
  RawSum v = e.expr();
  if (toks[pos].type != Tok::End) fail_at(toks[pos], ErrorKind::SyntaxError, "trailing '" + toks[pos].text + "'");
  return v;
}

RationalFunction parse_rational_function(std::string_view text) {
  const auto toks = lex(text);
  std::size_t pos = 0;
  ExprParser e(toks, pos, [](const Token& t) -> Factor { return RationalFunction::variable(t.text); });
  RawSum v = e.expr();
  if (toks[pos].type != Tok::End) fail_at(toks[pos], ErrorKind::SyntaxError, "trailing '" + toks[pos].text + "'");
  return collapse(v);
}

}  // namespace pbw
