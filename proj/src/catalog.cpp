#include "pbw/catalog.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace pbw {

namespace {

RationalFunction v(const char* name) { return RationalFunction::variable(name); }

struct Term {
  RationalFunction coeff;
  std::vector<std::string> word;
};

class Builder {
 public:
  Builder(std::string name, std::vector<std::string> scalars, std::vector<std::string> coeffs,
          std::vector<std::string> gens) {
    p_.name = std::move(name);
    for (const auto& s : scalars) p_.scalars.emplace_back(s);
    for (const auto& c : coeffs) p_.coeffs.emplace_back(c);
    p_.generators = std::move(gens);
    p_.sigma.resize(p_.generators.size());
  }

  Builder& sigma(const std::string& g, const char* var, const RationalFunction& image) {
    p_.sigma[static_cast<std::size_t>(p_.generator_index(g))].set(Symbol(var), image);
    return *this;
  }

  Builder& rule(const std::string& high, const std::string& low, const std::vector<Term>& rhs) {
    Element e;
    for (const auto& t : rhs) {
      Word w;
      for (const auto& g : t.word) w.push_back(p_.generator_index(g));
      e.add(w, t.coeff);
    }
    p_.rules[{p_.generator_index(high), p_.generator_index(low)}] = e;
    return *this;
  }

  // g_high g_low -> g_low g_high
  Builder& commute(const std::string& high, const std::string& low) {
    return rule(high, low, {{1, {low, high}}});
  }

  AlgebraPresentation done() { return std::move(p_); }

 private:
  AlgebraPresentation p_;
};

Polynomial require_h0(const Params& params) {
  auto it = params.find("h0");
  if (it == params.end())
    throw Error(ErrorKind::MissingParameter, "h0 (a polynomial in t) is required");
  const RationalFunction& h0 = it->second;
  if (!h0.is_polynomial())
    throw Error(ErrorKind::InvalidPresentation, "h0 must be a polynomial, got " + h0.to_string());
  for (Symbol s : h0.variables())
    if (s.name() != "t") throw Error(ErrorKind::InvalidPresentation, "h0 may only involve t, found " + s.name());
  Polynomial poly = h0.numerator().scaled(1 / h0.denominator().constant_value());
  if (poly.degree_in(Symbol("t")) > kMaxH0Degree)
    throw Error(ErrorKind::InvalidPresentation, "h0 has degree above " + std::to_string(kMaxH0Degree));
  return poly;
}

// Terms c_k * x^(k+1) of x*h0(x) for a generator x.
std::vector<Term> times_h0_in_generator(const Polynomial& h0, const std::string& x) {
  std::vector<Term> out;
  auto cs = h0.coefficients_in(Symbol("t"));
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k].is_zero()) continue;
    out.push_back({RationalFunction(cs[k]), std::vector<std::string>(k + 1, x)});
  }
  return out;
}

RationalFunction h0_of(const Polynomial& h0, const RationalFunction& x) {
  auto cs = h0.coefficients_in(Symbol("t"));
  RationalFunction r;
  for (std::size_t k = cs.size(); k-- > 0;) r = r * x + RationalFunction(cs[k]);
  return r;
}

AlgebraPresentation sl2_like(const std::string& name, const std::vector<Term>& top) {
  return Builder(name, {}, {}, {"em", "e0", "ep"})
      .rule("e0", "em", {{1, {"em", "e0"}}, {1, {"em"}}})
      .rule("ep", "e0", {{1, {"e0", "ep"}}, {1, {"ep"}}})
      .rule("ep", "em", top)
      .done();
}

AlgebraPresentation nonlinear_sl2(const Params& ps) {
  auto top = times_h0_in_generator(require_h0(ps), "e0");
  top.insert(top.begin(), {1, {"em", "ep"}});
  return sl2_like("nonlinear_sl2", top);
}

AlgebraPresentation nonlinear_sl2_linearization(const Params& ps) {
  Polynomial h0 = require_h0(ps);
  auto eta = v("eta");
  return Builder("nonlinear_sl2_linearization", {}, {"eta"}, {"am", "a0", "ap"})
      .sigma("am", "eta", eta - 1)
      .sigma("ap", "eta", eta + 1)
      .rule("a0", "am", {{1, {"am", "a0"}}, {1, {"am"}}})
      .rule("ap", "a0", {{1, {"a0", "ap"}}, {1, {"ap"}}})
      .rule("ap", "am", {{1, {"am", "ap"}}, {h0_of(h0, eta), {"a0"}}})
      .done();
}

AlgebraPresentation q_deformed(const std::string& name, const std::array<std::string, 3>& g, const char* kp,
                               const char* km) {
  auto q = v("q");
  return Builder(name, {"q"}, {kp, km}, {g[0], g[1], g[2]})
      .sigma(g[2], kp, q * v(kp))
      .sigma(g[2], km, v(km) / q)
      .sigma(g[0], kp, v(kp) / q)
      .sigma(g[0], km, q * v(km))
      .rule(g[1], g[0], {{1, {g[0], g[1]}}, {1, {g[0]}}})
      .rule(g[2], g[1], {{1, {g[1], g[2]}}, {1, {g[2]}}})
      .rule(g[2], g[0], {{1, {g[0], g[2]}}, {v(kp) - v(km), {}}})
      .done();
}

AlgebraPresentation heisenberg(const Params&) {
  return Builder("heisenberg", {}, {}, {"p", "q", "r"})
      .rule("q", "p", {{1, {"p", "q"}}, {-1, {"r"}}})
      .commute("r", "p")
      .commute("r", "q")
      .done();
}

AlgebraPresentation osc(const Params&) {
  return Builder("osc", {}, {}, {"p", "q", "r", "eps"})
      .rule("q", "p", {{1, {"p", "q"}}, {-1, {"r"}}})
      .commute("r", "p")
      .commute("r", "q")
      .rule("eps", "p", {{1, {"p", "eps"}}, {-1, {"p"}}})
      .rule("eps", "q", {{1, {"q", "eps"}}, {1, {"q"}}})
      .commute("eps", "r")
      .done();
}

AlgebraPresentation osc_localized(const Params&) {
  auto eps = v("eps");
  return Builder("osc_localized", {}, {"eps"}, {"p", "q", "r"})
      .sigma("p", "eps", eps + 1)
      .sigma("q", "eps", eps - 1)
      .rule("q", "p", {{1, {"p", "q"}}, {-1, {"r"}}})
      .commute("r", "p")
      .commute("r", "q")
      .done();
}

Builder lobachevskii(const std::string& name, const char* coeff) {
  return Builder(name, {"qR"}, {coeff}, {"taus", "tau"});
}

AlgebraPresentation lobachevskii_lin1(const Params&) {
  auto eta = v("eta");
  return lobachevskii("lobachevskii_lin1", "eta")
      .sigma("tau", "eta", eta / (1 + eta))
      .sigma("taus", "eta", eta / (1 - eta))
      .rule("tau", "taus", {{1, {"taus", "tau"}}, {eta * eta / (v("qR") * (1 - eta)), {}}})
      .done();
}

AlgebraPresentation lobachevskii_lin2(const Params&) {
  auto eta = v("eta");
  auto p = lobachevskii("lobachevskii_lin2", "eta")
               .sigma("tau", "eta", eta / (1 + eta))
               .sigma("taus", "eta", eta / (1 - eta))
               .rule("tau", "taus", {{1 - eta, {"taus", "tau"}}, {eta, {}}})
               .done();
  p.scalars.clear();
  return p;
}

AlgebraPresentation lobachevskii_lin2_xi(const Params&) {
  auto xi = v("xi");
  auto p = lobachevskii("lobachevskii_lin2_xi", "xi")
               .sigma("tau", "xi", xi + 1)
               .sigma("taus", "xi", xi - 1)
               .rule("tau", "taus", {{(xi - 1) / xi, {"taus", "tau"}}, {1 / xi, {}}})
               .done();
  p.scalars.clear();
  return p;
}

AlgebraPresentation u_sl2_sl2_localized(const Params&) {
  auto hD = v("hD");
  return Builder("u_sl2_sl2_localized", {}, {"hD"}, {"fD", "fd", "hd", "ed", "eD"})
      .sigma("eD", "hD", hD - 2)
      .sigma("ed", "hD", hD - 2)
      .sigma("fD", "hD", hD + 2)
      .sigma("fd", "hD", hD + 2)
      .commute("fd", "fD")
      .rule("hd", "fD", {{1, {"fD", "hd"}}, {-2, {"fd"}}})
      .rule("hd", "fd", {{1, {"fd", "hd"}}, {-2, {"fD"}}})
      .rule("ed", "fD", {{1, {"fD", "ed"}}, {1, {"hd"}}})
      .rule("ed", "fd", {{1, {"fd", "ed"}}, {hD, {}}})
      .rule("ed", "hd", {{1, {"hd", "ed"}}, {-2, {"eD"}}})
      .rule("eD", "fD", {{1, {"fD", "eD"}}, {hD, {}}})
      .rule("eD", "fd", {{1, {"fd", "eD"}}, {1, {"hd"}}})
      .rule("eD", "hd", {{1, {"hd", "eD"}}, {-2, {"ed"}}})
      .commute("eD", "ed")
      .done();
}

AlgebraPresentation sl2(const Params&) {
  return sl2_like("sl2", {{1, {"em", "ep"}}, {1, {"e0"}}});
}

AlgebraPresentation poly_x(const Params&) { return Builder("poly_x", {}, {}, {"x"}).done(); }

AlgebraPresentation poly_xpm(const Params&) {
  return Builder("poly_xpm", {}, {}, {"xm", "xp"}).commute("xp", "xm").done();
}

using BuildFn = std::function<AlgebraPresentation(const Params&)>;

struct Shipped {
  CatalogEntry entry;
  BuildFn fn;
};

const std::vector<Shipped>& shipped() {
  static const std::vector<Shipped> all = {
      {{"nonlinear_sl2", "e_{+-1}, e_0 with [e1,e-1] = e0*h0(e0)", {"h0"}, {}}, nonlinear_sl2},
      {{"nonlinear_sl2_linearization", "a_{-1} < a_0 < a_1 over Q(eta), [a1,a-1] = h0(eta)*a0", {"h0"}, {}},
       nonlinear_sl2_linearization},
      {{"uq_sl2", "U_q(sl2) with kappa_{+-} standing for q^{+-e0}/(q - q^-1)", {}, {"q"}},
       [](const Params&) { return q_deformed("uq_sl2", {"em", "e0", "ep"}, "kappa_p", "kappa_m"); }},
      {{"uq_sl2_linearization", "a_i over Q(q)(eta_p, eta_m), [a1,a-1] = eta_p - eta_m", {}, {"q"}},
       [](const Params&) { return q_deformed("uq_sl2_linearization", {"am", "a0", "ap"}, "eta_p", "eta_m"); }},
      {{"heisenberg", "[p,q] = r, r central", {}, {}}, heisenberg},
      {{"osc", "heisenberg plus eps with [eps,q] = q, [eps,p] = -p", {}, {}}, osc},
      {{"osc_localized", "osc over Q(eps)", {}, {}}, osc_localized},
      {{"lobachevskii_lin1", "[tau,taus] = qR^-1 eta^2/(1 - eta)", {}, {"qR"}}, lobachevskii_lin1},
      {{"lobachevskii_lin2", "tau*taus - (1 - eta)*taus*tau = eta", {}, {}}, lobachevskii_lin2},
      {{"lobachevskii_lin2_xi", "xi*tau*taus - (xi - 1)*taus*tau = 1", {}, {}}, lobachevskii_lin2_xi},
      {{"u_sl2_sl2_localized", "U(sl2 + sl2) over Q(hD), diagonal and off-diagonal copies", {}, {}},
       u_sl2_sl2_localized},
      {{"sl2", "classical sl2, [e1,e-1] = e0", {}, {}}, sl2},
      {{"poly_x", "polynomials in x", {}, {}}, poly_x},
      {{"poly_xpm", "commuting xm < xp", {}, {}}, poly_xpm},
  };
  return all;
}

}  // namespace

const std::vector<CatalogEntry>& list_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& s : shipped()) out.push_back(s.entry);
    return out;
  }();
  return entries;
}

const CatalogEntry& find_entry(const std::string& key) {
  for (const auto& e : list_entries())
    if (e.key == key) return e;
  throw Error(ErrorKind::UnknownKey, "no catalog entry '" + key + "'");
}

AlgebraPresentation specialize(const AlgebraPresentation& p, const std::map<Symbol, Rational>& values) {
  if (values.empty()) return p;
  Substitution s;
  for (const auto& [sym, val] : values) {
    if (!p.is_scalar(sym))
      throw Error(ErrorKind::InvalidPresentation, "'" + sym.name() + "' is not a scalar of " + p.name);
    s.set(sym, val);
  }
  AlgebraPresentation out = p;
  std::erase_if(out.scalars, [&](Symbol x) { return values.count(x) > 0; });
  for (auto* list : {&out.sigma, &out.sigma_inv})
    for (auto& sub : *list) {
      Substitution t;
      for (const auto& [var, img] : sub.images()) t.set(var, s.apply(img));
      sub = t;
    }
  for (auto& [key, rhs] : out.rules) {
    Element e;
    for (const auto& [w, c] : rhs.terms()) e.add(w, s.apply(c));
    rhs = e;
  }
  return out;
}

AlgebraPresentation build(const std::string& key, const Params& params) {
  const Shipped* found = nullptr;
  for (const auto& s : shipped())
    if (s.entry.key == key) found = &s;
  if (!found) throw Error(ErrorKind::UnknownKey, "no catalog entry '" + key + "'");

  const auto& e = found->entry;
  std::map<Symbol, Rational> values;
  for (const auto& [name, val] : params) {
    bool req = std::find(e.required.begin(), e.required.end(), name) != e.required.end();
    bool opt = std::find(e.optional.begin(), e.optional.end(), name) != e.optional.end();
    if (!req && !opt) throw Error(ErrorKind::UnknownKey, key + " takes no parameter '" + name + "'");
    if (opt) {
      if (!val.is_constant())
        throw Error(ErrorKind::InvalidPresentation, "scalar '" + name + "' must be a rational value");
      values[Symbol(name)] = val.constant_value();
    }
  }
  for (const auto& r : e.required)
    if (!params.count(r)) throw Error(ErrorKind::MissingParameter, key + " requires parameter '" + r + "'");

  AlgebraPresentation p = specialize(found->fn(params), values);
  try {
    p.validate();
  } catch (const Error& err) {
    throw Error(ErrorKind::InvalidPresentation, std::string(err.what()));
  }
  for (const auto& r : check_confluence(p))
    if (!r.resolved) throw Error(ErrorKind::ConfluenceFailure, key + ": unresolved " + r.label(p));
  return p;
}

}  // namespace pbw
