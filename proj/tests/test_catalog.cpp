#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pbw/catalog.hpp"
#include "support.hpp"

using namespace pbw;
using namespace pbw::testing;

namespace {

bool has_key(const std::string& k) {
  const auto& es = list_entries();
  return std::any_of(es.begin(), es.end(), [&](const CatalogEntry& e) { return e.key == k; });
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Usage;
}

Params h0(const Polynomial& p) { return {{"h0", RationalFunction(p)}}; }

}  // namespace

TEST_CASE("entries") {
  CHECK(has_key("lobachevskii_lin1"));
  CHECK(has_key("u_sl2_sl2_localized"));
  CHECK(list_entries().size() >= 10);
  // stable order
  CHECK(list_entries().front().key == "nonlinear_sl2");
}

TEST_CASE("every entry is confluent at random parameter points") {
  std::mt19937 rng(31);
  for (const auto& e : list_entries()) {
    for (int i = 0; i < 3; ++i) {
      Params ps = random_params(e, rng);
      CAPTURE(e.key);
      AlgebraPresentation p;
      REQUIRE_NOTHROW(p = build(e.key, ps));
      CHECK(is_confluent(check_confluence_serial(p)));
    }
  }
}

TEST_CASE("build errors") {
  CHECK(kind_of([] { (void)build("sklyanin"); }) == ErrorKind::UnknownKey);
  CHECK(kind_of([] { (void)build("nonlinear_sl2"); }) == ErrorKind::MissingParameter);
  CHECK(kind_of([] { (void)build("heisenberg", {{"q", RationalFunction(2)}}); }) == ErrorKind::UnknownKey);
  auto t9 = Polynomial::variable(Symbol("t")).pow(9);
  CHECK(kind_of([&] { (void)build("nonlinear_sl2", h0(t9)); }) == ErrorKind::InvalidPresentation);
  CHECK(kind_of([] { (void)find_entry("nope"); }) == ErrorKind::UnknownKey);
}

TEST_CASE("shapes") {
  auto h = build("heisenberg");
  CHECK(h.size() == 3);
  CHECK(h.rules.size() == 3);
  auto xi = build("lobachevskii_lin2_xi");
  CHECK(xi.is_coefficient(Symbol("xi")));
  CHECK(xi.generators == std::vector<std::string>{"taus", "tau"});
  CHECK(build("u_sl2_sl2_localized").size() == 5);
  CHECK(build("nonlinear_sl2", h0(Polynomial::variable(Symbol("t")))).quadratic());
  CHECK_FALSE(build("nonlinear_sl2", h0(Polynomial::variable(Symbol("t")).pow(2))).quadratic());
  CHECK(build("nonlinear_sl2_linearization", h0(Polynomial::variable(Symbol("t")).pow(4))).quadratic());
}

TEST_CASE("h0 = 1 gives classical sl2") {
  auto nl = build("nonlinear_sl2", h0(Polynomial(1)));
  auto classical = build("sl2");
  CHECK(nl.rules == classical.rules);
  auto e = [&](const char* g) { return Element::generator(nl.generator_index(g)); };
  CHECK(commutator(nl, e("ep"), e("em")) == e("e0"));
  CHECK(commutator(nl, e("ep"), e("e0")) == e("ep"));
  CHECK(commutator(nl, e("em"), e("e0")) == -e("em"));

  auto lin = build("nonlinear_sl2_linearization", h0(Polynomial(1)));
  auto a = [&](const char* g) { return Element::generator(lin.generator_index(g)); };
  CHECK(commutator(lin, a("ap"), a("am")) == a("a0"));
  CHECK(commutator(lin, a("ap"), a("a0")) == a("ap"));
  CHECK(commutator(lin, a("am"), a("a0")) == -a("am"));
}

TEST_CASE("specialized scalars") {
  auto uq = build("uq_sl2_linearization", {{"q", RationalFunction(Rational(3, 2))}});
  CHECK(uq.scalars.empty());
  auto ap = uq.generator_index("ap");
  CHECK(uq.sigma[static_cast<std::size_t>(ap)].image(Symbol("eta_p")) ==
        RationalFunction::variable("eta_p") * Rational(3, 2));
  auto l1 = build("lobachevskii_lin1", {{"qR", RationalFunction(2)}});
  auto eta = RationalFunction::variable("eta");
  CHECK(l1.rule(1, 0).coefficient({}) == eta * eta / (2 * (1 - eta)));
}

TEST_CASE("lin2 and lin2_xi correspond under xi = 1/eta") {
  auto lin2 = build("lobachevskii_lin2");
  auto lxi = build("lobachevskii_lin2_xi");
  auto eta = RationalFunction::variable("eta");
  Substitution to_eta({{Symbol("xi"), 1 / eta}});
  std::mt19937 rng(8);
  int compared = 0;
  while (compared < 20) {
    Word w = random_word(rng, 2, 6);
    RationalFunction c = RationalFunction::variable("xi") * random_rational(rng) + random_rational(rng);
    if (c.is_zero()) continue;
    Element in_xi = normal_form(lxi, Element::monomial(c, w));
    Element mapped;
    try {
      for (const auto& [ww, cc] : in_xi.terms()) mapped.add(ww, to_eta.apply(cc));
    } catch (const Error&) {
      continue;  // eta-denominator vanishes
    }
    Element in_eta = normal_form(lin2, Element::monomial(to_eta.apply(c), w));
    CHECK(mapped == in_eta);
    ++compared;
  }
}
