#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbw/morphcheck.hpp"
#include "support.hpp"

using namespace pbw;
using namespace pbw::testing;

namespace {

Params h0_params(const Polynomial& h0) { return {{"h0", RationalFunction(h0)}}; }

Polynomial t_poly() { return Polynomial::variable(Symbol("t")); }

Polynomial sample_h0() { return Polynomial(1) + t_poly().pow(2).scaled(Rational(-3, 2)) + t_poly().pow(3); }

std::string describe(const Report& r) {
  std::string s = r.title;
  for (const auto& i : r.items) s += "\n  " + i.check + " " + to_string(i.status) + " " + i.witness;
  return s;
}

}  // namespace

TEST_CASE("nonlinear sl2 projection") {
  auto pi = build_morphism("nonlinear_sl2.pi", h0_params(sample_h0()));
  auto r = verify_homomorphism(pi, 3);
  INFO(describe(r));
  CHECK(r.passed());
  CHECK(r.count(Status::Deferred) == 0);
  // rules, exchanges, words of length 3, target generators
  CHECK(r.items.size() == 3 + 3 + 1 + 3);
}

TEST_CASE("quantum sl2 projection") {
  auto pi = build_morphism("uq_sl2.pi");
  auto r = verify_homomorphism(pi, 3);
  INFO(describe(r));
  CHECK(r.passed());
  CHECK(r.count(Status::Deferred) == 0);
}

TEST_CASE("identity morphisms") {
  for (const auto& e : list_entries()) {
    auto p = build(e.key, default_params(e));
    auto r = verify_homomorphism(identity_morphism(p), 3);
    INFO(describe(r));
    CHECK(r.passed());
  }
}

TEST_CASE("a broken assignment is reported with its residue") {
  auto pi = build_morphism("nonlinear_sl2.pi", h0_params(sample_h0()));
  pi.assignment["eta"] = Element::generator(pi.target.generator_index("e0")).scaled(2);
  auto r = verify_homomorphism(pi, 2);
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->kind == "RelationViolation");
}

TEST_CASE("lobachevskii projection is deferred") {
  // eta -> 1 - tau*taus style images need inverses of non-scalar elements.
  auto lin1 = build("lobachevskii_lin1");
  GeneratorMorphism m{"lin1_self", lin1, lin1, {}, MorphKind::Generic};
  m.assignment["tau"] = Element::generator(1);
  m.assignment["taus"] = Element::generator(0);
  m.assignment["eta"] = Element(1) - Element::monomial(1, {0, 1});
  auto r = verify_homomorphism(m, 2);
  CHECK(r.count(Status::Deferred) > 0);
}

TEST_CASE("monomorphisms") {
  auto i1 = build_morphism("nonlinear_sl2.iota", h0_params(sample_h0()));
  auto r1 = verify_monomorphism(i1, 6);
  CHECK(r1.report.passed());
  CHECK(r1.verified_degree == 6);
  CHECK(r1.basis.size() == 7);

  auto i2 = build_morphism("uq_sl2.iota");
  auto r2 = verify_monomorphism(i2, 4);
  CHECK(r2.report.passed());
  CHECK(r2.basis.size() == 15);

  auto zero = i1;
  zero.assignment["x"] = Element();
  auto r0 = verify_monomorphism(zero, 6);
  CHECK_FALSE(r0.report.passed());
  CHECK(r0.report.first_failure()->kind == "DependenceFound");
  CHECK(r0.verified_degree == 0);
  // the kernel vector really is a dependence among the images
  REQUIRE(r0.kernel.size() == 2);
  CHECK(r0.kernel[0].is_zero());
  CHECK_FALSE(r0.kernel[1].is_zero());
}

TEST_CASE("independence is over the scalars, not the coefficient field") {
  // x -> eta and x -> eta^2 images: 1, eta, eta^2, ... are independent over Q,
  // while x -> 3 makes 1 and x dependent.
  auto i1 = build_morphism("nonlinear_sl2.iota", h0_params(Polynomial(1)));
  i1.assignment["x"] = Element(RationalFunction(3));
  auto r = verify_monomorphism(i1, 3);
  CHECK_FALSE(r.report.passed());
  REQUIRE(r.kernel.size() == 2);
  CHECK(r.kernel[0] == r.kernel[1] * RationalFunction(-3));
}

TEST_CASE("structure constants") {
  auto g = sl2_constants();
  // [1,-1] = 0, [1,0] = 1, [-1,0] = -(-1)
  CHECK(g.constant(2, 0, 1) == 1);
  CHECK(g.constant(0, 2, 1) == -1);
  CHECK(g.constant(2, 1, 2) == 1);
  CHECK(g.constant(0, 1, 0) == -1);
  CHECK(g.constant(1, 1, 1) == 0);
  CHECK_THROWS_AS(lie_constants(build("u_sl2_sl2_localized")), Error);
}

TEST_CASE("quantization of constants") {
  auto g = sl2_constants();
  auto q1 = build_morphism("nonlinear_sl2.q", h0_params(sample_h0()));
  auto r1 = check_quantization_of_constants(g, q1);
  INFO(describe(r1));
  CHECK(r1.passed());
  // every zero constant over the three pairs: 2 per pair
  CHECK(r1.items.size() == 6);

  auto r2 = check_quantization_of_constants(g, build_morphism("uq_sl2.q"));
  INFO(describe(r2));
  CHECK(r2.passed());

  // planted [a1,a0] = a-1
  auto bad = q1;
  const int ap = bad.target.generator_index("ap"), a0 = bad.target.generator_index("a0"),
            am = bad.target.generator_index("am");
  Element rhs = Element::monomial(1, {a0, ap});
  rhs.add({am}, 1);
  bad.target.rules[{ap, a0}] = rhs;
  auto r3 = check_quantization_of_constants(g, bad);
  CHECK_FALSE(r3.passed());
  REQUIRE(r3.first_failure() != nullptr);
  CHECK(r3.first_failure()->kind == "VanishingViolation");
  CHECK(r3.first_failure()->witness.rfind("(1,0,-1)", 0) == 0);
}

TEST_CASE("quantization check is monotone in the zero pattern") {
  auto q1 = build_morphism("nonlinear_sl2.q", h0_params(sample_h0()));
  auto g = sl2_constants();
  auto zeroed = g;
  zeroed.bracket[{2, 1}].clear();  // pretend [1,0] = 0
  auto base = check_quantization_of_constants(g, q1);
  auto more = check_quantization_of_constants(zeroed, q1);
  CHECK(more.items.size() >= base.items.size());
  CHECK(more.count(Status::Fail) >= base.count(Status::Fail));
  CHECK_FALSE(more.passed());
}

TEST_CASE("quasilinearity") {
  auto r1 = check_quasilinear(build("nonlinear_sl2_linearization", h0_params(sample_h0())));
  INFO(describe(r1));
  CHECK(r1.passed());
  CHECK(check_quasilinear(build("lobachevskii_lin1")).passed());
  CHECK(check_quasilinear(build("uq_sl2_linearization")).passed());

  // heisenberg with r as a coefficient moved by p
  AlgebraPresentation h;
  h.name = "heisenberg_r";
  h.coeffs = {Symbol("r")};
  h.generators = {"p", "q"};
  h.sigma.resize(2);
  h.sigma[0].set(Symbol("r"), RationalFunction::variable("r") + 1);
  h.rules[{1, 0}] = Element::monomial(1, {0, 1}) - Element(RationalFunction::variable("r"));
  h.validate();
  auto bad = check_quasilinear(h);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("borel subalgebras are preserved") {
  auto g = sl2_constants();
  for (const char* key : {"nonlinear_sl2.q", "uq_sl2.q"}) {
    Params ps;
    if (std::string(key).rfind("nonlinear", 0) == 0) ps = h0_params(sample_h0());
    auto r = check_subalgebra_preserving(g, build_morphism(key, ps), sl2_borels());
    INFO(describe(r));
    CHECK(r.passed());
  }
  // the whole of sl2 is preserved only when h0 = 1
  std::vector<Subalgebra> full{{"sl2", {0, 1, 2}}};
  auto r = check_subalgebra_preserving(g, build_morphism("nonlinear_sl2.q", h0_params(sample_h0())), full);
  CHECK_FALSE(r.passed());
  CHECK(r.first_failure()->kind == "BracketMismatch");
  CHECK(check_subalgebra_preserving(g, build_morphism("nonlinear_sl2.q", h0_params(Polynomial(1))), full).passed());
}

TEST_CASE("composition") {
  auto iota = build_morphism("nonlinear_sl2.iota", h0_params(sample_h0()));
  auto pi = build_morphism("nonlinear_sl2.pi", h0_params(sample_h0()));
  auto both = compose(iota, pi);
  CHECK(both.assignment.at("x") == Element::generator(pi.target.generator_index("e0")));
  CHECK(verify_homomorphism(both, 3).passed());
  auto q = build_morphism("nonlinear_sl2.q", h0_params(sample_h0()));
  CHECK(verify_homomorphism(compose(q, pi), 3).passed() == verify_homomorphism(q, 3).passed());
  CHECK_THROWS_AS(compose(pi, iota), Error);
}
