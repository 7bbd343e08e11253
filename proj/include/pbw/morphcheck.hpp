#pragma once

// Morphisms between presentations, given on generators and coefficient
// variables, and the structural checks built on them.  Verification outcomes
// are Report items; malformed inputs throw Error.

#include <map>
#include <string>
#include <vector>

#include "pbw/catalog.hpp"
#include "pbw/linalg.hpp"
#include "pbw/report.hpp"
#include "pbw/skewpbw.hpp"

namespace pbw {

enum class MorphKind { Projection, Inclusion, Quantization, Generic };

struct GeneratorMorphism {
  std::string name;
  AlgebraPresentation source;
  AlgebraPresentation target;
  // Source generator or coefficient name -> target element.  Source scalars
  // map to themselves unless listed.
  std::map<std::string, Element> assignment;
  MorphKind kind = MorphKind::Generic;
};

GeneratorMorphism identity_morphism(const AlgebraPresentation& p);
// second ∘ first; requires first.target == second.source.
GeneratorMorphism compose(const GeneratorMorphism& first, const GeneratorMorphism& second);

// Image of a source coefficient or element.  Throws NonInvertibleImage when a
// denominator maps to a non-scalar element.
Element image(const GeneratorMorphism& m, const RationalFunction& c);
Element image(const GeneratorMorphism& m, const Element& e);

// Rules and exchange relations, then all source words of length 3..depth.
// Projection morphisms also get the epimorphism (span) check.
Report verify_homomorphism(const GeneratorMorphism& m, unsigned depth = 3);

struct MonomorphismResult {
  Report report;
  unsigned verified_degree = 0;
  std::vector<std::string> basis;        // rendered source basis elements
  std::vector<RationalFunction> kernel;  // empty unless dependent
};

// Linear independence, over the scalar field, of the images of the source
// basis c*w with deg(c) + |w| <= degree.
MonomorphismResult verify_monomorphism(const GeneratorMorphism& m, unsigned degree = 6);

// Structure constants: bracket[(i, j)][k] = c_ij^k for i > j.
struct LieConstants {
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, std::map<int, Rational>> bracket;
  Rational constant(int i, int j, int k) const;  // handles antisymmetry
  std::size_t dim() const { return labels.size(); }
};

// Constants of a presentation whose rules are g_j g_i -> g_i g_j + linear.
LieConstants lie_constants(const AlgebraPresentation& lie, std::vector<std::string> labels = {});

// q maps basis element i of the Lie algebra to a K-multiple of a generator.
Report check_quantization_of_constants(const LieConstants& g, const GeneratorMorphism& q);

Report check_quasilinear(const AlgebraPresentation& a);

struct Subalgebra {
  std::string name;
  std::vector<int> basis;  // indices into the LieConstants
};
Report check_subalgebra_preserving(const LieConstants& g, const GeneratorMorphism& q,
                                   const std::vector<Subalgebra>& subs);

// Shipped morphisms around the two linearizations:
//   nonlinear_sl2.pi   linearization -> nonlinear_sl2, a_i -> e_i, eta -> e0
//   nonlinear_sl2.iota poly_x -> linearization, x -> eta
//   nonlinear_sl2.q    sl2 -> linearization, e_i -> a_i
//   uq_sl2.pi          linearization -> uq_sl2, a_i -> e_i, eta_pm -> kappa_pm
//   uq_sl2.iota        poly_xpm -> linearization, x_pm -> eta_pm
//   uq_sl2.q           sl2 -> linearization, e_i -> a_i
std::vector<std::string> list_morphisms();
GeneratorMorphism build_morphism(const std::string& key, const Params& params = {});

// Borel subalgebras of sl2 in the generator order em < e0 < ep.
std::vector<Subalgebra> sl2_borels();
// sl2 constants labelled -1, 0, 1.
LieConstants sl2_constants();

}  // namespace pbw
