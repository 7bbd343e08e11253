#pragma once

// The sl2 extremal projector inside U(sl2 + sl2) localized over Q(hD), the
// double-coset reduction, and the step algebra Z it produces.
//
// Generators of the localized algebra, ascending: fD < fd < hd < ed < eD.
// The diagonal copy is {eD, hD, fD}; hD is a coefficient variable.  Elements
// of Z are represented by transversal words: normal-form words that neither
// begin with fD nor end with eD.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbw/report.hpp"
#include "pbw/skewpbw.hpp"

namespace pbw {

// Built once from the catalog entry u_sl2_sl2_localized.
const AlgebraPresentation& localized_uea();

struct ProjectorSeries {
  int kmax = 0;
  // c[k] sits left of fD^k eD^k, c[0] = 1.  Two terms past kmax are kept for
  // the stabilization checks.
  std::vector<RationalFunction> c;
  bool exact = false;  // true only for the identity control

  Element element() const;
  Element term(int k) const;
};

// Solves eD * P = 0 order by order.  Throws Usage for kmax < 1 and
// SolveFailure if a step is singular.
ProjectorSeries build_projector(int kmax);
// P = 1.  Used as the negative control: no projection at all.
ProjectorSeries identity_projector();

// Symbolic projector identities: eD*P and P*fD vanish below filtration
// order kmax + 1, and P*P - P only has terms fD^m eD^m with m > kmax.
Report check_projector_symbolic(const ProjectorSeries& p);

// Drops every normal-form term whose word begins with fD or ends with eD.
Element reduce_to_Z(const Element& x);
bool is_transversal(const Word& w);

enum class ZGenerator { Plus, Minus, Zero };
ZGenerator parse_z_generator(const std::string& s);  // plus | minus | zero

// reduce(P x P) for x = ed, fd, hd.  Throws CutoffTooSmall unless the result
// agrees with the one for kmax + 2.
Element z_generator(ZGenerator which, const ProjectorSeries& p);
// reduce(a P b), with the same stabilization check.
Element z_multiply(const Element& a, const Element& b, const ProjectorSeries& p);
Element z_multiply_serial(const Element& a, const Element& b, const ProjectorSeries& p);

// Images in Z of C1 - C2 and C1 + C2, the Casimirs of the two sl2 factors.
Element casimir_difference();
Element casimir_sum();

struct ZRelations {
  Element s_plus, s_minus;
  Element s0_candidate;      // reduce(P hd P)
  Element s0;                // from the Casimir difference
  RationalFunction s0_scale; // s0 = s0_scale * s0_candidate
  Element candidate_residue; // s0_candidate s+ - s+ s0_candidate
  Element residue_plus;      // s0 s+ - s+ s0
  Element residue_minus;     // s0 s- - s- s0
  Element pm, mp, s0s0;      // s+ s-, s- s+, s0 s0
  // pm = a * mp + b * s0s0 + d, if such coefficients exist.
  bool solved = false;
  RationalFunction a, b, d;
  // Whether pm - mp lies in the span of 1, s0, s0s0.
  bool commutator_in_s0_span = false;

  std::vector<std::string> lines() const;
};

ZRelations compute_z_relations(const ProjectorSeries& p);

// tau -> g(hD) * X and taus -> Y with (X, Y) = (s+, s-) or (s-, s+), and
// xi -> u*hD + w, matched against xi*tau*taus - (xi - 1)*taus*tau = 1 after
// s0 is specialized.
struct Dictionary {
  std::string orientation;  // "tau -> s+" or "tau -> s-"
  Rational u, w;
  RationalFunction g;
};
struct DictionarySearch {
  Rational s0_value;
  std::optional<Dictionary> found;
  std::vector<std::string> attempts;  // one line per orientation
};
DictionarySearch search_dictionary(const ZRelations& rel, const Rational& s0_value);

// Module-level oracle on M(l1) (x) M(l2), highest-weight Verma modules, using
// the singular vectors u_k of levels k = 0..n.  Requires n + 1 <= kmax.
// Throws DegenerateWeight for non-generic weights.
struct SingularData {
  Rational l1, l2;
  std::vector<Rational> weights;  // hD on u_k
  std::vector<Rational> plus;     // s+ u_k = plus[k] u_{k-1}
  std::vector<Rational> minus;    // s- u_k = minus[k] u_{k+1}
  std::vector<Rational> zero;     // s0 u_k = zero[k] u_k
};
Report singular_vector_oracle(const ProjectorSeries& p, const ZRelations* rel, const Rational& l1,
                              const Rational& l2, int n, SingularData* out = nullptr);
// Projector coefficients re-solved on the module at the weight of level k and
// compared with the symbolic c_k.
Report oracle_coefficients(const ProjectorSeries& p, const Rational& l1, const Rational& l2);

using WeightPair = std::pair<Rational, Rational>;
std::vector<Report> run_oracles_serial(const ProjectorSeries& p, const ZRelations& rel,
                                       const std::vector<WeightPair>& weights, int n);
std::vector<Report> run_oracles_parallel(const ProjectorSeries& p, const ZRelations& rel,
                                         const std::vector<WeightPair>& weights, int n);

std::vector<WeightPair> default_weight_pairs();
std::vector<Rational> default_s0_values();

struct StepAlgebraResult {
  Report report;
  ZRelations relations;
  std::vector<DictionarySearch> searches;
  bool dictionary_found = false;  // for every s0 value
};
StepAlgebraResult check_step_algebra(const ProjectorSeries& p, int n, const std::vector<WeightPair>& weights,
                              const std::vector<Rational>& s0_values);

}  // namespace pbw
