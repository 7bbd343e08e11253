#include "pbw/extremal.hpp"

#include <map>

#include "pbw/catalog.hpp"
#include "pbw/error.hpp"
#include "pbw/linalg.hpp"

namespace pbw {

namespace {

constexpr int kFD = 0, kFd = 1, kHd = 2, kEd = 3, kED = 4;

const Symbol& hd_symbol() {
  static const Symbol s("hD");
  return s;
}

RationalFunction hD() { return RationalFunction::variable("hD"); }

RationalFunction shifted(const RationalFunction& f, int delta) {
  Substitution s;
  s.set(hd_symbol(), hD() + RationalFunction(delta));
  return s.apply(f);
}

Word fe_word(int k) {
  Word w(static_cast<std::size_t>(2 * k), kED);
  std::fill(w.begin(), w.begin() + k, kFD);
  return w;
}

std::string show(const Element& e) { return render(localized_uea(), e); }

Element mul(const Element& a, const Element& b) { return multiply_serial(localized_uea(), a, b); }

// Number of leading fD and trailing eD letters.
int leading_f(const Word& w) {
  int n = 0;
  while (n < static_cast<int>(w.size()) && w[static_cast<std::size_t>(n)] == kFD) ++n;
  return n;
}
int trailing_e(const Word& w) {
  int n = 0;
  while (n < static_cast<int>(w.size()) && w[w.size() - 1 - static_cast<std::size_t>(n)] == kED) ++n;
  return n;
}

// Runs body(i) for i in [0, n) on OpenMP threads and rethrows the first error.
template <class F>
void parallel_for(std::ptrdiff_t n, F body) {
  std::vector<int> kinds(static_cast<std::size_t>(n), -1);
  std::vector<std::string> msgs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (const Error& e) {
      kinds[static_cast<std::size_t>(i)] = static_cast<int>(e.kind());
      msgs[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (std::size_t i = 0; i < kinds.size(); ++i)
    if (kinds[i] >= 0) throw Error(static_cast<ErrorKind>(kinds[i]), msgs[i]);
}

std::size_t series_length(const ProjectorSeries& p) { return p.exact ? 1 : p.c.size(); }

// Sum over projector terms j of reduce(a * term_j * b); terms past kmax are
// accumulated separately for the stabilization check.
Element reduced_sandwich(const Element& a, const Element& b, const ProjectorSeries& p, bool parallel) {
  const std::size_t n = series_length(p);
  std::vector<Element> parts(n);
  auto body = [&](std::ptrdiff_t j) {
    parts[static_cast<std::size_t>(j)] = reduce_to_Z(mul(mul(a, p.term(static_cast<int>(j))), b));
  };
  if (parallel) {
    parallel_for(static_cast<std::ptrdiff_t>(n), body);
  } else {
    for (std::size_t j = 0; j < n; ++j) body(static_cast<std::ptrdiff_t>(j));
  }
  Element kept, tail;
  for (std::size_t j = 0; j < n; ++j) (static_cast<int>(j) <= p.kmax ? kept : tail) += parts[j];
  if (!tail.is_zero())
    throw Error(ErrorKind::CutoffTooSmall, "terms of order " + std::to_string(p.kmax + 1) + ".." +
                                               std::to_string(p.kmax + 2) + " contribute " + show(tail));
  return kept;
}

Element raw(const std::vector<std::pair<RationalFunction, Word>>& terms) {
  Element e;
  for (const auto& [c, w] : terms) e.add(w, c);
  return normal_form(localized_uea(), e);
}

}  // namespace

const AlgebraPresentation& localized_uea() {
  static const AlgebraPresentation p = build("u_sl2_sl2_localized");
  return p;
}

Element ProjectorSeries::term(int k) const {
  return Element::monomial(c[static_cast<std::size_t>(k)], fe_word(k));
}

Element ProjectorSeries::element() const {
  Element e;
  for (int k = 0; k <= kmax; ++k) e += term(k);
  return e;
}

ProjectorSeries build_projector(int kmax) {
  if (kmax < 1) throw Error(ErrorKind::Usage, "kmax must be at least 1");
  const auto& alg = localized_uea();
  const Element e = Element::generator(kED);
  ProjectorSeries p;
  p.kmax = kmax;
  p.c.push_back(RationalFunction(1));
  // residue = eD * (partial series), kept in normal form
  Element residue = mul(e, p.term(0));
  for (int k = 1; k <= kmax + 2; ++k) {
    Word target = fe_word(k);
    target.erase(target.begin());  // fD^(k-1) eD^k
    const RationalFunction alpha = mul(e, Element::monomial(1, fe_word(k))).coefficient(target);
    if (alpha.is_zero()) throw Error(ErrorKind::SolveFailure, "singular step at order " + std::to_string(k));
    const RationalFunction twisted = -residue.coefficient(target) / alpha;  // sigma_eD(c_k)
    p.c.push_back(alg.sigma_inv[kED].apply(twisted));
    residue += mul(e, p.term(k));
  }
  return p;
}

ProjectorSeries identity_projector() {
  ProjectorSeries p;
  p.c = {RationalFunction(1)};
  p.exact = true;
  return p;
}

Report check_projector_symbolic(const ProjectorSeries& p) {
  Report r;
  r.title = "projector identities, kmax = " + std::to_string(p.kmax);
  const Element proj = p.element();
  const Element left = mul(Element::generator(kED), proj);
  const Element right = mul(proj, Element::generator(kFD));
  auto low_order = [](const Element& x, auto order) {
    Element out;
    for (const auto& [w, c] : x.terms())
      if (!order(w)) out.add(w, c);
    return out;
  };
  const int cut = p.kmax + 1;
  Element l = low_order(left, [&](const Word& w) { return trailing_e(w) >= cut; });
  Element rr = low_order(right, [&](const Word& w) { return leading_f(w) >= cut; });
  r.add("eD*P = 0 below order " + std::to_string(cut), l.is_zero(), "RelationViolation", show(l));
  r.add("P*fD = 0 below order " + std::to_string(cut), rr.is_zero(), "RelationViolation", show(rr));
  Element sq = mul(proj, proj) - proj;
  Element low = low_order(sq, [&](const Word& w) { return leading_f(w) >= cut && trailing_e(w) >= cut; });
  r.add("P*P = P below order " + std::to_string(cut), low.is_zero(), "RelationViolation", show(low));
  return r;
}

bool is_transversal(const Word& w) { return w.empty() || (w.front() != kFD && w.back() != kED); }

Element reduce_to_Z(const Element& x) {
  Element out;
  for (const auto& [w, c] : x.terms())
    if (is_transversal(w)) out.add(w, c);
  return out;
}

ZGenerator parse_z_generator(const std::string& s) {
  if (s == "plus") return ZGenerator::Plus;
  if (s == "minus") return ZGenerator::Minus;
  if (s == "zero") return ZGenerator::Zero;
  throw Error(ErrorKind::Usage, "expected plus, minus or zero, got '" + s + "'");
}

Element z_generator(ZGenerator which, const ProjectorSeries& p) {
  const int g = which == ZGenerator::Plus ? kEd : which == ZGenerator::Minus ? kFd : kHd;
  const Element x = Element::generator(g);
  const std::size_t n = series_length(p);
  // every pair (j, l) of projector terms around x
  std::vector<Element> parts(n * n);
  parallel_for(static_cast<std::ptrdiff_t>(n * n), [&](std::ptrdiff_t i) {
    const auto j = static_cast<int>(static_cast<std::size_t>(i) / n), l = static_cast<int>(static_cast<std::size_t>(i) % n);
    parts[static_cast<std::size_t>(i)] = reduce_to_Z(mul(mul(p.term(j), x), p.term(l)));
  });
  Element kept, tail;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto j = static_cast<int>(i / n), l = static_cast<int>(i % n);
    (j <= p.kmax && l <= p.kmax ? kept : tail) += parts[i];
  }
  if (!tail.is_zero()) throw Error(ErrorKind::CutoffTooSmall, "P x P did not stabilize: " + show(tail));
  return kept;
}

Element z_multiply(const Element& a, const Element& b, const ProjectorSeries& p) {
  return reduced_sandwich(a, b, p, true);
}

Element z_multiply_serial(const Element& a, const Element& b, const ProjectorSeries& p) {
  return reduced_sandwich(a, b, p, false);
}

Element casimir_difference() {
  // C1 - C2 = (eD fd + ed fD + fD ed + fd eD)/2 + hD hd/2
  const RationalFunction half(Rational(1, 2));
  return reduce_to_Z(raw({{half, {kED, kFd}}, {half, {kEd, kFD}}, {half, {kFD, kEd}}, {half, {kFd, kED}},
                          {hD() * half, {kHd}}}));
}

Element casimir_sum() {
  // C1 + C2 = (eD fD + ed fd + fD eD + fd ed)/2 + (hD^2 + hd^2)/4
  const RationalFunction half(Rational(1, 2)), quarter(Rational(1, 4));
  return reduce_to_Z(raw({{half, {kED, kFD}}, {half, {kEd, kFd}}, {half, {kFD, kED}}, {half, {kFd, kEd}},
                          {quarter, {kHd, kHd}}, {hD() * hD() * quarter, {}}}));
}

namespace {

// Coordinates of `targets` (columns) and `rhs` over the union of their words.
std::optional<std::vector<RationalFunction>> express(const std::vector<Element>& targets, const Element& rhs) {
  std::map<Word, std::size_t, WordOrder> index;
  auto collect = [&](const Element& e) {
    for (const auto& [w, c] : e.terms()) index.emplace(w, 0);
  };
  for (const auto& t : targets) collect(t);
  collect(rhs);
  std::size_t i = 0;
  for (auto& [w, k] : index) k = i++;
  Matrix<RationalFunction> m(index.size(), std::vector<RationalFunction>(targets.size()));
  std::vector<RationalFunction> b(index.size());
  for (std::size_t col = 0; col < targets.size(); ++col)
    for (const auto& [w, c] : targets[col].terms()) m[index[w]][col] = c;
  for (const auto& [w, c] : rhs.terms()) b[index[w]] = c;
  return solve(m, b, targets.size());
}

}  // namespace

ZRelations compute_z_relations(const ProjectorSeries& p) {
  ZRelations z;
  z.s_plus = z_generator(ZGenerator::Plus, p);
  z.s_minus = z_generator(ZGenerator::Minus, p);
  z.s0_candidate = z_generator(ZGenerator::Zero, p);
  z.s0 = casimir_difference();
  const Word h{kHd};
  const RationalFunction cand = z.s0_candidate.coefficient(h);
  z.s0_scale = cand.is_zero() ? RationalFunction(0) : z.s0.coefficient(h) / cand;
  z.candidate_residue = z_multiply(z.s0_candidate, z.s_plus, p) - z_multiply(z.s_plus, z.s0_candidate, p);
  z.residue_plus = z_multiply(z.s0, z.s_plus, p) - z_multiply(z.s_plus, z.s0, p);
  z.residue_minus = z_multiply(z.s0, z.s_minus, p) - z_multiply(z.s_minus, z.s0, p);
  z.pm = z_multiply(z.s_plus, z.s_minus, p);
  z.mp = z_multiply(z.s_minus, z.s_plus, p);
  z.s0s0 = z_multiply(z.s0, z.s0, p);
  if (auto x = express({z.mp, z.s0s0, Element(RationalFunction(1))}, z.pm)) {
    z.solved = true;
    z.a = (*x)[0];
    z.b = (*x)[1];
    z.d = (*x)[2];
  }
  z.commutator_in_s0_span = express({Element(RationalFunction(1)), z.s0, z.s0s0}, z.pm - z.mp).has_value();
  return z;
}

std::vector<std::string> ZRelations::lines() const {
  std::vector<std::string> out;
  out.push_back("s+ = " + show(s_plus));
  out.push_back("s- = " + show(s_minus));
  out.push_back("s0 = " + show(s0) + "  (= (" + s0_scale.to_string() + ") * " + show(s0_candidate) + ")");
  out.push_back("s0 s+ - s+ s0 = " + show(residue_plus));
  out.push_back("s0 s- - s- s0 = " + show(residue_minus));
  out.push_back("s+ s- = " + show(pm));
  out.push_back("s- s+ = " + show(mp));
  out.push_back("s0 s0 = " + show(s0s0));
  if (solved)
    out.push_back("s+ s- = (" + a.to_string() + ") s- s+ + (" + b.to_string() + ") s0^2 + (" + d.to_string() + ")");
  else
    out.push_back("s+ s- is not in the span of s- s+, s0^2, 1");
  return out;
}

DictionarySearch search_dictionary(const ZRelations& rel, const Rational& s0_value) {
  DictionarySearch out;
  out.s0_value = s0_value;
  if (!rel.solved) {
    out.attempts.push_back("no relation between s+ s- and s- s+ over Q(hD)");
    return out;
  }
  const RationalFunction c2 = RationalFunction(s0_value * s0_value);
  struct Orientation {
    std::string name;
    int dx, dy;  // hD shifts of X and Y
    RationalFunction A, B;
  };
  std::vector<Orientation> cases;
  const RationalFunction base = rel.b * c2 + rel.d;
  cases.push_back({"tau -> s+", -2, 2, rel.a, base});
  if (!rel.a.is_zero()) cases.push_back({"tau -> s-", 2, -2, RationalFunction(1) / rel.a, -base / rel.a});
  for (const auto& o : cases) {
    if (o.B.is_zero()) {
      out.attempts.push_back(o.name + ": relation has no constant term");
      continue;
    }
    // xi*g*B = 1 and xi*g*A = (xi - 1)*g(hD + dy), with xi = u*hD + w, i.e.
    // (xi - 1)*B = A*xi(hD + dy)*B(hD + dy), cleared of denominators.
    const RationalFunction Bs = shifted(o.B, o.dy);
    const Polynomial p1 = o.B.numerator() * o.A.denominator() * Bs.denominator();
    const Polynomial p2 = o.A.numerator() * Bs.numerator() * o.B.denominator();
    const Polynomial h = Polynomial::variable(hd_symbol());
    const Polynomial hs = h + Polynomial(Rational(o.dy));
    const Polynomial cu = h * p1 - hs * p2, cw = p1 - p2;
    auto cu_c = cu.coefficients_in(hd_symbol()), cw_c = cw.coefficients_in(hd_symbol()),
         r_c = p1.coefficients_in(hd_symbol());
    const std::size_t rows = std::max({cu_c.size(), cw_c.size(), r_c.size()});
    auto at = [](const std::vector<Polynomial>& v, std::size_t i) {
      return i < v.size() ? v[i].constant_value() : Rational(0);
    };
    Matrix<Rational> m;
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < rows; ++i) {
      m.push_back({at(cu_c, i), at(cw_c, i)});
      rhs.push_back(at(r_c, i));
    }
    // exchange: tau * xi = (xi + 1) * tau forces u * dx = 1
    m.push_back({Rational(o.dx), Rational(0)});
    rhs.push_back(Rational(1));
    auto sol = solve(m, rhs, 2);
    if (!sol) {
      const RationalFunction gap = o.A * Bs - o.B;
      out.attempts.push_back(o.name + ": no affine xi; A(hD)*B(hD" + (o.dy > 0 ? "+" : "") + std::to_string(o.dy) +
                             ") - B(hD) = " + gap.to_string() + " with A = " + o.A.to_string() +
                             ", B = " + o.B.to_string());
      continue;
    }
    Dictionary d{o.name, (*sol)[0], (*sol)[1], {}};
    const RationalFunction xi = hD() * RationalFunction(d.u) + RationalFunction(d.w);
    d.g = RationalFunction(1) / (xi * o.B);
    const bool ok = (xi * d.g * o.A - (xi - RationalFunction(1)) * shifted(d.g, o.dy)).is_zero();
    out.attempts.push_back(o.name + ": xi = " + xi.to_string() + ", g = " + d.g.to_string() +
                           (ok ? "" : " (fails the recheck)"));
    if (ok && !out.found) out.found = d;
  }
  return out;
}

// ---------------------------------------------------------------- module oracle

namespace {

using Key = std::pair<int, int>;  // v_a (x) v_b
using Vec = std::map<Key, Rational>;

void axpy(Vec& out, const Key& k, const Rational& c) {
  if (c == 0) return;
  Rational& x = out[k];
  x += c;
  if (x == 0) out.erase(k);
}

class TensorModule {
 public:
  TensorModule(Rational l1, Rational l2) : l1_(std::move(l1)), l2_(std::move(l2)) {}

  Rational weight(int level) const { return l1_ + l2_ - 2 * level; }

  Vec apply_generator(int g, const Vec& v) const {
    Vec out;
    for (const auto& [k, c] : v) {
      const auto [a, b] = k;
      switch (g) {
        case kFD:
        case kFd:
          axpy(out, {a + 1, b}, c);
          axpy(out, {a, b + 1}, g == kFD ? c : Rational(-c));
          break;
        case kHd:
          axpy(out, k, c * ((l1_ - 2 * a) - (l2_ - 2 * b)));
          break;
        case kEd:
        case kED: {
          if (a > 0) axpy(out, {a - 1, b}, c * a * (l1_ - a + 1));
          Rational e2 = b > 0 ? Rational(c * b * (l2_ - b + 1)) : Rational(0);
          if (b > 0) axpy(out, {a, b - 1}, g == kED ? e2 : Rational(-e2));
          break;
        }
        default:
          throw Error(ErrorKind::UnknownGenerator, std::to_string(g));
      }
    }
    return out;
  }

  // Left coefficients act after the word, at the weight of the result.
  Vec apply(const Element& x, const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : x.terms()) {
      Vec t = v;
      for (auto it = w.rbegin(); it != w.rend(); ++it) t = apply_generator(*it, t);
      for (const auto& [k, val] : t) {
        Rational cv;
        try {
          cv = c.evaluate({{hd_symbol(), weight(k.first + k.second)}});
        } catch (const Error&) {
          throw Error(ErrorKind::DegenerateWeight, "coefficient " + c.to_string() + " has a pole at hD = " +
                                                       rational_to_string(weight(k.first + k.second)));
        }
        axpy(out, k, cv * val);
      }
    }
    return out;
  }

  // Singular vector of level k, normalized by its first free coordinate.
  Vec singular(int k) const {
    Matrix<Rational> m(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k + 1)));
    for (int a = 0; a <= k; ++a) {
      Vec img = apply_generator(kED, {{{a, k - a}, Rational(1)}});
      for (const auto& [key, c] : img) m[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(a)] = c;
    }
    auto ns = nullspace(m, static_cast<std::size_t>(k + 1));
    if (ns.size() != 1)
      throw Error(ErrorKind::DegenerateWeight, "kernel of eD at level " + std::to_string(k) + " has dimension " +
                                                   std::to_string(ns.size()));
    Vec u;
    for (int a = 0; a <= k; ++a) axpy(u, {a, k - a}, ns[0][static_cast<std::size_t>(a)]);
    return u;
  }

 private:
  Rational l1_, l2_;
};

std::string show_vec(const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : v) {
    if (!s.empty()) s += " + ";
    s += "(" + rational_to_string(c) + ") v" + std::to_string(k.first) + "*v" + std::to_string(k.second);
  }
  return s;
}

Vec scaled(const Vec& v, const Rational& c) {
  Vec out;
  for (const auto& [k, x] : v) axpy(out, k, c * x);
  return out;
}

Vec minus(const Vec& a, const Vec& b) {
  Vec out = a;
  for (const auto& [k, x] : b) axpy(out, k, -x);
  return out;
}

// w = m * u for a scalar m, read off at the first coordinate of u.
std::optional<Rational> ratio(const Vec& w, const Vec& u) {
  if (u.empty()) return std::nullopt;
  const auto& [k, x] = *u.begin();
  auto it = w.find(k);
  Rational m = it == w.end() ? Rational(0) : Rational(it->second / x);
  if (!minus(w, scaled(u, m)).empty()) return std::nullopt;
  return m;
}

void check_generic(const Rational& l1, const Rational& l2, int top, int kmax) {
  for (int a = 1; a <= top; ++a)
    for (const Rational& l : {l1, l2})
      if (a * (l - a + 1) == 0)
        throw Error(ErrorKind::DegenerateWeight, "lambda = " + rational_to_string(l) + " is integral at level " +
                                                     std::to_string(a));
  for (int k = 0; k <= top; ++k)
    for (int j = 0; j <= 2 * kmax + 2; ++j)
      if (l1 + l2 - 2 * k + j == 0)
        throw Error(ErrorKind::DegenerateWeight, "hD + " + std::to_string(j) + " vanishes at level " +
                                                     std::to_string(k));
}

std::string weight_label(const Rational& l1, const Rational& l2) {
  return "(" + rational_to_string(l1) + ", " + rational_to_string(l2) + ")";
}

}  // namespace

Report singular_vector_oracle(const ProjectorSeries& p, const ZRelations* rel, const Rational& l1, const Rational& l2,
                              int n, SingularData* out) {
  if (n < 0 || n + 1 > p.kmax) throw Error(ErrorKind::Usage, "oracle window needs n + 1 <= kmax");
  check_generic(l1, l2, n + 2, p.kmax);
  TensorModule mod(l1, l2);
  const Element proj = p.element();
  Report r;
  r.title = "singular vectors on M" + weight_label(l1, l2);
  SingularData data{l1, l2, {}, {}, {}, {}};

  std::vector<Vec> u;
  for (int k = 0; k <= n + 1; ++k) u.push_back(mod.singular(k));
  for (int k = 0; k <= n + 1; ++k) data.weights.push_back(mod.weight(k));

  // projector on every level in the window
  for (int k = 0; k <= n + 1; ++k) {
    const std::string lev = "level " + std::to_string(k);
    const Vec pu = mod.apply(proj, u[static_cast<std::size_t>(k)]);
    r.add(lev + ": P u = u", minus(pu, u[static_cast<std::size_t>(k)]).empty(), "RelationViolation",
          show_vec(minus(pu, u[static_cast<std::size_t>(k)])));
    bool idem = true, kills = true;
    std::string bad;
    for (int a = 0; a <= k; ++a) {
      const Vec v{{{a, k - a}, Rational(1)}};
      const Vec pv = mod.apply(proj, v);
      const Vec epv = mod.apply_generator(kED, pv);
      const Vec ppv = mod.apply(proj, pv);
      if (!epv.empty() || !minus(ppv, pv).empty()) {
        idem = false;
        bad = "v" + std::to_string(a) + "*v" + std::to_string(k - a);
      }
      if (k > 0 && a < k) {
        const Vec fv = mod.apply(proj, mod.apply_generator(kFD, {{{a, k - 1 - a}, Rational(1)}}));
        if (!fv.empty()) {
          kills = false;
          bad = "fD v" + std::to_string(a) + "*v" + std::to_string(k - 1 - a);
        }
      }
    }
    r.add(lev + ": eD P = 0 and P^2 = P", idem, "RelationViolation", bad);
    r.add(lev + ": P fD = 0", kills, "RelationViolation", bad);
  }

  // matrices of s+, s-, s0 on the singular basis
  data.plus.assign(static_cast<std::size_t>(n + 2), Rational(0));
  data.minus.assign(static_cast<std::size_t>(n + 1), Rational(0));
  data.zero.assign(static_cast<std::size_t>(n + 1), Rational(0));
  const Element sm = Element::generator(kFd), s0 = casimir_difference();
  for (int k = 1; k <= n + 1; ++k) {
    const Vec w = mod.apply(proj, mod.apply_generator(kEd, u[static_cast<std::size_t>(k)]));
    auto m = ratio(w, u[static_cast<std::size_t>(k - 1)]);
    r.add("s+ u" + std::to_string(k) + " is singular of level " + std::to_string(k - 1),
          m.has_value() && mod.apply_generator(kED, w).empty(), "RelationViolation", show_vec(w));
    if (m) data.plus[static_cast<std::size_t>(k)] = *m;
  }
  for (int k = 0; k <= n; ++k) {
    const Vec w = mod.apply(proj, mod.apply(sm, u[static_cast<std::size_t>(k)]));
    auto m = ratio(w, u[static_cast<std::size_t>(k + 1)]);
    r.add("s- u" + std::to_string(k) + " is singular of level " + std::to_string(k + 1),
          m.has_value() && mod.apply_generator(kED, w).empty(), "RelationViolation", show_vec(w));
    if (m) data.minus[static_cast<std::size_t>(k)] = *m;
    const Vec z = mod.apply(proj, mod.apply(s0, u[static_cast<std::size_t>(k)]));
    auto m0 = ratio(z, u[static_cast<std::size_t>(k)]);
    if (m0) data.zero[static_cast<std::size_t>(k)] = *m0;
    // C1 - C2 acts on M(l1) (x) M(l2) by a scalar
    const Rational cas = (l1 * (l1 + 2) - l2 * (l2 + 2)) / 2;
    r.add("s0 u" + std::to_string(k) + " = (C1 - C2) u" + std::to_string(k), m0.has_value() && *m0 == cas,
          "RelationViolation", m0 ? rational_to_string(*m0) + " vs " + rational_to_string(cas) : show_vec(z));
  }

  if (rel) {
    for (int k = 0; k <= n; ++k) {
      const auto K = static_cast<std::size_t>(k);
      const Vec& uk = u[K];
      const Rational mat_pm = data.minus[K] * data.plus[K + 1];
      const Rational mat_mp = k == 0 ? Rational(0) : Rational(data.plus[K] * data.minus[K - 1]);
      const Rational mat_00 = data.zero[K] * data.zero[K];
      auto sym = [&](const Element& x) { return ratio(mod.apply(proj, mod.apply(x, uk)), uk); };
      auto check = [&](const std::string& name, const Element& x, const Rational& expect) {
        auto got = sym(x);
        r.add(name + " on u" + std::to_string(k) + ": symbolic = matrix", got && *got == expect, "RelationViolation",
              (got ? rational_to_string(*got) : std::string("not a multiple")) + " vs " + rational_to_string(expect));
      };
      check("s+ s-", rel->pm, mat_pm);
      check("s- s+", rel->mp, mat_mp);
      check("s0 s0", rel->s0s0, mat_00);
      if (rel->solved) {
        const std::map<Symbol, Rational> at{{hd_symbol(), data.weights[K]}};
        const Rational rhs = rel->a.evaluate(at) * mat_mp + rel->b.evaluate(at) * mat_00 + rel->d.evaluate(at);
        r.add("relation for s+ s- at weight " + rational_to_string(data.weights[K]), rhs == mat_pm,
              "RelationViolation", rational_to_string(rhs) + " vs " + rational_to_string(mat_pm));
      }
      if (k >= 1) {
        const Rational left = data.zero[K] * data.plus[K], right = data.plus[K] * data.zero[K - 1];
        r.add("s0 s+ = s+ s0 on u" + std::to_string(k), left == right, "RelationViolation",
              rational_to_string(left) + " vs " + rational_to_string(right));
      }
    }
  }
  if (out) *out = std::move(data);
  return r;
}

Report oracle_coefficients(const ProjectorSeries& p, const Rational& l1, const Rational& l2) {
  check_generic(l1, l2, p.kmax, p.kmax);
  TensorModule mod(l1, l2);
  Report r;
  r.title = "projector coefficients on M" + weight_label(l1, l2);
  for (int k = 1; k <= p.kmax; ++k) {
    // a vector of level k with every coordinate nonzero
    Vec w;
    for (int a = 0; a <= k; ++a) axpy(w, {a, k - a}, Rational(a + 1));
    // eD (sum_j x_j fD^j eD^j w) = 0 with x_0 = 1: k equations, k unknowns
    std::vector<Vec> cols;
    for (int j = 0; j <= k; ++j) {
      Vec t = w;
      for (int i = 0; i < j; ++i) t = mod.apply_generator(kED, t);
      for (int i = 0; i < j; ++i) t = mod.apply_generator(kFD, t);
      cols.push_back(mod.apply_generator(kED, t));
    }
    Matrix<Rational> m(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
    std::vector<Rational> rhs(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j)
      for (const auto& [key, c] : cols[static_cast<std::size_t>(j)])
        m[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(j - 1)] = c;
    for (const auto& [key, c] : cols[0]) rhs[static_cast<std::size_t>(key.first)] = -c;
    Matrix<Rational> probe = m;
    const bool unique = rref(probe, static_cast<std::size_t>(k)).size() == static_cast<std::size_t>(k);
    auto x = solve(m, rhs, static_cast<std::size_t>(k));
    if (!unique || !x) {
      r.fail("level " + std::to_string(k) + " solve", "DegenerateWeight", unique ? "inconsistent" : "rank deficient");
      continue;
    }
    const std::map<Symbol, Rational> at{{hd_symbol(), mod.weight(k)}};
    for (int j = 1; j <= k; ++j) {
      const Rational sym = p.c[static_cast<std::size_t>(j)].evaluate(at);
      const Rational got = (*x)[static_cast<std::size_t>(j - 1)];
      r.add("c" + std::to_string(j) + " at hD = " + rational_to_string(mod.weight(k)), sym == got,
            "RelationViolation", rational_to_string(got) + " vs " + rational_to_string(sym));
    }
  }
  return r;
}

std::vector<Report> run_oracles_serial(const ProjectorSeries& p, const ZRelations& rel,
                                       const std::vector<WeightPair>& weights, int n) {
  std::vector<Report> out;
  for (const auto& [l1, l2] : weights) out.push_back(singular_vector_oracle(p, &rel, l1, l2, n));
  return out;
}

std::vector<Report> run_oracles_parallel(const ProjectorSeries& p, const ZRelations& rel,
                                         const std::vector<WeightPair>& weights, int n) {
  std::vector<Report> out(weights.size());
  parallel_for(static_cast<std::ptrdiff_t>(weights.size()), [&](std::ptrdiff_t i) {
    const auto& [l1, l2] = weights[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = singular_vector_oracle(p, &rel, l1, l2, n);
  });
  return out;
}

std::vector<WeightPair> default_weight_pairs() {
  return {{Rational(1, 3), Rational(2, 7)}, {Rational(-5, 2), Rational(3, 11)}, {Rational(7, 4), Rational(-1, 9)}};
}

std::vector<Rational> default_s0_values() { return {Rational(1, 3), Rational(2), Rational(-5, 7)}; }

StepAlgebraResult check_step_algebra(const ProjectorSeries& p, int n, const std::vector<WeightPair>& weights,
                              const std::vector<Rational>& s0_values) {
  StepAlgebraResult res;
  Report& r = res.report;
  r.title = "step algebra of sl2 + sl2 over the diagonal sl2, kmax = " + std::to_string(p.kmax);
  res.relations = compute_z_relations(p);
  const ZRelations& z = res.relations;

  r.add("s0 from C1 - C2 is a multiple of reduce(P hd P)", z.s0 == z.s0_candidate.scaled(z.s0_scale),
        "RelationViolation", show(z.s0));
  r.note("reduce(P hd P) itself is not central: [hd, s+] = " + show(z.candidate_residue) + "; s0 = (" +
         z.s0_scale.to_string() + ") hd");
  r.add("s0 s+ - s+ s0 = 0", z.residue_plus.is_zero(), "RelationViolation", show(z.residue_plus));
  r.add("s0 s- - s- s0 = 0", z.residue_minus.is_zero(), "RelationViolation", show(z.residue_minus));
  const Element omega = casimir_sum();
  const Element om = z_multiply(omega, z.s_plus, p) - z_multiply(z.s_plus, omega, p);
  r.add("C1 + C2 commutes with s+", om.is_zero(), "RelationViolation", show(om));
  r.add("s+ s- in the span of s- s+, s0^2, 1", z.solved, "SolveFailure", show(z.pm));
  if (!z.commutator_in_s0_span)
    r.note("s+ s- - s- s+ is not in the span of 1, s0, s0^2; it involves s- s+ itself");

  for (const auto& rep : run_oracles_parallel(p, z, weights, n)) r.append(rep);

  res.dictionary_found = true;
  for (const auto& c : s0_values) {
    DictionarySearch s = search_dictionary(z, c);
    std::string witness;
    for (const auto& a : s.attempts) witness += (witness.empty() ? "" : "; ") + a;
    r.add("dictionary into xi*tau*taus - (xi - 1)*taus*tau = 1 at s0 = " + rational_to_string(c),
          s.found.has_value(), "NoDictionaryFound", witness);
    res.dictionary_found = res.dictionary_found && s.found.has_value();
    res.searches.push_back(std::move(s));
  }
  // negative control: without the projector there must be no dictionary
  const ProjectorSeries id = identity_projector();
  const DictionarySearch control = search_dictionary(compute_z_relations(id), s0_values.front());
  r.add("identity projector admits no dictionary", !control.found, "RelationViolation",
        control.attempts.empty() ? "" : control.attempts.front());

  for (const auto& line : z.lines()) r.note("relation: " + line);
  return res;
}

}  // namespace pbw
