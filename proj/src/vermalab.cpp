#include "pbw/vermalab.hpp"

#include <algorithm>
#include <sstream>

#include "pbw/catalog.hpp"

namespace pbw {

// ---------------------------------------------------------------- operators

TruncatedOperator::TruncatedOperator(Matrix<Rational> m, int window, int shift)
    : m_(std::move(m)), window_(window), shift_(shift) {}

TruncatedOperator TruncatedOperator::zero(int n) {
  const auto d = static_cast<std::size_t>(n + 1);
  return TruncatedOperator(Matrix<Rational>(d, std::vector<Rational>(d, Rational(0))), n, 0);
}

TruncatedOperator TruncatedOperator::identity(int n) {
  auto op = zero(n);
  for (int k = 0; k <= n; ++k) op.at(k, k) = 1;
  return op;
}

TruncatedOperator TruncatedOperator::diagonal(const std::vector<Rational>& d, int window) {
  auto op = zero(static_cast<int>(d.size()) - 1);
  for (std::size_t k = 0; k < d.size(); ++k) op.m_[k][k] = d[k];
  op.window_ = window;
  return op;
}

TruncatedOperator& TruncatedOperator::restrict_window(int w) {
  window_ = std::min(window_, w);
  return *this;
}

bool TruncatedOperator::is_diagonal() const {
  for (int c = 0; c <= std::min(window_, top()); ++c)
    for (int r = 0; r <= top(); ++r)
      if (r != c && at(r, c) != 0) return false;
  return true;
}

std::vector<Rational> TruncatedOperator::diagonal_entries() const {
  std::vector<Rational> d;
  for (int k = 0; k <= top(); ++k) d.push_back(at(k, k));
  return d;
}

namespace {

void require_same_size(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.top() != b.top()) throw Error(ErrorKind::InvalidPresentation, "operators act on different truncations");
}

}  // namespace

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_size(a, b);
  Matrix<Rational> m = a.m_;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) m[r][c] += b.m_[r][c];
  return TruncatedOperator(std::move(m), std::min(a.window_, b.window_), std::max(a.shift_, b.shift_));
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) { return a + b.scaled(-1); }

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_size(a, b);
  return TruncatedOperator(matmul_parallel(a.m_, b.m_), std::min(b.window_, a.window_ - b.shift_),
                           a.shift_ + b.shift_);
}

TruncatedOperator TruncatedOperator::scaled(const Rational& c) const {
  TruncatedOperator r = *this;
  for (auto& row : r.m_)
    for (auto& x : row) x *= c;
  return r;
}

TruncatedOperator TruncatedOperator::power(unsigned k) const {
  TruncatedOperator r = identity(top());
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

TruncatedOperator TruncatedOperator::inverse_diagonal() const {
  if (!is_diagonal()) throw Error(ErrorKind::InvalidPresentation, "only diagonal operators are inverted");
  std::vector<Rational> d(static_cast<std::size_t>(top() + 1), Rational(0));
  int w = window_;
  for (int k = 0; k <= top(); ++k) {
    if (at(k, k) == 0) {
      if (k <= window_) throw Error(ErrorKind::DivisionByZero, "diagonal entry " + std::to_string(k) + " is zero");
      w = std::min(w, k - 1);
      continue;
    }
    d[static_cast<std::size_t>(k)] = 1 / at(k, k);
  }
  return diagonal(d, w);
}

std::optional<TruncatedOperator::Entry> TruncatedOperator::first_nonzero() const {
  for (int c = 0; c <= std::min(window_, top()); ++c)
    for (int r = 0; r <= top(); ++r)
      if (at(r, c) != 0) return Entry{r, c, at(r, c)};
  return std::nullopt;
}

Matrix<Rational> matmul_serial(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix<Rational> c(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Matrix<Rational> matmul_parallel(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix<Rational> c(n, std::vector<Rational>(m, Rational(0)));
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b) { return a * b - b * a; }

std::string describe_residue(const TruncatedOperator& r, const std::string& var) {
  if (r.window() < 0) return "empty validity window";
  auto e = r.first_nonzero();
  if (!e) return "zero on degrees <= " + std::to_string(r.window());
  return "entry (" + var + "^" + std::to_string(e->col) + " -> " + var + "^" + std::to_string(e->row) +
         ") = " + rational_to_string(e->value);
}

namespace {

void add_zero_check(Report& rep, const std::string& label, const TruncatedOperator& residue,
                    const std::string& var = "z") {
  bool ok = residue.window() >= 0 && residue.zero_on_window();
  rep.add(label + " [degrees <= " + std::to_string(residue.window()) + "]", ok, "RelationViolation",
          describe_residue(residue, var));
}

}  // namespace

// ---------------------------------------------------------------- sl2 and D, F

Rational weight_from_qr(const Rational& qr) {
  if (qr == 0) throw Error(ErrorKind::DivisionByZero, "q_R = 0");
  return (1 / qr + 1) / 2;
}

Rational qr_from_weight(const Rational& h) {
  Rational d = 2 * h - 1;
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "h = 1/2");
  return 1 / d;
}

Sl2Operators realize_sl2(int n, const Rational& h) {
  auto lm = TruncatedOperator::zero(n), l0 = TruncatedOperator::zero(n), lp = TruncatedOperator::zero(n);
  for (int k = 0; k <= n; ++k) {
    if (k < n) lm.at(k + 1, k) = 1;
    l0.at(k, k) = k + h;
    if (k > 0) lp.at(k - 1, k) = k * (k - 1 + 2 * h);
  }
  return {TruncatedOperator(lm.matrix(), n - 1, 1), l0, lp};
}

Report check_sl2_relations(int n, const Rational& h) {
  auto [lm, l0, lp] = realize_sl2(n, h);
  Report r;
  r.title = "sl2 realization N=" + std::to_string(n) + " h=" + rational_to_string(h);
  add_zero_check(r, "[L1,L-1] = 2 L0", commutator(lp, lm) - l0.scaled(2));
  add_zero_check(r, "[L1,L0] = L1", commutator(lp, l0) - lp);
  add_zero_check(r, "[L-1,L0] = -L-1", commutator(lm, l0) + lm);
  return r;
}

std::vector<Rational> shapovalov_norms(int n, const Rational& h) {
  std::vector<Rational> g{Rational(1)};
  for (int k = 1; k <= n; ++k) g.push_back(g.back() * k * (k - 1 + 2 * h));
  return g;
}

LobachevskiiOperators realize_lobachevskii(int n, const Rational& qr) {
  const Rational h = weight_from_qr(qr);
  auto d = TruncatedOperator::zero(n), f = TruncatedOperator::zero(n);
  for (int k = 0; k <= n; ++k) {
    Rational den = k + 2 * h;
    if (den == 0) throw Error(ErrorKind::PoleInF, "k + 2h vanishes at k = " + std::to_string(k));
    if (k > 0) d.at(k - 1, k) = k;
    if (k < n) f.at(k + 1, k) = 1 / den;
  }
  return {h, d, TruncatedOperator(f.matrix(), n - 1, 1)};
}

Report check_tensor_relations(int n, const Rational& h) {
  auto [lm, l0, lp] = realize_sl2(n, h);
  auto ops = realize_lobachevskii(n, qr_from_weight(h));
  const auto& D = ops.t;
  const auto& F = ops.ts;
  const auto id = TruncatedOperator::identity(n);
  Report r;
  r.title = "tensor operators N=" + std::to_string(n) + " h=" + rational_to_string(h);
  const TruncatedOperator* L[3] = {&lm, &l0, &lp};
  for (int i = -1; i <= 1; ++i) {
    const auto& li = *L[i + 1];
    add_zero_check(r, "[L" + std::to_string(i) + ",D] = -D^" + std::to_string(i + 1),
                   commutator(li, D) + D.power(static_cast<unsigned>(i + 1)));
  }
  for (int i = -1; i <= 1; ++i) {
    const auto& li = *L[i + 1];
    add_zero_check(r, "[L" + std::to_string(i) + ",F] = F^" + std::to_string(1 - i),
                   commutator(li, F) - F.power(static_cast<unsigned>(1 - i)));
  }
  // The printed exponent i-1 would need F^-1 at i = 0; F has no inverse.
  auto printed = commutator(l0, F) * F - id;
  r.note("printed law [L_i,F] = F^(i-1); verified law [L_i,F] = F^(1-i)");
  r.note("at i = 0 the printed law needs [L0,F] = F^-1, but [L0,F]*F - 1 has " + describe_residue(printed));
  return r;
}

Report check_lobachevskii_relations(int n, const Rational& qr) {
  auto ops = realize_lobachevskii(n, qr);
  const auto& t = ops.t;
  const auto& ts = ops.ts;
  const auto id = TruncatedOperator::identity(n);
  Report r;
  r.title = "lobachevskii relations N=" + std::to_string(n) + " qR=" + rational_to_string(qr);
  add_zero_check(r, "[tt*,t*t] = 0", commutator(t * ts, ts * t));
  add_zero_check(r, "[t,t*] = qR(1 - tt*)(1 - t*t)", commutator(t, ts) - ((id - t * ts) * (id - ts * t)).scaled(qr));

  // <t z^b, z^a> = <z^b, t* z^a>
  auto g = shapovalov_norms(n, ops.h);
  std::string witness;
  for (int b = 0; b <= std::min(n, t.window()) && witness.empty(); ++b)
    for (int a = 0; a <= std::min(n, ts.window()); ++a) {
      Rational lhs = t.at(a, b) * g[static_cast<std::size_t>(a)];
      Rational rhs = g[static_cast<std::size_t>(b)] * ts.at(b, a);
      if (lhs != rhs) {
        witness = "<t z^" + std::to_string(b) + ", z^" + std::to_string(a) + "> = " + rational_to_string(lhs) +
                  " but <z^" + std::to_string(b) + ", t* z^" + std::to_string(a) + "> = " + rational_to_string(rhs);
        break;
      }
    }
  r.add("t* is the Shapovalov adjoint of t", witness.empty(), "RelationViolation", witness);
  return r;
}

// ---------------------------------------------------------------- realizations

namespace {

// Coefficient c evaluated entrywise on the diagonal, or nullopt on a pole.
std::optional<TruncatedOperator> evaluate_coefficient(const Realization& r, const RationalFunction& c, int n) {
  int window = n;
  for (Symbol v : c.variables()) {
    if (r.scalars.count(v)) continue;
    auto it = r.coefficients.find(v);
    if (it == r.coefficients.end())
      throw Error(ErrorKind::MissingParameter, "no value or operator for '" + v.name() + "'");
    window = std::min(window, it->second.window());
  }
  std::vector<Rational> d(static_cast<std::size_t>(n + 1), Rational(0));
  for (int k = 0; k <= window; ++k) {
    std::map<Symbol, Rational> point(r.scalars.begin(), r.scalars.end());
    for (const auto& [v, op] : r.coefficients) point[v] = op.at(k, k);
    try {
      d[static_cast<std::size_t>(k)] = c.evaluate(point);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionByZero) throw;
      return std::nullopt;
    }
  }
  return TruncatedOperator::diagonal(d, window);
}

TruncatedOperator word_operator(const Realization& r, const Word& w, int n) {
  auto op = TruncatedOperator::identity(n);
  for (int g : w) op = op * r.generators.at(static_cast<std::size_t>(g));
  return op;
}

std::string clearing_note(const Polynomial& den) { return " (cleared by " + den.to_string() + ")"; }

}  // namespace

Report check_realization(const Realization& real, const std::string& title) {
  const auto& p = *real.presentation;
  if (real.generators.size() != p.size())
    throw Error(ErrorKind::InvalidPresentation, "realization needs one operator per generator");
  const int n = real.generators.front().top();
  for (const auto& [v, op] : real.coefficients)
    if (!op.is_diagonal())
      throw Error(ErrorKind::InvalidPresentation, "coefficient '" + v.name() + "' is not realized diagonally");

  Report rep;
  rep.title = title;
  for (const auto& [key, rhs] : p.rules) {
    const std::string label = "rule " + render_word(p, {key.high, key.low}) + " = " + render(p, rhs);
    const auto lhs = word_operator(real, {key.high, key.low}, n);
    // Direct form first; relations with a pole on the window are multiplied
    // through by the common denominator of their coefficients.
    std::optional<TruncatedOperator> residue = lhs;
    for (const auto& [w, c] : rhs.terms()) {
      auto cop = evaluate_coefficient(real, c, n);
      if (!cop) {
        residue.reset();
        break;
      }
      *residue = *residue - *cop * word_operator(real, w, n);
    }
    if (residue) {
      add_zero_check(rep, label, *residue, real.variable);
      continue;
    }
    Polynomial den(1);
    for (const auto& [w, c] : rhs.terms()) den = lcm(den, c.denominator());
    auto dop = evaluate_coefficient(real, RationalFunction(den), n);
    TruncatedOperator cleared = *dop * lhs;
    for (const auto& [w, c] : rhs.terms())
      cleared = cleared - *evaluate_coefficient(real, c * RationalFunction(den), n) * word_operator(real, w, n);
    add_zero_check(rep, label + clearing_note(den), cleared, real.variable);
  }

  for (std::size_t g = 0; g < p.size(); ++g)
    for (Symbol x : p.coeffs) {
      const std::string label = "exchange " + p.generators[g] + "*" + x.name() + " = sigma(" + x.name() + ")*" +
                                p.generators[g];
      const auto& mg = real.generators[g];
      const auto& mx = real.coefficients.at(x);
      RationalFunction moved = p.sigma[g].apply(RationalFunction(Polynomial::variable(x)));
      if (auto sop = evaluate_coefficient(real, moved, n)) {
        add_zero_check(rep, label, mg * mx - *sop * mg, real.variable);
      } else {
        auto den = *evaluate_coefficient(real, RationalFunction(moved.denominator()), n);
        auto num = *evaluate_coefficient(real, RationalFunction(moved.numerator()), n);
        add_zero_check(rep, label + clearing_note(moved.denominator()), den * mg * mx - num * mg, real.variable);
      }
    }
  return rep;
}

Linearization parse_linearization(const std::string& s) {
  if (s == "lin1") return Linearization::Lin1;
  if (s == "lin2") return Linearization::Lin2;
  if (s == "lin2_xi") return Linearization::Lin2Xi;
  throw Error(ErrorKind::Usage, "unknown linearization '" + s + "' (expected lin1, lin2 or lin2_xi)");
}

Report check_linearization_realization(Linearization which, int n, const Rational& qr) {
  auto ops = realize_lobachevskii(n, qr);
  const auto id = TruncatedOperator::identity(n);
  TruncatedOperator eta = (id - ops.t * ops.ts).scaled(qr);

  std::string key;
  switch (which) {
    case Linearization::Lin1:
      key = "lobachevskii_lin1";
      break;
    case Linearization::Lin2:
      key = "lobachevskii_lin2";
      break;
    case Linearization::Lin2Xi:
      key = "lobachevskii_lin2_xi";
      break;
  }
  const AlgebraPresentation p = build(key);
  Realization real;
  real.presentation = &p;
  real.generators = {ops.ts, ops.t};  // taus < tau
  if (which == Linearization::Lin2Xi)
    real.coefficients[Symbol("xi")] = eta.inverse_diagonal();
  else
    real.coefficients[Symbol("eta")] = eta;
  if (which == Linearization::Lin1) real.scalars[Symbol("qR")] = qr;

  Report rep;
  rep.title = key + " realization N=" + std::to_string(n) + " qR=" + rational_to_string(qr);
  rep.add("eta = qR(1 - tt*) is diagonal", eta.is_diagonal(), "RelationViolation", "off-diagonal entry");
  rep.append(check_realization(real, ""));
  return rep;
}

// ---------------------------------------------------------------- norms

Norms truncated_norms(int n, const Rational& qr) {
  // One extra degree so that F z^n is computed exactly for every k <= n.
  auto ops = realize_lobachevskii(n + 1, qr);
  auto g = shapovalov_norms(n + 1, ops.h);
  Norms out;
  for (int k = 0; k <= n; ++k) {
    Rational dn = 0, fn = 0;
    for (int row = 0; row <= n + 1; ++row) {
      const Rational& dv = ops.t.at(row, k);
      const Rational& fv = ops.ts.at(row, k);
      dn += dv * dv * g[static_cast<std::size_t>(row)];
      fn += fv * fv * g[static_cast<std::size_t>(row)];
    }
    NormRow rowv{k, dn / g[static_cast<std::size_t>(k)], fn / g[static_cast<std::size_t>(k)]};
    if (k == 0 || rowv.d_ratio > out.d2) out.d2 = rowv.d_ratio;
    if (k == 0 || rowv.f_ratio > out.f2) out.f2 = rowv.f_ratio;
    out.table.push_back(rowv);
  }
  return out;
}

Report check_boundedness(const std::vector<int>& ns, const Rational& qr) {
  const Rational h = weight_from_qr(qr);
  Report r;
  r.title = "boundedness qR=" + rational_to_string(qr);
  std::optional<Rational> prev;
  for (int n : ns) {
    Norms nm = truncated_norms(n, qr);
    const std::string at = " at N=" + std::to_string(n);
    Rational closed_d = Rational(n) / (n + 2 * h - 1);
    Rational closed_f = Rational(n + 1) / (n + 2 * h);
    r.add("||D||^2 = " + rational_to_string(nm.d2) + at, nm.d2 <= 1, "Unbounded", "exceeds 1");
    r.add("||D||^2 matches N/(N+2h-1)" + at, nm.d2 == closed_d, "RelationViolation",
          rational_to_string(nm.d2) + " != " + rational_to_string(closed_d));
    r.add("1 - ||D||^2 = (2h-1)/(N+2h-1)" + at, 1 - nm.d2 == (2 * h - 1) / (n + 2 * h - 1), "RelationViolation",
          rational_to_string(1 - nm.d2));
    r.add("||F||^2 = " + rational_to_string(nm.f2) + " <= 1" + at, nm.f2 <= 1, "Unbounded", "exceeds 1");
    r.add("||F||^2 matches (N+1)/(N+2h)" + at, nm.f2 == closed_f, "RelationViolation",
          rational_to_string(nm.f2) + " != " + rational_to_string(closed_f));
    if (prev)
      r.add("||D||^2 nondecreasing" + at, *prev <= nm.d2, "RelationViolation",
            rational_to_string(*prev) + " > " + rational_to_string(nm.d2));
    prev = nm.d2;
  }
  return r;
}

// ---------------------------------------------------------------- oscillator

OscOperators realize_osc(int n, const Rational& r, const Rational& mu) {
  if (r == 0) throw Error(ErrorKind::DivisionByZero, "r = 0");
  auto p = TruncatedOperator::zero(n), q = TruncatedOperator::zero(n), eps = TruncatedOperator::zero(n);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) p.at(k - 1, k) = k;
    if (k < n) q.at(k + 1, k) = r;
    eps.at(k, k) = k + mu;
  }
  return {p, TruncatedOperator(q.matrix(), n - 1, 1), TruncatedOperator::identity(n).scaled(r), eps};
}

Report check_osc_witness(int n, const Rational& r, const Rational& mu, const std::optional<Rational>& xi_constant) {
  auto ops = realize_osc(n, r, mu);
  const auto id = TruncatedOperator::identity(n);
  Report rep;
  rep.title = "oscillator witness N=" + std::to_string(n) + " r=" + rational_to_string(r) + " mu=" +
              rational_to_string(mu);

  const AlgebraPresentation osc = build("osc");
  Realization ro;
  ro.presentation = &osc;
  ro.generators = {ops.p, ops.q, ops.r, ops.eps};
  ro.variable = "u";
  rep.append(check_realization(ro, "osc"));

  const AlgebraPresentation loc = build("osc_localized");
  Realization rl;
  rl.presentation = &loc;
  rl.generators = {ops.p, ops.q, ops.r};
  rl.coefficients[Symbol("eps")] = ops.eps;
  rl.variable = "u";
  rep.append(check_realization(rl, "osc_localized"));

  // xi -> mu - eps, tau -> q, taus -> (r(eps - mu + 1))^-1 p
  const Rational a = xi_constant.value_or(mu);
  TruncatedOperator xi = id.scaled(a) - ops.eps;
  TruncatedOperator tau = ops.q;
  TruncatedOperator taus = (ops.eps - id.scaled(mu) + id).scaled(r).inverse_diagonal() * ops.p;
  add_zero_check(rep, "dictionary: taus*tau = 1", taus * tau - id, "u");
  auto p0 = TruncatedOperator::zero(n);
  p0.at(0, 0) = 1;
  add_zero_check(rep, "dictionary: tau*taus = 1 - P0", tau * taus - id + p0, "u");

  const AlgebraPresentation lxi = build("lobachevskii_lin2_xi");
  Realization rx;
  rx.presentation = &lxi;
  rx.generators = {taus, tau};
  rx.coefficients[Symbol("xi")] = xi;
  rx.variable = "u";
  rep.append(check_realization(rx, "lin2_xi via dictionary"));
  rep.note("dictionary xi -> " + (xi_constant ? rational_to_string(a) : std::string("mu")) +
           " - eps, tau -> q, taus -> (r(eps - mu + 1))^-1 p");
  return rep;
}

}  // namespace pbw
