#pragma once

// Exact operators on truncated polynomial modules span{z^0, ..., z^N}.
//
// Each operator carries a validity window W and an upward degree shift s: its
// column n (the image of z^n) agrees with the untruncated operator for
// n <= W.  Composition AB has window min(W_B, W_A - s_B) and shift s_A + s_B,
// so truncation artifacts never reach a checked entry.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbw/linalg.hpp"
#include "pbw/report.hpp"
#include "pbw/skewpbw.hpp"

namespace pbw {

class TruncatedOperator {
 public:
  TruncatedOperator() = default;
  TruncatedOperator(Matrix<Rational> m, int window, int shift);

  static TruncatedOperator zero(int n);
  static TruncatedOperator identity(int n);
  static TruncatedOperator diagonal(const std::vector<Rational>& d, int window);

  int top() const { return static_cast<int>(m_.size()) - 1; }  // N
  int window() const { return window_; }
  int shift() const { return shift_; }
  const Matrix<Rational>& matrix() const { return m_; }
  const Rational& at(int row, int col) const { return m_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }
  Rational& at(int row, int col) { return m_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }

  TruncatedOperator& restrict_window(int w);
  bool is_diagonal() const;  // on the window
  std::vector<Rational> diagonal_entries() const;

  friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
  TruncatedOperator scaled(const Rational& c) const;
  TruncatedOperator power(unsigned k) const;
  // Inverse of a diagonal operator; DivisionByZero if a window entry is 0.
  TruncatedOperator inverse_diagonal() const;

  struct Entry {
    int row;
    int col;
    Rational value;
  };
  // First nonzero entry in a trusted column, scanning columns in order.
  std::optional<Entry> first_nonzero() const;
  bool zero_on_window() const { return !first_nonzero(); }

 private:
  Matrix<Rational> m_;
  int window_ = -1;
  int shift_ = 0;
};

// Dense products; the parallel kernel distributes rows across threads.
Matrix<Rational> matmul_serial(const Matrix<Rational>& a, const Matrix<Rational>& b);
Matrix<Rational> matmul_parallel(const Matrix<Rational>& a, const Matrix<Rational>& b);

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b);

std::string describe_residue(const TruncatedOperator& r, const std::string& var = "z");

// Lowest weight h of the module carrying the Lobachevskii operators.
Rational weight_from_qr(const Rational& qr);
Rational qr_from_weight(const Rational& h);

struct Sl2Operators {
  TruncatedOperator lm, l0, lp;  // L_{-1}, L_0, L_1
};
Sl2Operators realize_sl2(int n, const Rational& h);
Report check_sl2_relations(int n, const Rational& h);

// Shapovalov squared norms ||z^k||^2 = k! prod_{j<k} (j + 2h), k = 0..n.
std::vector<Rational> shapovalov_norms(int n, const Rational& h);

struct LobachevskiiOperators {
  Rational h;
  TruncatedOperator t, ts;  // D and F
};
// Throws PoleInF if k + 2h = 0 for some k <= n.
LobachevskiiOperators realize_lobachevskii(int n, const Rational& qr);

Report check_tensor_relations(int n, const Rational& h);
Report check_lobachevskii_relations(int n, const Rational& qr);

// Exact check of every rule and exchange relation of `p` with generators and
// coefficient variables sent to operators (coefficients must be diagonal).
struct Realization {
  const AlgebraPresentation* presentation = nullptr;
  std::vector<TruncatedOperator> generators;
  std::map<Symbol, TruncatedOperator> coefficients;
  std::map<Symbol, Rational> scalars;
  std::string variable = "z";
};
Report check_realization(const Realization& r, const std::string& title);

enum class Linearization { Lin1, Lin2, Lin2Xi };
Linearization parse_linearization(const std::string& s);  // lin1 | lin2 | lin2_xi
Report check_linearization_realization(Linearization which, int n, const Rational& qr);

struct NormRow {
  int degree;
  Rational d_ratio;  // ||D z^k||^2 / ||z^k||^2
  Rational f_ratio;  // ||F z^k||^2 / ||z^k||^2
};
struct Norms {
  Rational d2, f2;  // maxima over k <= n
  std::vector<NormRow> table;
};
// Computed from the operator matrices and the Shapovalov form.
Norms truncated_norms(int n, const Rational& qr);
Report check_boundedness(const std::vector<int>& ns, const Rational& qr);

struct OscOperators {
  TruncatedOperator p, q, r, eps;
};
OscOperators realize_osc(int n, const Rational& r, const Rational& mu);
// xi -> a - eps with a = mu unless xi_constant is given; any other a fails.
Report check_osc_witness(int n, const Rational& r, const Rational& mu,
                              const std::optional<Rational>& xi_constant = std::nullopt);

}  // namespace pbw
