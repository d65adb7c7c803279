#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlie/linalg.hpp"
#include "nlie/report.hpp"

namespace nlie {

/// x^alpha xi_S with the xi-subset S as a bitmask (xi_1 is bit 0). The
/// Grassmann part is always kept in increasing order.
struct SuperMonomial {
  std::vector<int> x;
  std::uint32_t xi = 0;
  auto operator<=>(const SuperMonomial&) const = default;

  int xdegree() const;
  int xicount() const;
};

/// Element of F[x_1..x_m] (x) Lambda(xi_1..xi_n).
using SuperPoly = LinComb<SuperMonomial>;

SuperPoly sp_constant(const Scalar& c, int m);
SuperPoly sp_x(FieldSpec f, int m, int i);
SuperPoly sp_xi(FieldSpec f, int m, int j);
/// xi_{j_1} xi_{j_2} ... in the given order (0-based indices).
SuperPoly sp_xi_product(FieldSpec f, int m, const std::vector<int>& js);
SuperPoly sp_monomial(FieldSpec f, const SuperMonomial& mono);
SuperPoly sp_multiply(const SuperPoly& a, const SuperPoly& b);
SuperPoly sp_dx(const SuperPoly& p, int i);
/// Left derivative along xi_j.
SuperPoly sp_dxi(const SuperPoly& p, int j);
/// Grassmann parity; 0 for zero, throws when inhomogeneous.
int sp_parity(const SuperPoly& p);
/// Splits into even and odd parts.
std::pair<SuperPoly, SuperPoly> sp_split(const SuperPoly& p);
std::string format_monomial(const SuperMonomial& m);
std::string format_super(const SuperPoly& p);

/// Basis of realized elements: a function (kind 0) or a monomial times
/// d/dx_i (kind 1) or d/dxi_j (kind 2).
struct OpKey {
  int kind = 0;
  int index = 0;
  SuperMonomial mono;
  auto operator<=>(const OpKey&) const = default;
};

/// Functions and first-order differential operators share one representation.
using SuperElement = LinComb<OpKey>;
using DiffOperator = SuperElement;

SuperElement as_function(const SuperPoly& p);
SuperPoly function_part(const SuperElement& e);
/// P d/dx_i.
DiffOperator op_dx(const SuperPoly& p, int i);
/// Q d/dxi_j.
DiffOperator op_dxi(const SuperPoly& q, int j);
/// Coefficient of d/dx_i (kind 1) or d/dxi_j (kind 2).
SuperPoly op_coefficient(const DiffOperator& x, int kind, int index);

SuperPoly op_apply(const DiffOperator& x, const SuperPoly& f);
int op_parity(const DiffOperator& x);
/// Supercommutator reduced to first order: [X,Y]_k = X(Y_k) - (-1)^{p(X)p(Y)} Y(X_k).
DiffOperator op_bracket(const DiffOperator& x, const DiffOperator& y);
std::string format_element(const SuperElement& e);

/// sum_i dP_i/dx_i + sum_j (-1)^{p(Q_j)} dQ_j/dxi_j.
SuperPoly divergence(const DiffOperator& x);

using DivergenceFn = std::function<SuperPoly(const DiffOperator&)>;
/// pi_lambda(X) f = X f + (-1)^{p(X)p(f)} lambda f Div X.
SuperPoly pi_lambda(const DiffOperator& x, const SuperPoly& f, const Scalar& lambda, const DivergenceFn& div);
/// pi([X,Y]) f - [pi(X), pi(Y)] f.
SuperPoly pi_lambda_residue(const DiffOperator& x, const DiffOperator& y, const SuperPoly& f, const Scalar& lambda,
                            const DivergenceFn& div);

/// Poisson bracket of P(m,n): {p_i,q_i} = 1 for p_i = x_i, q_i = x_{k+i},
/// and {xi_i, xi_j} = b_ij on the Grassmann generators.
SuperPoly poisson_bracket(const SuperPoly& f, const SuperPoly& g, int m, const std::vector<std::vector<Scalar>>& b);
/// b_ij = 1 when i + j = n + 1 (1-based).
std::vector<std::vector<Scalar>> antidiagonal_form(FieldSpec f, int n);
std::vector<std::vector<Scalar>> identity_form(FieldSpec f, int n);
/// The vector field g -> {f, g} of the Poisson bracket.
DiffOperator hamiltonian_field(const SuperPoly& f, int m, const std::vector<std::vector<Scalar>>& b);

/// Buttin bracket on Pi F(n,n); the sign uses the parity in Pi F.
SuperPoly buttin_bracket(const SuperPoly& f, const SuperPoly& g, int n);
DiffOperator buttin_field(const SuperPoly& f, int n);
/// Odd Laplacian sum_i d/dx_i d/dxi_i.
SuperPoly odd_laplacian(const SuperPoly& f, int n);

/// Contact bracket on Pi F(n,n+1) with E = sum_{i<=n}(x_i d/dx_i + xi_i d/dxi_i).
SuperPoly contact_bracket(const SuperPoly& f, const SuperPoly& g, int n);
DiffOperator contact_field(const SuperPoly& f, int n);
SuperPoly euler(const SuperPoly& f, int n);
/// div_beta f = Delta f + (E - n beta) df/dxi_{n+1}.
SuperPoly div_beta(const SuperPoly& f, int n, const Scalar& beta);

enum class RealizationKind { W, Sprime, S, Hprime, H, HO, SHOprime, SHO, KO, SKOprime, SKO };

struct RealizationHandle {
  RealizationKind kind = RealizationKind::W;
  int m = 0;
  int n = 0;
  FieldSpec field;
  Scalar beta;
  /// Form on the xi generators for H-type handles; identity when empty.
  std::vector<std::vector<Scalar>> form;

  /// "W(m,n)", "S'(m,n)", "S(m,n)", "H'(m,n)", "H(m,n)", "HO(n,n)", "SHO'(n,n)",
  /// "SHO(n,n)", "KO(n,n+1)", "SKO'(n,n+1;beta)", "SKO(n,n+1;beta)".
  static RealizationHandle parse(const std::string& text, FieldSpec field = FieldSpec::rationals());
  std::string to_string() const;
  /// Operators for W and S types, functions otherwise.
  bool function_type() const;
  /// The derived subalgebra of the primed algebra (S, H, SHO, SKO).
  bool derived() const;
};

/// Type (k_1..k_m | s_1..s_n).
struct GradingSpec {
  std::vector<int> k;
  std::vector<int> s;
  /// "k1,..,km|s1,..,sn".
  static GradingSpec parse(const std::string& text);
  std::string to_string() const;
  static GradingSpec uniform(int m, int n, int kx, int sxi);
};

/// A realization with its grading, computed bidegree by bidegree. The
/// second degree is the standard weight grading, so each bigraded piece is
/// finite-dimensional and brackets are exact within it.
class RealizedAlgebra {
 public:
  RealizedAlgebra(RealizationHandle h, GradingSpec g);

  const RealizationHandle& handle() const { return h_; }
  const GradingSpec& grading() const { return g_; }
  FieldSpec field() const { return h_.field; }
  int nx() const { return h_.m; }
  int nxi() const { return h_.n; }

  SuperElement bracket(const SuperElement& a, const SuperElement& b) const;
  int parity(const SuperElement& a) const;
  /// Membership in the primed algebra (div, Delta or div_beta vanish).
  bool member(const SuperElement& a) const;
  /// (type degree, weight degree); throws when a is not bihomogeneous.
  std::pair<int, int> bidegree(const SuperElement& a) const;
  std::pair<int, int> term_bidegree(const OpKey& k) const;

  int min_type() const { return min_type_; }
  int min_weight() const { return min_weight_; }

  /// Basis of the primed algebra (or of the derived one for derived
  /// handles) in one bidegree.
  const std::vector<SuperElement>& component(int type, int weight) const;
  const std::vector<SuperElement>& primed_component(int type, int weight) const;
  /// Basis of [L', L'] in one bidegree, computed from all contributing pairs.
  const std::vector<SuperElement>& derived_component(int type, int weight) const;

  /// Bidegrees whose candidate terms all have x-degree at most xwindow.
  std::vector<std::pair<int, int>> window(int xwindow) const;
  /// Union over the window of the pieces of a type degree.
  std::vector<SuperElement> graded_component(int type, int xwindow) const;

 private:
  const std::vector<OpKey>& terms_of(int type, int weight) const;
  SuperPoly constraint(const SuperElement& a) const;
  SuperElement normalize(SuperElement a) const;

  RealizationHandle h_;
  GradingSpec g_;
  int min_type_ = 0;
  int min_weight_ = 0;
  std::vector<int> xi_weight_;
  mutable std::map<std::pair<int, int>, std::vector<OpKey>> terms_;
  mutable std::map<std::pair<int, int>, std::vector<SuperElement>> primed_;
  mutable std::map<std::pair<int, int>, std::vector<SuperElement>> derived_;
};

/// Complement element displayed in the decomposition of the primed algebra.
struct DecompositionSpec {
  std::string name;
  RealizationHandle handle;
  GradingSpec grading;
  SuperElement complement;
  int xwindow = 2;
};

DecompositionSpec s_prime_spec(int n, int xwindow = 2);
DecompositionSpec hamiltonian_spec(int n);
DecompositionSpec odd_hamiltonian_spec(int n, int xwindow = 1);
DecompositionSpec odd_contact_spec(int n, int xwindow = 1);
DecompositionSpec odd_contact_critical_spec(int n, int xwindow = 1);

/// Within the window: the complement lies in the primed algebra and not in the
/// derived span, the derived part has codimension 1, and it is an ideal.
CheckRecord check_decomposition(const DecompositionSpec& spec);

/// Pairs (i)-(iv): the realized algebra, mu, and the catalog comparison.
CheckRecord verify_pair(int which, int n, int xwindow, std::vector<CheckRecord>* parts = nullptr);

}  // namespace nlie
