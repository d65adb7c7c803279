#pragma once

#include <string>
#include <vector>

#include "nlie/linalg.hpp"

namespace nlie {

/// Exponent vector of a monomial in x_1..x_m.
using Monomial = std::vector<int>;
using Poly = LinComb<Monomial>;

Poly poly_constant(FieldSpec field, int nvars, const Scalar& c);
Poly poly_var(FieldSpec field, int nvars, int i);
Poly poly_monomial(FieldSpec field, const Monomial& m);

int total_degree(const Monomial& m);
Poly multiply(const Poly& a, const Poly& b);
Poly derivative(const Poly& p, int var);
/// Drops the constant term.
Poly drop_constant(const Poly& p);

/// Monomials with mindeg <= total degree <= maxdeg, by degree then
/// lexicographically descending in x_1 (so x1 before x2).
std::vector<Monomial> monomials(int nvars, int mindeg, int maxdeg);

/// "x1^2*x2" style names; a single variable is called "x".
std::string format_monomial(const Monomial& m);
std::string format_poly(const Poly& p);

/// Polynomial vector field sum_i X^i d/dx_i.
struct VectorField {
  std::vector<Poly> coeffs;

  int nvars() const { return static_cast<int>(coeffs.size()); }
  Poly apply(const Poly& f) const;
  bool is_zero() const;
  std::string to_string() const;
};

VectorField partial(FieldSpec field, int nvars, int i);
/// [X,Y]^k = X(Y^k) - Y(X^k).
VectorField commutator(const VectorField& x, const VectorField& y);

/// Determinant by permutation expansion (small matrices).
Poly determinant(const std::vector<std::vector<Poly>>& m);

}  // namespace nlie
