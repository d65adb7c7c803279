#pragma once

#include <string>
#include <vector>

#include "nlie/nary.hpp"
#include "nlie/poly.hpp"

namespace nlie {

/// Symmetric nondegenerate bilinear form on F^{n+1}.
struct BilinearForm {
  FieldSpec field;
  std::vector<std::vector<Scalar>> b;

  static BilinearForm identity(FieldSpec field, int dim);
  /// One row per line, entries are rational literals.
  static BilinearForm parse(FieldSpec field, const std::string& text);
  static BilinearForm read_file(FieldSpec field, const std::string& path);

  int dim() const { return static_cast<int>(b.size()); }
  /// Throws unless square, symmetric and nondegenerate.
  void validate() const;
  /// Rows of b^{-1}; row k holds the coordinates of the dual vector a^k.
  std::vector<SuperVector> dual_basis() const;
};

/// Even space e1..e_{n+1}.
SpacePtr on_space(FieldSpec field, int n);
/// [a_{i_1},...,a_{i_n}] = eps_{i_1..i_n k} a^k with eps_{1..n+1} = +1.
BasisBracket on_bracket(const BilinearForm& form);
NAryAlgebra on_algebra(const BilinearForm& form);
StructureConstants on_structure(const BilinearForm& form);

/// Derivations D_1..D_r of F[x_1..x_m], given as polynomial vector fields.
struct DerivationSet {
  std::string name;
  FieldSpec field;
  int nvars = 0;
  std::vector<VectorField> fields;

  static DerivationSet partials(FieldSpec field, int nvars, int count);
};

enum class DeterminantKind { S, W, SW };

struct CarrierOptions {
  int window = 3;
  /// S-type carriers are taken modulo constants by default.
  bool quotient_constants = true;
  /// SW sign (-1)^{k+n-1} instead of (-1)^{k+n}.
  bool appendix_sign = false;
};

/// Determinant brackets over F[x_1..x_m] for an arbitrary derivation set:
/// S uses det(D_i f_j) with |D| = n, W the bordered determinant with
/// |D| = n-1, SW the tagged bracket on n-1 copies with |D| = 1.
/// Monomials of total degree at most `window` form the sample basis.
NAryAlgebra determinant_algebra(DeterminantKind kind, const DerivationSet& d, int n, const CarrierOptions& opts);

NAryAlgebra sn_algebra(FieldSpec field, int n, const CarrierOptions& opts = {});
NAryAlgebra wn_algebra(FieldSpec field, int n, const CarrierOptions& opts = {});
NAryAlgebra swn_algebra(FieldSpec field, int n, const CarrierOptions& opts = {});

/// Poly in one carrier copy as an element.
Element poly_element(const Poly& p, int tag = 0);
Poly element_poly(const Element& e, int nvars, int tag = 0);

/// Whether span{D_i} contains every [D_i, D_j].
bool dzhumadildaev_closed(const DerivationSet& d);

/// Derivation sets used to correlate closure with the identity:
/// {d}, {d, x d}, {d1, d2}, {d, x^2 d}, {x1 d1, x1 d2 + d1}.
std::vector<DerivationSet> curated_derivation_sets(FieldSpec field);

}  // namespace nlie
