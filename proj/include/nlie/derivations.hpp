#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlie/catalog.hpp"
#include "nlie/report.hpp"

namespace nlie {

/// Homogeneous endomorphism of a finite space; column i is the image of e_i.
struct ParityMatrix {
  int parity = 0;
  SparseMatrix m;
};

/// [A, B] = AB - (-1)^{p(A)p(B)} BA.
ParityMatrix supercommutator(const ParityMatrix& a, const ParityMatrix& b);

struct DerivationSpace {
  SpacePtr space;
  std::vector<ParityMatrix> basis;
  std::vector<ParityMatrix> inner;

  int dim() const { return static_cast<int>(basis.size()); }
  int inner_dim() const { return static_cast<int>(inner.size()); }
  bool in_derivations(const SparseMatrix& m) const;
  bool in_inner(const SparseMatrix& m) const;
  /// Inder = Der.
  bool all_inner() const;
};

/// Solution space of the Leibniz system over all ordered basis tuples, both parities.
std::vector<ParityMatrix> derivation_basis(const StructureConstants& sc);
/// Basis of the span of D_{a_1..a_{n-1}} over ordered basis source tuples.
std::vector<ParityMatrix> inder_span(const StructureConstants& sc);
DerivationSpace derivation_space(const StructureConstants& sc);

/// First basis pair with [Der, Inder] outside Inder.
std::optional<std::string> ideal_witness(const DerivationSpace& ds);
inline bool ideal_check(const DerivationSpace& ds) { return !ideal_witness(ds).has_value(); }

/// D^T b + b D = 0.
bool is_form_skew(const SparseMatrix& d, const BilinearForm& form);

/// dim Der, Inder = Der, and the ideal property, with a basis printout.
std::vector<CheckRecord> derivation_report(const StructureConstants& sc);

std::string format_matrix(const SparseMatrix& m);

}  // namespace nlie
