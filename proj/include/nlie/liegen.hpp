#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlie/report.hpp"
#include "nlie/universal_w.hpp"

namespace nlie {

struct GenerationTrace {
  int cap = 0;
  int rounds = 0;
  /// dims_per_round[0] are the seed dims; one entry per completed round after that.
  std::vector<std::map<int, int>> dims_per_round;
  bool fixpoint() const { return dims_per_round.size() >= 2 && dims_per_round.back() == dims_per_round.end()[-2]; }
  json to_json() const;
};

struct Generated {
  GradedSubalgebra algebra;
  WElement mu;
  GenerationTrace trace;
  int n() const { return mu.arity(); }
};

/// Smallest bracket-closed graded span of W(V) containing the given seeds,
/// truncated at degree `cap`. Brackets go lowest degree first.
GradedSubalgebra generate_closure(const SpacePtr& v, const std::vector<WElement>& seeds, int cap,
                                  GenerationTrace* trace = nullptr);

/// Lie(g): generated by W_{-1}(V) = V and mu. Throws if cap < deg mu.
Generated generate_lie(const SpacePtr& v, const WElement& mu, int cap);

/// First pair of basis elements whose bracket leaves the span (within the cap).
std::optional<std::string> closure_witness(const GradedSubalgebra& a);

/// Matrix of a degree-0 element acting on L_{-1} = V, rows indexed by output.
SparseMatrix l0_action(const WElement& a);

struct IrreducibilityResult {
  Status status = Status::not_decided;
  std::string method;
  int envelope_dim = 0;
  /// Basis of a proper invariant subspace when reducible.
  std::vector<SuperVector> invariant_subspace;
};

/// Burnside test on the unital associative envelope of the given operators on
/// F^d; a proper invariant span from spinning a basis vector certifies reducibility.
IrreducibilityResult burnside_test(FieldSpec field, int d, const std::vector<SparseMatrix>& ops);
IrreducibilityResult check_irreducible(const GradedSubalgebra& a);

struct AdmissiblePairReport {
  bool transitive = true;
  std::string transitivity_witness;
  bool generated_by_v_and_mu = true;
  bool mu_centralizes_l0 = true;
  std::string l3_witness;
  IrreducibilityResult irreducible;
  std::map<int, int> graded_dims;
  bool top_is_line = false;

  bool admissible() const { return transitive && generated_by_v_and_mu && mu_centralizes_l0; }
  std::vector<CheckRecord> records() const;
};

AdmissiblePairReport check_admissible(const Generated& g);

/// Shape of a char-0 admissible pair: five checks, one record each.
std::vector<CheckRecord> check_theorem_0_2(const Generated& g);

/// [(ad x_1)..(ad x_k) mu, mu] = 0 for every basis tuple and every j = 0..n-1,
/// with k = n-j-1, and the stronger mu box (ad x)..mu = 0 for j >= 1.
/// When `max_tuples` is positive, at most that many tuples are taken per j.
CheckRecord check_lemma_3_1(const Generated& g, long max_tuples = 0);

/// [x_1,[x_2,..,[x_k, mu]]] for basis indices x of V.
WElement iterated_ad(const WElement& mu, const std::vector<int>& xs);

}  // namespace nlie
