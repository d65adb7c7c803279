#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlie/multilinear.hpp"

namespace nlie {

/// Basis element of a carrier: a tag (basis index, or copy index for tagged
/// polynomials) and an exponent vector (empty for finite bases).
struct BasisKey {
  int tag = 0;
  std::vector<int> exps;
  auto operator<=>(const BasisKey&) const = default;
};

using Element = LinComb<BasisKey>;
using KeyTuple = std::vector<BasisKey>;

enum class SampleMode { ordered, sorted };

/// An n-ary (super)algebra given by an evaluator on basis tuples.
class NAryAlgebra {
 public:
  using Evaluator = std::function<Element(const KeyTuple&)>;
  using ParityFn = std::function<int(const BasisKey&)>;
  using LabelFn = std::function<std::string(const BasisKey&)>;

  NAryAlgebra(std::string name, int arity, int parity, FieldSpec field, Evaluator evaluator, ParityFn parity_of,
              LabelFn label, std::vector<BasisKey> sample_basis);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  int parity() const { return parity_; }
  const FieldSpec& field() const { return field_; }
  int parity_of(const BasisKey& k) const { return parity_of_(k); }
  std::string label(const BasisKey& k) const { return label_(k); }
  /// Basis elements used to quantify identities (all of a finite basis, or a
  /// monomial window).
  const std::vector<BasisKey>& sample_basis() const { return sample_basis_; }
  /// Ordered tuples when the sample basis has at most 6 elements, otherwise
  /// non-decreasing tuples (valid once anticommutativity is established).
  SampleMode sample_mode() const;
  void set_sample_mode(SampleMode m) { mode_ = m; }
  /// When false, bracket_basis passes tuples to the evaluator unsorted
  /// (used for products that are not anticommutative).
  void set_canonicalize(bool on) { canonicalize_ = on; }

  /// Evaluator as supplied, no reordering.
  Element raw_bracket(const KeyTuple& args) const { return eval_(args); }
  /// Bracket of basis elements: arguments are sorted using anticommutativity
  /// and results are memoized.
  Element bracket_basis(const KeyTuple& args) const;
  Element bracket(const std::vector<Element>& args) const;

  std::string format(const Element& e) const;

 private:
  std::string name_;
  int arity_;
  int parity_;
  FieldSpec field_;
  Evaluator eval_;
  ParityFn parity_of_;
  LabelFn label_;
  std::vector<BasisKey> sample_basis_;
  std::optional<SampleMode> mode_;
  bool canonicalize_ = true;
  std::shared_ptr<std::map<KeyTuple, Element>> memo_;
};

/// Calls fn on every tuple drawn from `basis` per the sampling mode. For the
/// sorted mode, repeated even elements are skipped. Stops when fn returns false.
void for_each_sample(const NAryAlgebra& a, int length, SampleMode mode, const std::function<bool(const KeyTuple&)>& fn);

struct IdentityCheck {
  bool pass = true;
  long samples = 0;
  std::string witness;  // first failing sample, empty on pass
  Element residue;
};

/// Anticommutativity of the raw evaluator on all sampled tuples and all
/// adjacent swaps.
IdentityCheck check_anticommutativity(const NAryAlgebra& a);

/// Super Filippov-Jacobi identity:
/// [a_1..a_{n-1},[b_1..b_n]] = (-1)^{alpha A} sum_k (-1)^{(p(b_1)+..+p(b_{k-1})) A}
///   [b_1..[a_1..a_{n-1},b_k]..b_n],  A = p(a_1)+..+p(a_{n-1}).
IdentityCheck check_fj(const NAryAlgebra& a);
/// Residue of the identity for one tuple.
Element fj_residue(const NAryAlgebra& a, const KeyTuple& as, const KeyTuple& bs);

/// Homogeneous linear endomorphism given on basis keys.
struct Endomorphism {
  int parity = 0;
  std::function<Element(const BasisKey&)> action;
  Element apply(const Element& x) const;
};

/// Leibniz residue of D on one tuple:
/// D(mu(a)) - (-1)^{d p(mu)} sum_k (-1)^{d(p(a_1)+..+p(a_{k-1}))} mu(a_1..D a_k..a_n).
Element leibniz_residue(const NAryAlgebra& a, const Endomorphism& d, const KeyTuple& args);
IdentityCheck is_derivation(const NAryAlgebra& a, const Endomorphism& d);

/// D_{a_1..a_{n-1}}(x) = [a_1..a_{n-1}, x].
Endomorphism inner_derivation(const NAryAlgebra& a, const std::vector<Element>& sources);

/// Parity of a homogeneous element (0 for zero); throws if inhomogeneous.
int element_parity(const NAryAlgebra& a, const Element& e);

/// Finite-dimensional algebra over a SuperSpace, keys {i, {}}.
NAryAlgebra finite_algebra(std::string name, const SpacePtr& space, int arity, int parity, BasisBracket bracket);
/// The map mu viewed as an n-superalgebra on its own space (no symmetry assumed).
NAryAlgebra multimap_algebra(std::string name, const SuperMultiMap& mu);

/// Structure constants on non-decreasing index tuples, extended by
/// anticommutativity.
struct StructureConstants {
  SpacePtr space;
  int arity = 0;
  int parity = 0;
  std::map<std::vector<int>, SuperVector> table;

  BasisBracket bracket() const;
  NAryAlgebra to_nary(std::string name) const;

  /// Header "n field dim parities", then "i1 .. in -> c*eK + ..." (1-based
  /// indices, sorted tuples); '#' starts a comment.
  static StructureConstants parse(const std::string& text);
  static StructureConstants read_file(const std::string& path);
  std::string serialize() const;
  /// Tabulates an anticommutative bracket on sorted tuples.
  static StructureConstants from_bracket(const SpacePtr& space, int arity, int parity, const BasisBracket& b);
};

}  // namespace nlie
