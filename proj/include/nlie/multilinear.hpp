#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlie/superspace.hpp"

namespace nlie {

/// Sorted basis indices; a basis element of S^{k+1}(V).
using MultiIndex = std::vector<int>;

struct Normalized {
  int sign = 0;  // 0 when an odd index repeats
  MultiIndex index;
};

/// Sorts a tuple of basis indices, recording the Koszul sign of the sort.
Normalized normalize(const SuperSpace& space, const std::vector<int>& args);

/// All canonical multi-indices of the given length (odd entries not repeated).
std::vector<MultiIndex> canonical_indices(const SuperSpace& space, int length);

/// Parity sum of a tuple of basis indices.
int parity_sum(const SuperSpace& space, const std::vector<int>& args);

/// Element of W_k(V) = Hom(S^{k+1}V, V): a supersymmetric map of arity k+1.
/// Arity 0 maps are constants. Arity -1 is the (always zero) degree -2 slot.
class SuperMultiMap {
 public:
  SuperMultiMap(SpacePtr space, int arity, int parity);
  /// The constant map with value v (an element of W_{-1}(V) = V).
  static SuperMultiMap constant(SpacePtr space, const SuperVector& v);
  static SuperMultiMap identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  int arity() const { return arity_; }
  int degree() const { return arity_ - 1; }
  int parity() const { return parity_; }
  const std::map<MultiIndex, SuperVector>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  /// Stores a value at a tuple; the tuple is normalized first and the value
  /// adjusted by the sorting sign. Parity consistency is enforced.
  void set(const std::vector<int>& args, const SuperVector& value);
  void add(const std::vector<int>& args, const SuperVector& value);

  SuperVector evaluate(const std::vector<int>& args) const;
  /// f(v, x_1..x_k) with v an arbitrary vector in the first slot.
  SuperVector evaluate_first(const SuperVector& v, const std::vector<int>& rest) const;

  SuperMultiMap& operator+=(const SuperMultiMap& o);
  SuperMultiMap& operator-=(const SuperMultiMap& o);
  SuperMultiMap& operator*=(const Scalar& c);
  friend SuperMultiMap operator+(SuperMultiMap a, const SuperMultiMap& b) { return a += b; }
  friend SuperMultiMap operator-(SuperMultiMap a, const SuperMultiMap& b) { return a -= b; }
  friend SuperMultiMap operator*(const Scalar& c, SuperMultiMap a) { return a *= c; }
  bool operator==(const SuperMultiMap& o) const;

  /// "idx1,...,idx_{k+1} -> coeff*label + ..." per stored entry.
  std::string serialize() const;
  static SuperMultiMap parse(SpacePtr space, int arity, int parity, const std::string& text);

 private:
  void check_compatible(const SuperMultiMap& o) const;

  SpacePtr space_;
  int arity_;
  int parity_;
  std::map<MultiIndex, SuperVector> table_;
};

/// Sign relating anticommutative and commutative n-ary products, from the
/// parities of a_1..a_n: exponent sum_{k=0}^{floor((n-2)/2)} p(a_{n-1-2k}).
int conversion_sign(const std::vector<int>& parities);

/// Bracket of basis vectors, tuple of basis indices -> value.
using BasisBracket = std::function<SuperVector(const std::vector<int>&)>;

struct AnticommutativityViolation : std::runtime_error {
  std::vector<int> witness;
  AnticommutativityViolation(std::vector<int> w, const std::string& what)
      : std::runtime_error(what), witness(std::move(w)) {}
};

/// Transports an anticommutative n-ary bracket of parity `parity` on g to
/// the commutative product on Pi g. The returned map lives on reverse_parity(g).
/// The conversion sign is taken from the parities on the Pi g side.
/// Throws AnticommutativityViolation if the bracket is not anticommutative.
SuperMultiMap anticomm_to_comm(const SpacePtr& g, int arity, int parity, const BasisBracket& bracket);

/// Inverse of anticomm_to_comm: a bracket on basis tuples of Pi(space of mu).
BasisBracket comm_to_anticomm(const SuperMultiMap& mu);

/// Checks adjacent-swap anticommutativity on every ordered tuple; returns the
/// first failing tuple or nothing.
std::optional<std::vector<int>> anticommutativity_witness(const SuperSpace& g, int arity, const BasisBracket& bracket);

/// All ordered tuples of basis indices of the given length, in lexicographic order.
void for_each_tuple(int dim, int length, const std::function<void(const std::vector<int>&)>& fn);

}  // namespace nlie
