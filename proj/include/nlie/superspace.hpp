#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlie/linalg.hpp"

namespace nlie {

enum class Parity { even, odd, nonhomogeneous };

struct BasisVector {
  std::string label;
  int parity = 0;  // 0 even, 1 odd
  std::optional<int> zdegree;
};

/// Finite-dimensional Z/2-graded space with a named, ordered basis.
class SuperSpace {
 public:
  SuperSpace(FieldSpec field, std::vector<BasisVector> basis);

  /// Basis e1..e_d, all of the given parity.
  static std::shared_ptr<const SuperSpace> uniform(FieldSpec field, int dim, int parity, const std::string& prefix = "e");
  /// Basis labelled e1.. with parities taken from a 0/1 string such as "0011".
  static std::shared_ptr<const SuperSpace> from_parities(FieldSpec field, const std::string& parities,
                                                         const std::string& prefix = "e");

  const FieldSpec& field() const { return field_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int even_dim() const;
  int odd_dim() const { return dim() - even_dim(); }
  const std::vector<BasisVector>& basis() const { return basis_; }
  const BasisVector& at(int i) const { return basis_.at(i); }
  int parity(int i) const { return basis_.at(i).parity; }
  const std::string& label(int i) const { return basis_.at(i).label; }
  /// Index of a label; throws when absent.
  int index_of(const std::string& label) const;

  /// "label parity [zdegree]" per line.
  std::string serialize() const;
  static SuperSpace parse(FieldSpec field, const std::string& text);

  bool operator==(const SuperSpace& o) const;

 private:
  FieldSpec field_;
  std::vector<BasisVector> basis_;
};

using SpacePtr = std::shared_ptr<const SuperSpace>;

/// Pi: same labels and zdegrees, every parity flipped.
SuperSpace reverse_parity(const SuperSpace& v);
SpacePtr reverse_parity(const SpacePtr& v);

/// Vectors are sparse coordinate maps over the basis indices of a space.
using SuperVector = SparseVector;

/// The zero vector counts as even.
Parity parity_of(const SuperSpace& space, const SuperVector& v);

/// "c*label + ..." or "0".
std::string format_vector(const SuperSpace& space, const SuperVector& v);
SuperVector parse_vector(const SuperSpace& space, const std::string& text);

}  // namespace nlie
