#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nlie/multilinear.hpp"

namespace nlie {

/// Elements of W(V) are SuperMultiMaps; degree = arity - 1.
using WElement = SuperMultiMap;

/// Composition-insertion product: (f box g)(x_0..x_{p+q}) sums
/// eps * f(g(x_I), x_J) over splits of the positions with |I| = q+1.
/// A constant f gives zero.
WElement box(const WElement& f, const WElement& g);

/// [f,g] = f box g - (-1)^{p(f)p(g)} g box f.
WElement w_bracket(const WElement& f, const WElement& g);

/// Sign of moving the arguments at positions `first` (ascending) in front of
/// the rest, counting odd-odd inversions only.
int split_sign(const SuperSpace& space, const std::vector<int>& args, const std::vector<int>& first);

/// Assigns stable column numbers to (multi-index, output basis index) pairs
/// so maps can be fed into row spans.
class CoordinateInterner {
 public:
  SparseVector encode(const WElement& f);
  /// Encoding without creating new columns; nothing if f uses an unseen column.
  std::optional<SparseVector> encode_existing(const WElement& f) const;

 private:
  std::map<std::pair<MultiIndex, int>, int> ids_;
};

/// A graded span inside W(V), stored degree by degree up to a cap.
class GradedSubalgebra {
 public:
  GradedSubalgebra(SpacePtr v, int cap);

  const SpacePtr& space() const { return v_; }
  int cap() const { return cap_; }

  /// Adds a homogeneous element; returns true if the span grew. Elements of
  /// degree above the cap are rejected with false.
  bool insert(const WElement& f);
  bool contains(const WElement& f) const;

  int dim(int degree) const;
  const std::vector<WElement>& basis(int degree) const;
  /// Degrees carrying a nonzero component, ascending.
  std::vector<int> degrees() const;
  std::map<int, int> dims() const;

 private:
  struct Component {
    std::vector<WElement> basis;
    RowSpan span;
  };
  SpacePtr v_;
  int cap_;
  CoordinateInterner interner_;
  std::map<int, Component> comps_;
};

struct TransitivityResult {
  bool transitive = true;
  int failing_degree = 0;
  std::optional<WElement> witness;
};

/// For 0 <= j <= up_to, checks that a -> ([a, e])_{e in basis of L_{-1}} is
/// injective on L_j.
TransitivityResult is_transitive(const GradedSubalgebra& a, int up_to);

}  // namespace nlie
