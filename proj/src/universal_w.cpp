#include "nlie/universal_w.hpp"

#include <climits>
#include <stdexcept>

namespace nlie {

namespace {

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

int split_sign(const SuperSpace& space, const std::vector<int>& args, const std::vector<int>& first) {
  std::vector<char> in_first(args.size(), 0);
  for (int i : first) in_first[i] = 1;
  int inversions = 0;
  for (int i : first) {
    if (!space.parity(args[i])) continue;
    for (int j = 0; j < i; ++j)
      if (!in_first[j] && space.parity(args[j])) ++inversions;
  }
  return (inversions & 1) ? -1 : 1;
}

WElement box(const WElement& f, const WElement& g) {
  if (!(*f.space() == *g.space())) throw std::invalid_argument("box product of maps on different spaces");
  const int p = f.degree();
  const int q = g.degree();
  const int deg = p + q;
  WElement out(f.space(), std::max(deg, -2) + 1, f.parity() ^ g.parity());
  if (f.arity() <= 0 || g.arity() < 0 || deg < -1 || f.is_zero() || g.is_zero()) return out;
  const SuperSpace& space = *f.space();
  const int total = deg + 1;
  for (const auto& idx : canonical_indices(space, total)) {
    SuperVector acc(space.field());
    for_each_combination(total, q + 1, [&](const std::vector<int>& first) {
      std::vector<int> inner;
      std::vector<int> rest;
      std::size_t fi = 0;
      for (int pos = 0; pos < total; ++pos) {
        if (fi < first.size() && first[fi] == pos) {
          inner.push_back(idx[pos]);
          ++fi;
        } else {
          rest.push_back(idx[pos]);
        }
      }
      SuperVector gv = g.evaluate(inner);
      if (gv.is_zero()) return;
      SuperVector term = f.evaluate_first(gv, rest);
      if (term.is_zero()) return;
      if (split_sign(space, idx, first) < 0)
        acc -= term;
      else
        acc += term;
    });
    if (!acc.is_zero()) out.set(idx, acc);
  }
  return out;
}

WElement w_bracket(const WElement& f, const WElement& g) {
  WElement out = box(f, g);
  WElement back = box(g, f);
  if (f.parity() && g.parity())
    out += back;
  else
    out -= back;
  return out;
}

SparseVector CoordinateInterner::encode(const WElement& f) {
  SparseVector v(f.space()->field());
  for (const auto& [idx, val] : f.table())
    for (const auto& [out, c] : val) {
      auto [it, inserted] = ids_.try_emplace({idx, out}, static_cast<int>(ids_.size()));
      v.set(it->second, c);
    }
  return v;
}

std::optional<SparseVector> CoordinateInterner::encode_existing(const WElement& f) const {
  SparseVector v(f.space()->field());
  for (const auto& [idx, val] : f.table())
    for (const auto& [out, c] : val) {
      auto it = ids_.find({idx, out});
      if (it == ids_.end()) return std::nullopt;
      v.set(it->second, c);
    }
  return v;
}

GradedSubalgebra::GradedSubalgebra(SpacePtr v, int cap) : v_(std::move(v)), cap_(cap) {}

bool GradedSubalgebra::insert(const WElement& f) {
  if (!(*f.space() == *v_)) throw std::invalid_argument("element lives on a different space");
  if (f.is_zero() || f.degree() > cap_ || f.degree() < -1) return false;
  auto it = comps_.find(f.degree());
  if (it == comps_.end()) it = comps_.emplace(f.degree(), Component{{}, RowSpan(v_->field(), INT_MAX)}).first;
  if (!it->second.span.insert(interner_.encode(f))) return false;
  it->second.basis.push_back(f);
  return true;
}

bool GradedSubalgebra::contains(const WElement& f) const {
  if (f.is_zero()) return true;
  auto it = comps_.find(f.degree());
  if (it == comps_.end()) return false;
  auto v = interner_.encode_existing(f);
  return v && it->second.span.contains(*v);
}

int GradedSubalgebra::dim(int degree) const {
  auto it = comps_.find(degree);
  return it == comps_.end() ? 0 : it->second.span.rank();
}

const std::vector<WElement>& GradedSubalgebra::basis(int degree) const {
  static const std::vector<WElement> empty;
  auto it = comps_.find(degree);
  return it == comps_.end() ? empty : it->second.basis;
}

std::vector<int> GradedSubalgebra::degrees() const {
  std::vector<int> out;
  for (const auto& [d, c] : comps_)
    if (c.span.rank() > 0) out.push_back(d);
  return out;
}

std::map<int, int> GradedSubalgebra::dims() const {
  std::map<int, int> out;
  for (const auto& [d, c] : comps_)
    if (c.span.rank() > 0) out[d] = c.span.rank();
  return out;
}

TransitivityResult is_transitive(const GradedSubalgebra& a, int up_to) {
  TransitivityResult res;
  const auto& lm1 = a.basis(-1);
  for (int j = 0; j <= up_to; ++j) {
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<WElement> lj;
      for (const auto& f : a.basis(j))
        if (f.parity() == parity) lj.push_back(f);
      if (lj.empty()) continue;
      // Columns: (slot of the L_{-1} basis element, coordinates of the bracket).
      std::map<std::tuple<int, MultiIndex, int>, int> cols;
      std::vector<SparseVector> images;
      for (const auto& f : lj) {
        SparseVector v(a.space()->field());
        for (std::size_t i = 0; i < lm1.size(); ++i) {
          WElement b = w_bracket(f, lm1[i]);
          for (const auto& [idx, val] : b.table())
            for (const auto& [out, c] : val) {
              auto [it, ins] = cols.try_emplace({static_cast<int>(i), idx, out}, static_cast<int>(cols.size()));
              v.set(it->second, c);
            }
        }
        images.push_back(std::move(v));
      }
      auto rels = relations(a.space()->field(), static_cast<int>(cols.size()), images);
      if (!rels.empty()) {
        WElement w(a.space(), j + 1, parity);
        for (const auto& [k, c] : rels.front()) w += c * lj[k];
        res.transitive = false;
        res.failing_degree = j;
        res.witness = w;
        return res;
      }
    }
  }
  return res;
}

}  // namespace nlie
