#include "nlie/derivations.hpp"

#include <map>
#include <sstream>

namespace nlie {

namespace {

SparseVector encode(const SparseMatrix& m) {
  SparseVector v(m.field());
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r)) v.set(r * m.cols() + c, x);
  return v;
}

RowSpan span_of(const SpacePtr& space, const std::vector<ParityMatrix>& ms) {
  const int d = space->dim();
  RowSpan s(space->field(), d * d);
  for (const auto& m : ms) s.insert(encode(m.m));
  return s;
}

int sign(bool negative) { return negative ? -1 : 1; }

}  // namespace

ParityMatrix supercommutator(const ParityMatrix& a, const ParityMatrix& b) {
  SparseMatrix ab = a.m.multiply(b.m);
  const SparseMatrix ba = b.m.multiply(a.m);
  const Scalar s(ab.field(), static_cast<long>(sign(a.parity && b.parity)));
  for (int r = 0; r < ab.rows(); ++r) ab.row(r).axpy(-s, ba.row(r));
  return ParityMatrix{(a.parity + b.parity) % 2, ab};
}

bool DerivationSpace::in_derivations(const SparseMatrix& m) const {
  return span_of(space, basis).contains(encode(m));
}

bool DerivationSpace::in_inner(const SparseMatrix& m) const { return span_of(space, inner).contains(encode(m)); }

bool DerivationSpace::all_inner() const {
  if (dim() != inner_dim()) return false;
  for (const auto& m : inner)
    if (!in_derivations(m.m)) return false;
  return true;
}

std::vector<ParityMatrix> derivation_basis(const StructureConstants& sc) {
  const auto& sp = *sc.space;
  const FieldSpec f = sp.field();
  const int d = sp.dim();
  const int n = sc.arity;
  const BasisBracket br = sc.bracket();
  std::map<std::vector<int>, SuperVector> memo;
  auto mu = [&](const std::vector<int>& t) -> const SuperVector& {
    auto it = memo.find(t);
    if (it == memo.end()) it = memo.emplace(t, br(t)).first;
    return it->second;
  };
  std::vector<ParityMatrix> out;
  for (int q = 0; q < 2; ++q) {
    // Unknown D_{j,i} (image of e_i along e_j) is allowed when p(i)+p(j) = q.
    std::map<int, int> col;
    std::vector<std::pair<int, int>> unknown;
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        if ((sp.parity(i) + sp.parity(j)) % 2 == q) {
          col[j * d + i] = static_cast<int>(unknown.size());
          unknown.emplace_back(j, i);
        }
    if (unknown.empty()) continue;
    SparseMatrix system(f, 0, static_cast<int>(unknown.size()));
    const int outer = sign(q && sc.parity);
    for_each_tuple(d, n, [&](const std::vector<int>& a) {
      std::map<int, SparseVector> rows;
      auto row = [&](int l) -> SparseVector& { return rows.try_emplace(l, SparseVector(f)).first->second; };
      for (const auto& [m, c] : mu(a))
        for (int l = 0; l < d; ++l)
          if (auto it = col.find(l * d + m); it != col.end()) row(l).add_term(it->second, c);
      int before = 0;
      for (int k = 0; k < n; ++k) {
        const int s = outer * sign(q && before % 2);
        std::vector<int> t = a;
        for (int j = 0; j < d; ++j) {
          auto it = col.find(j * d + a[k]);
          if (it == col.end()) continue;
          t[k] = j;
          for (const auto& [l, c] : mu(t)) row(l).add_term(it->second, c.times(-s));
        }
        before += sp.parity(a[k]);
      }
      for (auto& [l, r] : rows)
        if (!r.is_zero()) system.append_row(std::move(r));
    });
    for (const auto& v : nullspace(system)) {
      SparseMatrix m(f, d, d);
      for (const auto& [u, c] : v) m.set(unknown[u].first, unknown[u].second, c);
      out.push_back(ParityMatrix{q, m});
    }
  }
  return out;
}

std::vector<ParityMatrix> inder_span(const StructureConstants& sc) {
  const auto& sp = *sc.space;
  const int d = sp.dim();
  const BasisBracket br = sc.bracket();
  std::vector<ParityMatrix> out;
  std::vector<RowSpan> spans(2, RowSpan(sp.field(), d * d));
  for_each_tuple(d, sc.arity - 1, [&](const std::vector<int>& src) {
    SparseMatrix m(sp.field(), d, d);
    std::vector<int> t = src;
    t.push_back(0);
    for (int i = 0; i < d; ++i) {
      t.back() = i;
      for (const auto& [j, c] : br(t)) m.set(j, i, c);
    }
    const int p = (sc.parity + parity_sum(sp, src)) % 2;
    if (spans[p].insert(encode(m))) out.push_back(ParityMatrix{p, m});
  });
  return out;
}

DerivationSpace derivation_space(const StructureConstants& sc) {
  return DerivationSpace{sc.space, derivation_basis(sc), inder_span(sc)};
}

std::optional<std::string> ideal_witness(const DerivationSpace& ds) {
  const RowSpan inner = span_of(ds.space, ds.inner);
  for (std::size_t a = 0; a < ds.basis.size(); ++a)
    for (std::size_t b = 0; b < ds.inner.size(); ++b) {
      const ParityMatrix c = supercommutator(ds.basis[a], ds.inner[b]);
      if (!inner.contains(encode(c.m)))
        return "[Der basis " + std::to_string(a + 1) + ", Inder basis " + std::to_string(b + 1) +
               "] = " + format_matrix(c.m);
    }
  return std::nullopt;
}

bool is_form_skew(const SparseMatrix& d, const BilinearForm& form) {
  const int n = form.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // (D^T b + b D)_{ij} = sum_k D_{ki} b_{kj} + b_{ik} D_{kj}
      Scalar s = Scalar::zero(form.field);
      for (int k = 0; k < n; ++k) s += d.at(k, i) * form.b[k][j] + form.b[i][k] * d.at(k, j);
      if (!s.is_zero()) return false;
    }
  return true;
}

std::string format_matrix(const SparseMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < m.rows(); ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c).to_string();
  }
  os << ']';
  return os.str();
}

std::vector<CheckRecord> derivation_report(const StructureConstants& sc) {
  const DerivationSpace ds = derivation_space(sc);
  std::vector<CheckRecord> out;
  CheckRecord der("derivations");
  der.dims["der"] = ds.dim();
  der.dims["inder"] = ds.inner_dim();
  json basis = json::array();
  for (const auto& m : ds.basis) basis.push_back({{"parity", m.parity}, {"matrix", format_matrix(m.m)}});
  der.details["basis"] = basis;
  out.push_back(der);
  CheckRecord eq("der_equals_inder");
  eq.dims = der.dims;
  if (!ds.all_inner())
    eq.fail("dim Der = " + std::to_string(ds.dim()) + ", dim Inder = " + std::to_string(ds.inner_dim()));
  out.push_back(eq);
  CheckRecord ideal("inder_is_ideal");
  if (auto w = ideal_witness(ds)) ideal.fail(*w);
  out.push_back(ideal);
  return out;
}

}  // namespace nlie
