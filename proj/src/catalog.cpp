#include "nlie/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nlie {

BilinearForm BilinearForm::identity(FieldSpec field, int dim) {
  BilinearForm f{field, {}};
  for (int i = 0; i < dim; ++i) {
    f.b.emplace_back(static_cast<std::size_t>(dim), Scalar::zero(field));
    f.b[i][i] = Scalar::one(field);
  }
  return f;
}

BilinearForm BilinearForm::parse(FieldSpec field, const std::string& text) {
  BilinearForm f{field, {}};
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<Scalar> row;
    std::string tok;
    while (ls >> tok) row.push_back(Scalar::parse(field, tok));
    if (!row.empty()) f.b.push_back(std::move(row));
  }
  f.validate();
  return f;
}

BilinearForm BilinearForm::read_file(FieldSpec field, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(field, ss.str());
}

void BilinearForm::validate() const {
  const int d = dim();
  for (const auto& row : b)
    if (static_cast<int>(row.size()) != d) throw std::invalid_argument("bilinear form must be square");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (!(b[i][j] == b[j][i])) throw std::invalid_argument("bilinear form must be symmetric");
  SparseMatrix m(field, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.set(i, j, b[i][j]);
  if (rank(m) != d) throw std::invalid_argument("bilinear form is degenerate");
}

std::vector<SuperVector> BilinearForm::dual_basis() const {
  validate();
  const int d = dim();
  SparseMatrix m(field, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.set(i, j, b[i][j]);
  std::vector<SuperVector> out;
  for (int k = 0; k < d; ++k) out.push_back(*solve_linear(m, SuperVector(field, k)));
  return out;
}

SpacePtr on_space(FieldSpec field, int n) { return SuperSpace::uniform(field, n + 1, 0); }

BasisBracket on_bracket(const BilinearForm& form) {
  const std::vector<SuperVector> dual = form.dual_basis();
  const int d = form.dim();
  const FieldSpec field = form.field;
  return [dual, d, field](const std::vector<int>& args) {
    if (static_cast<int>(args.size()) != d - 1) throw std::invalid_argument("vector product needs n arguments");
    std::vector<char> used(static_cast<std::size_t>(d), 0);
    for (int a : args) {
      if (used.at(a)) return SuperVector(field);
      used[a] = 1;
    }
    const int k = static_cast<int>(std::find(used.begin(), used.end(), 0) - used.begin());
    std::vector<int> full = args;
    full.push_back(k);
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) inv += full[i] > full[j];
    return (inv & 1) ? -dual[k] : dual[k];
  };
}

NAryAlgebra on_algebra(const BilinearForm& form) {
  const int n = form.dim() - 1;
  return finite_algebra("O^" + std::to_string(n), on_space(form.field, n), n, 0, on_bracket(form));
}

StructureConstants on_structure(const BilinearForm& form) {
  const int n = form.dim() - 1;
  return StructureConstants::from_bracket(on_space(form.field, n), n, 0, on_bracket(form));
}

DerivationSet DerivationSet::partials(FieldSpec field, int nvars, int count) {
  DerivationSet d{"", field, nvars, {}};
  for (int i = 0; i < count; ++i) d.fields.push_back(partial(field, nvars, i));
  return d;
}

Element poly_element(const Poly& p, int tag) {
  Element e(p.field());
  for (const auto& [m, c] : p) e.add_term(BasisKey{tag, m}, c);
  return e;
}

Poly element_poly(const Element& e, int nvars, int tag) {
  Poly p(e.field());
  for (const auto& [k, c] : e) {
    if (k.tag != tag || static_cast<int>(k.exps.size()) != nvars) throw std::invalid_argument("element outside carrier copy");
    p.add_term(k.exps, c);
  }
  return p;
}

namespace {

Poly key_poly(FieldSpec field, const BasisKey& k) { return poly_monomial(field, k.exps); }

}  // namespace

NAryAlgebra determinant_algebra(DeterminantKind kind, const DerivationSet& d, int n, const CarrierOptions& opts) {
  const FieldSpec field = d.field;
  const int m = d.nvars;
  const int r = static_cast<int>(d.fields.size());
  if (n < 2) throw std::invalid_argument("arity must be at least 2");
  if (opts.window < 1) throw std::invalid_argument("window must be at least 1");
  std::vector<BasisKey> sample;
  NAryAlgebra::Evaluator eval;
  NAryAlgebra::LabelFn label = [](const BasisKey& k) { return format_monomial(k.exps); };
  std::string name;
  auto fields = d.fields;

  switch (kind) {
    case DeterminantKind::S: {
      if (r != n) throw std::invalid_argument("S-type bracket needs n derivations");
      const bool quotient = opts.quotient_constants;
      for (const auto& mon : monomials(m, quotient ? 1 : 0, opts.window)) sample.push_back({0, mon});
      eval = [fields, field, quotient](const KeyTuple& t) {
        std::vector<std::vector<Poly>> mat;
        for (const auto& x : fields) {
          std::vector<Poly> row;
          for (const auto& k : t) row.push_back(x.apply(key_poly(field, k)));
          mat.push_back(std::move(row));
        }
        Poly p = determinant(mat);
        return poly_element(quotient ? drop_constant(p) : p);
      };
      name = "S";
      break;
    }
    case DeterminantKind::W: {
      if (r != n - 1) throw std::invalid_argument("W-type bracket needs n-1 derivations");
      for (const auto& mon : monomials(m, 0, opts.window)) sample.push_back({0, mon});
      eval = [fields, field](const KeyTuple& t) {
        std::vector<std::vector<Poly>> mat;
        std::vector<Poly> top;
        for (const auto& k : t) top.push_back(key_poly(field, k));
        mat.push_back(top);
        for (const auto& x : fields) {
          std::vector<Poly> row;
          for (const auto& f : top) row.push_back(x.apply(f));
          mat.push_back(std::move(row));
        }
        return poly_element(determinant(mat));
      };
      name = "W";
      break;
    }
    case DeterminantKind::SW: {
      if (r != 1) throw std::invalid_argument("SW-type bracket needs one derivation");
      for (int tag = 1; tag <= n - 1; ++tag)
        for (const auto& mon : monomials(m, 0, opts.window)) sample.push_back({tag, mon});
      const VectorField dd = fields[0];
      const bool appendix = opts.appendix_sign;
      eval = [dd, field, n, appendix](const KeyTuple& t) -> Element {
        std::set<int> tags;
        for (const auto& k : t) tags.insert(k.tag);
        for (int j = 1; j <= n - 1; ++j)
          if (!tags.count(j)) return Element(field);
        // Stable sort by tag; every swap of even arguments flips the sign.
        KeyTuple s = t;
        bool negate = false;
        for (std::size_t i = 1; i < s.size(); ++i)
          for (std::size_t j = i; j > 0 && s[j].tag < s[j - 1].tag; --j) {
            std::swap(s[j], s[j - 1]);
            negate = !negate;
          }
        int k = 1;
        while (s[k - 1].tag != s[k].tag) ++k;  // repeated tag k at positions k, k+1 (1-based)
        const Poly fk = key_poly(field, s[k - 1]);
        const Poly fk1 = key_poly(field, s[k]);
        Poly p = multiply(dd.apply(fk), fk1) - multiply(dd.apply(fk1), fk);
        for (int i = 0; i < n; ++i)
          if (i != k - 1 && i != k) p = multiply(p, key_poly(field, s[i]));
        const int exponent = k + n + (appendix ? 1 : 0);
        if (exponent & 1) negate = !negate;
        if (negate) p = -p;
        return poly_element(p, k);
      };
      label = [](const BasisKey& k) { return format_monomial(k.exps) + "<" + std::to_string(k.tag) + ">"; };
      name = "SW";
      break;
    }
  }
  if (!d.name.empty()) name += "(" + d.name + ")";
  return NAryAlgebra(name + "^" + std::to_string(n), n, 0, field, eval, [](const BasisKey&) { return 0; }, label,
                     std::move(sample));
}

NAryAlgebra sn_algebra(FieldSpec field, int n, const CarrierOptions& opts) {
  return determinant_algebra(DeterminantKind::S, DerivationSet::partials(field, n, n), n, opts);
}

NAryAlgebra wn_algebra(FieldSpec field, int n, const CarrierOptions& opts) {
  return determinant_algebra(DeterminantKind::W, DerivationSet::partials(field, n - 1, n - 1), n, opts);
}

NAryAlgebra swn_algebra(FieldSpec field, int n, const CarrierOptions& opts) {
  return determinant_algebra(DeterminantKind::SW, DerivationSet::partials(field, 1, 1), n, opts);
}

bool dzhumadildaev_closed(const DerivationSet& d) {
  std::map<std::pair<int, Monomial>, int> ids;
  auto encode = [&](const VectorField& x) {
    SparseVector v(d.field);
    for (int i = 0; i < x.nvars(); ++i)
      for (const auto& [m, c] : x.coeffs[i]) {
        auto [it, ins] = ids.try_emplace({i, m}, static_cast<int>(ids.size()));
        v.set(it->second, c);
      }
    return v;
  };
  std::vector<SparseVector> span_vecs;
  for (const auto& x : d.fields) span_vecs.push_back(encode(x));
  std::vector<SparseVector> brackets;
  for (std::size_t i = 0; i < d.fields.size(); ++i)
    for (std::size_t j = i + 1; j < d.fields.size(); ++j) brackets.push_back(encode(commutator(d.fields[i], d.fields[j])));
  RowSpan span(d.field, static_cast<int>(ids.size()));
  for (const auto& v : span_vecs) span.insert(v);
  return std::all_of(brackets.begin(), brackets.end(), [&](const SparseVector& v) { return span.contains(v); });
}

std::vector<DerivationSet> curated_derivation_sets(FieldSpec field) {
  auto one = [&](int m) { return poly_constant(field, m, Scalar::one(field)); };
  auto x = [&](int m, int i) { return poly_var(field, m, i); };
  std::vector<DerivationSet> out;
  out.push_back({"d", field, 1, {partial(field, 1, 0)}});
  out.push_back({"d, x*d", field, 1, {partial(field, 1, 0), VectorField{{x(1, 0)}}}});
  out.push_back({"d1, d2", field, 2, {partial(field, 2, 0), partial(field, 2, 1)}});
  out.push_back({"d, x^2*d", field, 1, {partial(field, 1, 0), VectorField{{multiply(x(1, 0), x(1, 0))}}}});
  out.push_back({"x1*d1, x1*d2 + d1", field, 2,
                 {VectorField{{x(2, 0), Poly(field)}}, VectorField{{one(2), x(2, 0)}}}});
  return out;
}

}  // namespace nlie
