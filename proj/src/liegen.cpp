#include "nlie/liegen.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nlie {

namespace {

json dims_json(const std::map<int, int>& dims) {
  json j = json::object();
  for (const auto& [d, n] : dims) j[std::to_string(d)] = n;
  return j;
}

std::vector<WElement> all_basis(const GradedSubalgebra& a) {
  std::vector<WElement> out;
  for (int d : a.degrees())
    for (const auto& f : a.basis(d)) out.push_back(f);
  return out;
}

std::string describe(const std::string& what, const WElement& f) {
  std::ostringstream os;
  os << what << " (degree " << f.degree() << ", parity " << f.parity() << "):\n" << f.serialize();
  return os.str();
}

WElement basis_constant(const SpacePtr& v, int i) {
  SuperVector e(v->field());
  e.set(i, Scalar::one(v->field()));
  return WElement::constant(v, e);
}

}  // namespace

json GenerationTrace::to_json() const {
  json j;
  j["cap"] = cap;
  j["rounds"] = rounds;
  j["fixpoint"] = fixpoint();
  json per = json::array();
  for (const auto& d : dims_per_round) per.push_back(dims_json(d));
  j["dims_per_round"] = per;
  return j;
}

GradedSubalgebra generate_closure(const SpacePtr& v, const std::vector<WElement>& seeds, int cap,
                                  GenerationTrace* trace) {
  GradedSubalgebra a(v, cap);
  GenerationTrace local;
  GenerationTrace& t = trace ? *trace : local;
  t = GenerationTrace{};
  t.cap = cap;
  std::vector<WElement> frontier;
  for (const auto& s : seeds)
    if (a.insert(s)) frontier.push_back(s);
  t.dims_per_round.push_back(a.dims());
  while (!frontier.empty()) {
    std::stable_sort(frontier.begin(), frontier.end(),
                     [](const WElement& x, const WElement& y) { return x.degree() < y.degree(); });
    const std::vector<WElement> current = all_basis(a);
    std::vector<WElement> next;
    for (const auto& f : frontier)
      for (const auto& g : current) {
        const int d = f.degree() + g.degree();
        if (d > cap || d < -1) continue;
        WElement h = w_bracket(f, g);
        if (a.insert(h)) next.push_back(std::move(h));
      }
    ++t.rounds;
    t.dims_per_round.push_back(a.dims());
    frontier = std::move(next);
  }
  return a;
}

Generated generate_lie(const SpacePtr& v, const WElement& mu, int cap) {
  if (cap < mu.degree()) throw std::invalid_argument("cap " + std::to_string(cap) + " below the degree of mu");
  if (!(*mu.space() == *v)) throw std::invalid_argument("mu lives on a different space");
  std::vector<WElement> seeds;
  for (int i = 0; i < v->dim(); ++i) seeds.push_back(basis_constant(v, i));
  seeds.push_back(mu);
  GenerationTrace trace;
  GradedSubalgebra a = generate_closure(v, seeds, cap, &trace);
  return Generated{std::move(a), mu, std::move(trace)};
}

std::optional<std::string> closure_witness(const GradedSubalgebra& a) {
  const auto basis = all_basis(a);
  for (const auto& f : basis)
    for (const auto& g : basis) {
      if (f.degree() + g.degree() > a.cap()) continue;
      const WElement h = w_bracket(f, g);
      if (!a.contains(h)) return describe("bracket outside the span", h);
    }
  return std::nullopt;
}

SparseMatrix l0_action(const WElement& a) {
  if (a.degree() != 0) throw std::invalid_argument("l0_action needs a degree 0 element");
  const int d = a.space()->dim();
  SparseMatrix m(a.space()->field(), d, d);
  for (int i = 0; i < d; ++i)
    for (const auto& [out, c] : a.evaluate({i})) m.set(out, i, c);
  return m;
}

IrreducibilityResult burnside_test(FieldSpec field, int d, const std::vector<SparseMatrix>& ops) {
  IrreducibilityResult res;
  if (d == 0) {
    res.method = "zero-dimensional module";
    return res;
  }
  auto encode = [d](const SparseMatrix& m) {
    SparseVector v(m.field());
    for (int r = 0; r < d; ++r)
      for (const auto& [c, x] : m.row(r)) v.set(r * d + c, x);
    return v;
  };
  RowSpan span(field, d * d);
  std::vector<SparseMatrix> envelope;
  std::vector<SparseMatrix> queue{SparseMatrix::identity(field, d)};
  span.insert(encode(queue.front()));
  for (std::size_t q = 0; q < queue.size() && span.rank() < d * d; ++q) {
    envelope.push_back(queue[q]);
    for (const auto& g : ops) {
      SparseMatrix y = g.multiply(queue[q]);
      if (span.insert(encode(y))) queue.push_back(std::move(y));
    }
  }
  for (std::size_t q = envelope.size(); q < queue.size(); ++q) envelope.push_back(queue[q]);
  res.envelope_dim = span.rank();
  if (res.envelope_dim == d * d) {
    res.status = Status::pass;
    res.method = "burnside envelope of dimension " + std::to_string(d * d);
    return res;
  }
  for (int i = 0; i < d; ++i) {
    SparseVector e(field);
    e.set(i, Scalar::one(field));
    RowSpan orbit(field, d);
    for (const auto& x : envelope) orbit.insert(x.apply(e));
    if (orbit.rank() < d) {
      res.status = Status::fail;
      res.method = "invariant subspace spun from basis vector " + std::to_string(i + 1);
      for (const auto& [p, row] : orbit.basis()) res.invariant_subspace.push_back(row);
      return res;
    }
  }
  res.method = "envelope of dimension " + std::to_string(res.envelope_dim) + " < " + std::to_string(d * d) +
               " and every basis vector spins to the whole space";
  return res;
}

IrreducibilityResult check_irreducible(const GradedSubalgebra& a) {
  std::vector<SparseMatrix> ops;
  for (const auto& f : a.basis(0)) ops.push_back(l0_action(f));
  return burnside_test(a.space()->field(), a.space()->dim(), ops);
}

std::vector<CheckRecord> AdmissiblePairReport::records() const {
  std::vector<CheckRecord> out;
  CheckRecord t{"transitive"};
  if (!transitive) t.fail(transitivity_witness);
  out.push_back(t);
  out.push_back(CheckRecord{"generated_by_V_and_mu"});
  CheckRecord l3{"mu_centralizes_L0"};
  if (!mu_centralizes_l0) l3.fail(l3_witness);
  out.push_back(l3);
  CheckRecord irr{"irreducible"};
  irr.status = irreducible.status;
  irr.details["method"] = irreducible.method;
  irr.details["envelope_dim"] = irreducible.envelope_dim;
  if (irreducible.status == Status::fail) {
    std::string w = "invariant subspace:";
    for (const auto& v : irreducible.invariant_subspace) w += " [" + to_string(v) + "]";
    irr.witness = w;
  }
  out.push_back(irr);
  CheckRecord top{"top_is_line"};
  if (!top_is_line) top.fail("component of the degree of mu is not the line spanned by mu");
  top.dims = dims_json(graded_dims);
  out.push_back(top);
  return out;
}

AdmissiblePairReport check_admissible(const Generated& g) {
  AdmissiblePairReport r;
  const auto& a = g.algebra;
  const auto tr = is_transitive(a, a.cap());
  r.transitive = tr.transitive;
  if (!tr.transitive) r.transitivity_witness = describe("kills L_{-1}", *tr.witness);
  for (const auto& b : a.basis(0)) {
    const WElement c = w_bracket(g.mu, b);
    if (!c.is_zero()) {
      r.mu_centralizes_l0 = false;
      r.l3_witness = describe("L_0 element", b) + describe("[mu, b]", c);
      break;
    }
  }
  r.irreducible = check_irreducible(a);
  r.graded_dims = a.dims();
  r.top_is_line = !g.mu.is_zero() && a.dim(g.mu.degree()) == 1 && a.contains(g.mu);
  return r;
}

WElement iterated_ad(const WElement& mu, const std::vector<int>& xs) {
  WElement y = mu;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) y = w_bracket(basis_constant(mu.space(), *it), y);
  return y;
}

std::vector<CheckRecord> check_theorem_0_2(const Generated& g) {
  const auto& a = g.algebra;
  const int n = g.n();
  if (a.cap() < n + 1) throw std::invalid_argument("structure checks need cap >= n+1");
  if (a.space()->field().characteristic() != 0) throw std::invalid_argument("structure checks need characteristic 0");
  std::vector<CheckRecord> out;

  CheckRecord vanish{"vanishes_above_n_minus_1"};
  for (int d = n; d <= a.cap(); ++d) {
    vanish.dims[std::to_string(d)] = a.dim(d);
    if (a.dim(d) > 0 && vanish.passed()) vanish.fail(describe("nonzero element", a.basis(d).front()));
  }
  out.push_back(vanish);

  CheckRecord line{"top_is_mu_line"};
  line.dims[std::to_string(n - 1)] = a.dim(n - 1);
  if (g.mu.is_zero() || a.dim(n - 1) != 1 || !a.contains(g.mu))
    line.fail("dim L_{n-1} = " + std::to_string(a.dim(n - 1)) + (a.contains(g.mu) ? "" : ", mu not contained"));
  out.push_back(line);

  CheckRecord powers{"spanned_by_ad_powers"};
  {
    GradedSubalgebra spans(a.space(), a.cap());
    std::vector<WElement> layer{g.mu};
    spans.insert(g.mu);
    for (int j = n - 1; j >= 0; --j) {
      if (j < n - 1) {
        std::vector<WElement> next;
        for (const auto& t : layer)
          for (int i = 0; i < a.space()->dim(); ++i) {
            WElement h = w_bracket(basis_constant(a.space(), i), t);
            if (spans.insert(h)) next.push_back(std::move(h));
          }
        layer = std::move(next);
      }
      powers.dims[std::to_string(j)] = spans.dim(j);
      if (!powers.passed()) continue;
      for (const auto& f : spans.basis(j))
        if (!a.contains(f)) powers.fail(describe("ad power outside L", f));
      for (const auto& f : a.basis(j))
        if (powers.passed() && !spans.contains(f)) powers.fail(describe("not in the span of ad powers of mu", f));
    }
  }
  out.push_back(powers);

  CheckRecord comm{"complementary_degrees_commute"};
  for (int j = 0; 2 * j <= n - 1 && comm.passed(); ++j)
    for (const auto& x : a.basis(j))
      for (const auto& y : a.basis(n - 1 - j)) {
        if (!comm.passed()) break;
        const WElement h = w_bracket(x, y);
        if (!h.is_zero()) comm.fail(describe("bracket of", x) + describe("with", y) + describe("is", h));
      }
  out.push_back(comm);

  CheckRecord ideal{"lower_part_is_ideal"};
  long brackets = 0;
  const auto basis = all_basis(a);
  for (int d = -1; d <= n - 2 && ideal.passed(); ++d)
    for (const auto& x : a.basis(d))
      for (const auto& y : basis) {
        if (!ideal.passed()) break;
        if (x.degree() + y.degree() > a.cap()) continue;
        const WElement h = w_bracket(x, y);
        ++brackets;
        const bool inside = h.is_zero() || (h.degree() <= n - 2 && a.contains(h));
        if (!inside) ideal.fail(describe("bracket of", x) + describe("with", y) + describe("leaves the lower part", h));
      }
  ideal.details["brackets"] = brackets;
  out.push_back(ideal);
  return out;
}

CheckRecord check_lemma_3_1(const Generated& g, long max_tuples) {
  CheckRecord rec{"ad_powers_commute_with_mu"};
  const int n = g.n();
  const int dim = g.mu.space()->dim();
  json per = json::object();
  for (int j = 0; j <= n - 1; ++j) {
    const int k = n - j - 1;
    long tuples = 0, nonzero_box = 0;
    bool stop = false;
    for_each_tuple(dim, k, [&](const std::vector<int>& xs) {
      if (stop || (max_tuples > 0 && tuples >= max_tuples)) return;
      ++tuples;
      const WElement y = iterated_ad(g.mu, xs);
      const WElement c = w_bracket(y, g.mu);
      const WElement b = box(g.mu, y);
      std::string tuple = "(";
      for (std::size_t i = 0; i < xs.size(); ++i) tuple += (i ? "," : "") + g.mu.space()->label(xs[i]);
      tuple += ")";
      if (!c.is_zero()) {
        rec.fail("j=" + std::to_string(j) + " x=" + tuple + "\n" + describe("[y, mu]", c));
        stop = true;
      } else if (!b.is_zero()) {
        ++nonzero_box;
        if (j >= 1) {
          rec.fail("j=" + std::to_string(j) + " x=" + tuple + "\n" + describe("mu box y", b));
          stop = true;
        }
      }
    });
    per[std::to_string(j)] = {{"tuples", tuples}, {"nonzero_mu_box_y", nonzero_box}};
  }
  rec.details["per_j"] = per;
  rec.details["master_equation"] = w_bracket(g.mu, g.mu).is_zero();
  rec.details["mu_box_mu_zero"] = box(g.mu, g.mu).is_zero();
  return rec;
}

}  // namespace nlie
