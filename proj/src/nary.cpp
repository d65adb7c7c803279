#include "nlie/nary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlie {

NAryAlgebra::NAryAlgebra(std::string name, int arity, int parity, FieldSpec field, Evaluator evaluator,
                         ParityFn parity_of, LabelFn label, std::vector<BasisKey> sample_basis)
    : name_(std::move(name)),
      arity_(arity),
      parity_(parity & 1),
      field_(field),
      eval_(std::move(evaluator)),
      parity_of_(std::move(parity_of)),
      label_(std::move(label)),
      sample_basis_(std::move(sample_basis)),
      memo_(std::make_shared<std::map<KeyTuple, Element>>()) {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
}

SampleMode NAryAlgebra::sample_mode() const {
  if (mode_) return *mode_;
  return sample_basis_.size() <= 6 ? SampleMode::ordered : SampleMode::sorted;
}

Element NAryAlgebra::bracket_basis(const KeyTuple& args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("bracket arity mismatch");
  KeyTuple t = args;
  bool negate = false;
  if (canonicalize_) {
    // Insertion sort; each adjacent swap contributes -(-1)^{p p}.
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
        if (!(parity_of_(t[j]) && parity_of_(t[j - 1]))) negate = !negate;
        std::swap(t[j], t[j - 1]);
      }
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i] == t[i - 1] && !parity_of_(t[i])) return Element(field_);
  }
  auto it = memo_->find(t);
  if (it == memo_->end()) it = memo_->emplace(t, eval_(t)).first;
  return negate ? -it->second : it->second;
}

Element NAryAlgebra::bracket(const std::vector<Element>& args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("bracket arity mismatch");
  Element out(field_);
  std::vector<std::pair<const BasisKey*, const Scalar*>> chosen(args.size());
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& coeff) {
    if (i == args.size()) {
      KeyTuple t;
      t.reserve(args.size());
      for (const auto& c : chosen) t.push_back(*c.first);
      out.axpy(coeff, bracket_basis(t));
      return;
    }
    for (const auto& [k, c] : args[i]) {
      chosen[i] = {&k, &c};
      rec(i + 1, coeff * c);
    }
  };
  rec(0, Scalar::one(field_));
  return out;
}

std::string NAryAlgebra::format(const Element& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << c << '*' << label_(k);
  }
  return os.str();
}

void for_each_sample(const NAryAlgebra& a, int length, SampleMode mode, const std::function<bool(const KeyTuple&)>& fn) {
  const auto& basis = a.sample_basis();
  const int d = static_cast<int>(basis.size());
  if (length == 0) {
    fn({});
    return;
  }
  if (d == 0) return;
  std::vector<int> idx(static_cast<std::size_t>(length), 0);
  KeyTuple t(static_cast<std::size_t>(length));
  while (true) {
    bool skip = false;
    if (mode == SampleMode::sorted)
      for (int i = 1; i < length; ++i)
        if (idx[i] == idx[i - 1] && !a.parity_of(basis[idx[i]])) skip = true;
    if (!skip) {
      for (int i = 0; i < length; ++i) t[i] = basis[idx[i]];
      if (!fn(t)) return;
    }
    int i = length - 1;
    while (i >= 0 && idx[i] == d - 1) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < length; ++j) idx[j] = mode == SampleMode::sorted ? idx[i] : 0;
  }
}

namespace {

std::string format_tuple(const NAryAlgebra& a, const KeyTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + a.label(t[i]);
  return s + ")";
}

int tuple_parity(const NAryAlgebra& a, const KeyTuple& t) {
  int p = 0;
  for (const auto& k : t) p ^= a.parity_of(k);
  return p;
}

}  // namespace

IdentityCheck check_anticommutativity(const NAryAlgebra& a) {
  IdentityCheck res;
  const SampleMode mode = a.sample_mode();
  for_each_sample(a, a.arity(), mode, [&](const KeyTuple& t) {
    ++res.samples;
    const Element v = a.raw_bracket(t);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (t[i] == t[i + 1] && !a.parity_of(t[i]) && !v.is_zero()) {
        res.pass = false;
        res.residue = v;
        res.witness = "repeated even argument " + format_tuple(a, t) + " gives " + a.format(v);
        return false;
      }
    }
    // Ordered sampling covers all tuples, so adjacent swaps suffice; sorted
    // sampling checks every reordering of the sampled tuple.
    std::vector<int> perm(t.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    auto compare = [&](const std::vector<int>& p) {
      KeyTuple s;
      int sign = 1;
      for (std::size_t i = 0; i < p.size(); ++i) {
        s.push_back(t[p[i]]);
        for (std::size_t j = i + 1; j < p.size(); ++j)
          if (p[i] > p[j] && !(a.parity_of(t[p[i]]) && a.parity_of(t[p[j]]))) sign = -sign;
      }
      Element w = a.raw_bracket(s);
      if (sign < 0)
        w += v;
      else
        w -= v;
      if (!w.is_zero()) {
        res.pass = false;
        res.residue = w;
        res.witness = "swap " + format_tuple(a, t) + " -> " + format_tuple(a, s);
        return false;
      }
      return true;
    };
    if (mode == SampleMode::ordered) {
      for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
        std::swap(perm[i], perm[i + 1]);
        const bool ok = compare(perm);
        std::swap(perm[i], perm[i + 1]);
        if (!ok) return false;
      }
    } else {
      while (std::next_permutation(perm.begin(), perm.end()))
        if (!compare(perm)) return false;
    }
    return true;
  });
  return res;
}

Element fj_residue(const NAryAlgebra& a, const KeyTuple& as, const KeyTuple& bs) {
  const FieldSpec f = a.field();
  const int big_a = tuple_parity(a, as);
  KeyTuple t = as;
  t.push_back({});
  Element lhs(f);
  for (const auto& [k, c] : a.bracket_basis(bs)) {
    t.back() = k;
    lhs.axpy(c, a.bracket_basis(t));
  }
  Element rhs(f);
  int prefix = 0;
  for (std::size_t k = 0; k < bs.size(); ++k) {
    t.back() = bs[k];
    const Element inner = a.bracket_basis(t);
    KeyTuple u = bs;
    Element term(f);
    for (const auto& [key, c] : inner) {
      u[k] = key;
      term.axpy(c, a.bracket_basis(u));
    }
    if (prefix & big_a) term = -term;
    rhs += term;
    prefix ^= a.parity_of(bs[k]);
  }
  if (a.parity() & big_a) rhs = -rhs;
  return lhs - rhs;
}

IdentityCheck check_fj(const NAryAlgebra& a) {
  IdentityCheck res;
  const SampleMode mode = a.sample_mode();
  const int n = a.arity();
  for_each_sample(a, n - 1, mode, [&](const KeyTuple& as) {
    for_each_sample(a, n, mode, [&](const KeyTuple& bs) {
      ++res.samples;
      Element r = fj_residue(a, as, bs);
      if (!r.is_zero()) {
        res.pass = false;
        res.residue = r;
        res.witness = "a=" + format_tuple(a, as) + " b=" + format_tuple(a, bs) + " residue=" + a.format(r);
        return false;
      }
      return true;
    });
    return res.pass;
  });
  return res;
}

Element Endomorphism::apply(const Element& x) const {
  Element out(x.field());
  for (const auto& [k, c] : x) out.axpy(c, action(k));
  return out;
}

Element leibniz_residue(const NAryAlgebra& a, const Endomorphism& d, const KeyTuple& args) {
  const FieldSpec f = a.field();
  Element lhs = d.apply(a.bracket_basis(args));
  Element rhs(f);
  int prefix = 0;
  KeyTuple u = args;
  for (std::size_t k = 0; k < args.size(); ++k) {
    Element term(f);
    for (const auto& [key, c] : d.action(args[k])) {
      u[k] = key;
      term.axpy(c, a.bracket_basis(u));
    }
    u[k] = args[k];
    if (d.parity & prefix) term = -term;
    rhs += term;
    prefix ^= a.parity_of(args[k]);
  }
  if (d.parity & a.parity()) rhs = -rhs;
  return lhs - rhs;
}

IdentityCheck is_derivation(const NAryAlgebra& a, const Endomorphism& d) {
  IdentityCheck res;
  for_each_sample(a, a.arity(), a.sample_mode(), [&](const KeyTuple& t) {
    ++res.samples;
    Element r = leibniz_residue(a, d, t);
    if (!r.is_zero()) {
      res.pass = false;
      res.residue = r;
      res.witness = "args=" + format_tuple(a, t) + " residue=" + a.format(r);
      return false;
    }
    return true;
  });
  return res;
}

int element_parity(const NAryAlgebra& a, const Element& e) {
  if (e.is_zero()) return 0;
  const int p = a.parity_of(e.leading_key());
  for (const auto& kv : e)
    if (a.parity_of(kv.first) != p) throw std::invalid_argument("inhomogeneous element");
  return p;
}

Endomorphism inner_derivation(const NAryAlgebra& a, const std::vector<Element>& sources) {
  if (static_cast<int>(sources.size()) != a.arity() - 1) throw std::invalid_argument("inner derivation needs n-1 sources");
  int p = a.parity();
  for (const auto& s : sources) p ^= element_parity(a, s);
  Endomorphism d;
  d.parity = p;
  const NAryAlgebra* alg = &a;
  d.action = [alg, sources](const BasisKey& k) {
    std::vector<Element> args = sources;
    args.push_back(Element(alg->field(), k));
    return alg->bracket(args);
  };
  return d;
}

namespace {

Element to_element(const SuperVector& v) {
  Element e(v.field());
  for (const auto& [i, c] : v) e.add_term(BasisKey{i, {}}, c);
  return e;
}

std::vector<BasisKey> finite_keys(int dim) {
  std::vector<BasisKey> keys;
  for (int i = 0; i < dim; ++i) keys.push_back({i, {}});
  return keys;
}

}  // namespace

NAryAlgebra finite_algebra(std::string name, const SpacePtr& space, int arity, int parity, BasisBracket bracket) {
  return NAryAlgebra(
      std::move(name), arity, parity, space->field(),
      [bracket](const KeyTuple& t) {
        std::vector<int> idx;
        idx.reserve(t.size());
        for (const auto& k : t) idx.push_back(k.tag);
        return to_element(bracket(idx));
      },
      [space](const BasisKey& k) { return space->parity(k.tag); }, [space](const BasisKey& k) { return space->label(k.tag); },
      finite_keys(space->dim()));
}

NAryAlgebra multimap_algebra(std::string name, const SuperMultiMap& mu) {
  NAryAlgebra a = finite_algebra(std::move(name), mu.space(), mu.arity(), mu.parity(),
                                 [mu](const std::vector<int>& t) { return mu.evaluate(t); });
  a.set_canonicalize(false);
  return a;
}

BasisBracket StructureConstants::bracket() const {
  auto sp = space;
  auto tab = table;
  return [sp, tab](const std::vector<int>& args) {
    std::vector<int> t = args;
    bool negate = false;
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
        if (!(sp->parity(t[j]) && sp->parity(t[j - 1]))) negate = !negate;
        std::swap(t[j], t[j - 1]);
      }
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i] == t[i - 1] && !sp->parity(t[i])) return SuperVector(sp->field());
    auto it = tab.find(t);
    if (it == tab.end()) return SuperVector(sp->field());
    return negate ? -it->second : it->second;
  };
}

NAryAlgebra StructureConstants::to_nary(std::string name) const {
  return finite_algebra(std::move(name), space, arity, parity, bracket());
}

StructureConstants StructureConstants::from_bracket(const SpacePtr& space, int arity, int parity, const BasisBracket& b) {
  StructureConstants sc;
  sc.space = space;
  sc.arity = arity;
  sc.parity = parity & 1;
  // Non-decreasing tuples with no repeated even entry.
  for (const auto& idx : canonical_indices(reverse_parity(*space), arity)) {
    SuperVector v = b(idx);
    if (!v.is_zero()) sc.table.emplace(idx, std::move(v));
  }
  return sc;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto h = line.find('#');
  std::string s = h == std::string::npos ? line : line.substr(0, h);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

StructureConstants StructureConstants::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  StructureConstants sc;
  bool have_header = false;
  std::optional<int> inferred;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!have_header) {
      std::istringstream hs(line);
      int n = 0, dim = 0;
      std::string field, parities, extra;
      if (!(hs >> n >> field >> dim >> parities) || (hs >> extra))
        throw std::invalid_argument(where + "header must be 'n field dim parities'");
      if (n < 1) throw std::invalid_argument(where + "arity must be positive");
      if (static_cast<int>(parities.size()) != dim)
        throw std::invalid_argument(where + "parity string length " + std::to_string(parities.size()) +
                                    " does not match dim " + std::to_string(dim));
      sc.space = SuperSpace::from_parities(FieldSpec::parse(field), parities);
      sc.arity = n;
      have_header = true;
      continue;
    }
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument(where + "missing '->'");
    std::istringstream ls(line.substr(0, arrow));
    std::vector<int> idx;
    int i;
    while (ls >> i) {
      if (i < 1 || i > sc.space->dim()) throw std::invalid_argument(where + "index " + std::to_string(i) + " out of range");
      idx.push_back(i - 1);
    }
    if (!ls.eof()) throw std::invalid_argument(where + "bad index list");
    if (static_cast<int>(idx.size()) != sc.arity)
      throw std::invalid_argument(where + "expected " + std::to_string(sc.arity) + " indices");
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (idx[k] < idx[k - 1]) throw std::invalid_argument(where + "index tuple must be sorted");
      if (idx[k] == idx[k - 1] && !sc.space->parity(idx[k]))
        throw std::invalid_argument(where + "repeated even index must have zero bracket");
    }
    SuperVector v = parse_vector(*sc.space, line.substr(arrow + 2));
    const int pin = parity_sum(*sc.space, idx);
    for (const auto& kv : v) {
      const int a = sc.space->parity(kv.first) ^ pin;
      if (inferred && *inferred != a) throw std::invalid_argument(where + "bracket parity inconsistent with earlier entries");
      inferred = a;
    }
    if (sc.table.count(idx)) throw std::invalid_argument(where + "duplicate entry");
    if (!v.is_zero()) sc.table.emplace(idx, std::move(v));
  }
  if (!have_header) throw std::invalid_argument("missing header");
  sc.parity = inferred.value_or(0);
  return sc;
}

StructureConstants StructureConstants::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string StructureConstants::serialize() const {
  std::ostringstream os;
  os << arity << ' ' << space->field().to_string() << ' ' << space->dim() << ' ';
  for (int i = 0; i < space->dim(); ++i) os << space->parity(i);
  os << '\n';
  for (const auto& [idx, v] : table) {
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? " " : "") << idx[k] + 1;
    os << " -> " << format_vector(*space, v) << '\n';
  }
  return os.str();
}

}  // namespace nlie
