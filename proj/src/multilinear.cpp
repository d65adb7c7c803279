#include "nlie/multilinear.hpp"

#include <algorithm>
#include <sstream>

namespace nlie {

Normalized normalize(const SuperSpace& space, const std::vector<int>& args) {
  int inversions = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] < 0 || args[i] >= space.dim()) throw std::out_of_range("basis index out of range");
    for (std::size_t j = i + 1; j < args.size(); ++j)
      if (args[i] > args[j] && space.parity(args[i]) && space.parity(args[j])) ++inversions;
  }
  Normalized out;
  out.index = args;
  std::sort(out.index.begin(), out.index.end());
  for (std::size_t i = 1; i < out.index.size(); ++i)
    if (out.index[i] == out.index[i - 1] && space.parity(out.index[i])) return {0, std::move(out.index)};
  out.sign = (inversions & 1) ? -1 : 1;
  return out;
}

std::vector<MultiIndex> canonical_indices(const SuperSpace& space, int length) {
  std::vector<MultiIndex> out;
  if (length < 0) return out;
  MultiIndex cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < space.dim(); ++i) {
      cur.push_back(i);
      rec(space.parity(i) ? i + 1 : i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int parity_sum(const SuperSpace& space, const std::vector<int>& args) {
  int p = 0;
  for (int a : args) p ^= space.parity(a);
  return p;
}

SuperMultiMap::SuperMultiMap(SpacePtr space, int arity, int parity)
    : space_(std::move(space)), arity_(arity), parity_(parity & 1) {
  if (arity < -1) throw std::invalid_argument("arity below -1");
}

SuperMultiMap SuperMultiMap::constant(SpacePtr space, const SuperVector& v) {
  const Parity p = parity_of(*space, v);
  if (p == Parity::nonhomogeneous) throw std::invalid_argument("constant map needs a homogeneous value");
  SuperMultiMap m(std::move(space), 0, p == Parity::odd ? 1 : 0);
  m.set({}, v);
  return m;
}

SuperMultiMap SuperMultiMap::identity(SpacePtr space) {
  SuperMultiMap m(space, 1, 0);
  for (int i = 0; i < space->dim(); ++i) m.set({i}, SuperVector(space->field(), i));
  return m;
}

void SuperMultiMap::set(const std::vector<int>& args, const SuperVector& value) {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("arity mismatch in set");
  Normalized n = normalize(*space_, args);
  if (n.sign == 0) {
    if (!value.is_zero()) throw std::invalid_argument("nonzero value on a repeated odd argument");
    return;
  }
  const int expected = parity_ ^ parity_sum(*space_, n.index);
  for (const auto& kv : value)
    if (space_->parity(kv.first) != expected) throw std::invalid_argument("value parity inconsistent with map parity");
  SuperVector v = value;
  if (n.sign < 0) v = -v;
  if (v.is_zero())
    table_.erase(n.index);
  else
    table_.insert_or_assign(std::move(n.index), std::move(v));
}

void SuperMultiMap::add(const std::vector<int>& args, const SuperVector& value) {
  SuperVector cur = evaluate(args);
  cur += value;
  set(args, cur);
}

SuperVector SuperMultiMap::evaluate(const std::vector<int>& args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("arity mismatch in evaluate");
  Normalized n = normalize(*space_, args);
  if (n.sign == 0) return SuperVector(space_->field());
  auto it = table_.find(n.index);
  if (it == table_.end()) return SuperVector(space_->field());
  return n.sign < 0 ? -it->second : it->second;
}

SuperVector SuperMultiMap::evaluate_first(const SuperVector& v, const std::vector<int>& rest) const {
  SuperVector out(space_->field());
  std::vector<int> args;
  args.reserve(rest.size() + 1);
  args.push_back(0);
  args.insert(args.end(), rest.begin(), rest.end());
  for (const auto& [k, c] : v) {
    args[0] = k;
    out.axpy(c, evaluate(args));
  }
  return out;
}

void SuperMultiMap::check_compatible(const SuperMultiMap& o) const {
  if (!(*space_ == *o.space_)) throw std::invalid_argument("maps on different spaces");
  if (arity_ != o.arity_) throw std::invalid_argument("maps of different arity");
}

SuperMultiMap& SuperMultiMap::operator+=(const SuperMultiMap& o) {
  check_compatible(o);
  if (o.is_zero()) return *this;
  if (is_zero()) parity_ = o.parity_;
  if (parity_ != o.parity_) throw std::invalid_argument("sum of maps of different parity");
  for (const auto& [idx, v] : o.table_) {
    auto [it, inserted] = table_.try_emplace(idx, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) table_.erase(it);
    }
  }
  return *this;
}

SuperMultiMap& SuperMultiMap::operator-=(const SuperMultiMap& o) {
  SuperMultiMap neg = o;
  neg *= -Scalar::one(space_->field());
  return *this += neg;
}

SuperMultiMap& SuperMultiMap::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    table_.clear();
    return *this;
  }
  for (auto& kv : table_) kv.second *= c;
  return *this;
}

bool SuperMultiMap::operator==(const SuperMultiMap& o) const {
  if (!(*space_ == *o.space_) || arity_ != o.arity_) return false;
  if (table_.empty() && o.table_.empty()) return true;
  return parity_ == o.parity_ && table_ == o.table_;
}

std::string SuperMultiMap::serialize() const {
  std::ostringstream os;
  for (const auto& [idx, v] : table_) {
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << space_->label(idx[i]);
    os << (idx.empty() ? "-> " : " -> ") << format_vector(*space_, v) << '\n';
  }
  return os.str();
}

SuperMultiMap SuperMultiMap::parse(SpacePtr space, int arity, int parity, const std::string& text) {
  SuperMultiMap m(space, arity, parity);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("missing '->' in line: " + line);
    std::string lhs = line.substr(0, arrow);
    std::vector<int> args;
    std::istringstream ls(lhs);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      const auto b = tok.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
      args.push_back(space->index_of(tok));
    }
    m.add(args, parse_vector(*space, line.substr(arrow + 2)));
  }
  return m;
}

int conversion_sign(const std::vector<int>& parities) {
  const int n = static_cast<int>(parities.size());
  if (n < 2) throw std::invalid_argument("conversion sign needs at least two arguments");
  int exponent = 0;
  for (int k = 0; k <= (n - 2) / 2; ++k) exponent += parities[n - 2 - 2 * k];  // a_{n-1-2k}, 1-based
  return (exponent & 1) ? -1 : 1;
}

namespace {

std::vector<int> parities_of(const SuperSpace& s, const std::vector<int>& args) {
  std::vector<int> p;
  p.reserve(args.size());
  for (int a : args) p.push_back(s.parity(a));
  return p;
}

}  // namespace

void for_each_tuple(int dim, int length, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(static_cast<std::size_t>(length), 0);
  if (length > 0 && dim == 0) return;
  while (true) {
    fn(t);
    int i = length - 1;
    while (i >= 0 && t[i] == dim - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

std::optional<std::vector<int>> anticommutativity_witness(const SuperSpace& g, int arity, const BasisBracket& bracket) {
  std::optional<std::vector<int>> witness;
  const Scalar one = Scalar::one(g.field());
  for_each_tuple(g.dim(), arity, [&](const std::vector<int>& t) {
    if (witness) return;
    const SuperVector v = bracket(t);
    for (int i = 0; i + 1 < arity; ++i) {
      if (t[i] == t[i + 1] && g.parity(t[i]) == 0 && !v.is_zero()) {
        witness = t;
        return;
      }
      std::vector<int> s = t;
      std::swap(s[i], s[i + 1]);
      SuperVector w = bracket(s);
      // [.., a, b, ..] = -(-1)^{p(a)p(b)} [.., b, a, ..]
      if (g.parity(t[i]) && g.parity(t[i + 1]))
        w -= v;
      else
        w += v;
      if (!w.is_zero()) {
        witness = t;
        return;
      }
    }
  });
  return witness;
}

SuperMultiMap anticomm_to_comm(const SpacePtr& g, int arity, int parity, const BasisBracket& bracket) {
  if (auto w = anticommutativity_witness(*g, arity, bracket)) {
    std::string s;
    for (int a : *w) s += (s.empty() ? "" : ",") + g->label(a);
    throw AnticommutativityViolation(*w, "bracket is not anticommutative at (" + s + ")");
  }
  SpacePtr pi = reverse_parity(g);
  SuperMultiMap mu(pi, arity, parity + arity - 1);
  for (const auto& idx : canonical_indices(*pi, arity)) {
    SuperVector v = bracket(idx);
    if (v.is_zero()) continue;
    if (arity >= 2 && conversion_sign(parities_of(*pi, idx)) < 0) v = -v;
    mu.set(idx, v);
  }
  return mu;
}

BasisBracket comm_to_anticomm(const SuperMultiMap& mu) {
  SpacePtr pi = mu.space();
  return [mu, pi](const std::vector<int>& args) {
    SuperVector v = mu.evaluate(args);
    if (args.size() >= 2 && conversion_sign(parities_of(*pi, args)) < 0) v = -v;
    return v;
  };
}

}  // namespace nlie
