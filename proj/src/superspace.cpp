#include "nlie/superspace.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace nlie {

SuperSpace::SuperSpace(FieldSpec field, std::vector<BasisVector> basis) : field_(field), basis_(std::move(basis)) {
  std::set<std::string> seen;
  for (const auto& b : basis_) {
    if (b.label.empty()) throw std::invalid_argument("empty basis label");
    if (b.parity != 0 && b.parity != 1) throw std::invalid_argument("parity must be 0 or 1");
    if (!seen.insert(b.label).second) throw std::invalid_argument("duplicate basis label '" + b.label + "'");
  }
}

std::shared_ptr<const SuperSpace> SuperSpace::uniform(FieldSpec field, int dim, int parity, const std::string& prefix) {
  std::vector<BasisVector> b;
  for (int i = 1; i <= dim; ++i) b.push_back({prefix + std::to_string(i), parity, std::nullopt});
  return std::make_shared<const SuperSpace>(field, std::move(b));
}

std::shared_ptr<const SuperSpace> SuperSpace::from_parities(FieldSpec field, const std::string& parities,
                                                            const std::string& prefix) {
  std::vector<BasisVector> b;
  for (std::size_t i = 0; i < parities.size(); ++i) {
    if (parities[i] != '0' && parities[i] != '1') throw std::invalid_argument("parity string must contain only 0 and 1");
    b.push_back({prefix + std::to_string(i + 1), parities[i] - '0', std::nullopt});
  }
  return std::make_shared<const SuperSpace>(field, std::move(b));
}

int SuperSpace::even_dim() const {
  int n = 0;
  for (const auto& b : basis_) n += b.parity == 0;
  return n;
}

int SuperSpace::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].label == label) return i;
  throw std::invalid_argument("label '" + label + "' not in space");
}

std::string SuperSpace::serialize() const {
  std::ostringstream os;
  for (const auto& b : basis_) {
    os << b.label << ' ' << (b.parity ? "odd" : "even");
    if (b.zdegree) os << ' ' << *b.zdegree;
    os << '\n';
  }
  return os.str();
}

SuperSpace SuperSpace::parse(FieldSpec field, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BasisVector> basis;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    BasisVector b;
    std::string par;
    if (!(ls >> b.label)) continue;
    if (!(ls >> par)) throw std::invalid_argument("missing parity for '" + b.label + "'");
    if (par == "even" || par == "0")
      b.parity = 0;
    else if (par == "odd" || par == "1")
      b.parity = 1;
    else
      throw std::invalid_argument("bad parity '" + par + "'");
    int z;
    if (ls >> z) b.zdegree = z;
    basis.push_back(std::move(b));
  }
  return SuperSpace(field, std::move(basis));
}

bool SuperSpace::operator==(const SuperSpace& o) const {
  if (!(field_ == o.field_) || dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].label != o.basis_[i].label || basis_[i].parity != o.basis_[i].parity ||
        basis_[i].zdegree != o.basis_[i].zdegree)
      return false;
  return true;
}

SuperSpace reverse_parity(const SuperSpace& v) {
  std::vector<BasisVector> b = v.basis();
  for (auto& x : b) x.parity ^= 1;
  return SuperSpace(v.field(), std::move(b));
}

SpacePtr reverse_parity(const SpacePtr& v) { return std::make_shared<const SuperSpace>(reverse_parity(*v)); }

Parity parity_of(const SuperSpace& space, const SuperVector& v) {
  if (v.is_zero()) return Parity::even;
  const int p = space.parity(v.leading_key());
  for (const auto& kv : v)
    if (space.parity(kv.first) != p) return Parity::nonhomogeneous;
  return p ? Parity::odd : Parity::even;
}

std::string format_vector(const SuperSpace& space, const SuperVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    if (!first) os << " + ";
    first = false;
    os << c << '*' << space.label(k);
  }
  return os.str();
}

SuperVector parse_vector(const SuperSpace& space, const std::string& text) {
  SuperVector v(space.field());
  std::istringstream in(text);
  std::string tok;
  int sign = 1;
  while (in >> tok) {
    if (tok == "+") {
      sign = 1;
      continue;
    }
    if (tok == "-") {
      sign = -1;
      continue;
    }
    if (tok == "0") continue;
    const auto star = tok.find('*');
    Scalar c = Scalar::one(space.field());
    std::string label = tok;
    if (star != std::string::npos) {
      c = Scalar::parse(space.field(), tok.substr(0, star));
      label = tok.substr(star + 1);
    } else if (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) {
      if (tok[0] == '-') c = -c;
      label = tok.substr(1);
    }
    v.add_term(space.index_of(label), sign < 0 ? -c : c);
    sign = 1;
  }
  return v;
}

}  // namespace nlie
