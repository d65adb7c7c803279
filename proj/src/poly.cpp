#include "nlie/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nlie {

Poly poly_constant(FieldSpec field, int nvars, const Scalar& c) {
  Poly p(field);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly poly_var(FieldSpec field, int nvars, int i) {
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m.at(i) = 1;
  return Poly(field, m);
}

Poly poly_monomial(FieldSpec field, const Monomial& m) { return Poly(field, m); }

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.field());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (ma.size() != mb.size()) throw std::invalid_argument("polynomials in different numbers of variables");
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Poly derivative(const Poly& p, int var) {
  Poly out(p.field());
  for (const auto& [m, c] : p) {
    if (m.at(var) == 0) continue;
    Monomial d = m;
    --d[var];
    out.add_term(d, c.times(m[var]));
  }
  return out;
}

Poly drop_constant(const Poly& p) {
  Poly out(p.field());
  for (const auto& [m, c] : p)
    if (total_degree(m) > 0) out.add_term(m, c);
  return out;
}

std::vector<Monomial> monomials(int nvars, int mindeg, int maxdeg) {
  std::vector<Monomial> out;
  for (int d = std::max(mindeg, 0); d <= maxdeg; ++d) {
    Monomial m(static_cast<std::size_t>(nvars), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == nvars - 1) {
        m[i] = left;
        out.push_back(m);
        return;
      }
      for (int e = left; e >= 0; --e) {
        m[i] = e;
        rec(i + 1, left - e);
      }
    };
    if (nvars == 0) {
      if (d == 0) out.push_back(m);
      continue;
    }
    rec(0, d);
  }
  return out;
}

std::string format_monomial(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += m.size() == 1 ? "x" : "x" + std::to_string(i + 1);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << c << '*' << format_monomial(m);
  }
  return os.str();
}

Poly VectorField::apply(const Poly& f) const {
  Poly out(f.field());
  for (int i = 0; i < nvars(); ++i) {
    if (coeffs[i].is_zero()) continue;
    out += multiply(coeffs[i], derivative(f, i));
  }
  return out;
}

bool VectorField::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Poly& p) { return p.is_zero(); });
}

std::string VectorField::to_string() const {
  std::string s;
  for (int i = 0; i < nvars(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + format_poly(coeffs[i]) + ")*d" + (nvars() == 1 ? std::string() : std::to_string(i + 1));
  }
  return s.empty() ? "0" : s;
}

VectorField partial(FieldSpec field, int nvars, int i) {
  VectorField v;
  v.coeffs.assign(static_cast<std::size_t>(nvars), Poly(field));
  v.coeffs.at(i) = poly_constant(field, nvars, Scalar::one(field));
  return v;
}

VectorField commutator(const VectorField& x, const VectorField& y) {
  if (x.nvars() != y.nvars()) throw std::invalid_argument("vector fields in different numbers of variables");
  VectorField out;
  for (int k = 0; k < x.nvars(); ++k) out.coeffs.push_back(x.apply(y.coeffs[k]) - y.apply(x.coeffs[k]));
  return out;
}

Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw std::invalid_argument("empty determinant");
  const FieldSpec field = m[0][0].field();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Poly out(field);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    Poly term = m[0][perm[0]];
    for (int i = 1; i < n && !term.is_zero(); ++i) term = multiply(term, m[i][perm[i]]);
    if (inv & 1)
      out -= term;
    else
      out += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace nlie
