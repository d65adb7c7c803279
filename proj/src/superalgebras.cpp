#include "nlie/superalgebras.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "nlie/catalog.hpp"
#include "nlie/liegen.hpp"
#include "nlie/poly.hpp"

namespace nlie {

int SuperMonomial::xdegree() const {
  int d = 0;
  for (int e : x) d += e;
  return d;
}

int SuperMonomial::xicount() const { return std::popcount(xi); }

namespace {

SuperMonomial unit_monomial(int m) { return SuperMonomial{std::vector<int>(static_cast<std::size_t>(m), 0), 0}; }

int nvars_of(const SuperPoly& p) { return p.is_zero() ? 0 : static_cast<int>(p.leading_key().x.size()); }

}  // namespace

SuperPoly sp_constant(const Scalar& c, int m) { return SuperPoly(unit_monomial(m), c); }

SuperPoly sp_x(FieldSpec f, int m, int i) {
  SuperMonomial mono = unit_monomial(m);
  mono.x.at(i) = 1;
  return SuperPoly(f, mono);
}

SuperPoly sp_xi(FieldSpec f, int m, int j) {
  SuperMonomial mono = unit_monomial(m);
  mono.xi = 1u << j;
  return SuperPoly(f, mono);
}

SuperPoly sp_xi_product(FieldSpec f, int m, const std::vector<int>& js) {
  SuperPoly p = sp_constant(Scalar::one(f), m);
  for (int j : js) p = sp_multiply(p, sp_xi(f, m, j));
  return p;
}

SuperPoly sp_monomial(FieldSpec f, const SuperMonomial& mono) { return SuperPoly(f, mono); }

SuperPoly sp_multiply(const SuperPoly& a, const SuperPoly& b) {
  SuperPoly out(a.field());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (ma.xi & mb.xi) continue;
      int swaps = 0;
      for (std::uint32_t t = mb.xi; t; t &= t - 1) {
        const int j = std::countr_zero(t);
        swaps += std::popcount(ma.xi >> (j + 1));
      }
      SuperMonomial m{ma.x, ma.xi | mb.xi};
      for (std::size_t i = 0; i < m.x.size(); ++i) m.x[i] += mb.x.at(i);
      const Scalar c = ca * cb;
      out.add_term(m, swaps % 2 ? -c : c);
    }
  return out;
}

SuperPoly sp_dx(const SuperPoly& p, int i) {
  SuperPoly out(p.field());
  for (const auto& [m, c] : p) {
    if (m.x.at(i) == 0) continue;
    SuperMonomial d = m;
    --d.x[i];
    out.add_term(d, c.times(m.x[i]));
  }
  return out;
}

SuperPoly sp_dxi(const SuperPoly& p, int j) {
  SuperPoly out(p.field());
  const std::uint32_t bit = 1u << j;
  for (const auto& [m, c] : p) {
    if (!(m.xi & bit)) continue;
    SuperMonomial d = m;
    d.xi &= ~bit;
    const int before = std::popcount(m.xi & (bit - 1));
    out.add_term(d, before % 2 ? -c : c);
  }
  return out;
}

int sp_parity(const SuperPoly& p) {
  if (p.is_zero()) return 0;
  const int q = p.leading_key().xicount() % 2;
  for (const auto& [m, c] : p)
    if (m.xicount() % 2 != q) throw std::invalid_argument("inhomogeneous super polynomial");
  return q;
}

std::pair<SuperPoly, SuperPoly> sp_split(const SuperPoly& p) {
  SuperPoly even(p.field()), odd(p.field());
  for (const auto& [m, c] : p) (m.xicount() % 2 ? odd : even).add_term(m, c);
  return {even, odd};
}

std::string format_monomial(const SuperMonomial& m) {
  std::string s;
  auto put = [&](const std::string& t) { s += (s.empty() ? "" : "*") + t; };
  for (std::size_t i = 0; i < m.x.size(); ++i) {
    if (m.x[i] == 0) continue;
    std::string v = m.x.size() == 1 ? "x" : "x" + std::to_string(i + 1);
    put(m.x[i] == 1 ? v : v + "^" + std::to_string(m.x[i]));
  }
  for (std::uint32_t t = m.xi; t; t &= t - 1) put("xi" + std::to_string(std::countr_zero(t) + 1));
  return s.empty() ? "1" : s;
}

std::string format_super(const SuperPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : p) s += (s.empty() ? "" : " + ") + c.to_string() + "*" + format_monomial(m);
  return s;
}

SuperElement as_function(const SuperPoly& p) {
  SuperElement e(p.field());
  for (const auto& [m, c] : p) e.add_term(OpKey{0, 0, m}, c);
  return e;
}

SuperPoly function_part(const SuperElement& e) {
  SuperPoly p(e.field());
  for (const auto& [k, c] : e)
    if (k.kind == 0) p.add_term(k.mono, c);
  return p;
}

DiffOperator op_dx(const SuperPoly& p, int i) {
  DiffOperator e(p.field());
  for (const auto& [m, c] : p) e.add_term(OpKey{1, i, m}, c);
  return e;
}

DiffOperator op_dxi(const SuperPoly& q, int j) {
  DiffOperator e(q.field());
  for (const auto& [m, c] : q) e.add_term(OpKey{2, j, m}, c);
  return e;
}

SuperPoly op_coefficient(const DiffOperator& x, int kind, int index) {
  SuperPoly p(x.field());
  for (const auto& [k, c] : x)
    if (k.kind == kind && k.index == index) p.add_term(k.mono, c);
  return p;
}

namespace {

std::vector<std::pair<int, int>> generators_of(const DiffOperator& x) {
  std::vector<std::pair<int, int>> g;
  for (const auto& [k, c] : x) {
    if (k.kind == 0) throw std::invalid_argument("function where an operator was expected");
    if (g.empty() || g.back() != std::pair{k.kind, k.index}) g.emplace_back(k.kind, k.index);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

SuperPoly derive(const SuperPoly& f, int kind, int index) { return kind == 1 ? sp_dx(f, index) : sp_dxi(f, index); }

DiffOperator op_term(const SuperPoly& p, int kind, int index) { return kind == 1 ? op_dx(p, index) : op_dxi(p, index); }

}  // namespace

SuperPoly op_apply(const DiffOperator& x, const SuperPoly& f) {
  SuperPoly out(f.field());
  for (const auto& [kind, index] : generators_of(x)) out += sp_multiply(op_coefficient(x, kind, index), derive(f, kind, index));
  return out;
}

int op_parity(const DiffOperator& x) {
  if (x.is_zero()) return 0;
  auto term_parity = [](const OpKey& k) { return (k.mono.xicount() + (k.kind == 2)) % 2; };
  const int p = term_parity(x.leading_key());
  for (const auto& [k, c] : x)
    if (term_parity(k) != p) throw std::invalid_argument("inhomogeneous operator");
  return p;
}

DiffOperator op_bracket(const DiffOperator& x, const DiffOperator& y) {
  DiffOperator out(x.field());
  const bool negative = op_parity(x) && op_parity(y);
  auto gens = generators_of(x);
  for (const auto& g : generators_of(y)) gens.push_back(g);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (const auto& [kind, index] : gens) {
    SuperPoly c = op_apply(x, op_coefficient(y, kind, index));
    const SuperPoly d = op_apply(y, op_coefficient(x, kind, index));
    if (negative)
      c += d;
    else
      c -= d;
    out += op_term(c, kind, index);
  }
  return out;
}

std::string format_element(const SuperElement& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : e) {
    std::string t = c.to_string() + "*" + format_monomial(k.mono);
    if (k.kind == 1) t += "*d/dx" + std::to_string(k.index + 1);
    if (k.kind == 2) t += "*d/dxi" + std::to_string(k.index + 1);
    s += (s.empty() ? "" : " + ") + t;
  }
  return s;
}

SuperPoly divergence(const DiffOperator& x) {
  SuperPoly out(x.field());
  for (const auto& [kind, index] : generators_of(x)) {
    const SuperPoly c = op_coefficient(x, kind, index);
    if (kind == 1) {
      out += sp_dx(c, index);
    } else {
      auto [even, odd] = sp_split(c);
      out += sp_dxi(even, index);
      out -= sp_dxi(odd, index);
    }
  }
  return out;
}

SuperPoly pi_lambda(const DiffOperator& x, const SuperPoly& f, const Scalar& lambda, const DivergenceFn& div) {
  const int px = op_parity(x);
  const SuperPoly d = div(x);
  SuperPoly out = op_apply(x, f);
  auto [even, odd] = sp_split(f);
  out.axpy(lambda, sp_multiply(even, d));
  out.axpy(px ? -lambda : lambda, sp_multiply(odd, d));
  return out;
}

SuperPoly pi_lambda_residue(const DiffOperator& x, const DiffOperator& y, const SuperPoly& f, const Scalar& lambda,
                            const DivergenceFn& div) {
  SuperPoly lhs = pi_lambda(op_bracket(x, y), f, lambda, div);
  const SuperPoly xy = pi_lambda(x, pi_lambda(y, f, lambda, div), lambda, div);
  const SuperPoly yx = pi_lambda(y, pi_lambda(x, f, lambda, div), lambda, div);
  lhs -= xy;
  if (op_parity(x) && op_parity(y))
    lhs -= yx;
  else
    lhs += yx;
  return lhs;
}

std::vector<std::vector<Scalar>> antidiagonal_form(FieldSpec f, int n) {
  std::vector<std::vector<Scalar>> b(n, std::vector<Scalar>(n, Scalar::zero(f)));
  for (int i = 0; i < n; ++i) b[i][n - 1 - i] = Scalar::one(f);
  return b;
}

std::vector<std::vector<Scalar>> identity_form(FieldSpec f, int n) {
  std::vector<std::vector<Scalar>> b(n, std::vector<Scalar>(n, Scalar::zero(f)));
  for (int i = 0; i < n; ++i) b[i][i] = Scalar::one(f);
  return b;
}

SuperPoly poisson_bracket(const SuperPoly& f, const SuperPoly& g, int m, const std::vector<std::vector<Scalar>>& b) {
  if (m % 2) throw std::invalid_argument("Poisson bracket needs an even number of x variables");
  const int k = m / 2;
  SuperPoly out(f.field());
  for (int i = 0; i < k; ++i) {
    out += sp_multiply(sp_dx(f, i), sp_dx(g, k + i));
    out -= sp_multiply(sp_dx(f, k + i), sp_dx(g, i));
  }
  auto [even, odd] = sp_split(f);
  const int n = static_cast<int>(b.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (b[i][j].is_zero()) continue;
      const SuperPoly dg = sp_dxi(g, j);
      out.axpy(-b[i][j], sp_multiply(sp_dxi(even, i), dg));
      out.axpy(b[i][j], sp_multiply(sp_dxi(odd, i), dg));
    }
  return out;
}

DiffOperator hamiltonian_field(const SuperPoly& f, int m, const std::vector<std::vector<Scalar>>& b) {
  const int k = m / 2;
  DiffOperator out(f.field());
  for (int i = 0; i < k; ++i) {
    out += op_dx(sp_dx(f, i), k + i);
    out -= op_dx(sp_dx(f, k + i), i);
  }
  auto [even, odd] = sp_split(f);
  const int n = static_cast<int>(b.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (b[i][j].is_zero()) continue;
      out -= b[i][j] * op_dxi(sp_dxi(even, i), j);
      out += b[i][j] * op_dxi(sp_dxi(odd, i), j);
    }
  return out;
}

SuperPoly buttin_bracket(const SuperPoly& f, const SuperPoly& g, int n) {
  SuperPoly out(f.field());
  auto [even, odd] = sp_split(f);
  for (int i = 0; i < n; ++i) {
    out += sp_multiply(sp_dx(f, i), sp_dxi(g, i));
    out += sp_multiply(sp_dxi(even, i), sp_dx(g, i));
    out -= sp_multiply(sp_dxi(odd, i), sp_dx(g, i));
  }
  return out;
}

DiffOperator buttin_field(const SuperPoly& f, int n) {
  DiffOperator out(f.field());
  auto [even, odd] = sp_split(f);
  for (int i = 0; i < n; ++i) {
    out += op_dxi(sp_dx(f, i), i);
    out += op_dx(sp_dxi(even, i), i);
    out -= op_dx(sp_dxi(odd, i), i);
  }
  return out;
}

SuperPoly odd_laplacian(const SuperPoly& f, int n) {
  SuperPoly out(f.field());
  for (int i = 0; i < n; ++i) out += sp_dx(sp_dxi(f, i), i);
  return out;
}

SuperPoly euler(const SuperPoly& f, int n) {
  SuperPoly out(f.field());
  const std::uint32_t mask = n >= 32 ? ~0u : (1u << n) - 1;
  for (const auto& [m, c] : f) {
    const int w = m.xdegree() + std::popcount(m.xi & mask);
    out.add_term(m, c.times(w));
  }
  return out;
}

namespace {

// (2 - E) f
SuperPoly two_minus_euler(const SuperPoly& f, int n) {
  SuperPoly out = f;
  out *= Scalar(f.field(), 2L);
  out -= euler(f, n);
  return out;
}

}  // namespace

SuperPoly contact_bracket(const SuperPoly& f, const SuperPoly& g, int n) {
  SuperPoly out(f.field());
  auto [even, odd] = sp_split(f);
  out += sp_multiply(two_minus_euler(f, n), sp_dxi(g, n));
  out += sp_multiply(sp_dxi(even, n), two_minus_euler(g, n));
  out -= sp_multiply(sp_dxi(odd, n), two_minus_euler(g, n));
  out -= buttin_bracket(f, g, n);
  return out;
}

DiffOperator contact_field(const SuperPoly& f, int n) {
  const FieldSpec fs = f.field();
  DiffOperator out = op_dxi(two_minus_euler(f, n), n);
  auto [even, odd] = sp_split(f);
  const SuperPoly d = sp_dxi(odd, n) - sp_dxi(even, n);
  const int m = nvars_of(f) ? nvars_of(f) : n;
  for (int i = 0; i < n; ++i) {
    out += op_dx(sp_multiply(d, sp_x(fs, m, i)), i);
    out += op_dxi(sp_multiply(d, sp_xi(fs, m, i)), i);
  }
  out -= buttin_field(f, n);
  return out;
}

SuperPoly div_beta(const SuperPoly& f, int n, const Scalar& beta) {
  const SuperPoly d = sp_dxi(f, n);
  SuperPoly out = odd_laplacian(f, n);
  out += euler(d, n);
  out.axpy(-(beta.times(n)), d);
  return out;
}

// ---------------------------------------------------------------------------

RealizationHandle RealizationHandle::parse(const std::string& text, FieldSpec field) {
  static const std::regex re(R"(^\s*(W|S'|S|H'|H|HO|SHO'|SHO|KO|SKO'|SKO)\((\d+),(\d+)(;([-0-9/]+))?\)\s*$)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re)) throw std::invalid_argument("bad realization handle '" + text + "'");
  static const std::map<std::string, RealizationKind> kinds{
      {"W", RealizationKind::W},     {"S'", RealizationKind::Sprime},     {"S", RealizationKind::S},
      {"H'", RealizationKind::Hprime}, {"H", RealizationKind::H},         {"HO", RealizationKind::HO},
      {"SHO'", RealizationKind::SHOprime}, {"SHO", RealizationKind::SHO}, {"KO", RealizationKind::KO},
      {"SKO'", RealizationKind::SKOprime}, {"SKO", RealizationKind::SKO}};
  RealizationHandle h;
  h.kind = kinds.at(mt[1].str());
  h.m = std::stoi(mt[2].str());
  h.n = std::stoi(mt[3].str());
  h.field = field;
  h.beta = Scalar::zero(field);
  const bool contact = h.kind == RealizationKind::KO || h.kind == RealizationKind::SKOprime || h.kind == RealizationKind::SKO;
  const bool odd_sympl = h.kind == RealizationKind::HO || h.kind == RealizationKind::SHOprime || h.kind == RealizationKind::SHO;
  if (contact && h.n != h.m + 1) throw std::invalid_argument("contact handles need (n,n+1)");
  if (odd_sympl && h.n != h.m) throw std::invalid_argument("odd symplectic handles need (n,n)");
  if ((h.kind == RealizationKind::Hprime || h.kind == RealizationKind::H) && h.m % 2)
    throw std::invalid_argument("H handles need an even number of x variables");
  if (mt[5].matched) {
    if (!(h.kind == RealizationKind::SKOprime || h.kind == RealizationKind::SKO))
      throw std::invalid_argument("beta only applies to SKO handles");
    h.beta = Scalar::parse(field, mt[5].str());
  } else if (h.kind == RealizationKind::SKOprime || h.kind == RealizationKind::SKO) {
    throw std::invalid_argument("SKO handles need a beta, e.g. SKO'(2,3;1)");
  }
  if (h.n > 16 || h.m > 16) throw std::invalid_argument("too many variables");
  return h;
}

std::string RealizationHandle::to_string() const {
  static const std::map<RealizationKind, std::string> names{
      {RealizationKind::W, "W"},     {RealizationKind::Sprime, "S'"},     {RealizationKind::S, "S"},
      {RealizationKind::Hprime, "H'"}, {RealizationKind::H, "H"},         {RealizationKind::HO, "HO"},
      {RealizationKind::SHOprime, "SHO'"}, {RealizationKind::SHO, "SHO"}, {RealizationKind::KO, "KO"},
      {RealizationKind::SKOprime, "SKO'"}, {RealizationKind::SKO, "SKO"}};
  std::string s = names.at(kind) + "(" + std::to_string(m) + "," + std::to_string(n);
  if (kind == RealizationKind::SKOprime || kind == RealizationKind::SKO) s += ";" + beta.to_string();
  return s + ")";
}

bool RealizationHandle::function_type() const {
  return !(kind == RealizationKind::W || kind == RealizationKind::Sprime || kind == RealizationKind::S);
}

bool RealizationHandle::derived() const {
  return kind == RealizationKind::S || kind == RealizationKind::H || kind == RealizationKind::SHO ||
         kind == RealizationKind::SKO;
}

GradingSpec GradingSpec::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw std::invalid_argument("grading needs '|'");
  auto list = [](const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
      if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
  };
  return GradingSpec{list(text.substr(0, bar)), list(text.substr(bar + 1))};
}

std::string GradingSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  s += "|";
  for (std::size_t i = 0; i < this->s.size(); ++i) s += (i ? "," : "") + std::to_string(this->s[i]);
  return s;
}

GradingSpec GradingSpec::uniform(int m, int n, int kx, int sxi) {
  return GradingSpec{std::vector<int>(static_cast<std::size_t>(m), kx), std::vector<int>(static_cast<std::size_t>(n), sxi)};
}

namespace {

bool is_quotient(RealizationKind k) {
  return k == RealizationKind::Hprime || k == RealizationKind::H || k == RealizationKind::HO ||
         k == RealizationKind::SHOprime || k == RealizationKind::SHO;
}

bool is_contact(RealizationKind k) {
  return k == RealizationKind::KO || k == RealizationKind::SKOprime || k == RealizationKind::SKO;
}

bool is_hamiltonian(RealizationKind k) { return k == RealizationKind::Hprime || k == RealizationKind::H; }

bool is_odd_symplectic(RealizationKind k) {
  return k == RealizationKind::HO || k == RealizationKind::SHOprime || k == RealizationKind::SHO;
}

// Weight of the bracket under the type grading, for function realizations.
int type_shift(const RealizationHandle& h, const GradingSpec& g) {
  if (is_hamiltonian(h.kind)) {
    if (h.m > 0) return g.k.at(0) + g.k.at(h.m / 2);
    const auto& b = h.form.empty() ? identity_form(h.field, h.n) : h.form;
    for (int j = 0; j < h.n; ++j)
      if (!b[0][j].is_zero()) return g.s.at(0) + g.s.at(j);
    throw std::invalid_argument("degenerate form");
  }
  if (is_odd_symplectic(h.kind)) return h.m > 0 ? g.k.at(0) + g.s.at(0) : 0;
  return g.s.at(h.n - 1);
}

}  // namespace

RealizedAlgebra::RealizedAlgebra(RealizationHandle h, GradingSpec g) : h_(std::move(h)), g_(std::move(g)) {
  if (static_cast<int>(g_.k.size()) != h_.m || static_cast<int>(g_.s.size()) != h_.n)
    throw std::invalid_argument("grading " + g_.to_string() + " does not fit " + h_.to_string());
  for (int v : g_.k)
    if (v < 0) throw std::invalid_argument("negative x degrees give infinite depth");
  xi_weight_.assign(static_cast<std::size_t>(h_.n), 1);
  if (is_contact(h_.kind)) xi_weight_.back() = 2;
  if (is_hamiltonian(h_.kind) && h_.form.empty()) h_.form = identity_form(h_.field, h_.n);
  for (int v : g_.s)
    if (v < 0) throw std::invalid_argument("negative xi degrees are not supported");
  if (h_.function_type()) {
    min_type_ = -type_shift(h_, g_);
    min_weight_ = -2;
  } else {
    min_type_ = 0;
    for (int v : g_.k) min_type_ = std::min(min_type_, -v);
    for (int v : g_.s) min_type_ = std::min(min_type_, -v);
    min_weight_ = -1;
  }
}

std::pair<int, int> RealizedAlgebra::term_bidegree(const OpKey& k) const {
  int type = 0, weight = 0;
  for (int i = 0; i < h_.m; ++i) {
    type += k.mono.x[i] * g_.k[i];
    weight += k.mono.x[i];
  }
  for (std::uint32_t t = k.mono.xi; t; t &= t - 1) {
    const int j = std::countr_zero(t);
    type += g_.s[j];
    weight += xi_weight_[j];
  }
  if (k.kind == 0) {
    type -= type_shift(h_, g_);
    weight -= 2;
  } else {
    type -= k.kind == 1 ? g_.k[k.index] : g_.s[k.index];
    weight -= 1;
  }
  return {type, weight};
}

std::pair<int, int> RealizedAlgebra::bidegree(const SuperElement& a) const {
  if (a.is_zero()) throw std::invalid_argument("zero has no bidegree");
  const auto d = term_bidegree(a.leading_key());
  for (const auto& [k, c] : a)
    if (term_bidegree(k) != d) throw std::invalid_argument("element is not bihomogeneous");
  return d;
}

SuperElement RealizedAlgebra::normalize(SuperElement a) const {
  if (is_quotient(h_.kind)) a.set(OpKey{0, 0, unit_monomial(h_.m)}, Scalar::zero(h_.field));
  return a;
}

SuperElement RealizedAlgebra::bracket(const SuperElement& a, const SuperElement& b) const {
  if (!h_.function_type()) return op_bracket(a, b);
  const SuperPoly f = function_part(a), g = function_part(b);
  SuperPoly r(h_.field);
  if (is_hamiltonian(h_.kind))
    r = poisson_bracket(f, g, h_.m, h_.form);
  else if (is_odd_symplectic(h_.kind))
    r = buttin_bracket(f, g, h_.n);
  else
    r = contact_bracket(f, g, h_.m);
  return normalize(as_function(r));
}

int RealizedAlgebra::parity(const SuperElement& a) const {
  if (!h_.function_type()) return op_parity(a);
  const int p = sp_parity(function_part(a));
  return is_hamiltonian(h_.kind) ? p : (p + 1) % 2;
}

SuperPoly RealizedAlgebra::constraint(const SuperElement& a) const {
  switch (h_.kind) {
    case RealizationKind::Sprime:
    case RealizationKind::S:
      return divergence(a);
    case RealizationKind::SHOprime:
    case RealizationKind::SHO:
      return odd_laplacian(function_part(a), h_.n);
    case RealizationKind::SKOprime:
    case RealizationKind::SKO:
      return div_beta(function_part(a), h_.m, h_.beta);
    default:
      return SuperPoly(h_.field);
  }
}

bool RealizedAlgebra::member(const SuperElement& a) const { return constraint(a).is_zero(); }

const std::vector<OpKey>& RealizedAlgebra::terms_of(int type, int weight) const {
  auto key = std::pair{type, weight};
  if (auto it = terms_.find(key); it != terms_.end()) return it->second;
  std::vector<OpKey> out;
  std::vector<std::pair<int, int>> gens;
  if (h_.function_type()) {
    gens.emplace_back(0, 0);
  } else {
    for (int i = 0; i < h_.m; ++i) gens.emplace_back(1, i);
    for (int j = 0; j < h_.n; ++j) gens.emplace_back(2, j);
  }
  const int shift = h_.function_type() ? 2 : 1;
  for (const auto& [kind, index] : gens)
    for (std::uint32_t mask = 0; mask < (1u << h_.n); ++mask) {
      int xw = 0;
      for (std::uint32_t t = mask; t; t &= t - 1) xw += xi_weight_[std::countr_zero(t)];
      const int xdeg = weight + shift - xw;
      if (xdeg < 0) continue;
      for (const auto& mon : monomials(h_.m, xdeg, xdeg)) {
        OpKey k{kind, index, SuperMonomial{mon, mask}};
        if (kind == 0 && is_quotient(h_.kind) && xdeg == 0 && mask == 0) continue;
        if (term_bidegree(k).first == type) out.push_back(std::move(k));
      }
    }
  std::sort(out.begin(), out.end());
  return terms_.emplace(key, std::move(out)).first->second;
}

const std::vector<SuperElement>& RealizedAlgebra::primed_component(int type, int weight) const {
  auto key = std::pair{type, weight};
  if (auto it = primed_.find(key); it != primed_.end()) return it->second;
  const auto& terms = terms_of(type, weight);
  std::vector<SuperElement> out;
  std::vector<SparseVector> images;
  std::map<SuperMonomial, int> ids;
  bool constrained = false;
  for (const auto& t : terms) {
    const SuperPoly c = constraint(SuperElement(t, Scalar::one(h_.field)));
    SparseVector v(h_.field);
    for (const auto& [m, x] : c) {
      v.set(ids.try_emplace(m, static_cast<int>(ids.size())).first->second, x);
      constrained = true;
    }
    images.push_back(std::move(v));
  }
  if (!constrained) {
    for (const auto& t : terms) out.emplace_back(t, Scalar::one(h_.field));
  } else {
    for (const auto& rel : relations(h_.field, static_cast<int>(ids.size()), images)) {
      SuperElement e(h_.field);
      for (const auto& [i, c] : rel) e.add_term(terms[i], c);
      out.push_back(std::move(e));
    }
  }
  return primed_.emplace(key, std::move(out)).first->second;
}

namespace {

class ElementInterner {
 public:
  SparseVector encode(const SuperElement& e, FieldSpec f) {
    SparseVector v(f);
    for (const auto& [k, c] : e) v.set(ids_.try_emplace(k, static_cast<int>(ids_.size())).first->second, c);
    return v;
  }

 private:
  std::map<OpKey, int> ids_;
};

struct SpanOf {
  ElementInterner in;
  RowSpan span;
  std::vector<SuperElement> basis;
  explicit SpanOf(FieldSpec f) : span(f, 1 << 30) {}
  bool insert(const SuperElement& e, FieldSpec f) {
    if (e.is_zero() || !span.insert(in.encode(e, f))) return false;
    basis.push_back(e);
    return true;
  }
  bool contains(const SuperElement& e, FieldSpec f) { return e.is_zero() || span.contains(in.encode(e, f)); }
};

}  // namespace

const std::vector<SuperElement>& RealizedAlgebra::derived_component(int type, int weight) const {
  auto key = std::pair{type, weight};
  if (auto it = derived_.find(key); it != derived_.end()) return it->second;
  SpanOf s(h_.field);
  for (int t1 = min_type_; t1 <= type - min_type_; ++t1)
    for (int w1 = min_weight_; w1 <= weight - min_weight_; ++w1) {
      const int t2 = type - t1, w2 = weight - w1;
      if (std::pair{t1, w1} > std::pair{t2, w2}) continue;
      const auto& a = primed_component(t1, w1);
      if (a.empty()) continue;
      const auto& b = primed_component(t2, w2);
      const bool same = std::pair{t1, w1} == std::pair{t2, w2};
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = same ? i : 0; j < b.size(); ++j) s.insert(bracket(a[i], b[j]), h_.field);
    }
  return derived_.emplace(key, std::move(s.basis)).first->second;
}

const std::vector<SuperElement>& RealizedAlgebra::component(int type, int weight) const {
  return h_.derived() ? derived_component(type, weight) : primed_component(type, weight);
}

std::vector<std::pair<int, int>> RealizedAlgebra::window(int xwindow) const {
  int wmax = xwindow;
  for (int w : xi_weight_) wmax += w;
  int tmax = 0;
  for (int v : g_.s) tmax += std::max(v, 0);
  for (int v : g_.k) tmax += v * xwindow;
  std::vector<std::pair<int, int>> out;
  for (int w = min_weight_; w <= wmax; ++w)
    for (int t = min_type_; t <= tmax; ++t) {
      const auto& terms = terms_of(t, w);
      if (terms.empty()) continue;
      bool inside = true;
      for (const auto& k : terms) inside = inside && k.mono.xdegree() <= xwindow;
      if (inside) out.emplace_back(t, w);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SuperElement> RealizedAlgebra::graded_component(int type, int xwindow) const {
  std::vector<SuperElement> out;
  for (const auto& [t, w] : window(xwindow))
    if (t == type)
      for (const auto& e : component(t, w)) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> range(int n) {
  std::vector<int> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[i] = i;
  return r;
}

RealizationHandle make_handle(RealizationKind kind, int m, int n, FieldSpec f, Scalar beta) {
  RealizationHandle h;
  h.kind = kind;
  h.m = m;
  h.n = n;
  h.field = f;
  h.beta = beta;
  return h;
}

}  // namespace

DecompositionSpec s_prime_spec(int n, int xwindow) {
  const FieldSpec q = FieldSpec::rationals();
  return {"S'(1," + std::to_string(n) + ") = S(1," + std::to_string(n) + ") + F xi_1..xi_n d/dx",
          make_handle(RealizationKind::Sprime, 1, n, q, Scalar::zero(q)), GradingSpec::uniform(1, n, 0, 1),
          op_dx(sp_xi_product(q, 1, range(n)), 0), xwindow};
}

DecompositionSpec hamiltonian_spec(int n) {
  const FieldSpec q = FieldSpec::rationals();
  auto h = make_handle(RealizationKind::Hprime, 0, n, q, Scalar::zero(q));
  h.form = antidiagonal_form(q, n);
  return {"H'(0," + std::to_string(n) + ") = H(0," + std::to_string(n) + ") + F xi_1..xi_n", h,
          GradingSpec::uniform(0, n, 0, 1), as_function(sp_xi_product(q, 0, range(n))), 0};
}

DecompositionSpec odd_hamiltonian_spec(int n, int xwindow) {
  const FieldSpec q = FieldSpec::rationals();
  return {"SHO'(" + std::to_string(n) + "," + std::to_string(n) + ") = SHO + F xi_1..xi_n",
          make_handle(RealizationKind::SHOprime, n, n, q, Scalar::zero(q)), GradingSpec::uniform(n, n, 0, 1),
          as_function(sp_xi_product(q, n, range(n))), xwindow};
}

DecompositionSpec odd_contact_spec(int n, int xwindow) {
  const FieldSpec q = FieldSpec::rationals();
  return {"SKO'(" + std::to_string(n) + "," + std::to_string(n + 1) + ";1) = SKO + F xi_1..xi_{n+1}",
          make_handle(RealizationKind::SKOprime, n, n + 1, q, Scalar::one(q)), GradingSpec::uniform(n, n + 1, 0, 1),
          as_function(sp_xi_product(q, n, range(n + 1))), xwindow};
}

DecompositionSpec odd_contact_critical_spec(int n, int xwindow) {
  const FieldSpec q = FieldSpec::rationals();
  const Scalar beta = Scalar(q, mpq_class(n - 2, n));
  return {"SKO'(" + std::to_string(n) + "," + std::to_string(n + 1) + ";" + beta.to_string() + ") = SKO + F xi_1..xi_n",
          make_handle(RealizationKind::SKOprime, n, n + 1, q, beta), GradingSpec::uniform(n, n + 1, 0, 1),
          as_function(sp_xi_product(q, n, range(n))), xwindow};
}

CheckRecord check_decomposition(const DecompositionSpec& spec) {
  CheckRecord rec(spec.name);
  const RealizedAlgebra a(spec.handle, spec.grading);
  const FieldSpec f = a.field();
  const auto win = a.window(spec.xwindow);
  std::map<std::pair<int, int>, SpanOf> derived;
  int primed_total = 0, derived_total = 0;
  json per = json::object();
  for (const auto& bd : win) {
    const auto& p = a.primed_component(bd.first, bd.second);
    auto& s = derived.try_emplace(bd, f).first->second;
    for (const auto& e : a.derived_component(bd.first, bd.second)) {
      s.insert(e, f);
      if (!a.member(e)) rec.fail("derived element outside the primed algebra: " + format_element(e));
    }
    primed_total += static_cast<int>(p.size());
    derived_total += s.span.rank();
    auto& slot = per[std::to_string(bd.first)];
    if (slot.is_null()) slot = json::array({0, 0});
    slot[0] = slot[0].get<int>() + static_cast<int>(p.size());
    slot[1] = slot[1].get<int>() + s.span.rank();
  }
  rec.dims["primed"] = primed_total;
  rec.dims["derived"] = derived_total;
  rec.dims["codimension"] = primed_total - derived_total;
  rec.details["handle"] = spec.handle.to_string();
  rec.details["grading"] = spec.grading.to_string();
  rec.details["xwindow"] = spec.xwindow;
  rec.details["per_degree_primed_derived"] = per;
  rec.details["complement"] = format_element(spec.complement);

  if (!a.member(spec.complement)) rec.fail("complement is not in the primed algebra");
  const auto cbd = a.bidegree(spec.complement);
  auto it = derived.find(cbd);
  if (it == derived.end()) {
    rec.fail("complement lies outside the window");
  } else if (it->second.contains(spec.complement, f)) {
    rec.fail("complement lies in the derived subalgebra");
  }
  if (primed_total - derived_total != 1)
    rec.fail("codimension " + std::to_string(primed_total - derived_total) + " within the window");

  long ideal_brackets = 0;
  for (const auto& b1 : win)
    for (const auto& b2 : win) {
      const std::pair<int, int> sum{b1.first + b2.first, b1.second + b2.second};
      auto target = derived.find(sum);
      if (target == derived.end()) continue;
      for (const auto& x : a.primed_component(b1.first, b1.second))
        for (const auto& y : derived.at(b2).basis) {
          ++ideal_brackets;
          const SuperElement h = a.bracket(x, y);
          if (!target->second.contains(h, f) && rec.passed())
            rec.fail("[" + format_element(x) + ", " + format_element(y) + "] leaves the derived part");
        }
    }
  rec.details["ideal_brackets"] = ideal_brackets;
  return rec;
}

// ---------------------------------------------------------------------------

namespace {

struct PairSetup {
  std::string name;
  RealizationHandle handle;
  GradingSpec grading;
  SuperElement mu;
  std::vector<SuperElement> lm1;
  std::vector<BasisKey> keys;
  NAryAlgebra catalog;
  std::function<std::optional<Element>(const SuperElement&)> to_catalog;
};

PairSetup make_pair_setup(int which, int n, int xwindow) {
  const FieldSpec q = FieldSpec::rationals();
  const Scalar zero = Scalar::zero(q);
  CarrierOptions opts;
  opts.window = std::max(1, xwindow);
  switch (which) {
    case 1: {
      auto h = make_handle(RealizationKind::Hprime, 0, n + 1, q, zero);
      h.form = identity_form(q, n + 1);
      PairSetup s{"H'(0," + std::to_string(n + 1) + ") with xi_1..xi_" + std::to_string(n + 1),
                  h,
                  GradingSpec::uniform(0, n + 1, 0, 1),
                  as_function(sp_xi_product(q, 0, range(n + 1))),
                  {},
                  {},
                  on_algebra(BilinearForm::identity(q, n + 1)),
                  {}};
      for (int i = 0; i <= n; ++i) {
        s.lm1.push_back(as_function(sp_xi(q, 0, i)));
        s.keys.push_back(BasisKey{i, {}});
      }
      s.to_catalog = [q](const SuperElement& e) -> std::optional<Element> {
        Element out(q);
        for (const auto& [k, c] : e) {
          if (k.kind != 0 || k.mono.xicount() != 1) return std::nullopt;
          out.add_term(BasisKey{std::countr_zero(k.mono.xi), {}}, c);
        }
        return out;
      };
      return s;
    }
    case 2:
    case 3: {
      const bool odd_sympl = which == 2;
      const int m = odd_sympl ? n : n - 1;
      auto h = odd_sympl ? make_handle(RealizationKind::SHOprime, n, n, q, zero)
                         : make_handle(RealizationKind::SKOprime, n - 1, n, q, Scalar::one(q));
      PairSetup s{odd_sympl ? "SHO'(" + std::to_string(n) + "," + std::to_string(n) + ") with xi_1..xi_n"
                            : "SKO'(" + std::to_string(n - 1) + "," + std::to_string(n) + ";1) with xi_1..xi_n",
                  h,
                  GradingSpec::uniform(m, n, 0, 1),
                  as_function(sp_xi_product(q, m, range(n))),
                  {},
                  {},
                  odd_sympl ? sn_algebra(q, n, opts) : wn_algebra(q, n, opts),
                  {}};
      for (const auto& mon : monomials(m, odd_sympl ? 1 : 0, xwindow)) {
        s.lm1.push_back(as_function(sp_monomial(q, SuperMonomial{mon, 0})));
        s.keys.push_back(BasisKey{0, mon});
      }
      s.to_catalog = [q](const SuperElement& e) -> std::optional<Element> {
        Element out(q);
        for (const auto& [k, c] : e) {
          if (k.kind != 0 || k.mono.xi != 0) return std::nullopt;
          out.add_term(BasisKey{0, k.mono.x}, c);
        }
        return out;
      };
      return s;
    }
    case 4: {
      PairSetup s{"S'(1," + std::to_string(n - 1) + ") with xi_1..xi_" + std::to_string(n - 1) + " d/dx",
                  make_handle(RealizationKind::Sprime, 1, n - 1, q, zero),
                  GradingSpec::uniform(1, n - 1, 0, 1),
                  op_dx(sp_xi_product(q, 1, range(n - 1)), 0),
                  {},
                  {},
                  swn_algebra(q, n, opts),
                  {}};
      for (int j = 0; j < n - 1; ++j)
        for (int a = 0; a <= xwindow; ++a) {
          s.lm1.push_back(op_dxi(sp_monomial(q, SuperMonomial{{a}, 0}), j));
          s.keys.push_back(BasisKey{j + 1, {a}});
        }
      s.to_catalog = [q](const SuperElement& e) -> std::optional<Element> {
        Element out(q);
        for (const auto& [k, c] : e) {
          if (k.kind != 2 || k.mono.xi != 0) return std::nullopt;
          out.add_term(BasisKey{k.index + 1, k.mono.x}, c);
        }
        return out;
      };
      return s;
    }
    default:
      throw std::invalid_argument("pairs are numbered 1 to 4");
  }
}

void for_each_increasing(int size, int length, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> t(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) t[i] = i;
  if (length > size) return;
  while (true) {
    if (!fn(t)) return;
    int i = length - 1;
    while (i >= 0 && t[i] == size - length + i) --i;
    if (i < 0) return;
    ++t[i];
    for (int j = i + 1; j < length; ++j) t[j] = t[j - 1] + 1;
  }
}

}  // namespace

CheckRecord verify_pair(int which, int n, int xwindow, std::vector<CheckRecord>* parts) {
  if (n < 3) throw std::invalid_argument("pairs need n >= 3");
  static const char* roman[] = {"", "i", "ii", "iii", "iv"};
  const PairSetup s = make_pair_setup(which, n, xwindow);
  const RealizedAlgebra a(s.handle, s.grading);
  const FieldSpec f = a.field();
  std::vector<CheckRecord> out;

  CheckRecord mu_in("mu_in_algebra");
  if (!a.member(s.mu)) mu_in.fail("mu fails the defining constraint");
  out.push_back(mu_in);

  CheckRecord top("top_is_mu_line");
  {
    const auto comp = a.graded_component(n - 1, xwindow);
    top.dims[std::to_string(n - 1)] = comp.size();
    SpanOf sp(f);
    for (const auto& e : comp) sp.insert(e, f);
    if (sp.span.rank() != 1 || !sp.contains(s.mu, f))
      top.fail("component of degree n-1 has dimension " + std::to_string(sp.span.rank()) + " within the window");
  }
  out.push_back(top);

  CheckRecord above("vanishes_above_n_minus_1");
  for (int d = n; d <= n + 1; ++d) {
    const auto comp = a.graded_component(d, xwindow);
    above.dims[std::to_string(d)] = comp.size();
    if (!comp.empty()) above.fail("nonzero element in degree " + std::to_string(d) + ": " + format_element(comp[0]));
  }
  out.push_back(above);

  CheckRecord l3("mu_centralizes_L0");
  {
    const auto l0 = a.graded_component(0, xwindow);
    l3.dims["0"] = l0.size();
    for (const auto& b : l0) {
      const SuperElement c = a.bracket(s.mu, b);
      if (!c.is_zero()) {
        l3.fail("[mu, " + format_element(b) + "] = " + format_element(c));
        break;
      }
    }
  }
  out.push_back(l3);

  CheckRecord trans("transitive_on_window");
  {
    const auto lm1 = a.graded_component(-1, xwindow + 1);
    for (const auto& [t, w] : a.window(xwindow)) {
      if (t < 0 || !trans.passed()) continue;
      const auto& comp = a.component(t, w);
      if (comp.empty()) continue;
      ElementInterner in;
      std::vector<SparseVector> images;
      int cols = 0;
      std::map<std::pair<std::size_t, int>, int> colmap;
      for (const auto& x : comp) {
        SparseVector v(f);
        for (std::size_t i = 0; i < lm1.size(); ++i) {
          SparseVector img = in.encode(a.bracket(x, lm1[i]), f);
          for (const auto& [c, val] : img) {
            auto [it, ins] = colmap.try_emplace({i, c}, cols);
            if (ins) ++cols;
            v.set(it->second, val);
          }
        }
        images.push_back(std::move(v));
      }
      const auto rels = relations(f, cols, images);
      if (!rels.empty()) {
        SuperElement wit(f);
        for (const auto& [i, c] : rels.front()) wit.axpy(c, comp[i]);
        trans.fail("degree " + std::to_string(t) + " element kills L_{-1}: " + format_element(wit));
      }
    }
  }
  out.push_back(trans);

  CheckRecord irr("irreducible");
  if (which == 1) {
    std::vector<SparseMatrix> ops;
    const int d = static_cast<int>(s.lm1.size());
    for (const auto& b : a.graded_component(0, xwindow)) {
      SparseMatrix m(f, d, d);
      for (int i = 0; i < d; ++i) {
        const auto img = s.to_catalog(a.bracket(b, s.lm1[i]));
        if (!img) throw std::logic_error("L_0 does not preserve L_{-1}");
        for (const auto& [k, c] : *img) m.set(k.tag, i, c);
      }
      ops.push_back(std::move(m));
    }
    const auto res = burnside_test(f, d, ops);
    irr.status = res.status;
    irr.details["method"] = res.method;
    irr.details["envelope_dim"] = res.envelope_dim;
    if (res.status == Status::fail) irr.witness = "invariant subspace found";
  } else {
    irr.status = Status::not_decided;
    irr.details["method"] = "infinite-dimensional L_{-1}; irreducibility follows from simplicity of the depth-1 ideal";
  }
  out.push_back(irr);

  CheckRecord match("bracket_matches_catalog");
  {
    std::optional<Scalar> scale;
    long tuples = 0;
    for_each_increasing(static_cast<int>(s.lm1.size()), n, [&](const std::vector<int>& t) {
      ++tuples;
      SuperElement y = s.mu;
      std::vector<int> parities;
      KeyTuple keys;
      for (int i : t) {
        y = a.bracket(y, s.lm1[i]);
        parities.push_back(a.parity(s.lm1[i]));
        keys.push_back(s.keys[i]);
      }
      if (conversion_sign(parities) < 0) y = -y;
      std::string label = "(";
      for (std::size_t i = 0; i < t.size(); ++i) label += (i ? "," : "") + s.catalog.label(s.keys[t[i]]);
      label += ")";
      const auto induced = s.to_catalog(y);
      if (!induced) {
        match.fail(label + ": induced value leaves L_{-1}: " + format_element(y));
        return false;
      }
      const Element expected = s.catalog.bracket_basis(keys);
      if (!scale) {
        if (induced->is_zero() && expected.is_zero()) return true;
        if (induced->is_zero() || expected.is_zero()) {
          match.fail(label + ": induced " + s.catalog.format(*induced) + ", catalog " + s.catalog.format(expected));
          return false;
        }
        const BasisKey k = expected.leading_key();
        if (induced->coeff(k).is_zero()) {
          match.fail(label + ": supports differ");
          return false;
        }
        scale = expected.coeff(k) / induced->coeff(k);
      }
      if (!(*scale * *induced == expected)) {
        match.fail(label + ": induced " + s.catalog.format(*induced) + " scaled by " + scale->to_string() +
                   ", catalog " + s.catalog.format(expected));
        return false;
      }
      return true;
    });
    match.details["tuples"] = tuples;
    match.details["catalog"] = s.catalog.name();
    match.details["scalar"] = scale ? scale->to_string() : "none";
    if (!scale && match.passed()) match.fail("every compared bracket vanished");
  }
  out.push_back(match);

  CheckRecord overall("pair_" + std::string(roman[which]));
  overall.details["realization"] = s.name;
  overall.details["grading"] = s.grading.to_string();
  overall.details["n"] = n;
  overall.details["xwindow"] = xwindow;
  for (const auto& r : out) {
    overall.details["parts"][r.name] = to_string(r.status);
    if (r.status == Status::fail) overall.fail(r.name + ": " + r.witness);
  }
  if (parts) *parts = out;
  return overall;
}

}  // namespace nlie
