#include "nlie/charp.hpp"

#include <stdexcept>

#include "nlie/liegen.hpp"

namespace nlie {

CharPSeed CharPSeed::make(std::uint64_t p, int n) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (n < 2 || static_cast<std::uint64_t>(n) % p != 1 % p)
    throw std::invalid_argument("n = " + std::to_string(n) + " is not 1 mod " + std::to_string(p));
  return CharPSeed{FieldSpec::prime(p), n};
}

CharPSeed CharPSeed::over(FieldSpec field, int n) {
  if (n < 2) throw std::invalid_argument("arity must be at least 2");
  return CharPSeed{field, n};
}

NAryAlgebra CharPSeed::algebra() const {
  auto space = SuperSpace::from_parities(field, "1", "a");
  const FieldSpec f = field;
  return finite_algebra("charp", space, n, bracket_parity(), [f](const std::vector<int>&) {
    SuperVector v(f);
    v.set(0, Scalar::one(f));
    return v;
  });
}

CharPFJResult charp_fj_check(const CharPSeed& seed) {
  const NAryAlgebra a = seed.algebra();
  const KeyTuple as(static_cast<std::size_t>(seed.n - 1), BasisKey{0, {}});
  const KeyTuple bs(static_cast<std::size_t>(seed.n), BasisKey{0, {}});
  CharPFJResult r;
  r.residue = fj_residue(a, as, bs);
  r.pass = r.residue.is_zero();
  r.formatted = a.format(r.residue);
  return r;
}

std::vector<int> DegreeProfile::degrees() const {
  std::vector<int> out;
  for (const auto& [d, c] : components) out.push_back(d);
  return out;
}

DegreeProfile charp_generation(const CharPSeed& seed, int cap) {
  const FieldSpec f = seed.field;
  DegreeProfile prof;
  prof.cap = cap;
  // Every component is at most one-dimensional, spanned by x^{d+1} d.
  std::vector<int> frontier;
  auto add = [&](int d, const Scalar& c) {
    if (c.is_zero() || d > cap || prof.components.count(d)) return;
    prof.components.emplace(d, c);
    frontier.push_back(d);
  };
  add(-1, Scalar::one(f));
  add(seed.n - 1, Scalar::one(f));
  while (!frontier.empty()) {
    std::vector<int> current = std::move(frontier);
    frontier.clear();
    const auto all = prof.components;
    for (int d : current)
      for (const auto& [e, c] : all) {
        // [x^a d, x^b d] = (b - a) x^{a+b-1} d
        const int a = d + 1, b = e + 1;
        add(a + b - 2, prof.components.at(d) * c * Scalar(f, static_cast<long>(b - a)));
      }
  }
  return prof;
}

SuperMultiMap w_model_mu(const CharPSeed& seed) {
  const FieldSpec f = seed.field;
  return anticomm_to_comm(SuperSpace::from_parities(f, "1", "a"), seed.n, seed.bracket_parity(),
                          [f](const std::vector<int>&) {
                            SuperVector v(f);
                            v.set(0, Scalar::one(f));
                            return v;
                          });
}

std::map<int, int> w_model_profile(const CharPSeed& seed, int cap) {
  const SuperMultiMap mu = w_model_mu(seed);
  return generate_lie(mu.space(), mu, cap).algebra.dims();
}

std::vector<CheckRecord> charp_report(std::uint64_t p, int n, int cap) {
  std::vector<CheckRecord> out;
  const CharPSeed seed = CharPSeed::make(p, n);
  CheckRecord fj("fj_identity");
  const auto r = charp_fj_check(seed);
  fj.details["p"] = p;
  fj.details["n"] = n;
  fj.details["residue"] = r.formatted;
  if (n % 2 == 0) fj.details["note"] = "even n: residue reported, identity not asserted";
  if (!r.pass) fj.fail("residue " + r.formatted);
  out.push_back(fj);

  auto profile_json = [](const DegreeProfile& prof) {
    json d = json::object();
    for (int k : prof.degrees()) d[std::to_string(k)] = 1;
    return d;
  };
  CheckRecord gen("degree_bound_violated");
  const DegreeProfile prof = charp_generation(seed, cap);
  gen.dims = profile_json(prof);
  gen.details["cap"] = cap;
  gen.details["max_degree"] = prof.max_degree();
  gen.details["bound"] = n - 1;
  json wm = json::object();
  for (const auto& [d, k] : w_model_profile(seed, cap)) wm[std::to_string(d)] = k;
  gen.details["box_product_model_dims"] = wm;
  if (prof.max_degree() <= n - 1)
    gen.fail("no component above degree " + std::to_string(n - 1) + " up to cap " + std::to_string(cap));
  out.push_back(gen);

  CheckRecord control("char0_control_terminates");
  const int n0 = 3;
  const DegreeProfile q = charp_generation(CharPSeed::over(FieldSpec::rationals(), n0), cap);
  control.dims = profile_json(q);
  control.details["n"] = n0;
  control.details["cap"] = cap;
  control.details["max_degree"] = q.max_degree();
  const auto q_fj = charp_fj_check(CharPSeed::over(FieldSpec::rationals(), n0));
  control.details["fj_residue"] = q_fj.formatted;
  if (q.max_degree() > n0 - 1)
    control.fail("component in degree " + std::to_string(q.max_degree()) + " > " + std::to_string(n0 - 1));
  out.push_back(control);
  return out;
}

}  // namespace nlie
