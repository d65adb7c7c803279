// Acceptance suite: one line per criterion, each with a pinned time limit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "nlie/catalog.hpp"
#include "nlie/charp.hpp"
#include "nlie/derivations.hpp"
#include "nlie/liegen.hpp"
#include "nlie/superalgebras.hpp"
#include "nlie/universal_w.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      note += (note.empty() ? "" : "; ") + what;
      ok = false;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit;
  std::function<Outcome()> body;
};

WElement on_mu(int n) { return anticomm_to_comm(on_space(Q, n), n, 0, on_bracket(BilinearForm::identity(Q, n + 1))); }

// Subsets of m Grassmann generators counted by size, deg = s - 2, constants dropped.
std::map<int, int> grassmann_oracle(int m) {
  std::map<int, int> out;
  for (int mask = 1; mask < (1 << m); ++mask) ++out[__builtin_popcount(mask) - 2];
  return out;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const CheckRecord* find(const std::vector<CheckRecord>& recs, const std::string& name) {
  for (const auto& r : recs)
    if (r.name == name) return &r;
  return nullptr;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome fj_vector_product() {
  Outcome o;
  for (int n : {3, 4}) {
    const auto r = check_fj(on_algebra(BilinearForm::identity(Q, n + 1)));
    long expected = 1;
    for (int i = 0; i < 2 * n - 1; ++i) expected *= n + 1;
    o.require(r.pass, "O^" + std::to_string(n) + ": " + r.witness);
    o.require(r.samples == expected, "O^" + std::to_string(n) + " sampled " + std::to_string(r.samples) + " tuples");
  }
  return o;
}

Outcome fj_polynomial_catalog() {
  Outcome o;
  CarrierOptions opts;
  opts.window = 3;
  for (const auto& a : {sn_algebra(Q, 3, opts), wn_algebra(Q, 3, opts), swn_algebra(Q, 3, opts)}) {
    const auto r = check_fj(a);
    o.require(r.pass, a.name() + ": " + r.witness);
    o.require(r.samples > 0, a.name() + ": no samples");
  }
  return o;
}

Outcome generation_dims() {
  Outcome o;
  const WElement mu = on_mu(3);
  const Generated g = generate_lie(mu.space(), mu, 4);
  const auto oracle = grassmann_oracle(4);
  for (int d = -1; d <= 4; ++d) {
    const int want = oracle.count(d) ? oracle.at(d) : 0;
    o.require(g.algebra.dim(d) == want, "degree " + std::to_string(d) + " has dim " + std::to_string(g.algebra.dim(d)));
    if (want) o.require(want == binomial(4, d + 2), "oracle disagrees with C(4,s)");
  }
  return o;
}

Outcome structure_checks() {
  Outcome o;
  for (int n : {3, 4}) {
    const WElement mu = on_mu(n);
    for (const auto& r : check_theorem_0_2(generate_lie(mu.space(), mu, n + 1)))
      o.require(r.passed(), "O^" + std::to_string(n) + " " + r.name + ": " + r.witness);
  }
  return o;
}

Outcome ad_powers() {
  Outcome o;
  const WElement mu = on_mu(3);
  const Generated g = generate_lie(mu.space(), mu, 4);
  const CheckRecord r = check_lemma_3_1(g);
  o.require(r.passed(), r.witness);
  o.require(box(mu, mu).is_zero(), "mu box mu is nonzero");
  o.require(w_bracket(mu, mu).is_zero(), "[mu, mu] is nonzero");
  // exhaustive: all 4^{n-1-j} tuples for j = 0..2
  const auto& per = r.details.at("per_j");
  for (int j = 0; j <= 2; ++j) {
    long tuples = 1;
    for (int i = 0; i < 2 - j; ++i) tuples *= 4;
    o.require(per.at(std::to_string(j)).at("tuples").get<long>() == tuples, "j = " + std::to_string(j) + " not exhaustive");
  }
  return o;
}

Outcome burnside() {
  Outcome o;
  const WElement mu = on_mu(3);
  const auto res = check_irreducible(generate_lie(mu.space(), mu, 4).algebra);
  const int d = 4;
  o.require(res.envelope_dim == d * d, "envelope has dimension " + std::to_string(res.envelope_dim));
  o.require(res.status == Status::pass, "not irreducible");
  return o;
}

Outcome pair_brackets() {
  Outcome o;
  for (auto [which, xw, catalog] : std::vector<std::tuple<int, int, std::string>>{{1, 0, "O^3"}, {4, 2, "SW^3"}}) {
    std::vector<CheckRecord> parts;
    verify_pair(which, 3, xw, &parts);
    const CheckRecord* m = find(parts, "bracket_matches_catalog");
    o.require(m && m->passed(), catalog + ": " + (m ? m->witness : "missing"));
    if (m) {
      o.require(m->details.at("catalog") == catalog, "compared against " + m->details.at("catalog").dump());
      const std::string scalar = m->details.at("scalar");
      o.require(scalar != "none" && scalar != "0", catalog + ": no scalar");
    }
  }
  return o;
}

Outcome decompositions() {
  Outcome o;
  const CheckRecord h = check_decomposition(hamiltonian_spec(4));
  o.require(h.passed(), h.name + ": " + h.witness);
  o.require(h.dims.at("primed") == (1 << 4) - 1, "H'(0,4) dim " + h.dims.at("primed").dump());
  o.require(h.dims.at("derived") == (1 << 4) - 2, "H(0,4) dim " + h.dims.at("derived").dump());
  for (const auto& spec : {s_prime_spec(2), odd_hamiltonian_spec(3), odd_contact_spec(3)}) {
    const CheckRecord r = check_decomposition(spec);
    o.require(r.passed(), r.name + ": " + r.witness);
  }
  return o;
}

Outcome derivations() {
  Outcome o;
  for (int n : {3, 4}) {
    const auto ds = derivation_space(on_structure(BilinearForm::identity(Q, n + 1)));
    const int so = n * (n + 1) / 2;
    o.require(ds.dim() == so, "dim Der(O^" + std::to_string(n) + ") = " + std::to_string(ds.dim()));
    o.require(ds.inner_dim() == ds.dim(), "Inder is smaller than Der for n = " + std::to_string(n));
    const auto w = ideal_witness(ds);
    o.require(!w, w.value_or(""));
  }
  return o;
}

Outcome closure_correlation() {
  Outcome o;
  CarrierOptions opts;
  opts.window = 3;
  for (const auto& d : curated_derivation_sets(Q)) {
    const int n = static_cast<int>(d.fields.size()) + 1;
    const bool fj = check_fj(determinant_algebra(DeterminantKind::W, d, n, opts)).pass;
    const bool closed = dzhumadildaev_closed(d);
    o.require(fj == closed, "{" + d.name + "}: identity " + (fj ? "holds" : "fails") + ", span " +
                                (closed ? "closed" : "not closed"));
  }
  return o;
}

Outcome charp_lab() {
  Outcome o;
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 7}, {5, 11}})
    o.require(charp_fj_check(CharPSeed::make(p, n)).pass, "identity fails for (" + std::to_string(p) + "," + std::to_string(n) + ")");
  const auto prof = charp_generation(CharPSeed::make(3, 7), 12);
  o.require(prof.components.count(11) == 1, "no component in degree 11 for (3,7)");
  const auto control = charp_generation(CharPSeed::over(Q, 3), 12);
  o.require(control.max_degree() <= 2, "Q control reaches degree " + std::to_string(control.max_degree()) + " > n-1 = 2");
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const std::string tag = std::to_string(getpid());
  const fs::path a = fs::temp_directory_path() / ("nlie_acc_a_" + tag + ".json");
  const fs::path b = fs::temp_directory_path() / ("nlie_acc_b_" + tag + ".json");
  for (const auto& p : {a, b}) {
    const std::string cmd = std::string(NLIE_CLI) + " verify O --n 3 --json " + p.string() + " > /dev/null";
    o.require(std::system(cmd.c_str()) == 0, "CLI run failed");
  }
  const std::string ja = slurp(a), jb = slurp(b);
  o.require(!ja.empty(), "empty report");
  o.require(ja == jb, "reports differ");
  fs::remove(a);
  fs::remove(b);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "FJ for O^3 (4^5 tuples) and O^4 (5^7 tuples)", 5, fj_vector_product},
      {2, "FJ for S^3, W^3, SW^3 on the degree-3 window", 30, fj_polynomial_catalog},
      {3, "generate_lie(O^3, cap 4) dims (4,6,4,1), zero in degrees 3-4", 5, generation_dims},
      {4, "structure checks for O^3 and O^4", 10, structure_checks},
      {5, "ad powers commute with mu for O^3, master equation", 10, ad_powers},
      {6, "Burnside envelope of Lie(O^3) has dimension 16", 5, burnside},
      {7, "pair (i) matches O^3, pair (iv) matches SW^3 up to scalar", 30, pair_brackets},
      {8, "decompositions of H'(0,4), S'(1,2), SHO'(3,3), SKO'(3,4;1)", 60, decompositions},
      {9, "Der = Inder for O^3 (6) and O^4 (10), ideal property", 10, derivations},
      {10, "closure predicate agrees with FJ on curated derivation sets", 30, closure_correlation},
      {11, "char-p lab: identity, degree-11 component, Q control", 5, charp_lab},
      {12, "verify O --n 3 reports are byte-identical", 30, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit) {
      o.ok = false;
      o.note = "over the time limit";
    }
    failed += !o.ok;
    std::printf("%s  %2d  %-66s %7.2fs / %3.0fs%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs, c.limit,
                o.note.empty() ? "" : "  ", o.note.c_str());
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
