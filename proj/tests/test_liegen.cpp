#include "doctest.h"
#include "nlie/catalog.hpp"
#include "nlie/liegen.hpp"
#include "oracles.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

WElement on_mu(int n) {
  const auto form = BilinearForm::identity(Q, n + 1);
  return anticomm_to_comm(on_space(Q, n), n, 0, on_bracket(form));
}

// Dims of the Grassmann algebra on m generators with deg = s - 2, counted by
// enumerating subsets.
std::map<int, int> grassmann_dims(int m) {
  std::map<int, int> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    const int s = __builtin_popcount(mask);
    if (s >= 1) ++out[s - 2];
  }
  return out;
}

WElement corrupted_o3_mu() {
  auto sc = on_structure(BilinearForm::identity(Q, 4));
  sc.table[{0, 1, 2}].add_term(0, Scalar::one(Q));
  return anticomm_to_comm(sc.space, 3, 0, sc.bracket());
}

Endomorphism as_endomorphism(const WElement& d) {
  return Endomorphism{d.parity(), [d](const BasisKey& k) {
                        Element out(d.space()->field());
                        for (const auto& [i, c] : d.evaluate({k.tag})) out.add_term(BasisKey{i, {}}, c);
                        return out;
                      }};
}

SuperVector sl2(const std::vector<int>& t) {
  const int a = t[0], b = t[1];
  SuperVector out(Q);
  auto put = [&](int x, int y, int k, long c) {
    if (a == x && b == y) out.add_term(k, Scalar(Q, c));
    if (a == y && b == x) out.add_term(k, Scalar(Q, -c));
  };
  put(0, 1, 1, 2);
  put(0, 2, 2, -2);
  put(1, 2, 0, 1);
  return out;
}

}  // namespace

TEST_CASE("generation of the vector product algebras") {
  for (int n : {3, 4}) {
    const WElement mu = on_mu(n);
    const Generated g = generate_lie(mu.space(), mu, n + 1);
    CHECK(g.algebra.dims() == grassmann_dims(n + 1));
    CHECK(g.trace.fixpoint());
    CHECK_FALSE(closure_witness(g.algebra).has_value());
    for (std::size_t r = 1; r < g.trace.dims_per_round.size(); ++r)
      for (const auto& [d, k] : g.trace.dims_per_round[r - 1]) CHECK(g.trace.dims_per_round[r].at(d) >= k);
  }
}

TEST_CASE("generation rejects a cap below mu") {
  const WElement mu = on_mu(3);
  CHECK_THROWS_AS(generate_lie(mu.space(), mu, 1), std::invalid_argument);
}

TEST_CASE("zero mu gives only the degree -1 component") {
  auto v = reverse_parity(on_space(Q, 3));
  const WElement zero(v, 3, 0);
  const Generated g = generate_lie(v, zero, 4);
  CHECK(g.algebra.dims() == std::map<int, int>{{-1, 4}});
  const auto rep = check_admissible(g);
  CHECK(rep.mu_centralizes_l0);
  CHECK_FALSE(rep.top_is_line);
  CHECK(rep.irreducible.status == Status::fail);
  CHECK(rep.irreducible.invariant_subspace.size() == 1);
}

TEST_CASE("sl2 generates a degree 0 component and stops after the line of mu") {
  auto g0 = SuperSpace::uniform(Q, 3, 0);
  const WElement mu = anticomm_to_comm(g0, 2, 0, sl2);
  const Generated g = generate_lie(mu.space(), mu, 3);
  CHECK(g.algebra.dims() == std::map<int, int>{{-1, 3}, {0, 3}, {1, 1}});
  CHECK(g.algebra.dim(2) == 0);
  CHECK(check_admissible(g).admissible());
}

TEST_CASE("vector product pairs are admissible and irreducible") {
  const WElement mu = on_mu(3);
  const Generated g = generate_lie(mu.space(), mu, 4);
  const auto rep = check_admissible(g);
  CHECK(rep.transitive);
  CHECK(rep.mu_centralizes_l0);
  CHECK(rep.top_is_line);
  CHECK(rep.irreducible.status == Status::pass);
  CHECK(rep.irreducible.envelope_dim == 16);
  for (const auto& r : rep.records()) CHECK(r.passed());
}

TEST_CASE("two copies of the module are reducible") {
  const WElement mu = on_mu(3);
  const Generated g = generate_lie(mu.space(), mu, 4);
  std::vector<SparseMatrix> ops;
  for (const auto& f : g.algebra.basis(0)) {
    const SparseMatrix m = l0_action(f);
    SparseMatrix big(Q, 8, 8);
    for (int r = 0; r < 4; ++r)
      for (const auto& [c, x] : m.row(r)) {
        big.set(r, c, x);
        big.set(r + 4, c + 4, x);
      }
    ops.push_back(big);
  }
  const auto res = burnside_test(Q, 8, ops);
  CHECK(res.status == Status::fail);
  REQUIRE(res.invariant_subspace.size() == 4);
  for (const auto& v : res.invariant_subspace)
    for (const auto& op : ops) {
      RowSpan s(Q, 8);
      for (const auto& w : res.invariant_subspace) s.insert(w);
      CHECK(s.contains(op.apply(v)));
    }
}

TEST_CASE("shape checks for the vector product pairs") {
  for (int n : {3, 4}) {
    const WElement mu = on_mu(n);
    const Generated g = generate_lie(mu.space(), mu, n + 1);
    const auto recs = check_theorem_0_2(g);
    CHECK(recs.size() == 5);
    for (const auto& r : recs) {
      INFO(r.name << " " << r.witness);
      CHECK(r.passed());
    }
  }
  const WElement mu = on_mu(3);
  CHECK_THROWS(check_theorem_0_2(generate_lie(mu.space(), mu, 3)));
}

TEST_CASE("ad powers of mu commute with mu") {
  const WElement mu = on_mu(3);
  const Generated g = generate_lie(mu.space(), mu, 4);
  const auto rec = check_lemma_3_1(g);
  INFO(rec.witness);
  CHECK(rec.passed());
  CHECK(rec.details["master_equation"].get<bool>());
  CHECK(rec.details["mu_box_mu_zero"].get<bool>());
  CHECK(rec.details["per_j"]["0"]["tuples"] == 16);
  CHECK(rec.details["per_j"]["2"]["tuples"] == 1);
}

TEST_CASE("a corrupted bracket breaks the pair") {
  const WElement mu = corrupted_o3_mu();
  const Generated g = generate_lie(mu.space(), mu, 4);
  const auto rec = check_lemma_3_1(g);
  CHECK_FALSE(rec.passed());
  CHECK_FALSE(rec.witness.empty());
  CHECK_FALSE(check_admissible(g).mu_centralizes_l0);
}

TEST_CASE("degree 0 elements commute with mu exactly when they are derivations") {
  for (const WElement& mu : {on_mu(3), corrupted_o3_mu()}) {
    const Generated g = generate_lie(mu.space(), mu, 2);
    const NAryAlgebra alg = multimap_algebra("mu", mu);
    std::vector<WElement> probes = g.algebra.basis(0);
    probes.push_back(probes[0] + probes[1]);
    int commuting = 0;
    for (const auto& d : probes) {
      const bool commutes = w_bracket(mu, d).is_zero();
      commuting += commutes;
      CHECK(commutes == is_derivation(alg, as_endomorphism(d)).pass);
    }
    CHECK(commuting > 0);
  }
}

TEST_CASE("the induced bracket returns the input") {
  const auto form = BilinearForm::identity(Q, 4);
  const WElement mu = on_mu(3);
  const Generated g = generate_lie(mu.space(), mu, 4);
  auto back = comm_to_anticomm(g.mu);
  const auto br = on_bracket(form);
  for_each_tuple(4, 3, [&](const std::vector<int>& t) { CHECK(back(t) == br(t)); });
}
