#include "doctest.h"
#include "nlie/derivations.hpp"
#include "oracles.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Endomorphism as_endomorphism(const ParityMatrix& p) {
  return Endomorphism{p.parity, [m = p.m](const BasisKey& k) {
                        Element out(m.field());
                        for (int r = 0; r < m.rows(); ++r) out.add_term(BasisKey{r, {}}, m.at(r, k.tag));
                        return out;
                      }};
}

}  // namespace

TEST_CASE("derivations of the vector product algebras are inner") {
  for (int n : {3, 4}) {
    const auto form = BilinearForm::identity(Q, n + 1);
    const auto sc = on_structure(form);
    const DerivationSpace ds = derivation_space(sc);
    CHECK(ds.dim() == oracle::binomial(n + 1, 2));
    CHECK(ds.inner_dim() == ds.dim());
    CHECK(ds.all_inner());
    CHECK(ideal_check(ds));
    const NAryAlgebra alg = sc.to_nary("O");
    for (const auto& d : ds.basis) {
      CHECK(is_form_skew(d.m, form));
      CHECK(is_derivation(alg, as_endomorphism(d)).pass);
    }
  }
}

TEST_CASE("derivations follow a rescaled form") {
  auto form = BilinearForm::parse(Q, "1 0 0 0\n0 2 0 0\n0 0 1 1\n0 0 1 3\n");
  const DerivationSpace ds = derivation_space(on_structure(form));
  CHECK(ds.dim() == 6);
  for (const auto& d : ds.basis) CHECK(is_form_skew(d.m, form));
  CHECK_FALSE(is_form_skew(SparseMatrix::identity(Q, 4), form));
}

TEST_CASE("abelian bracket") {
  StructureConstants sc;
  sc.space = SuperSpace::uniform(Q, 3, 0);
  sc.arity = 3;
  const DerivationSpace ds = derivation_space(sc);
  CHECK(ds.dim() == 9);
  CHECK(ds.inner_dim() == 0);
  CHECK_FALSE(ds.all_inner());
  CHECK(ideal_check(ds));
}

TEST_CASE("super derivations agree with the Leibniz predicate") {
  // h even, x y odd: [x,y] = h, [x,x] = h.
  auto sc = StructureConstants::parse("2 q 3 011\n2 3 -> 1*e1\n2 2 -> 1*e1\n");
  const auto basis = derivation_basis(sc);
  const NAryAlgebra alg = sc.to_nary("s");
  int odd = 0;
  for (const auto& d : basis) {
    odd += d.parity;
    CHECK(is_derivation(alg, as_endomorphism(d)).pass);
  }
  CHECK(odd > 0);
  for (const auto& d : inder_span(sc)) CHECK(is_derivation(alg, as_endomorphism(d)).pass);
  // The identity is not a derivation here.
  CHECK_FALSE(is_derivation(alg, as_endomorphism(ParityMatrix{0, SparseMatrix::identity(Q, 3)})).pass);
}

TEST_CASE("report records") {
  const auto recs = derivation_report(on_structure(BilinearForm::identity(Q, 4)));
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) CHECK(r.passed());
  CHECK(recs[0].dims["der"] == 6);
  CHECK(recs[0].details["basis"].size() == 6);
}
