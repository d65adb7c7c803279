#include "doctest.h"
#include "nlie/catalog.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

BasisKey mono(std::vector<int> exps, int tag = 0) { return BasisKey{tag, std::move(exps)}; }
Element el(std::vector<int> exps, int tag = 0, long c = 1) {
  return Element(mono(std::move(exps), tag), Scalar(Q, c));
}

}  // namespace

TEST_CASE("vector product values") {
  auto b = on_bracket(BilinearForm::identity(Q, 4));
  CHECK(b({0, 1, 2}) == SuperVector(Q, 3));
  CHECK(b({0, 1, 3}) == -SuperVector(Q, 2));
  CHECK(b({0, 0, 3}).is_zero());
  CHECK_THROWS(BilinearForm::parse(Q, "1 0\n0 0\n").validate());
  CHECK_THROWS(BilinearForm::parse(Q, "1 2\n0 1\n"));
}

TEST_CASE("rescaling the form rescales the bracket") {
  auto f = BilinearForm::parse(Q, "2 1 0 0\n1 1 0 0\n0 0 3 0\n0 0 0 -1\n");
  auto g = f;
  for (auto& row : g.b)
    for (auto& x : row) x *= Scalar(Q, 5L);
  auto bf = on_bracket(f), bg = on_bracket(g);
  auto fa = on_algebra(f);
  CHECK(check_fj(fa).pass);
  for_each_tuple(4, 3, [&](const std::vector<int>& t) { CHECK(Scalar(Q, 5L) * bg(t) == bf(t)); });
}

TEST_CASE("S^3 brackets on the quotient by constants") {
  auto s = sn_algebra(Q, 3);
  CHECK(s.bracket_basis({mono({1, 0, 0}), mono({0, 1, 0}), mono({0, 0, 1})}).is_zero());
  CHECK(s.bracket_basis({mono({2, 0, 0}), mono({0, 1, 0}), mono({0, 0, 1})}) == el({1, 0, 0}, 0, 2));
  CHECK(s.raw_bracket({mono({0, 0, 0}), mono({0, 1, 0}), mono({0, 0, 1})}).is_zero());
  // Representatives differing by a constant give the same bracket.
  Element x1 = el({1, 0, 0}), x1p = el({1, 0, 0}) + el({0, 0, 0}, 0, 7);
  Element f = el({1, 1, 0}), g = el({0, 2, 1});
  CHECK(s.bracket({x1, f, g}) == s.bracket({x1p, f, g}));
  CHECK(s.sample_basis().size() == 19);
}

TEST_CASE("W^3 bordered determinant") {
  auto w = wn_algebra(Q, 3);
  CHECK(w.bracket_basis({mono({0, 0}), mono({1, 0}), mono({0, 1})}) == el({0, 0}));
  CHECK(w.bracket_basis({mono({0, 0}), mono({0, 0}), mono({2, 1})}).is_zero());
  // det [[x1, x2, x1x2], [1, 0, x2], [0, 1, x1]] = -x1 x2 - x1 x2 + x1 x2
  CHECK(w.bracket_basis({mono({1, 0}), mono({0, 1}), mono({1, 1})}) == el({1, 1}, 0, -1));
}

TEST_CASE("SW^3 tagged bracket") {
  auto sw = swn_algebra(Q, 3);
  CHECK(sw.raw_bracket({mono({1}, 1), mono({0}, 1), mono({0}, 2)}) == el({0}, 1));
  CHECK(sw.raw_bracket({mono({1}, 1), mono({0}, 1), mono({2}, 1)}).is_zero());
  CHECK(sw.raw_bracket({mono({2}, 2), mono({2}, 2), mono({0}, 1)}).is_zero());
  CHECK(check_anticommutativity(sw).pass);
  CarrierOptions alt;
  alt.appendix_sign = true;
  auto sw2 = swn_algebra(Q, 3, alt);
  for_each_sample(sw, 3, SampleMode::sorted, [&](const KeyTuple& t) {
    CHECK(sw2.raw_bracket(t) == -sw.raw_bracket(t));
    return true;
  });
}

TEST_CASE("catalog algebras satisfy the identity on a small window") {
  CarrierOptions small;
  small.window = 2;
  for (auto a : {sn_algebra(Q, 3, small), wn_algebra(Q, 3, small), swn_algebra(Q, 3, small), wn_algebra(Q, 4, small)}) {
    INFO(a.name());
    CHECK(check_anticommutativity(a).pass);
    CHECK(check_fj(a).pass);
  }
}

TEST_CASE("closure predicate") {
  CHECK(dzhumadildaev_closed(DerivationSet::partials(Q, 3, 3)));
  auto sets = curated_derivation_sets(Q);
  REQUIRE(sets.size() == 5);
  CHECK(dzhumadildaev_closed(sets[0]));
  CHECK(dzhumadildaev_closed(sets[1]));
  CHECK(dzhumadildaev_closed(sets[2]));
  CHECK_FALSE(dzhumadildaev_closed(sets[3]));
  CHECK_FALSE(dzhumadildaev_closed(sets[4]));
}

TEST_CASE("generalized brackets for non-commuting derivations") {
  CarrierOptions opts;
  opts.window = 2;
  opts.quotient_constants = false;
  auto one = poly_constant(Q, 3, Scalar::one(Q));
  // d1 and x1 d2 + d3 on F[x1,x2,x3]: [d1, x1 d2 + d3] = d2 is not in the span.
  DerivationSet open{"d1, x1*d2 + d3", Q, 3, {VectorField{{one, Poly(Q), Poly(Q)}}, VectorField{{Poly(Q), poly_var(Q, 3, 0), one}}}};
  CHECK_FALSE(dzhumadildaev_closed(open));
  for (auto kind : {DeterminantKind::S, DeterminantKind::W}) {
    auto r = check_fj(determinant_algebra(kind, open, kind == DeterminantKind::S ? 2 : 3, opts));
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.witness.empty());
  }
  // d1 and x2 d2 + d3 commute.
  DerivationSet closed{"d1, x2*d2 + d3", Q, 3, {VectorField{{one, Poly(Q), Poly(Q)}}, VectorField{{Poly(Q), poly_var(Q, 3, 1), one}}}};
  CHECK(dzhumadildaev_closed(closed));
  CHECK(check_fj(determinant_algebra(DeterminantKind::S, closed, 2, opts)).pass);
  CHECK(check_fj(determinant_algebra(DeterminantKind::W, closed, 3, opts)).pass);

  // Reading x as x2 in {x d1, x d2 + d1} gives a closed set: [x2 d1, x2 d2 + d1] = -x2 d1.
  DerivationSet alt{"x2*d1, x2*d2 + d1", Q, 2,
                    {VectorField{{poly_var(Q, 2, 1), Poly(Q)}},
                     VectorField{{poly_constant(Q, 2, Scalar::one(Q)), poly_var(Q, 2, 1)}}}};
  CHECK(dzhumadildaev_closed(alt));
  CHECK(check_fj(determinant_algebra(DeterminantKind::W, alt, 3, opts)).pass);

  // d and x^2 d are proportional over F[x], so the bordered determinant vanishes.
  auto sets = curated_derivation_sets(Q);
  auto dep = determinant_algebra(DeterminantKind::W, sets[3], 3, opts);
  for_each_sample(dep, 3, SampleMode::sorted, [&](const KeyTuple& t) {
    CHECK(dep.raw_bracket(t).is_zero());
    return true;
  });
}
