#include <random>

#include "doctest.h"
#include "nlie/universal_w.hpp"
#include "oracles.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

SuperVector vec(int i) { return SuperVector(Q, i); }

WElement random_element(const SpacePtr& space, int degree, int parity, std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-2, 2);
  WElement f(space, degree + 1, parity);
  for (const auto& idx : canonical_indices(*space, degree + 1)) {
    const int want = parity ^ parity_sum(*space, idx);
    SuperVector v(Q);
    for (int k = 0; k < space->dim(); ++k)
      if (space->parity(k) == want) v.add_term(k, Scalar(Q, c(rng)));
    f.set(idx, v);
  }
  return f;
}

}  // namespace

TEST_CASE("split sign matches a brute-force reordering") {
  auto space = SuperSpace::from_parities(Q, "101101");
  std::vector<int> args{0, 1, 2, 3, 4, 5};
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<int> first, rest;
    for (int i = 0; i < 6; ++i) (mask >> i & 1 ? first : rest).push_back(i);
    // Reorder as (first..., rest...) and bubble back to the identity order.
    std::vector<int> reordered = first;
    reordered.insert(reordered.end(), rest.begin(), rest.end());
    const int expect = oracle::koszul_bubble(reordered, [&](int i) { return space->parity(i); });
    CHECK(split_sign(*space, args, first) == expect);
  }
}

TEST_CASE("degree zero box product is composition") {
  auto space = SuperSpace::from_parities(Q, "0011");
  std::mt19937 rng(3);
  for (int pf = 0; pf < 2; ++pf)
    for (int pg = 0; pg < 2; ++pg) {
      auto f = random_element(space, 0, pf, rng);
      auto g = random_element(space, 0, pg, rng);
      auto fg = box(f, g);
      for (int i = 0; i < 4; ++i) CHECK(fg.evaluate({i}) == f.evaluate_first(g.evaluate({i}), {}));
    }
}

TEST_CASE("bracket with a constant plugs into the first slot") {
  auto space = SuperSpace::from_parities(Q, "011");
  std::mt19937 rng(11);
  auto f = random_element(space, 2, 1, rng);
  auto a = SuperMultiMap::constant(space, vec(1));
  auto fa = w_bracket(f, a);
  CHECK(fa.degree() == 1);
  for_each_tuple(3, 2, [&](const std::vector<int>& t) { CHECK(fa.evaluate(t) == f.evaluate({1, t[0], t[1]})); });
  CHECK(box(a, f).is_zero());
  CHECK(w_bracket(a, SuperMultiMap::constant(space, vec(2))).is_zero());
}

TEST_CASE("one-dimensional even space: f_p box f_q = C(p+q+1, q+1) f_{p+q}") {
  auto space = SuperSpace::uniform(Q, 1, 0, "x");
  auto fk = [&](int k) {
    WElement f(space, k + 1, 0);
    f.set(std::vector<int>(k + 1, 0), vec(0));
    return f;
  };
  for (int p = -1; p <= 4; ++p)
    for (int q = -1; q <= 4; ++q) {
      if (p + q < -1) continue;
      auto b = box(fk(p), fk(q));
      const long expect = p < 0 ? 0 : oracle::binomial(p + q + 1, q + 1);
      CHECK(b.evaluate(std::vector<int>(p + q + 1, 0)) == Scalar(Q, expect) * vec(0));
    }
}

TEST_CASE("dimension of W_k for a purely odd space") {
  for (int d = 1; d <= 5; ++d) {
    auto space = SuperSpace::uniform(Q, d, 1);
    for (int k = -1; k < d; ++k)
      CHECK(static_cast<long>(canonical_indices(*space, k + 1).size()) * d == d * oracle::binomial(d, k + 1));
  }
}

TEST_CASE("graded super anticommutativity and super Jacobi") {
  std::mt19937 rng(2024);
  for (const char* pars : {"00", "01", "111"}) {
    auto space = SuperSpace::from_parities(Q, pars);
    for (int t = 0; t < 12; ++t) {
      const int df = t % 3 - 1, dg = (t / 3) % 3 - 1, dh = (t + 1) % 3 - 1;
      const int pf = t & 1, pg = (t >> 1) & 1, ph = (t >> 2) & 1;
      auto f = random_element(space, df, pf, rng);
      auto g = random_element(space, dg, pg, rng);
      auto h = random_element(space, dh, ph, rng);
      auto fg = w_bracket(f, g);
      CHECK(fg.degree() == std::max(df + dg, -2));
      auto gf = w_bracket(g, f);
      if (pf && pg)
        CHECK((fg - gf).is_zero());
      else
        CHECK((fg + gf).is_zero());
      auto lhs = w_bracket(f, w_bracket(g, h));
      auto rhs = w_bracket(w_bracket(f, g), h);
      auto other = w_bracket(g, w_bracket(f, h));
      if (pf && pg)
        rhs -= other;
      else
        rhs += other;
      CHECK(lhs == rhs);
    }
    auto f = random_element(space, 1, 0, rng);
    CHECK(w_bracket(f, f).is_zero());
  }
}

TEST_CASE("transitivity") {
  auto space = SuperSpace::from_parities(Q, "01");
  GradedSubalgebra full(space, 1);
  for (int i = 0; i < 2; ++i) full.insert(SuperMultiMap::constant(space, vec(i)));
  for (int k = 0; k <= 1; ++k)
    for (const auto& idx : canonical_indices(*space, k + 1))
      for (int o = 0; o < 2; ++o) {
        WElement f(space, k + 1, space->parity(o) ^ parity_sum(*space, idx));
        f.set(idx, vec(o));
        full.insert(f);
      }
  CHECK(full.dim(0) == 4);
  CHECK(is_transitive(full, 1).transitive);

  auto even = SuperSpace::uniform(Q, 2, 0);
  GradedSubalgebra bad(even, 0);
  bad.insert(SuperMultiMap::constant(even, vec(0)));
  WElement e22(even, 1, 0);
  e22.set({1}, vec(1));
  bad.insert(e22);
  auto r = is_transitive(bad, 0);
  CHECK_FALSE(r.transitive);
  REQUIRE(r.witness);
  CHECK(r.witness->evaluate({1}) == vec(1));
}
