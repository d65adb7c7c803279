#include <random>

#include "doctest.h"
#include "nlie/multilinear.hpp"
#include "oracles.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

SuperVector vec(int i) { return SuperVector(Q, i); }

// Vector-product bracket of R^4 with the identity form: [e_a,e_b,e_c] = eps_{abcd} e_d.
SuperVector eps_bracket(const std::vector<int>& t) {
  SuperVector out(Q);
  for (int d = 0; d < 4; ++d) {
    std::vector<int> all = t;
    all.push_back(d);
    std::vector<int> s = all;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
    out.add_term(d, Scalar(Q, static_cast<long>(oracle::perm_sign(all))));
  }
  return out;
}

// sl2 with basis h, e, f.
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

TEST_CASE("conversion sign") {
  CHECK(conversion_sign({0, 0, 0}) == 1);
  CHECK(conversion_sign({1, 1, 1}) == -1);
  CHECK(conversion_sign({1, 1, 1, 1}) == 1);
  CHECK_THROWS(conversion_sign({1}));
  // Adjacent swaps change the sign by (-1)^{p(a_i)+p(a_{i+1})}.
  for (int n = 2; n <= 7; ++n)
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> p(n);
      for (int i = 0; i < n; ++i) p[i] = (mask >> i) & 1;
      for (int i = 0; i + 1 < n; ++i) {
        auto s = p;
        std::swap(s[i], s[i + 1]);
        const int expect = ((p[i] + p[i + 1]) & 1) ? -1 : 1;
        CHECK(conversion_sign(p) * conversion_sign(s) == expect);
      }
    }
}

TEST_CASE("normalization sign agrees with bubble-sort oracle") {
  auto space = SuperSpace::from_parities(Q, "01101");
  for (int len = 0; len <= 5; ++len)
    for_each_tuple(5, len, [&](const std::vector<int>& t) {
      const int expect = oracle::koszul_bubble(t, [&](int i) { return space->parity(i); });
      CHECK(normalize(*space, t).sign == expect);
    });
}

TEST_CASE("evaluation examples") {
  auto even = SuperSpace::uniform(Q, 2, 0);
  CHECK(SuperMultiMap::identity(even).evaluate({0}) == vec(0));

  auto odd = SuperSpace::uniform(Q, 3, 1);
  SuperMultiMap f(odd, 2, 1);
  f.set({0, 1}, vec(2));
  CHECK(f.evaluate({1, 0}) == -vec(2));
  CHECK(f.evaluate({0, 0}).is_zero());
  CHECK_THROWS(f.evaluate({0}));
  SuperMultiMap g(odd, 2, 0);
  CHECK_THROWS(g.set({0, 1}, vec(2)));  // wrong output parity
}

TEST_CASE("supersymmetry and parity bookkeeping under permutations") {
  auto space = SuperSpace::from_parities(Q, "0110");
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> c(-3, 3);
  SuperMultiMap f(space, 3, 1);
  for (const auto& idx : canonical_indices(*space, 3)) {
    const int want = 1 ^ parity_sum(*space, idx);
    SuperVector v(Q);
    for (int k = 0; k < 4; ++k)
      if (space->parity(k) == want) v.add_term(k, Scalar(Q, c(rng)));
    f.set(idx, v);
  }
  for_each_tuple(4, 3, [&](const std::vector<int>& t) {
    auto v = f.evaluate(t);
    if (!v.is_zero()) CHECK(parity_of(*space, v) == ((1 ^ parity_sum(*space, t)) ? Parity::odd : Parity::even));
    std::vector<int> perm = t;
    std::sort(perm.begin(), perm.end());
    do {
      const int s1 = oracle::koszul_bubble(t, [&](int i) { return space->parity(i); });
      const int s2 = oracle::koszul_bubble(perm, [&](int i) { return space->parity(i); });
      if (s1 == 0) {
        CHECK(f.evaluate(perm).is_zero());
      } else {
        SuperVector lhs = f.evaluate(perm);
        SuperVector rhs = f.evaluate(t);
        if (s1 != s2) rhs = -rhs;
        CHECK(lhs == rhs);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
}

TEST_CASE("text serialization roundtrip") {
  auto space = SuperSpace::from_parities(Q, "011");
  SuperMultiMap f(space, 2, 0);
  f.set({1, 0}, Scalar(Q, 3L) * vec(1) + Scalar::parse(Q, "-1/2") * vec(2));
  f.set({1, 2}, vec(0));
  f.set({0, 0}, vec(0));
  const std::string text = f.serialize();
  CHECK(SuperMultiMap::parse(space, 2, 0, text) == f);
  CHECK(text.find("e1,e2 -> ") != std::string::npos);

  SuperSpace s2 = SuperSpace::parse(Q, "a even 1\nb odd -1\n");
  CHECK(SuperSpace::parse(Q, s2.serialize()) == s2);
  CHECK(s2.at(1).zdegree == -1);
}

TEST_CASE("parity reversal") {
  auto v = SuperSpace::from_parities(Q, "0111");
  auto pv = reverse_parity(v);
  CHECK(pv->even_dim() == 3);
  CHECK(pv->odd_dim() == 1);
  CHECK(*reverse_parity(pv) == *v);
  CHECK(parity_of(*v, vec(0)) == Parity::even);
  CHECK(parity_of(*v, vec(0) + vec(1)) == Parity::nonhomogeneous);
  CHECK(parity_of(*v, SuperVector(Q)) == Parity::even);
}

TEST_CASE("vector product transport") {
  auto g = SuperSpace::uniform(Q, 4, 0);
  SuperMultiMap mu = anticomm_to_comm(g, 3, 0, eps_bracket);
  CHECK(mu.space()->odd_dim() == 4);
  CHECK(mu.parity() == 0);
  CHECK(mu.evaluate({0, 1, 2}) == -vec(3));
  auto back = comm_to_anticomm(mu);
  for_each_tuple(4, 3, [&](const std::vector<int>& t) { CHECK(back(t) == eps_bracket(t)); });
}

TEST_CASE("sl2 transport roundtrip") {
  auto g = SuperSpace::uniform(Q, 3, 0);
  SuperMultiMap mu = anticomm_to_comm(g, 2, 0, sl2);
  CHECK(mu.parity() == 1);
  // commutative on Pi g: odd inputs, so mu(a,b) = -mu(b,a) there only via Koszul sign
  CHECK(mu.evaluate({0, 1}) == -mu.evaluate({1, 0}));
  auto back = comm_to_anticomm(mu);
  for_each_tuple(3, 2, [&](const std::vector<int>& t) { CHECK(back(t) == sl2(t)); });
}

TEST_CASE("non-anticommutative input is rejected with a witness") {
  auto g = SuperSpace::uniform(Q, 2, 0);
  BasisBracket bad = [](const std::vector<int>& t) {
    return t[0] == 0 && t[1] == 1 ? vec(0) : SuperVector(Q);
  };
  try {
    anticomm_to_comm(g, 2, 0, bad);
    FAIL("expected a violation");
  } catch (const AnticommutativityViolation& e) {
    CHECK(e.witness == std::vector<int>{0, 1});
  }
}
