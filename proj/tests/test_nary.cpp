#include "doctest.h"
#include "nlie/catalog.hpp"
#include "nlie/nary.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Element e(int i) { return Element(Q, BasisKey{i, {}}); }

const char* kO3Table =
    "# vector product algebra\n"
    "3 q 4 0000\n"
    "1 2 3 -> 1*e4\n"
    "1 2 4 -> -e3\n"
    "1 3 4 -> 1*e2\n"
    "2 3 4 -> -1*e1\n";

}  // namespace

TEST_CASE("vector product table passes the identity exhaustively") {
  auto sc = StructureConstants::parse(kO3Table);
  CHECK(sc.parity == 0);
  CHECK(sc.table == on_structure(BilinearForm::identity(Q, 4)).table);
  auto a = sc.to_nary("O3");
  CHECK(a.sample_mode() == SampleMode::ordered);
  CHECK(check_anticommutativity(a).pass);
  auto r = check_fj(a);
  CHECK(r.pass);
  CHECK(r.samples == 1024);
  CHECK(StructureConstants::parse(sc.serialize()).table == sc.table);
}

TEST_CASE("a perturbed table fails with a witness") {
  std::string text = kO3Table;
  // Rescaling a single constant is still a vector product for another form,
  // so add a stray term instead.
  text.replace(text.find("1 2 3 -> 1*e4"), 13, "1 2 3 -> 1*e4 + 1*e1");
  auto a = StructureConstants::parse(text).to_nary("bad");
  auto r = check_fj(a);
  CHECK_FALSE(r.pass);
  CHECK(r.witness.find("a=(e1,") == 0);
  CHECK_FALSE(r.residue.is_zero());
}

TEST_CASE("table format errors") {
  CHECK_THROWS(StructureConstants::parse("3 q 4 000\n"));
  CHECK_THROWS(StructureConstants::parse("3 q 4 0000\n2 1 3 -> e4\n"));
  CHECK_THROWS(StructureConstants::parse("3 q 4 0000\n1 1 3 -> e4\n"));
  CHECK_THROWS(StructureConstants::parse("2 q 2 01\n1 2 -> e1\n1 1 -> e2\n"));
  CHECK_THROWS(StructureConstants::parse("1 2 3 -> e4\n"));
  // Odd arguments may repeat.
  auto sc = StructureConstants::parse("2 q 2 01\n2 2 -> e1\n");
  CHECK(sc.parity == 0);
  CHECK(sc.bracket()({1, 1}) == SuperVector(Q, 0));
}

TEST_CASE("inner derivations of the vector product algebra") {
  auto a = on_algebra(BilinearForm::identity(Q, 4));
  auto d = inner_derivation(a, {e(0), e(1)});
  CHECK(d.apply(e(2)) == e(3));
  CHECK(d.apply(e(3)) == -e(2));
  CHECK(d.apply(e(0)).is_zero());
  CHECK(d.apply(e(1)).is_zero());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(is_derivation(a, inner_derivation(a, {e(i), e(j)})).pass);

  Endomorphism zero{0, [](const BasisKey&) { return Element(Q); }};
  CHECK(is_derivation(a, zero).pass);
  Endomorphism scale{0, [](const BasisKey& k) { return Scalar(Q, 2L) * Element(Q, k); }};
  auto r = is_derivation(a, scale);
  CHECK_FALSE(r.pass);
  // Leibniz gives 2[...] on the left and 3*2[...] on the right.
  CHECK(r.residue == Scalar(Q, -4L) * e(3));
}

TEST_CASE("derivations agree across the commutative transport") {
  auto g = on_space(Q, 3);
  auto a = on_algebra(BilinearForm::identity(Q, 4));
  auto mu = anticomm_to_comm(g, 3, 0, on_bracket(BilinearForm::identity(Q, 4)));
  auto abar = multimap_algebra("mu", mu);
  std::vector<Endomorphism> ds;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) ds.push_back(inner_derivation(a, {e(i), e(j)}));
  ds.push_back({0, [](const BasisKey& k) { return k.tag == 0 ? e(1) : Element(Q); }});
  ds.push_back({0, [](const BasisKey& k) { return Element(Q, k); }});
  for (const auto& d : ds) CHECK(is_derivation(a, d).pass == is_derivation(abar, d).pass);
}

TEST_CASE("anticommutativity violations are caught") {
  auto space = SuperSpace::uniform(Q, 3, 0);
  auto a = finite_algebra("sym", space, 2, 0, [](const std::vector<int>& t) {
    return t[0] + t[1] == 1 ? SuperVector(Q, 2) : SuperVector(Q);
  });
  auto r = check_anticommutativity(a);
  CHECK_FALSE(r.pass);
  CHECK(r.witness.find("e1,e2") != std::string::npos);
}
