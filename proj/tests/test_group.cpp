#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "torvan/group.hpp"

using namespace torvan;
using namespace torvan::testing;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

FieldMatrix from_ints(const Field& f, std::initializer_list<std::initializer_list<int>> rows) {
  int n = static_cast<int>(rows.size());
  FieldMatrix m(f, n, n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m.at(i, j++) = FieldElem::from_int(f, v);
    ++i;
  }
  return m;
}

Presentation quotient_by(const CoordPtr& c, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ideal;
  for (const char* s : gens) ideal.push_back(parse_polynomial(c->ring, s));
  return cyclic_presentation(c, ideal);
}

std::string matrix_key(const FieldMatrix& m) {
  std::string k;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) k += m.at(i, j).str() + ",";
  return k;
}

}  // namespace

TEST_SUITE_BEGIN("group");

TEST_CASE("matrix inverse and determinant are exact") {
  Field f = Field::prime(kDefaultPrime);
  FieldMatrix m = from_ints(f, {{1, 2, 0}, {0, 1, 5}, {3, 0, 1}});
  GroupElement g = GroupElement::from_matrix(m);
  CHECK(g.mat.multiply(g.inv) == FieldMatrix::identity(f, 3));
  CHECK_FALSE(m.det().is_zero());
  FieldMatrix sing = from_ints(f, {{1, 2}, {2, 4}});
  CHECK(sing.det().is_zero());
  CHECK_THROWS_AS(GroupElement::from_matrix(sing), ValidationError);
}

TEST_CASE("sampling is a pure function of (seed, trial)") {
  SamplerPolicy pol;
  pol.seed = 42;
  Field f = Field::prime(kDefaultPrime);
  GroupElement a = sample_group_element(pol, f, 4, 0);
  GroupElement b = sample_group_element(pol, f, 4, 0);
  CHECK(a.mat == b.mat);
  GroupElement c = sample_group_element(pol, f, 4, 1);
  CHECK_FALSE(a.mat == c.mat);
  CHECK_FALSE(a.mat.det().is_zero());
  SUBCASE("different seeds decorrelate") {
    SamplerPolicy pol2;
    pol2.seed = 43;
    CHECK_FALSE(sample_group_element(pol2, f, 4, 0).mat == a.mat);
  }
}

TEST_CASE("repeated sampling over F_2 only ever produces GL_2(F_2)") {
  // Brute-force enumeration oracle: exactly six invertible 2x2 matrices.
  Field f2 = Field::prime(2);
  std::set<std::string> invertible;
  for (int bits = 0; bits < 16; ++bits) {
    FieldMatrix m(f2, 2, 2);
    for (int k = 0; k < 4; ++k)
      m.at(k / 2, k % 2) = FieldElem::from_int(f2, (bits >> k) & 1);
    // det = ad - bc, by hand.
    FieldElem det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    if (!det.is_zero()) invertible.insert(matrix_key(m));
  }
  REQUIRE(invertible.size() == 6);
  SamplerPolicy pol;
  pol.seed = 7;
  pol.max_attempts = 64;
  std::set<std::string> seen;
  for (std::uint64_t t = 0; t < 200; ++t)
    seen.insert(matrix_key(sample_group_element(pol, f2, 2, t).mat));
  CHECK(seen.size() == 6);
  for (const auto& k : seen) CHECK(invertible.count(k) == 1);
}

TEST_CASE("translation examples") {
  auto r = Ring::make({"x", "y"}, Field::rationals());
  auto c = free_coords(r);
  Presentation fx = quotient_by(c, {"x"});
  SUBCASE("identity fixes the presentation") {
    Presentation t = translate_module(fx, GroupElement::identity(r->field(), 2),
                                      ActionSpec::linear());
    CHECK(t.rel.cols[0] == fx.rel.cols[0]);
  }
  SUBCASE("shear moves V(x) to the diagonal") {
    GroupElement g =
        GroupElement::from_matrix(from_ints(Field::rationals(), {{1, 1}, {0, 1}}));
    Presentation t = translate_module(fx, g, ActionSpec::linear());
    CHECK(t.rel.cols[0].comps[0] == P(r, "x - y"));
  }
}

TEST_CASE("pointwise membership oracle for the translated support") {
  // P lies in the support of gF exactly when g^{-1} P lies in V(x).
  Field f = Field::prime(kDefaultPrime);
  auto r = Ring::make({"x", "y"}, f);
  auto c = free_coords(r);
  Presentation fx = quotient_by(c, {"x"});
  SamplerPolicy pol;
  pol.seed = 5;
  GroupElement g = sample_group_element(pol, f, 2, 3);
  Presentation gfx = translate_module(fx, g, ActionSpec::linear());
  Polynomial moved = gfx.rel.cols[0].comps[0];
  TestRng rng(11);
  for (int round = 0; round < 20; ++round) {
    std::vector<FieldElem> p = {random_elem(f, rng), random_elem(f, rng)};
    std::vector<FieldElem> ginv_p = {
        g.inv.at(0, 0) * p[0] + g.inv.at(0, 1) * p[1],
        g.inv.at(1, 0) * p[0] + g.inv.at(1, 1) * p[1],
    };
    bool in_translated = moved.eval(p).is_zero();
    bool preimage_in_vx = ginv_p[0].is_zero();
    CHECK(in_translated == preimage_in_vx);
  }
}

TEST_CASE("translation is a group action") {
  Field f = Field::prime(kDefaultPrime);
  auto r = Ring::make({"x", "y", "z"}, f);
  auto c = free_coords(r);
  Presentation m = quotient_by(c, {"x", "y*z - x^2"});
  SamplerPolicy pol;
  pol.seed = 19;
  for (std::uint64_t t = 0; t < 4; ++t) {
    GroupElement g = sample_group_element(pol, f, 3, 2 * t);
    GroupElement h = sample_group_element(pol, f, 3, 2 * t + 1);
    GroupElement gh = GroupElement::from_matrix(g.mat.multiply(h.mat));
    Presentation left = translate_module(m, gh, ActionSpec::linear());
    Presentation right = translate_module(translate_module(m, h, ActionSpec::linear()), g,
                                          ActionSpec::linear());
    // Equality of ideals through reduced bases.
    std::vector<Polynomial> a, b;
    for (const auto& col : left.rel.cols) a.push_back(col.comps[0]);
    for (const auto& col : right.rel.cols) b.push_back(col.comps[0]);
    auto gba = buchberger(a);
    auto gbb = buchberger(b);
    REQUIRE(gba.size() == gbb.size());
    for (std::size_t i = 0; i < gba.size(); ++i) CHECK(gba[i] == gbb[i]);
  }
}

TEST_CASE("translation preserves the k-polynomial of graded cyclic modules") {
  Field f = Field::prime(kDefaultPrime);
  auto r = Ring::make({"x", "y", "z"}, f);
  auto c = free_coords(r);
  SamplerPolicy pol;
  pol.seed = 23;
  for (const char* ideal : {"x", "x*y - z^2"}) {
    Presentation m = quotient_by(c, {ideal});
    for (std::uint64_t t = 0; t < 3; ++t) {
      GroupElement g = sample_group_element(pol, f, 3, t);
      Presentation gm = translate_module(m, g, ActionSpec::linear());
      CHECK(k_polynomial(gm) == k_polynomial(m));
    }
  }
}

TEST_CASE("compound matrix examples") {
  Field f = Field::prime(7);
  SUBCASE("identity") {
    CHECK(compound_matrix(FieldMatrix::identity(f, 4), 2) == FieldMatrix::identity(f, 6));
  }
  SUBCASE("diagonal gives pairwise products") {
    FieldMatrix d(f, 4, 4);
    int vals[4] = {2, 3, 4, 5};
    for (int i = 0; i < 4; ++i) d.at(i, i) = FieldElem::from_int(f, vals[i]);
    FieldMatrix cd = compound_matrix(d, 2);
    int expected[6] = {6, 8, 10, 12, 15, 20};  // ab, ac, ad, bc, bd, cd
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        FieldElem want =
            (i == j) ? FieldElem::from_int(f, expected[i]) : FieldElem::zero(f);
        CHECK(cd.at(i, j) == want);
      }
  }
  SUBCASE("multiplicativity on random pairs") {
    SamplerPolicy pol;
    pol.seed = 3;
    for (std::uint64_t t = 0; t < 6; ++t) {
      GroupElement g = sample_group_element(pol, f, 4, 2 * t);
      GroupElement h = sample_group_element(pol, f, 4, 2 * t + 1);
      FieldMatrix lhs = compound_matrix(g.mat.multiply(h.mat), 2);
      FieldMatrix rhs = compound_matrix(g.mat, 2).multiply(compound_matrix(h.mat, 2));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("pluecker translation preserves the Gr(2,4) quadric ideal") {
  Field f = Field::prime(kDefaultPrime);
  auto r = Ring::make({"p01", "p02", "p03", "p12", "p13", "p23"}, f);
  Polynomial quadric = P(r, "p01*p23 - p02*p13 + p03*p12");
  auto gb = buchberger({quadric});
  SamplerPolicy pol;
  pol.seed = 29;
  for (std::uint64_t t = 0; t < 5; ++t) {
    GroupElement g = sample_group_element(pol, f, 4, t);
    RingMap phi = linear_ring_map(r, substitution_matrix(g, ActionSpec::pluecker(2, 4)));
    CHECK(normal_form(phi.apply(quadric), gb).is_zero());
  }
}

TEST_CASE("sampler policy validation") {
  SamplerPolicy bad;
  bad.max_attempts = 0;
  CHECK_THROWS_AS(sample_group_element(bad, Field::prime(7), 2, 0), ValidationError);
}

TEST_SUITE_END();
