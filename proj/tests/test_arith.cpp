#include <doctest.h>

#include "oracle.hpp"
#include "torvan/arith.hpp"

using namespace torvan;
using torvan::testing::TestRng;
using torvan::testing::random_elem;

TEST_SUITE_BEGIN("arith");

TEST_CASE("prime field examples") {
  Field f7 = Field::prime(7);
  CHECK((FieldElem::from_int(f7, 5) + FieldElem::from_int(f7, 4)).residue_value() == 2);
  CHECK(FieldElem::from_int(f7, 3).inverse().residue_value() == 5);
  CHECK(FieldElem::one(f7).inverse() == FieldElem::one(f7));
}

TEST_CASE("rational examples") {
  Field q = Field::rationals();
  FieldElem half = FieldElem::parse(q, "1/2");
  FieldElem third = FieldElem::parse(q, "1/3");
  CHECK((half + third).str() == "5/6");
  CHECK(FieldElem::parse(q, "-4/6").inverse().str() == "-3/2");
  FieldElem x = FieldElem::parse(q, "7/3");
  CHECK(x + FieldElem::zero(q) == x);
}

TEST_CASE("rational normalization invariants") {
  FieldElem e = FieldElem::rational(mpq_class(-6, 4));
  CHECK(e.numerator() == -3);
  CHECK(e.denominator() == 2);
  CHECK(FieldElem::rational(mpq_class(0, 5)).str() == "0");
  // Normalizing twice equals normalizing once.
  FieldElem again = FieldElem::rational(mpq_class(e.numerator(), e.denominator()));
  CHECK(again == e);
}

TEST_CASE("modulus must be prime and small") {
  CHECK_THROWS_AS(Field::prime(6), ValidationError);
  CHECK_THROWS_AS(Field::prime(1), ValidationError);
  CHECK_THROWS_AS(Field::prime(1u << 31), ValidationError);
  CHECK_NOTHROW(Field::prime(kDefaultPrime));
}

TEST_CASE("errors: division by zero and context mixing") {
  Field f7 = Field::prime(7);
  Field q = Field::rationals();
  CHECK_THROWS_AS(FieldElem::zero(f7).inverse(), Error);
  CHECK_THROWS_AS(FieldElem::zero(q).inverse(), Error);
  CHECK_THROWS_AS(FieldElem::one(q) + FieldElem::one(f7), Error);
  CHECK_THROWS_AS(FieldElem::one(Field::prime(5)) * FieldElem::one(f7), Error);
}

TEST_CASE("field axioms on random elements") {
  for (Field f : {Field::rationals(), Field::prime(7), Field::prime(kDefaultPrime)}) {
    TestRng rng(101);
    for (int round = 0; round < 200; ++round) {
      FieldElem a = random_elem(f, rng);
      FieldElem b = random_elem(f, rng);
      FieldElem c = random_elem(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == FieldElem::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == FieldElem::one(f));
    }
  }
}

TEST_CASE("F_p agrees with integer arithmetic mod p") {
  Field f = Field::prime(101);
  TestRng rng(7);
  for (int round = 0; round < 300; ++round) {
    long long x = rng.integer(-5000, 5000);
    long long y = rng.integer(-5000, 5000);
    CHECK(FieldElem::from_int(f, x) + FieldElem::from_int(f, y) ==
          FieldElem::from_int(f, x + y));
    CHECK(FieldElem::from_int(f, x) * FieldElem::from_int(f, y) ==
          FieldElem::from_int(f, x * y));
  }
}

TEST_CASE("rendering: a/b omits /1, residues are least nonnegative") {
  Field q = Field::rationals();
  CHECK(FieldElem::from_int(q, -7).str() == "-7");
  CHECK(FieldElem::parse(q, "10/4").str() == "5/2");
  Field f7 = Field::prime(7);
  CHECK(FieldElem::from_int(f7, -1).str() == "6");
}

TEST_CASE("rationals grow exactly, no precision loss") {
  Field q = Field::rationals();
  FieldElem big = FieldElem::one(q);
  for (int i = 1; i <= 40; ++i) big = big * FieldElem::from_int(q, i);
  // 40! has 48 digits.
  CHECK(big.str().size() == 48);
  CHECK(big * big.inverse() == FieldElem::one(q));
}

TEST_SUITE_END();
