#include <gtest/gtest.h>

#include "bbgroup/error.hpp"
#include "bbgroup/mat2.hpp"
#include "bbgroup/verify.hpp"

using namespace bbg;

TEST(Mat2, IdentityAndInverse) {
  const Field f = Field::create(5, 1, 0);
  const Mat2 u = mat_from_ints(f, 1, 1, 0, 1);
  EXPECT_EQ(mat_mul(identity(f), u), u);
  EXPECT_EQ(mat_inv(u), mat_from_ints(f, 1, -1, 0, 1));
  const Mat2 m = mat_from_ints(f, 2, 3, 1, 1);
  const Mat2 prod = mat_mul(m, mat_inv(m));
  EXPECT_TRUE(is_scalar(prod));
  EXPECT_TRUE(mat_eq(prod, identity(f), Flavor::PGL2));
  EXPECT_THROW(mat_inv(mat_from_ints(f, 1, 2, 2, 4)), Error);
}

TEST(Mat2, MixingFieldsIsRejected) {
  const Field f = Field::create(5, 1, 0), g = Field::create(7, 1, 0);
  EXPECT_THROW(mat_mul(identity(f), identity(g)), Error);
}

TEST(Mat2, Canonicalize) {
  const Field f = Field::create(5, 1, 0);
  EXPECT_EQ(canonicalize(mat_from_ints(f, 2, 0, 0, 2), Flavor::PGL2), identity(f));
  EXPECT_EQ(canonicalize(mat_from_ints(f, 0, 3, 1, 0), Flavor::PGL2), mat_from_ints(f, 0, 1, 2, 0));
  const Mat2 m = mat_from_ints(f, 4, 1, 0, 4);
  EXPECT_EQ(canonicalize(m, Flavor::PSL2), canonicalize(mat_neg(m), Flavor::PSL2));
  EXPECT_EQ(canonicalize(m, Flavor::SL2), m);
}

TEST(Mat2, Equality) {
  const Field f = Field::create(7, 1, 0);
  const Mat2 m = mat_from_ints(f, 1, 2, 3, 0);
  EXPECT_TRUE(mat_eq(m, m, Flavor::PGL2));
  EXPECT_TRUE(mat_eq(m, mat_scale(m, f.from_int(3)), Flavor::PGL2));
  EXPECT_FALSE(mat_eq(m, mat_scale(m, f.from_int(3)), Flavor::PSL2));
  const Mat2 s = mat_from_ints(f, 1, 1, 0, 1);
  EXPECT_FALSE(mat_eq(s, mat_neg(s), Flavor::SL2));
  EXPECT_TRUE(mat_eq(s, mat_neg(s), Flavor::PSL2));
  EXPECT_TRUE(mat_eq_mod_center(s, mat_neg(s), Flavor::SL2));
}

TEST(Mat2, StandardGeneratorsGenerateTheGroup) {
  struct Case {
    Flavor flavor;
    std::uint32_t p;
    unsigned k;
    std::size_t order;
  };
  // orders from q(q^2-1), halved for PSL2
  for (const Case& c : {Case{Flavor::SL2, 3, 1, 24}, Case{Flavor::PGL2, 5, 1, 120},
                        Case{Flavor::PSL2, 7, 1, 168}, Case{Flavor::PGL2, 3, 2, 720},
                        Case{Flavor::SL2, 3, 2, 720}, Case{Flavor::PSL2, 3, 2, 360},
                        Case{Flavor::PSL2, 5, 2, 7800}}) {
    const Field f = Field::create(c.p, c.k, 3);
    Rng rng(11);
    const auto gens = standard_generators(c.flavor, f, rng);
    EXPECT_EQ(closure_enumerate(gens, c.flavor).size(), c.order)
        << to_string(c.flavor) << " " << c.p << "^" << c.k;
  }
}

TEST(Mat2, ExponentFormula) {
  EXPECT_EQ(exponent_for(Flavor::PGL2, 3, 2), 720);
  EXPECT_EQ(exponent_for(Flavor::PGL2, 5, 1), 120);
  EXPECT_EQ(exponent_for(Flavor::SL2, 3, 1), 24);
  EXPECT_EQ(group_order(Flavor::PSL2, 7), 168);

  const Field f = Field::create(3, 1, 0);
  Rng rng(1);
  const auto sl2 = closure_enumerate(standard_generators(Flavor::SL2, f, rng), Flavor::SL2);
  for (const Mat2& x : sl2) EXPECT_EQ(mat_pow(x, 24), identity(f));
}

TEST(Mat2, KeysRoundTrip) {
  const Field f = Field::create(5, 2, 1);
  Rng rng(2);
  for (int n = 0; n < 50; ++n) {
    const Mat2 m = make_mat(f, f.random(rng), f.random(rng), f.random(rng), f.random(rng));
    EXPECT_EQ(mat_from_key(f, mat_key(m)), m);
  }
}

TEST(Mat2, ParseFlavor) {
  EXPECT_EQ(parse_flavor("PGL2"), Flavor::PGL2);
  EXPECT_EQ(parse_flavor("psl2"), Flavor::PSL2);
  EXPECT_EQ(to_string(Flavor::SL2), "sl2");
  EXPECT_THROW(parse_flavor("gl2"), Error);
}
