#include <gtest/gtest.h>

#include <vector>

#include "bbgroup/error.hpp"
#include "bbgroup/field.hpp"

using namespace bbg;

namespace {

bool has_root(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

// Monic polynomials of degree n over GF(p), constant term first.
unsigned count_irreducible(std::uint32_t p, unsigned n) {
  std::vector<std::uint32_t> f(n + 1, 0);
  f[n] = 1;
  unsigned count = 0;
  for (;;) {
    count += irreducible(p, f);
    unsigned i = 0;
    while (i < n && ++f[i] == p) f[i++] = 0;
    if (i == n) return count;
  }
}

Field gf9() { return Field::with_modulus(3, {1, 0, 1}); }

}  // namespace

TEST(Field, PrimeFieldHasModulusX) {
  const Field f = Field::create(3, 1, 123);
  EXPECT_EQ(f.order(), 3);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{0, 1}));
}

TEST(Field, CreatedModuliAreIrreducible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Field f3 = Field::create(3, 2, seed);
    EXPECT_FALSE(has_root(3, f3.modulus()));
    EXPECT_EQ(f3.order(), 9);
    const Field f5 = Field::create(5, 2, seed);
    EXPECT_FALSE(has_root(5, f5.modulus()));
    const Field f = Field::create(7, 5, seed);
    EXPECT_TRUE(irreducible(7, f.modulus()));
  }
}

TEST(Field, CreateIsDeterministicInSeed) {
  EXPECT_EQ(Field::create(3, 6, 9).modulus(), Field::create(3, 6, 9).modulus());
}

TEST(Field, CreateRejectsBadParameters) {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  EXPECT_EQ(kind_of([] { Field::create(4, 1, 0); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind_of([] { Field::create(2, 1, 0); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind_of([] { Field::create(9, 1, 0); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind_of([] { Field::create(3, 0, 0); }), ErrorKind::InvalidDegree);
  EXPECT_EQ(kind_of([] { Field::create(3, kMaxDegree + 1, 0); }), ErrorKind::InvalidDegree);
}

TEST(Field, IrreducibilityExamples) {
  const std::vector<std::uint32_t> x2_plus_1{1, 0, 1}, x2{0, 0, 1}, x2_minus_1{4, 0, 1};
  EXPECT_TRUE(irreducible(3, x2_plus_1));
  EXPECT_FALSE(irreducible(3, x2));
  EXPECT_FALSE(irreducible(5, x2_minus_1));
}

TEST(Field, IrreducibleCountsMatchGaussFormula) {
  // (1/n) sum_{d|n} mu(d) p^(n/d)
  EXPECT_EQ(count_irreducible(3, 2), 3u);
  EXPECT_EQ(count_irreducible(5, 2), 10u);
  EXPECT_EQ(count_irreducible(3, 3), 8u);
  EXPECT_EQ(count_irreducible(3, 4), 18u);
  EXPECT_EQ(count_irreducible(5, 3), 40u);
}

TEST(Field, ArithmeticInGf9) {
  const Field f = gf9();
  const FieldElem x = f.generator();
  EXPECT_EQ(f.mul(x, x), f.from_int(2));
  const std::vector<std::uint32_t> two_x{0, 2};
  EXPECT_EQ(f.inv(x), f.from_coeffs(two_x));
  EXPECT_TRUE(f.is_one(f.mul(x, f.inv(x))));
  EXPECT_EQ(f.mul(x, f.one()), x);
  EXPECT_THROW(f.inv(f.zero()), Error);
}

TEST(Field, AxiomsHoldExhaustively) {
  for (const Field& f : {gf9(), Field::create(3, 3, 4), Field::create(5, 2, 1)}) {
    const auto q = static_cast<std::uint64_t>(f.order());
    for (std::uint64_t ia = 0; ia < q; ++ia) {
      const FieldElem a = f.from_index(ia);
      EXPECT_EQ(f.index(a), ia);
      EXPECT_TRUE(f.is_zero(f.add(a, f.neg(a))));
      EXPECT_EQ(f.pow(a, f.order()), a);
      if (!f.is_zero(a)) {
        EXPECT_TRUE(f.is_one(f.mul(a, f.inv(a))));
        EXPECT_TRUE(f.is_one(f.pow(a, f.order() - 1)));
      }
      for (std::uint64_t ib = 0; ib < q; ib += 3) {
        const FieldElem b = f.from_index(ib);
        const FieldElem c = f.from_index((ia * 7 + ib) % q);
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        EXPECT_EQ(f.sub(f.add(a, b), b), a);
      }
    }
  }
}

TEST(Field, FromCoeffsValidates) {
  const Field f = gf9();
  const std::vector<std::uint32_t> unreduced{3}, too_long{1, 1, 1};
  EXPECT_THROW(f.from_coeffs(unreduced), Error);
  EXPECT_THROW(f.from_coeffs(too_long), Error);
}

TEST(Field, NonsquaresAndPrimitiveElements) {
  Rng rng(5);
  const Field f5 = Field::create(5, 1, 0);
  for (int n = 0; n < 20; ++n) {
    const auto z = f5.index(f5.find_nonsquare(rng));
    EXPECT_TRUE(z == 2 || z == 3);
  }
  const Field f3 = Field::create(3, 1, 0);
  EXPECT_EQ(f3.index(f3.find_nonsquare(rng)), 2u);
  const Field f9 = gf9();
  for (int n = 0; n < 20; ++n) {
    const FieldElem z = f9.find_nonsquare(rng);
    EXPECT_EQ(f9.pow(z, 4), f9.from_int(-1));
  }
  for (const Field& f : {f9, Field::create(3, 4, 2), Field::create(7, 2, 3)}) {
    const FieldElem g = f.find_primitive(rng);
    const BigInt m = f.order() - 1;
    EXPECT_TRUE(f.is_one(f.pow(g, m)));
    for (unsigned r : {2u, 3u, 5u, 7u, 13u})
      if (m % r == 0) EXPECT_FALSE(f.is_one(f.pow(g, m / r)));
  }
}
