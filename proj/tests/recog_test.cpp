#include <gtest/gtest.h>

#include <cstdlib>
#include <functional>
#include <unordered_set>

#include "bbgroup/error.hpp"
#include "bbgroup/recog.hpp"
#include "bbgroup/verify.hpp"

using namespace bbg;

namespace {

const GroupFingerprint kSym4{24, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}};
const GroupFingerprint kAlt4{12, {{1, 1}, {2, 3}, {3, 8}}};
const GroupFingerprint kQ8{8, {{1, 1}, {2, 1}, {4, 6}}};
const GroupFingerprint kSL2of3{24, {{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}}};

GroupFingerprint enumerate_fp(BlackBox& bb, std::vector<Mat2> gens) {
  return fingerprint(bb, closure_enumerate(gens, bb.flavor()));
}

std::size_t centralizer_size(const std::vector<Mat2>& group, const Mat2& i, Flavor flavor) {
  std::size_t n = 0;
  for (const Mat2& g : group) n += mat_eq(mat_mul(g, i), mat_mul(i, g), flavor);
  return n;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(FieldSize, RecoversDegree) {
  struct Case {
    std::uint32_t p;
    unsigned k;
  };
  for (const Case& c : {Case{3, 2}, Case{5, 1}, Case{3, 3}, Case{7, 2}}) {
    BlackBox bb(Flavor::PGL2, c.p, c.k, 1);
    EXPECT_EQ(find_field_size(bb, c.p, 16, default_field_size_budget(c.p, 16)), c.k);
  }
}

TEST(FieldSize, ElementsOfOrderQPlusOneExcludeSmallerDegrees) {
  // 3 (3^2 - 1) = 24 is divisible by neither 26 nor 28.
  BlackBox bb(Flavor::PGL2, 3, 3, 2);
  int witnesses = 0;
  for (int n = 0; n < 200; ++n) {
    const Mat2 g = bb.random();
    const auto o = bb.element_order(g);
    if (o == 26 || o == 28) {
      ++witnesses;
      EXPECT_FALSE(bb.is_identity(bb.pow(g, 24)));
    }
  }
  EXPECT_GT(witnesses, 0);
}

TEST(FieldSize, Errors) {
  BlackBox bb(Flavor::PGL2, 3, 3, 1);
  EXPECT_EQ(kind_of([&] { find_field_size(bb, 3, 2, default_field_size_budget(3, 2)); }),
            ErrorKind::ExceedsKMax);
  EXPECT_EQ(kind_of([&] { find_field_size(bb, 3, 16, 3); }), ErrorKind::InvalidInput);
  EXPECT_EQ(default_field_size_budget(3, 16), 64u);
}

TEST(Involutions, SquaringChain) {
  BlackBox bb(Flavor::PGL2, 5, 1, 1);
  Recognizer rec(bb);
  const auto inv = rec.involution_from(mat_from_ints(bb.field(), 2, 0, 0, 1));
  ASSERT_TRUE(inv);
  EXPECT_TRUE(bb.eq(*inv, mat_from_ints(bb.field(), 4, 0, 0, 1)));
  // order 3: the chain starts at the identity
  EXPECT_FALSE(rec.involution_from(mat_from_ints(bb.field(), 0, 1, -1, -1)));
}

TEST(Involutions, CentralizerSamplesCommute) {
  for (Flavor flavor : {Flavor::PGL2, Flavor::PSL2, Flavor::SL2}) {
    BlackBox bb(flavor, 3, 2, 8);
    Recognizer rec(bb);
    const Mat2 i = rec.make_involution();
    for (int n = 0; n < 100; ++n) {
      const Mat2 z = rec.centralizer_sample(i).element;
      EXPECT_TRUE(bb.eq_mod_center(bb.conj(i, z), i));
    }
  }
}

TEST(Involutions, OddSamplesLieInTheDihedralCentralizer) {
  BlackBox bb(Flavor::PGL2, 3, 2, 3);
  Recognizer rec(bb);
  const RightInvolution inv = rec.right_type_involution(9);
  const auto group = closure_enumerate(bb.generators(), Flavor::PGL2);
  std::unordered_set<MatKey, MatKeyHash> centralizer;
  for (const Mat2& g : group)
    if (mat_eq(mat_mul(g, inv.i), mat_mul(inv.i, g), Flavor::PGL2)) centralizer.insert(mat_key(g));
  EXPECT_EQ(centralizer.size(), 16u);
  int odd = 0;
  for (int n = 0; n < 200; ++n) {
    const CentralizerSample smp = rec.centralizer_sample(inv.i);
    if (!smp.odd) continue;
    ++odd;
    EXPECT_TRUE(centralizer.count(mat_key(canonicalize(smp.element, Flavor::PGL2))));
  }
  EXPECT_GT(odd, 0);
}

TEST(Involutions, TypeMatchesCentralizerOrder) {
  // Plus: |C(i)| = 2(q-1); Minus: 2(q+1).
  for (std::uint32_t p : {11u, 13u}) {
    BlackBox bb(Flavor::PGL2, p, 1, 2);
    Recognizer rec(bb);
    const auto group = closure_enumerate(bb.generators(), Flavor::PGL2);
    for (int n = 0; n < 10; ++n) {
      const Mat2 i = rec.make_involution();
      const TypeTag tag = rec.involution_type(i, p);
      const std::size_t c = centralizer_size(group, i, Flavor::PGL2);
      EXPECT_EQ(c, tag == TypeTag::Plus ? 2u * (p - 1) : 2u * (p + 1));
    }
  }
}

TEST(Involutions, RightType) {
  struct Case {
    Flavor flavor;
    std::uint32_t p;
    unsigned k;
    TypeTag tag;
    unsigned torus;
  };
  for (const Case& c :
       {Case{Flavor::PGL2, 3, 2, TypeTag::Plus, 8}, Case{Flavor::PGL2, 11, 1, TypeTag::Minus, 12},
        Case{Flavor::PGL2, 13, 1, TypeTag::Plus, 12}, Case{Flavor::PSL2, 13, 1, TypeTag::Unique, 6},
        Case{Flavor::PSL2, 3, 2, TypeTag::Unique, 4}, Case{Flavor::SL2, 7, 1, TypeTag::Pseudo, 8}}) {
    BlackBox bb(c.flavor, c.p, c.k, 5);
    Recognizer rec(bb);
    const RightInvolution inv = rec.right_type_involution(bb.field().order());
    EXPECT_EQ(inv.tag, c.tag);
    EXPECT_EQ(inv.torus_order, c.torus);
  }
}

TEST(Torus, GeneratorHasRequiredOrders) {
  BlackBox bb(Flavor::PGL2, 3, 2, 6);
  Recognizer rec(bb);
  const RightInvolution inv = rec.right_type_involution(9);
  const std::vector<BigInt> four{4};
  for (int n = 0; n < 5; ++n) EXPECT_EQ(bb.element_order(rec.torus_generator(inv, four)), 8u);

  BlackBox bb13(Flavor::PGL2, 13, 1, 6);
  Recognizer rec13(bb13);
  const RightInvolution inv13 = rec13.right_type_involution(13);
  for (int n = 0; n < 5; ++n) {
    const Mat2 t = rec13.torus_generator(inv13, four);
    EXPECT_EQ(bb13.element_order(t) % 4, 0u);
    EXPECT_EQ(bb13.element_order(bb13.pow(t, 3)), 4u);
  }
  const std::vector<BigInt> five{5};
  EXPECT_EQ(kind_of([&] { rec13.torus_generator(inv13, five); }), ErrorKind::DivisorUnavailable);
}

TEST(Torus, SquareRootsInsideTheTorus) {
  BlackBox bb(Flavor::PGL2, 3, 2, 6);
  Recognizer rec(bb);
  const RightInvolution inv = rec.right_type_involution(9);
  const std::vector<BigInt> four{4};
  const TorusHint hint{rec.torus_generator(inv, four), 8};
  Mat2 h = bb.identity();
  for (int e = 0; e < 8; ++e, h = bb.mul(h, hint.t)) {
    const auto r = rec.torus_sqrt(h, hint);
    EXPECT_EQ(r.has_value(), e % 2 == 0) << e;
    if (r) EXPECT_TRUE(bb.eq(bb.mul(*r, *r), h));
  }
}

TEST(Inverting, KleinAndQuaternionGroups) {
  BlackBox bb(Flavor::PGL2, 3, 2, 4);
  Recognizer rec(bb);
  const RightInvolution inv = rec.right_type_involution(9);
  const std::vector<BigInt> four{4};
  const Mat2 t = rec.torus_generator(inv, four);
  const Mat2 j = rec.inverting_involution(inv, t);
  EXPECT_TRUE(bb.eq(bb.mul(j, inv.i), bb.mul(inv.i, j)));
  EXPECT_TRUE(bb.eq(bb.conj(t, j), bb.inv(t)));
  const auto v = closure_enumerate(std::vector<Mat2>{inv.i, j}, Flavor::PGL2);
  EXPECT_EQ(v.size(), 4u);
  for (const Mat2& e : v) EXPECT_LE(bb.element_order(e), 2u);

  BlackBox sl(Flavor::SL2, 5, 1, 4);
  Recognizer rsl(sl);
  const RightInvolution isl = rsl.right_type_involution(5);
  const Mat2 jsl = rsl.inverting_involution(isl, std::nullopt);
  EXPECT_EQ(enumerate_fp(sl, {isl.i, jsl}), kQ8);
}

TEST(Order3, WitnessSatisfiesAllRelations) {
  for (Flavor flavor : {Flavor::PGL2, Flavor::PSL2, Flavor::SL2}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      BlackBox bb(flavor, 7, 1, seed);
      const ConstructionResult res = flavor == Flavor::SL2 ? construct_sl2_normalizer(bb, 7, 1)
                                                           : construct_sym4(bb, 7, 1);
      const Order3Witness& w = res.witness;
      EXPECT_TRUE(bb.eq_mod_center(bb.mul(w.n1, w.n1), w.h1));
      EXPECT_TRUE(bb.eq_mod_center(bb.mul(w.n2, w.n2), w.h2));
      EXPECT_TRUE(bb.eq_mod_center(bb.mul(bb.mul(w.g, bb.inv(w.n1)), bb.inv(w.n2)), w.x));
      const Mat2 k = bb.mul(res.i, res.j);
      EXPECT_TRUE(bb.eq_mod_center(bb.conj(k, w.x), res.j));
      EXPECT_TRUE(bb.eq_mod_center(bb.conj(res.j, w.x), res.i));
      EXPECT_TRUE(bb.eq_mod_center(bb.conj(res.i, w.x), k));
      EXPECT_EQ(bb.element_order(w.x) % 3, 0u);
      if (flavor != Flavor::SL2) {
        EXPECT_EQ(bb.element_order(w.x), 3u);
        EXPECT_EQ(enumerate_fp(bb, {res.i, w.x}), kAlt4);
      }
    }
  }
}

TEST(Order3, DihedralTrickOnAllInvolutionPairs) {
  for (auto [p, k] : {std::pair{5u, 1u}, std::pair{3u, 2u}}) {
    BlackBox bb(Flavor::PGL2, p, k, 1);
    const auto group = closure_enumerate(bb.generators(), Flavor::PGL2);
    std::vector<Mat2> involutions;
    for (const Mat2& g : group)
      if (bb.element_order(g) == 2) involutions.push_back(g);
    int failures = 0;
    for (const Mat2& u : involutions)
      for (const Mat2& v : involutions) {
        const auto n = bb.odd_order_sqrt(bb.mul(u, v));
        if (n && !bb.eq(bb.conj(u, *n), v)) ++failures;
      }
    EXPECT_EQ(failures, 0);
  }
}

TEST(Sym4, PglAndPslTargets) {
  BlackBox pgl(Flavor::PGL2, 3, 2, 11);
  const ConstructionResult a = construct_sym4(pgl, 3, 2);
  EXPECT_EQ(a.target, "Sym4");
  EXPECT_EQ(enumerate_fp(pgl, a.generators), kSym4);
  ASSERT_TRUE(a.s);
  EXPECT_TRUE(pgl.eq(pgl.mul(*a.s, *a.s), a.i));
  EXPECT_GT(a.counters.group_ops(), 0u);
  EXPECT_GT(a.counters.rand, 0u);

  BlackBox psl11(Flavor::PSL2, 11, 1, 11);
  const ConstructionResult b = construct_sym4(psl11, 11, 1);
  EXPECT_EQ(b.target, "Alt4");
  EXPECT_FALSE(b.s);
  EXPECT_EQ(enumerate_fp(psl11, b.generators), kAlt4);

  BlackBox psl17(Flavor::PSL2, 17, 1, 11);
  const ConstructionResult c = construct_sym4(psl17, 17, 1);
  EXPECT_EQ(c.target, "Sym4");
  EXPECT_EQ(enumerate_fp(psl17, c.generators), kSym4);

  BlackBox sl(Flavor::SL2, 5, 1, 1);
  EXPECT_EQ(kind_of([&] { construct_sym4(sl, 5, 1); }), ErrorKind::UnsupportedFlavor);
  EXPECT_EQ(kind_of([&] { construct_sym4(pgl, 3, 3); }), ErrorKind::InvalidInput);
}

TEST(Sym4, SameSeedSameResult) {
  BlackBox a(Flavor::PGL2, 5, 2, 21), b(Flavor::PGL2, 5, 2, 21);
  const ConstructionResult ra = construct_sym4(a, 5, 2), rb = construct_sym4(b, 5, 2);
  EXPECT_EQ(ra.generators, rb.generators);
  EXPECT_EQ(ra.counters, rb.counters);
  EXPECT_EQ(ra.retries, rb.retries);
}

TEST(Normalizer, SL2Cases) {
  BlackBox sl5(Flavor::SL2, 5, 1, 2);
  const ConstructionResult a = construct_sl2_normalizer(sl5, 5, 1);
  EXPECT_EQ(a.target, "SL2(3)-normalizer(order24)");
  EXPECT_EQ(enumerate_fp(sl5, a.generators), kSL2of3);
  EXPECT_EQ(enumerate_fp(sl5, {a.i, a.j}), kQ8);

  BlackBox sl7(Flavor::SL2, 7, 1, 2);
  const ConstructionResult b = construct_sl2_normalizer(sl7, 7, 1);
  EXPECT_EQ(b.target, "normalizer(order48)");
  EXPECT_EQ(enumerate_fp(sl7, b.generators).order, 48u);

  BlackBox pgl(Flavor::PGL2, 7, 1, 2);
  EXPECT_EQ(kind_of([&] { construct_sl2_normalizer(pgl, 7, 1); }), ErrorKind::UnsupportedFlavor);
}

TEST(Subfield, TorusDivisor) {
  EXPECT_EQ(subfield_torus_divisor(7, 1, 48, Flavor::PGL2), 8);
  EXPECT_EQ(subfield_torus_divisor(5, 1, 24, Flavor::PGL2), 4);
  EXPECT_EQ(subfield_torus_divisor(3, 2, 80, Flavor::PGL2), 8);
  EXPECT_EQ(subfield_torus_divisor(5, 1, 12, Flavor::PSL2), 4);
  EXPECT_EQ(subfield_torus_divisor(7, 1, 24, Flavor::PSL2), 4);
  EXPECT_EQ(kind_of([] { subfield_torus_divisor(7, 1, 10, Flavor::PGL2); }),
            ErrorKind::DivisorUnavailable);
}

TEST(Subfield, Targets) {
  EXPECT_EQ(subfield_target(Flavor::PGL2, 5, 1), "Sym4");
  EXPECT_EQ(subfield_target(Flavor::PGL2, 7, 1), "PGL2(p^a)");
  EXPECT_EQ(subfield_target(Flavor::PSL2, 7, 1), "Sym4");
  EXPECT_EQ(subfield_target(Flavor::SL2, 5, 1), "SL2(3)-normalizer(order24)");
  EXPECT_EQ(subfield_target(Flavor::SL2, 3, 2), "normalizer(order48)");
  EXPECT_EQ(subfield_target(Flavor::PSL2, 3, 2), "Sym4");
  EXPECT_EQ(subfield_target(Flavor::SL2, 5, 2), "SL2(p^a)");
}

TEST(Subfield, Orders) {
  struct Case {
    Flavor flavor;
    std::uint32_t p;
    unsigned k, a;
    std::uint64_t order;
  };
  for (const Case& c : {Case{Flavor::PGL2, 7, 2, 1, 336}, Case{Flavor::PGL2, 5, 2, 1, 24},
                        Case{Flavor::PGL2, 3, 4, 2, 720}, Case{Flavor::PSL2, 3, 4, 2, 24},
                        Case{Flavor::SL2, 3, 4, 2, 48}, Case{Flavor::PSL2, 5, 4, 2, 7800}, Case{Flavor::SL2, 5, 2, 1, 24}}) {
    BlackBox bb(c.flavor, c.p, c.k, 4);
    const ConstructionResult res = construct_subfield(bb, c.p, c.k, c.a);
    ASSERT_TRUE(res.r);
    const VerifyOutcome v = verify_generators(res.generators, c.flavor, res.target, c.p, c.k, c.a);
    EXPECT_EQ(v.status, VerifyStatus::Verified) << to_string(c.flavor) << c.p << c.k << c.a;
    ASSERT_TRUE(v.observed);
    EXPECT_EQ(v.observed->order, c.order);
  }
  BlackBox bb(Flavor::PGL2, 3, 4, 1);
  EXPECT_EQ(kind_of([&] { construct_subfield(bb, 3, 4, 3); }), ErrorKind::InvalidSubfieldDegree);
}

TEST(LasVegas, TinyBudgetEitherVerifiesOrFails) {
  RecogConfig cfg;
  cfg.retry_budget = 2;
  int returned = 0, failed = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    BlackBox bb(Flavor::PGL2, 3, 3, seed);
    try {
      const ConstructionResult res = construct_sym4(bb, 3, 3, cfg);
      ++returned;
      EXPECT_EQ(enumerate_fp(bb, res.generators), kSym4);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::RetryBudgetExhausted);
      ++failed;
    }
  }
  EXPECT_EQ(returned + failed, 40);
}

TEST(Config, RetryBudgetFromEnvironment) {
  ::setenv("BBGROUP_RETRY_BUDGET", "7", 1);
  EXPECT_EQ(RecogConfig::from_env().retry_budget, 7u);
  ::setenv("BBGROUP_RETRY_BUDGET", "abc", 1);
  EXPECT_THROW(RecogConfig::from_env(), Error);
  ::unsetenv("BBGROUP_RETRY_BUDGET");
  EXPECT_EQ(RecogConfig::from_env().retry_budget, 64u);
}
