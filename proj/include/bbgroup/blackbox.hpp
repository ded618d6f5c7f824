#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bbgroup/field.hpp"
#include "bbgroup/mat2.hpp"
#include "bbgroup/random.hpp"

namespace bbg {

/// Group-operation tallies. mul/inv/eq measure the per-operation cost term,
/// rand the per-random-element cost term of the complexity analysis.
struct OpCounters {
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;
  std::uint64_t eq = 0;
  std::uint64_t rand = 0;

  std::uint64_t group_ops() const { return mul + inv + eq; }

  friend bool operator==(const OpCounters&, const OpCounters&) = default;
  friend OpCounters operator-(const OpCounters& x, const OpCounters& y) {
    return {x.mul - y.mul, x.inv - y.inv, x.eq - y.eq, x.rand - y.rand};
  }
};

using Factorization = std::vector<std::pair<BigInt, unsigned>>;

/// Trial division; fine for the desk-scale integers this library meets.
Factorization factorize(const BigInt& n);

/// Exact element orders computed from a factored global exponent. Not part
/// of the black-box interface: used only by tests and verification.
class OrderOracle {
 public:
  OrderOracle(Flavor flavor, BigInt exponent, Factorization factors);
  /// Oracle for exponent_for(flavor, p, k), factored through q, q - 1, q + 1.
  static OrderOracle for_group(Flavor flavor, std::uint32_t p, unsigned k);

  /// Throws ExponentViolated if x^E is not the identity.
  std::uint64_t order(const Mat2& x) const;

  Flavor flavor() const { return flavor_; }
  const BigInt& exponent() const { return exponent_; }

 private:
  Flavor flavor_;
  BigInt exponent_;
  Factorization factors_;
};

struct ProductReplacementConfig {
  unsigned slots = 10;
  unsigned burn_in = 200;
};

/// The oracle group: random elements by product replacement with an
/// accumulator, counted multiplication/inversion/equality, a global
/// exponent E = 2^e2 * u, and the odd-order square root built on u.
///
/// Single-owner mutable state; run parallel experiments on separate handles.
class BlackBox {
 public:
  BlackBox(Flavor flavor, std::uint32_t p, unsigned k, std::uint64_t seed,
           ProductReplacementConfig config = {});

  Flavor flavor() const { return flavor_; }
  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }
  const std::vector<Mat2>& generators() const { return generators_; }
  std::uint64_t seed() const { return seed_; }

  const BigInt& exponent() const { return exponent_; }
  const BigInt& odd_part() const { return odd_part_; }
  unsigned two_valuation() const { return two_valuation_; }

  Mat2 identity() const { return bbg::identity(*field_); }

  Mat2 random();
  Mat2 mul(const Mat2& x, const Mat2& y);
  Mat2 inv(const Mat2& x);
  bool eq(const Mat2& x, const Mat2& y);
  /// Equality modulo the center (differs from eq only for SL2).
  bool eq_mod_center(const Mat2& x, const Mat2& y);
  bool is_identity(const Mat2& x) { return eq(x, identity()); }

  /// Right-to-left square-and-multiply: exactly floor(log2 n) + popcount(n)
  /// counted multiplications, none for n = 0.
  Mat2 pow(const Mat2& x, const BigInt& n);
  /// x^g = g^-1 x g.
  Mat2 conj(const Mat2& x, const Mat2& g);

  /// n = h^((u+1)/2) when h has odd order, so that n^2 = h and n lies in <h>;
  /// nullopt when h has even order.
  std::optional<Mat2> odd_order_sqrt(const Mat2& h);
  /// Same, for the image of h modulo the center: n^2 = h up to a central factor.
  std::optional<Mat2> odd_order_sqrt_mod_center(const Mat2& h);

  /// Verification-only exact order; does not touch the counters.
  std::uint64_t element_order(const Mat2& x) const;
  const OrderOracle& order_oracle() const;

  const OpCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }
  Rng& rng() { return rng_; }

 private:
  Flavor flavor_;
  std::shared_ptr<const Field> field_;
  std::vector<Mat2> generators_;
  std::uint64_t seed_;
  BigInt exponent_;
  BigInt odd_part_;
  unsigned two_valuation_ = 0;
  BigInt half_odd_plus_one_;
  std::vector<Mat2> slots_;
  Mat2 accumulator_;
  Rng rng_;
  OpCounters counters_;
  mutable std::shared_ptr<const OrderOracle> oracle_;

  void product_replacement_step();
};

}  // namespace bbg
