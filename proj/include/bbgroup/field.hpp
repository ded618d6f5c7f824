#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bbgroup/random.hpp"

namespace bbg {

using BigInt = boost::multiprecision::cpp_int;

/// Largest extension degree a field context accepts.
inline constexpr unsigned kMaxDegree = 16;

/// Element of GF(p^k): residue polynomial, constant term first. Slots at
/// index >= k are always zero, so equality of values is equality of arrays.
struct FieldElem {
  std::array<std::uint32_t, kMaxDegree> c{};

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

bool is_prime(std::uint64_t n);

/// Rabin irreducibility test over Z_p. `monic` lists coefficients constant
/// term first; the last entry must be 1.
bool irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// GF(p^k) realised as Z_p[x]/(f) for a monic irreducible f of degree k.
/// Immutable after construction.
class Field {
 public:
  /// Samples random monic degree-k polynomials from a seeded stream until
  /// one passes the irreducibility test. For k = 1 the modulus is x.
  static Field create(std::uint32_t p, unsigned k, std::uint64_t seed);

  /// Rebuilds a context from a stored modulus (validated).
  static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  const BigInt& order() const { return q_; }
  /// k + 1 coefficients, constant term first, monic.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return {}; }
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// The class of x (only meaningful for k > 1).
  FieldElem generator() const;
  std::vector<std::uint32_t> coeffs(const FieldElem& a) const;

  bool is_zero(const FieldElem& a) const { return a == FieldElem{}; }
  bool is_one(const FieldElem& a) const { return a == one(); }

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem pow(const FieldElem& a, const BigInt& n) const;

  FieldElem random(Rng& rng) const;
  FieldElem random_nonzero(Rng& rng) const;

  /// Returns z with z^((q-1)/2) != 1.
  FieldElem find_nonsquare(Rng& rng) const;
  /// Returns a generator of the multiplicative group (itself a nonsquare).
  FieldElem find_primitive(Rng& rng) const;

  /// Bijection with [0, q) via sum c_i p^i. Requires q < 2^64.
  std::uint64_t index(const FieldElem& a) const;
  FieldElem from_index(std::uint64_t idx) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p_;
  unsigned k_;
  std::vector<std::uint32_t> modulus_;
  BigInt q_;
};

}  // namespace bbg
