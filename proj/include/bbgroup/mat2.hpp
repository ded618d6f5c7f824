#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bbgroup/field.hpp"
#include "bbgroup/random.hpp"

namespace bbg {

enum class Flavor { SL2, PSL2, PGL2 };

std::string_view to_string(Flavor f);
/// Accepts "sl2", "psl2", "pgl2" (case-insensitive).
Flavor parse_flavor(std::string_view name);

/// A 2x2 invertible matrix over GF(p^k), row-major [[a, b], [c, d]]. This is
/// a raw string: in the projective flavors many matrices encrypt the same
/// group element, and only mat_eq knows about that.
struct Mat2 {
  const Field* field = nullptr;
  FieldElem a, b, c, d;

  /// Literal entry-wise equality.
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

Mat2 identity(const Field& f);
Mat2 make_mat(const Field& f, const FieldElem& a, const FieldElem& b, const FieldElem& c,
              const FieldElem& d);
Mat2 mat_from_ints(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c,
                   std::int64_t d);

FieldElem det(const Mat2& x);
Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_inv(const Mat2& x);
Mat2 mat_scale(const Mat2& x, const FieldElem& s);
Mat2 mat_neg(const Mat2& x);
/// Square-and-multiply without instrumentation; used by oracles.
Mat2 mat_pow(const Mat2& x, const BigInt& n);
bool is_scalar(const Mat2& x);

/// Flavor-dependent canonical representative:
///   SL2  - unchanged;
///   PGL2 - divided by the first nonzero entry in (a, b, c, d) order;
///   PSL2 - whichever of M, -M has the smaller first nonzero entry, comparing
///          coefficient tuples constant term first.
Mat2 canonicalize(const Mat2& x, Flavor flavor);

/// True when x and y encrypt the same element of the flavor's group.
bool mat_eq(const Mat2& x, const Mat2& y, Flavor flavor);

/// Equality modulo scalars: mat_eq in PGL2 and PSL2, and equality up to sign in SL2.
bool mat_eq_mod_center(const Mat2& x, const Mat2& y, Flavor flavor);

/// Generators of the full group over the given field. See README for the
/// choice of the extra torus generator when k > 1.
std::vector<Mat2> standard_generators(Flavor flavor, const Field& f, Rng& rng);

/// q (q^2 - 1): a global exponent for all three flavors.
BigInt exponent_for(Flavor flavor, std::uint32_t p, unsigned k);

/// Order of the flavor's group over GF(q).
BigInt group_order(Flavor flavor, const BigInt& q);

/// Compact hashable encoding of a canonical matrix (requires q < 2^64).
using MatKey = std::array<std::uint64_t, 4>;
MatKey mat_key(const Mat2& canonical);
Mat2 mat_from_key(const Field& f, const MatKey& key);

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t v : k) h = (h ^ v) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace bbg
