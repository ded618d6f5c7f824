#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/mat2.hpp"

namespace bbg {

/// Conjugacy-class tag of an involution. Plus: centralizer of order 2(q-1);
/// Minus: 2(q+1). PSL2 has a single class (Unique); in SL2 the role of
/// involutions is played by pseudo-involutions, whose square is -I (Pseudo).
enum class TypeTag { Plus, Minus, Unique, Pseudo };

std::string_view to_string(TypeTag tag);

namespace target {
inline constexpr std::string_view kSym4 = "Sym4";
inline constexpr std::string_view kAlt4 = "Alt4";
inline constexpr std::string_view kNormalizer24 = "SL2(3)-normalizer(order24)";
inline constexpr std::string_view kNormalizer48 = "normalizer(order48)";
inline constexpr std::string_view kPGL2 = "PGL2(p^a)";
inline constexpr std::string_view kPSL2 = "PSL2(p^a)";
inline constexpr std::string_view kSL2 = "SL2(p^a)";
}  // namespace target

struct RecogConfig {
  /// Attempts allowed per stage before RetryBudgetExhausted.
  unsigned retry_budget = 64;
  /// Centralizer samples drawn by involution_type before giving up.
  unsigned type_samples = 40;
  /// When h2 has even order but a torus generator is at hand, take n2 as a
  /// square root of h2 inside the torus instead of drawing a new g.
  bool torus_sqrt_fallback = true;

  /// Defaults, with retry_budget overridden by BBGROUP_RETRY_BUDGET if set.
  static RecogConfig from_env();
};

struct RightInvolution {
  Mat2 i;
  TypeTag tag;
  /// Order of the cyclic torus T in C(i).
  BigInt torus_order;
};

/// Transcript of the order-3 construction:
///   h1 = i * j^g,  n1^2 = h1,  h2 = j * k^(g n1^-1),  n2^2 = h2,
///   x = g n1^-1 n2^-1  (k = ij),
/// after which x has order 3 and cycles k -> j -> i -> k under conjugation.
struct Order3Witness {
  Mat2 g, h1, n1, h2, n2, x;
};

/// Outcome of a single order-3 attempt for a fixed g.
struct Order3Attempt {
  bool h1_odd = false;
  bool h2_odd = false;
  /// n2 came from the torus square root rather than from odd order.
  bool h2_torus_root = false;
  std::optional<Order3Witness> witness;
};

/// A torus element t whose order has the full 2-part of |T|.
struct TorusHint {
  Mat2 t;
  BigInt order;
};

struct CentralizerSample {
  Mat2 element;
  /// True for g n^-1 from an odd-order commutator (uniform on C(i)); false
  /// for the involution extracted from an even-order commutator.
  bool odd;
};

struct StageCounters {
  std::string stage;
  OpCounters ops;
};

/// Output of the Sym4 / normalizer / subfield constructions: the elements of
/// the tuple (i, j, x, s, t [, r]) plus the generators of the subgroup built.
struct ConstructionResult {
  Flavor flavor = Flavor::PGL2;
  std::uint32_t p = 0;
  unsigned k = 0;
  std::optional<unsigned> a;
  std::string target;
  std::vector<Mat2> generators;
  Mat2 i, j, ij, x;
  std::optional<Mat2> s, t, r;
  Order3Witness witness;
  TypeTag tag = TypeTag::Plus;
  BigInt torus_order;
  OpCounters counters;
  std::vector<StageCounters> stages;
  std::uint64_t seed = 0;
  unsigned retries = 0;
};

/// Step 1: recover k from the characteristic alone. Draws `sample_budget`
/// random elements and returns the least l <= k_max with
/// g^(p (p^(2l) - 1)) = 1 for every sample. An element of order q+1 rules
/// out every l < k on its own (p has order 2k modulo p^k + 1).
unsigned find_field_size(BlackBox& bb, std::uint32_t p, unsigned k_max, unsigned sample_budget);

/// 16 * ceil(ln ln p^k_max + 1), the smallest budget find_field_size accepts.
unsigned default_field_size_budget(std::uint32_t p, unsigned k_max);

/// PGL2/SL2: whichever of p^a - 1, p^a + 1 is divisible by 4. PSL2: whichever
/// of (p^a -+ 1)/2 is even, except a = 1, p = 5 where the order-4 element of
/// the exceptional Sym4 is used. Throws DivisorUnavailable if d does not
/// divide torus_order.
BigInt subfield_torus_divisor(std::uint32_t p, unsigned a, const BigInt& torus_order,
                              Flavor flavor);

/// Expected isomorphism type of <r, x> for the subfield construction.
std::string subfield_target(Flavor flavor, std::uint32_t p, unsigned a);

/// Runs the Las Vegas pipeline on one black box. Every stage draws at most
/// `retry_budget` attempts; every returned object has passed its
/// postcondition checks.
class Recognizer {
 public:
  explicit Recognizer(BlackBox& bb, RecogConfig config = {});

  /// Last non-identity element of g^u, g^(2u), g^(4u), ...; nullopt when
  /// g^u is already trivial. In SL2 everything is taken modulo the center,
  /// so the result is a pseudo-involution.
  std::optional<Mat2> involution_from(const Mat2& g);
  Mat2 make_involution();

  /// Bray: c = i^-1 i^g; g n^-1 with n^2 = c when c has odd order, otherwise
  /// the involution in <c>. Either commutes with i (modulo the center in SL2).
  CentralizerSample centralizer_sample(const Mat2& i);

  /// PGL2 only does real work; PSL2 -> Unique, SL2 -> Pseudo. Throws Undecided.
  TypeTag involution_type(const Mat2& i, const BigInt& q);

  RightInvolution right_type_involution(const BigInt& q);

  /// Element t of T with t^(|T|/2) != 1 and, for each d in required_orders,
  /// t^(|T|/d) of exact order d.
  Mat2 torus_generator(const RightInvolution& inv, std::span<const BigInt> required_orders);

  /// Involution j in C(i) \ <i> inverting t (when given) and, in PGL2, of the
  /// same type as i. In SL2, a pseudo-involution with the analogous property.
  Mat2 inverting_involution(const RightInvolution& inv, const std::optional<Mat2>& t);

  /// Square root of h inside the torus of `hint`, if h lies there and is a
  /// square. Tonelli-Shanks over the 2-part, generated by t^(odd part of |T|).
  std::optional<Mat2> torus_sqrt(const Mat2& h, const TorusHint& hint);

  /// One draw of the order-3 construction for a fixed g. With a hint, an
  /// even-order h2 is rescued by torus_sqrt when possible.
  Order3Attempt order3_attempt(const Mat2& i, const Mat2& j, const Mat2& g,
                               const TorusHint* hint = nullptr);
  Order3Witness order3_element(const Mat2& i, const Mat2& j, const TorusHint* hint = nullptr);

  /// PGL2 and PSL2. Sym4 = <s, x>, or Alt4 = <i, j, x> in PSL2 when q = +-3 mod 8.
  ConstructionResult construct_sym4(std::uint32_t p, unsigned k);
  /// SL2: N(Q8) = <i, j, x> (order 24) or <i, j, s, x> (order 48).
  ConstructionResult construct_sl2_normalizer(std::uint32_t p, unsigned k);
  /// Subfield subgroup <r, x> over GF(p^a), a | k.
  ConstructionResult construct_subfield(std::uint32_t p, unsigned k, unsigned a);

  unsigned retries() const { return retries_; }
  const RecogConfig& config() const { return config_; }

 private:
  BlackBox& bb_;
  RecogConfig config_;
  unsigned retries_ = 0;

  struct Pipeline;
  Pipeline run_pipeline(std::uint32_t p, unsigned k, std::vector<BigInt> required,
                        bool need_torus);
};

/// Convenience wrappers over a fresh Recognizer.
ConstructionResult construct_sym4(BlackBox& bb, std::uint32_t p, unsigned k,
                                  const RecogConfig& config = {});
ConstructionResult construct_sl2_normalizer(BlackBox& bb, std::uint32_t p, unsigned k,
                                            const RecogConfig& config = {});
ConstructionResult construct_subfield(BlackBox& bb, std::uint32_t p, unsigned k, unsigned a,
                                      const RecogConfig& config = {});

}  // namespace bbg
