#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/mat2.hpp"

namespace bbg {

inline constexpr std::size_t kDefaultClosureCap = 2'000'000;

/// Order and element-order histogram of a finite group. Matching
/// fingerprints stand in for isomorphism on the small target menu.
struct GroupFingerprint {
  std::uint64_t order = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

/// Breadth-first closure of <generators>, each element stored once in the
/// flavor's canonical form. Throws Overflow past `cap` elements.
std::vector<Mat2> closure_enumerate(std::span<const Mat2> generators, Flavor flavor,
                                    std::size_t cap = kDefaultClosureCap);

/// Element orders tallied in parallel (OpenMP).
GroupFingerprint fingerprint(const OrderOracle& oracle, std::span<const Mat2> elements);
/// Single-threaded reference for the parallel version.
GroupFingerprint fingerprint_serial(const OrderOracle& oracle, std::span<const Mat2> elements);
GroupFingerprint fingerprint(const BlackBox& bb, std::span<const Mat2> elements);

/// Fingerprint of all permutations of {0..n-1} (or only the even ones).
GroupFingerprint permutation_fingerprint(unsigned n, bool even_only);

/// Order the named target is expected to have (p, a used by the matrix
/// targets only).
BigInt expected_order(std::string_view target, std::uint32_t p, unsigned a);

/// Builds the named target independently of the recognition code and
/// fingerprints it. Throws Overflow when its order exceeds `cap`.
GroupFingerprint reference_fingerprint(std::string_view target, std::uint32_t p, unsigned a,
                                       std::size_t cap = kDefaultClosureCap);

bool assert_type(const GroupFingerprint& observed, const GroupFingerprint& expected);

enum class VerifyStatus { Verified, Mismatch, Skipped };

struct VerifyOutcome {
  VerifyStatus status = VerifyStatus::Skipped;
  std::optional<GroupFingerprint> observed;
  std::optional<GroupFingerprint> expected;
  std::string note;
};

/// Enumerates <generators> inside the flavor group over GF(p^k) and compares
/// with the reference fingerprint of `target` (over GF(p^a) for the matrix
/// targets). Skipped when the expected order exceeds `cap`; Mismatch when a
/// generator is not a group element or the fingerprints differ.
VerifyOutcome verify_generators(std::span<const Mat2> generators, Flavor flavor,
                                std::string_view target, std::uint32_t p, unsigned k, unsigned a,
                                std::size_t cap = kDefaultClosureCap);

}  // namespace bbg
