#include "bbgroup/verify.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include <omp.h>

#include "bbgroup/error.hpp"
#include "bbgroup/recog.hpp"

namespace bbg {

std::vector<Mat2> closure_enumerate(std::span<const Mat2> generators, Flavor flavor,
                                    std::size_t cap) {
  if (generators.empty()) throw Error(ErrorKind::InvalidInput, "no generators");
  const Field& f = *generators.front().field;
  std::vector<Mat2> gens;
  for (const Mat2& g : generators) gens.push_back(canonicalize(g, flavor));

  std::unordered_set<MatKey, MatKeyHash> seen;
  std::vector<Mat2> elements{canonicalize(identity(f), flavor)};
  seen.insert(mat_key(elements.front()));
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Mat2& g : gens) {
      Mat2 y = canonicalize(mat_mul(elements[head], g), flavor);
      if (!seen.insert(mat_key(y)).second) continue;
      if (elements.size() >= cap)
        throw Error(ErrorKind::Overflow, "closure exceeds cap of " + std::to_string(cap));
      elements.push_back(std::move(y));
    }
  }
  return elements;
}

GroupFingerprint fingerprint_serial(const OrderOracle& oracle, std::span<const Mat2> elements) {
  GroupFingerprint fp;
  fp.order = elements.size();
  for (const Mat2& x : elements) ++fp.histogram[oracle.order(x)];
  return fp;
}

GroupFingerprint fingerprint(const OrderOracle& oracle, std::span<const Mat2> elements) {
  std::vector<std::uint64_t> orders(elements.size());
  const auto n = static_cast<std::int64_t>(elements.size());
  bool violated = false;
#pragma omp parallel for schedule(dynamic, 64) reduction(|| : violated)
  for (std::int64_t idx = 0; idx < n; ++idx) {
    try {
      orders[static_cast<std::size_t>(idx)] = oracle.order(elements[static_cast<std::size_t>(idx)]);
    } catch (const Error&) {
      violated = true;
    }
  }
  if (violated) throw Error(ErrorKind::ExponentViolated, "element order exceeds the global exponent");
  GroupFingerprint fp;
  fp.order = elements.size();
  for (std::uint64_t o : orders) ++fp.histogram[o];
  return fp;
}

GroupFingerprint fingerprint(const BlackBox& bb, std::span<const Mat2> elements) {
  return fingerprint(bb.order_oracle(), elements);
}

GroupFingerprint permutation_fingerprint(unsigned n, bool even_only) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  GroupFingerprint fp;
  do {
    std::vector<bool> visited(n, false);
    std::uint64_t order = 1;
    unsigned transpositions = 0;
    for (unsigned s = 0; s < n; ++s) {
      if (visited[s]) continue;
      std::uint64_t len = 0;
      for (unsigned x = s; !visited[x]; x = perm[x]) {
        visited[x] = true;
        ++len;
      }
      transpositions += static_cast<unsigned>(len - 1);
      order = std::lcm(order, len);
    }
    if (even_only && transpositions % 2 != 0) continue;
    ++fp.order;
    ++fp.histogram[order];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return fp;
}

BigInt expected_order(std::string_view name, std::uint32_t p, unsigned a) {
  if (name == target::kSym4) return 24;
  if (name == target::kAlt4) return 12;
  if (name == target::kNormalizer24) return 24;
  if (name == target::kNormalizer48) return 48;
  const BigInt q = boost::multiprecision::pow(BigInt(p), a);
  if (name == target::kPGL2) return group_order(Flavor::PGL2, q);
  if (name == target::kPSL2) return group_order(Flavor::PSL2, q);
  if (name == target::kSL2) return group_order(Flavor::SL2, q);
  throw Error(ErrorKind::InvalidInput, "unknown target '" + std::string(name) + "'");
}

namespace {

GroupFingerprint matrix_group_fingerprint(Flavor flavor, std::uint32_t p, unsigned a,
                                          std::size_t cap) {
  const Field f = Field::create(p, a, 1);
  Rng rng(1);
  const auto gens = standard_generators(flavor, f, rng);
  const auto elements = closure_enumerate(gens, flavor, cap);
  return fingerprint(OrderOracle::for_group(flavor, p, a), elements);
}

// N(Q8) in SL2(7): Q8 = <a, b> with a = [[0,1],[-1,0]] and b a pseudo-involution
// inverting a; the normalizer is found by testing every element of SL2(7).
GroupFingerprint binary_octahedral_fingerprint(std::size_t cap) {
  const Field f = Field::create(7, 1, 1);
  Rng rng(1);
  const auto sl2 = closure_enumerate(standard_generators(Flavor::SL2, f, rng), Flavor::SL2, cap);
  const Mat2 a = mat_from_ints(f, 0, 1, -1, 0);
  const Mat2 minus_one = mat_from_ints(f, -1, 0, 0, -1);
  const Mat2 a_inv = mat_inv(a);
  const Mat2* b = nullptr;
  for (const Mat2& g : sl2) {
    if (mat_mul(g, g) == minus_one && mat_mul(mat_mul(mat_inv(g), a), g) == a_inv) {
      b = &g;
      break;
    }
  }
  if (!b) throw Error(ErrorKind::InvalidInput, "no quaternion pair in SL2(7)");
  const std::vector<Mat2> q8_gens{a, *b};
  const auto q8 = closure_enumerate(q8_gens, Flavor::SL2, cap);
  auto in_q8 = [&](const Mat2& m) { return std::find(q8.begin(), q8.end(), m) != q8.end(); };
  std::vector<Mat2> normalizer;
  for (const Mat2& g : sl2) {
    const Mat2 g_inv = mat_inv(g);
    if (in_q8(mat_mul(mat_mul(g_inv, a), g)) && in_q8(mat_mul(mat_mul(g_inv, *b), g)))
      normalizer.push_back(g);
  }
  return fingerprint(OrderOracle::for_group(Flavor::SL2, 7, 1), normalizer);
}

}  // namespace

GroupFingerprint reference_fingerprint(std::string_view name, std::uint32_t p, unsigned a,
                                       std::size_t cap) {
  if (expected_order(name, p, a) > cap)
    throw Error(ErrorKind::Overflow, "reference group larger than cap");
  if (name == target::kSym4) return permutation_fingerprint(4, false);
  if (name == target::kAlt4) return permutation_fingerprint(4, true);
  if (name == target::kNormalizer24) return matrix_group_fingerprint(Flavor::SL2, 3, 1, cap);
  if (name == target::kNormalizer48) return binary_octahedral_fingerprint(cap);
  if (name == target::kPGL2) return matrix_group_fingerprint(Flavor::PGL2, p, a, cap);
  if (name == target::kPSL2) return matrix_group_fingerprint(Flavor::PSL2, p, a, cap);
  return matrix_group_fingerprint(Flavor::SL2, p, a, cap);
}

bool assert_type(const GroupFingerprint& observed, const GroupFingerprint& expected) {
  return observed == expected;
}

VerifyOutcome verify_generators(std::span<const Mat2> generators, Flavor flavor,
                                std::string_view target, std::uint32_t p, unsigned k, unsigned a,
                                std::size_t cap) {
  VerifyOutcome out;
  if (expected_order(target, p, a) > cap) {
    out.note = "expected order exceeds cap " + std::to_string(cap);
    return out;
  }
  if (generators.empty()) {
    out.status = VerifyStatus::Mismatch;
    out.note = "no generators";
    return out;
  }
  for (const Mat2& g : generators) {
    const Field& f = *g.field;
    const FieldElem dt = det(g);
    if (f.is_zero(dt) || (flavor != Flavor::PGL2 && !f.is_one(dt))) {
      out.status = VerifyStatus::Mismatch;
      out.note = "generator outside the group";
      return out;
    }
  }
  out.expected = reference_fingerprint(target, p, a, cap);
  std::vector<Mat2> elements;
  try {
    elements = closure_enumerate(generators, flavor, cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    out.status = VerifyStatus::Mismatch;
    out.note = "closure larger than cap";
    return out;
  }
  try {
    out.observed = fingerprint(OrderOracle::for_group(flavor, p, k), elements);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ExponentViolated) throw;
    out.status = VerifyStatus::Mismatch;
    out.note = e.what();
    return out;
  }
  out.status = assert_type(*out.observed, *out.expected) ? VerifyStatus::Verified
                                                         : VerifyStatus::Mismatch;
  return out;
}

}  // namespace bbg
