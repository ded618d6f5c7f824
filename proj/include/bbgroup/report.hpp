#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/recog.hpp"
#include "bbgroup/verify.hpp"

namespace bbg {

// Insertion-ordered so that reports serialize in a fixed, readable key order.
using Json = nlohmann::ordered_json;

Json field_to_json(const Field& f);
Json elem_to_json(const Field& f, const FieldElem& e);
Json mat_to_json(const Mat2& m);
Mat2 mat_from_json(const Field& f, const Json& j);
Json counters_to_json(const OpCounters& c);
OpCounters counters_from_json(const Json& j);
Json fingerprint_to_json(const GroupFingerprint& fp);
GroupFingerprint fingerprint_from_json(const Json& j);
/// A number when it fits in 64 bits, a decimal string otherwise.
Json bigint_to_json(const BigInt& n);

Json result_to_json(const ConstructionResult& res, const Field& f);

/// The parts of a serialized ConstructionResult needed to re-verify it.
struct StoredResult {
  Flavor flavor = Flavor::PGL2;
  std::uint32_t p = 0;
  unsigned k = 0;
  std::optional<unsigned> a;
  std::string target;
  std::shared_ptr<const Field> field;
  std::vector<Mat2> generators;
};

/// Accepts either a bare ConstructionResult object or a run report holding
/// one under "result". Throws InvalidInput on malformed documents.
StoredResult result_from_json(const Json& j);

}  // namespace bbg
