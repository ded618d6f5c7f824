#include "bbgroup/report.hpp"

#include <limits>
#include <string>

#include "bbgroup/error.hpp"

namespace bbg {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::InvalidInput, std::string("bad value for '") + what + "'");
  }
}

}  // namespace

Json field_to_json(const Field& f) {
  return Json{{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

Json elem_to_json(const Field& f, const FieldElem& e) { return Json(f.coeffs(e)); }

Json mat_to_json(const Mat2& m) {
  const Field& f = *m.field;
  return Json{{"rows", Json::array({Json::array({elem_to_json(f, m.a), elem_to_json(f, m.b)}),
                                    Json::array({elem_to_json(f, m.c), elem_to_json(f, m.d)})})}};
}

Mat2 mat_from_json(const Field& f, const Json& j) {
  const Json& rows = require(j, "rows");
  if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || rows[0].size() != 2 ||
      !rows[1].is_array() || rows[1].size() != 2)
    throw Error(ErrorKind::InvalidInput, "matrix rows must be 2x2");
  auto entry = [&](const Json& e) {
    return f.from_coeffs(get_as<std::vector<std::uint32_t>>(e, "matrix entry"));
  };
  return make_mat(f, entry(rows[0][0]), entry(rows[0][1]), entry(rows[1][0]), entry(rows[1][1]));
}

Json counters_to_json(const OpCounters& c) {
  return Json{{"mul", c.mul}, {"inv", c.inv}, {"eq", c.eq}, {"rand", c.rand}};
}

OpCounters counters_from_json(const Json& j) {
  OpCounters c;
  c.mul = get_as<std::uint64_t>(require(j, "mul"), "mul");
  c.inv = get_as<std::uint64_t>(require(j, "inv"), "inv");
  c.eq = get_as<std::uint64_t>(require(j, "eq"), "eq");
  c.rand = get_as<std::uint64_t>(require(j, "rand"), "rand");
  return c;
}

Json fingerprint_to_json(const GroupFingerprint& fp) {
  Json hist = Json::object();
  for (const auto& [order, count] : fp.histogram) hist[std::to_string(order)] = count;
  return Json{{"order", fp.order}, {"histogram", hist}};
}

GroupFingerprint fingerprint_from_json(const Json& j) {
  GroupFingerprint fp;
  fp.order = get_as<std::uint64_t>(require(j, "order"), "order");
  const Json& hist = require(j, "histogram");
  if (!hist.is_object()) throw Error(ErrorKind::InvalidInput, "histogram must be an object");
  for (const auto& [key, value] : hist.items()) {
    try {
      fp.histogram[std::stoull(key)] = get_as<std::uint64_t>(value, "histogram count");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "histogram key '" + key + "' is not an order");
    }
  }
  return fp;
}

Json bigint_to_json(const BigInt& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max())
    return Json(static_cast<std::uint64_t>(n));
  return Json(n.str());
}

Json result_to_json(const ConstructionResult& res, const Field& f) {
  Json j;
  j["flavor"] = std::string(to_string(res.flavor));
  j["p"] = res.p;
  j["k"] = res.k;
  if (res.a) j["a"] = *res.a;
  j["target"] = res.target;
  j["field"] = field_to_json(f);
  Json gens = Json::array();
  for (const Mat2& g : res.generators) gens.push_back(mat_to_json(g));
  j["generators"] = gens;

  Json elems;
  elems["i"] = mat_to_json(res.i);
  elems["j"] = mat_to_json(res.j);
  elems["k"] = mat_to_json(res.ij);
  elems["x"] = mat_to_json(res.x);
  if (res.s) elems["s"] = mat_to_json(*res.s);
  if (res.t) elems["t"] = mat_to_json(*res.t);
  if (res.r) elems["r"] = mat_to_json(*res.r);
  j["elements"] = elems;

  const Order3Witness& w = res.witness;
  j["witness"] = Json{{"g", mat_to_json(w.g)},   {"h1", mat_to_json(w.h1)},
                      {"n1", mat_to_json(w.n1)}, {"h2", mat_to_json(w.h2)},
                      {"n2", mat_to_json(w.n2)}, {"x", mat_to_json(w.x)}};
  j["involution_type"] = std::string(to_string(res.tag));
  j["torus_order"] = bigint_to_json(res.torus_order);
  j["counters"] = counters_to_json(res.counters);
  Json stages = Json::array();
  for (const StageCounters& st : res.stages)
    stages.push_back(Json{{"stage", st.stage}, {"counters", counters_to_json(st.ops)}});
  j["stages"] = stages;
  j["seed"] = res.seed;
  j["retries"] = res.retries;
  return j;
}

StoredResult result_from_json(const Json& doc) {
  const Json& j = doc.is_object() && doc.contains("result") ? doc.at("result") : doc;
  StoredResult out;
  try {
    out.flavor = parse_flavor(get_as<std::string>(require(j, "flavor"), "flavor"));
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidInput, "unknown flavor");
  }
  out.p = get_as<std::uint32_t>(require(j, "p"), "p");
  out.k = get_as<unsigned>(require(j, "k"), "k");
  if (j.contains("a") && !j.at("a").is_null()) out.a = get_as<unsigned>(j.at("a"), "a");
  out.target = get_as<std::string>(require(j, "target"), "target");

  const Json& fj = require(j, "field");
  const auto modulus = get_as<std::vector<std::uint32_t>>(require(fj, "modulus"), "modulus");
  out.field = std::make_shared<const Field>(Field::with_modulus(out.p, modulus));
  if (out.field->degree() != out.k)
    throw Error(ErrorKind::InvalidInput, "field degree does not match k");

  const Json& gens = require(j, "generators");
  if (!gens.is_array()) throw Error(ErrorKind::InvalidInput, "generators must be an array");
  for (const Json& g : gens) out.generators.push_back(mat_from_json(*out.field, g));
  return out;
}

}  // namespace bbg
