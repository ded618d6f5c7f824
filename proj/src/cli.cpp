#include "bbgroup/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bbgroup/report.hpp"
#include "bbgroup/verify.hpp"

namespace bbg {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RetryBudgetExhausted:
    case ErrorKind::Undecided:
    case ErrorKind::ExceedsKMax:
      return kExitLasVegas;
    case ErrorKind::ExponentViolated:
      return kExitMismatch;
    default:
      return kExitInvalid;
  }
}

ConstructionResult construct_small_subgroup(BlackBox& bb, std::uint32_t p, unsigned k,
                                            const RecogConfig& config) {
  if (bb.flavor() == Flavor::SL2) return construct_sl2_normalizer(bb, p, k, config);
  return construct_sym4(bb, p, k, config);
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

MedianCounters median_of(const std::vector<OpCounters>& runs) {
  std::vector<double> mul, inv, eq, rand;
  for (const OpCounters& c : runs) {
    mul.push_back(static_cast<double>(c.mul));
    inv.push_back(static_cast<double>(c.inv));
    eq.push_back(static_cast<double>(c.eq));
    rand.push_back(static_cast<double>(c.rand));
  }
  return {median(mul), median(inv), median(eq), median(rand)};
}

}  // namespace

BenchRow bench_row(Flavor flavor, std::uint32_t p, unsigned k, unsigned trials,
                   std::uint64_t seed, const RecogConfig& config) {
  struct Trial {
    bool ok = false;
    OpCounters total;
    std::vector<StageCounters> stages;
  };
  std::vector<Trial> results(trials);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t idx = 0; idx < n; ++idx) {
    Trial& tr = results[static_cast<std::size_t>(idx)];
    try {
      BlackBox bb(flavor, p, k, seed + static_cast<std::uint64_t>(idx));
      const ConstructionResult res = construct_small_subgroup(bb, p, k, config);
      tr.ok = true;
      tr.total = res.counters;
      tr.stages = res.stages;
    } catch (const Error&) {
      tr.ok = false;
    }
  }

  BenchRow row;
  row.k = k;
  row.trials = trials;
  std::vector<OpCounters> totals;
  std::map<std::string, std::vector<OpCounters>> per_stage;
  for (const Trial& tr : results) {
    if (!tr.ok) {
      ++row.failures;
      continue;
    }
    totals.push_back(tr.total);
    // A restarted pipeline repeats stage names; a trial's stage cost is the sum.
    std::map<std::string, OpCounters> sums;
    for (const StageCounters& st : tr.stages) {
      OpCounters& acc = sums[st.stage];
      acc.mul += st.ops.mul;
      acc.inv += st.ops.inv;
      acc.eq += st.ops.eq;
      acc.rand += st.ops.rand;
    }
    for (const auto& [name, ops] : sums) per_stage[name].push_back(ops);
  }
  row.total = median_of(totals);
  for (const auto& [name, runs] : per_stage) row.stages[name] = median_of(runs);
  return row;
}

namespace {

struct Common {
  std::string flavor = "pgl2";
  std::uint32_t p = 0;
  unsigned k = 0;
  unsigned a = 0;
  unsigned kmax = 16;
  unsigned budget = 0;
  std::uint64_t seed = 1;
  bool verify = false;
  bool json = false;
  std::string out_path;
  std::string input_path;
  std::size_t cap = kDefaultClosureCap;
  std::vector<unsigned> k_list;
  unsigned trials = 10;
};

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int n = 1; n < argc; ++n) {
    if (n > 1) s += ' ';
    s += argv[n];
  }
  return s;
}

Json median_json(const MedianCounters& m) {
  return Json{{"mul", m.mul}, {"inv", m.inv}, {"eq", m.eq}, {"rand", m.rand}};
}

std::string status_text(const Json& verified) {
  if (verified.is_boolean()) return verified.get<bool>() ? "true" : "false";
  return verified.get<std::string>();
}

class Runner {
 public:
  Runner(const Common& opt, std::string echo, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {
    report_["command"] = std::move(echo);
  }

  int field_size();
  int construct(bool subfield);
  int verify_file();
  int bench();

  int fail(const Error& e) {
    err_ << "error: " << e.what() << '\n';
    report_["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (!report_.contains("counters")) report_["counters"] = counters_to_json(counters_);
    emit({});
    return exit_code_for(e.kind());
  }

 private:
  const Common& opt_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  Json report_;
  OpCounters counters_;

  Flavor flavor() const { return parse_flavor(opt_.flavor); }

  void inputs(bool with_a) {
    Json in;
    in["flavor"] = opt_.flavor;
    in["p"] = opt_.p;
    in["k"] = opt_.k;
    if (with_a) in["a"] = opt_.a;
    in["seed"] = opt_.seed;
    report_["inputs"] = in;
  }

  void emit(const std::vector<std::string>& text) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
    report_["wall_time_ms"] = std::round(ms.count() * 1000.0) / 1000.0;
    const std::string doc = report_.dump(2) + "\n";
    if (opt_.json) {
      out_ << doc;
    } else {
      for (const std::string& line : text) out_ << line << '\n';
    }
    if (!opt_.out_path.empty()) {
      std::ofstream f(opt_.out_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + opt_.out_path);
      f << doc;
    }
  }

  static void put_verification(Json& report, const VerifyOutcome& v) {
    switch (v.status) {
      case VerifyStatus::Verified: report["verified"] = true; break;
      case VerifyStatus::Mismatch: report["verified"] = false; break;
      case VerifyStatus::Skipped: report["verified"] = "skipped"; break;
    }
    Json detail;
    if (v.observed) detail["observed"] = fingerprint_to_json(*v.observed);
    if (v.expected) detail["expected"] = fingerprint_to_json(*v.expected);
    if (!v.note.empty()) detail["note"] = v.note;
    report["verification"] = detail.is_null() ? Json::object() : detail;
  }
};

int Runner::field_size() {
  inputs(false);
  report_["inputs"]["kmax"] = opt_.kmax;
  BlackBox bb(flavor(), opt_.p, opt_.k, opt_.seed);
  const unsigned budget = opt_.budget ? opt_.budget : default_field_size_budget(opt_.p, opt_.kmax);
  unsigned found = 0;
  try {
    found = find_field_size(bb, opt_.p, opt_.kmax, budget);
  } catch (const Error& e) {
    counters_ = bb.counters();
    throw;
  }
  counters_ = bb.counters();
  const bool match = found == opt_.k;
  report_["result"] = Json{{"recovered_k", found}, {"true_k", opt_.k}, {"match", match},
                           {"samples", budget}};
  report_["counters"] = counters_to_json(counters_);
  std::ostringstream line;
  line << "recovered_k = " << found << " (true k = " << opt_.k << ", " << budget << " samples)";
  emit({line.str()});
  return match ? kExitOk : kExitLasVegas;
}

int Runner::construct(bool subfield) {
  inputs(subfield);
  const RecogConfig config = RecogConfig::from_env();
  const Flavor fl = flavor();
  BlackBox bb(fl, opt_.p, opt_.k, opt_.seed);
  ConstructionResult res;
  try {
    res = subfield ? construct_subfield(bb, opt_.p, opt_.k, opt_.a, config)
                   : construct_small_subgroup(bb, opt_.p, opt_.k, config);
  } catch (const Error&) {
    counters_ = bb.counters();
    throw;
  }
  report_["result"] = result_to_json(res, bb.field());
  int code = kExitOk;
  std::vector<std::string> text;
  text.push_back("target = " + res.target + ", " + std::to_string(res.generators.size()) +
                 " generators, retries = " + std::to_string(res.retries));
  if (opt_.verify) {
    const unsigned a = subfield ? opt_.a : opt_.k;
    const VerifyOutcome v = verify_generators(res.generators, fl, res.target, opt_.p, opt_.k, a, opt_.cap);
    put_verification(report_, v);
    if (v.status == VerifyStatus::Mismatch) code = kExitMismatch;
    std::string line = "verified = " + status_text(report_["verified"]);
    if (v.observed) line += ", order " + std::to_string(v.observed->order);
    text.push_back(line);
  } else {
    report_["verified"] = "skipped";
    report_["verification"] = Json{{"note", "not requested"}};
  }
  report_["counters"] = counters_to_json(res.counters);
  text.push_back("counters: mul " + std::to_string(res.counters.mul) + ", inv " +
                 std::to_string(res.counters.inv) + ", eq " + std::to_string(res.counters.eq) +
                 ", rand " + std::to_string(res.counters.rand));
  emit(text);
  return code;
}

int Runner::verify_file() {
  std::ifstream f(opt_.input_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot read " + opt_.input_path);
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  const StoredResult stored = result_from_json(doc);
  report_["inputs"] = Json{{"flavor", std::string(to_string(stored.flavor))},
                           {"p", stored.p},
                           {"k", stored.k},
                           {"target", stored.target}};
  if (stored.a) report_["inputs"]["a"] = *stored.a;
  const VerifyOutcome v =
      verify_generators(stored.generators, stored.flavor, stored.target, stored.p, stored.k,
                        stored.a.value_or(stored.k), opt_.cap);
  put_verification(report_, v);
  report_["counters"] = counters_to_json({});
  std::string line = "verified = " + status_text(report_["verified"]);
  if (v.observed) line += ", order " + std::to_string(v.observed->order);
  if (!v.note.empty()) line += " (" + v.note + ")";
  emit({line});
  return v.status == VerifyStatus::Mismatch ? kExitMismatch : kExitOk;
}

int Runner::bench() {
  const RecogConfig config = RecogConfig::from_env();
  const Flavor fl = flavor();
  report_["inputs"] = Json{{"flavor", opt_.flavor}, {"p", opt_.p}, {"k_list", opt_.k_list},
                           {"trials", opt_.trials}, {"seed", opt_.seed}};
  Json rows = Json::array();
  std::vector<std::string> text;
  std::ostringstream head;
  head << std::left << std::setw(5) << "k" << std::setw(9) << "trials" << std::setw(9) << "failed"
       << std::setw(14) << "median_rand" << std::setw(14) << "median_mul" << "median_eq";
  text.push_back(head.str());
  bool failed = false;
  OpCounters sum;
  for (unsigned k : opt_.k_list) {
    const BenchRow row = bench_row(fl, opt_.p, k, opt_.trials, opt_.seed, config);
    failed = failed || row.failures > 0;
    Json stages = Json::object();
    for (const auto& [name, m] : row.stages) stages[name] = median_json(m);
    rows.push_back(Json{{"k", k},
                        {"trials", row.trials},
                        {"failures", row.failures},
                        {"median", median_json(row.total)},
                        {"stages", stages}});
    sum.mul += static_cast<std::uint64_t>(row.total.mul);
    sum.inv += static_cast<std::uint64_t>(row.total.inv);
    sum.eq += static_cast<std::uint64_t>(row.total.eq);
    sum.rand += static_cast<std::uint64_t>(row.total.rand);
    std::ostringstream line;
    line << std::left << std::setw(5) << k << std::setw(9) << row.trials << std::setw(9)
         << row.failures << std::setw(14) << row.total.rand << std::setw(14) << row.total.mul
         << row.total.eq;
    text.push_back(line.str());
  }
  report_["result"] = Json{{"rows", rows}};
  report_["counters"] = counters_to_json(sum);
  emit(text);
  return failed ? kExitLasVegas : kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  Common opt;
  CLI::App app{"Black-box recognition toolkit for PGL2, PSL2 and SL2 over finite fields",
               "bbgroup"};
  app.require_subcommand(1);

  auto flavor_check = CLI::IsMember({"pgl2", "psl2", "sl2"}, CLI::ignore_case);
  auto add_group = [&](CLI::App* sub, bool k_required) {
    sub->add_option("--flavor", opt.flavor, "Group flavor")->transform(flavor_check);
    sub->add_option("--p", opt.p, "Odd prime characteristic")->required();
    auto* k = sub->add_option("--k", opt.k, "Extension degree of the backend field")
                  ->check(CLI::Range(1u, kMaxDegree));
    if (k_required) k->required();
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_flag("--json", opt.json, "Print the JSON report");
    sub->add_option("--out", opt.out_path, "Also write the JSON report to this file");
  };

  auto* fs = app.add_subcommand("field-size", "Recover k from p and random elements");
  add_group(fs, true);
  fs->add_option("--kmax", opt.kmax, "Largest degree considered")->check(CLI::PositiveNumber);
  fs->add_option("--budget", opt.budget, "Number of random samples");

  auto* sym4 = app.add_subcommand("sym4", "Construct Sym4/Alt4 (or the quaternion normalizer in SL2)");
  add_group(sym4, true);
  sym4->add_flag("--verify", opt.verify, "Enumerate and fingerprint the result");
  sym4->add_option("--cap", opt.cap, "Largest group enumerated by --verify");

  auto* sub = app.add_subcommand("subfield", "Construct a subfield subgroup over GF(p^a)");
  add_group(sub, true);
  sub->add_option("--a", opt.a, "Subfield degree (must divide k)")->required();
  sub->add_flag("--verify", opt.verify, "Enumerate and fingerprint the result");
  sub->add_option("--cap", opt.cap, "Largest group enumerated by --verify");

  auto* bench = app.add_subcommand("bench", "Median operation counts over seeded trials");
  bench->add_option("--flavor", opt.flavor, "Group flavor")->transform(flavor_check);
  bench->add_option("--p", opt.p, "Odd prime characteristic")->required();
  bench->add_option("--k-list", opt.k_list, "Comma-separated degrees")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(1u, kMaxDegree));
  bench->add_option("--trials", opt.trials, "Trials per degree")->check(CLI::PositiveNumber);
  bench->add_option("--seed", opt.seed, "Seed of trial 0");
  bench->add_flag("--json", opt.json, "Print the JSON report");
  bench->add_option("--out", opt.out_path, "Write the statistics JSON to this file");

  auto* ver = app.add_subcommand("verify", "Re-verify a stored construction result");
  ver->add_option("--input", opt.input_path, "Result or report JSON")->required();
  ver->add_option("--cap", opt.cap, "Largest group enumerated");
  ver->add_flag("--json", opt.json, "Print the JSON report");
  ver->add_option("--out", opt.out_path, "Also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  Runner runner(opt, command_echo(argc, argv), out, err);
  try {
    if (fs->parsed()) return runner.field_size();
    if (sym4->parsed()) return runner.construct(false);
    if (sub->parsed()) return runner.construct(true);
    if (bench->parsed()) return runner.bench();
    return runner.verify_file();
  } catch (const Error& e) {
    try {
      return runner.fail(e);
    } catch (const Error&) {
      return exit_code_for(e.kind());
    }
  }
}

}  // namespace bbg
