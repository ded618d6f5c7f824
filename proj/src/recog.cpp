#include "bbgroup/recog.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "bbgroup/error.hpp"

namespace bbg {

namespace {

BigInt power_of(std::uint32_t p, unsigned e) { return boost::multiprecision::pow(BigInt(p), e); }

bool q_is_plus_minus_one_mod_8(const BigInt& q) {
  const auto r = static_cast<unsigned>(q % 8);
  return r == 1 || r == 7;
}

}  // namespace

std::string_view to_string(TypeTag tag) {
  switch (tag) {
    case TypeTag::Plus: return "plus";
    case TypeTag::Minus: return "minus";
    case TypeTag::Unique: return "unique";
    case TypeTag::Pseudo: return "pseudo";
  }
  return "?";
}

RecogConfig RecogConfig::from_env() {
  RecogConfig cfg;
  if (const char* env = std::getenv("BBGROUP_RETRY_BUDGET")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw Error(ErrorKind::InvalidInput, "BBGROUP_RETRY_BUDGET must be a positive integer");
    cfg.retry_budget = static_cast<unsigned>(v);
  }
  return cfg;
}

unsigned default_field_size_budget(std::uint32_t p, unsigned k_max) {
  const double loglog = std::log(static_cast<double>(k_max) * std::log(static_cast<double>(p)));
  return 16u * static_cast<unsigned>(std::ceil(std::max(loglog, 0.0) + 1.0));
}

unsigned find_field_size(BlackBox& bb, std::uint32_t p, unsigned k_max, unsigned sample_budget) {
  if (k_max < 1) throw Error(ErrorKind::InvalidInput, "k_max must be >= 1");
  if (sample_budget < default_field_size_budget(p, k_max))
    throw Error(ErrorKind::InvalidInput, "sample budget below 16 * ceil(log log q_max + 1)");

  std::vector<Mat2> samples;
  samples.reserve(sample_budget);
  for (unsigned n = 0; n < sample_budget; ++n) samples.push_back(bb.random());

  for (unsigned ell = 1; ell <= k_max; ++ell) {
    const BigInt e = BigInt(p) * (power_of(p, 2 * ell) - 1);
    bool all_trivial = true;
    for (const Mat2& g : samples) {
      if (!bb.is_identity(bb.pow(g, e))) {
        all_trivial = false;
        break;
      }
    }
    if (all_trivial) return ell;
  }
  throw Error(ErrorKind::ExceedsKMax, "no l <= " + std::to_string(k_max) + " annihilates the sample");
}

BigInt subfield_torus_divisor(std::uint32_t p, unsigned a, const BigInt& torus_order,
                              Flavor flavor) {
  if (a < 1) throw Error(ErrorKind::InvalidSubfieldDegree, "subfield degree must be >= 1");
  const BigInt pa = power_of(p, a);
  BigInt d;
  if (flavor == Flavor::PSL2) {
    if (a == 1 && p == 5) {
      d = 4;
    } else {
      d = ((pa - 1) / 2) % 2 == 0 ? BigInt((pa - 1) / 2) : BigInt((pa + 1) / 2);
    }
  } else {
    d = (pa - 1) % 4 == 0 ? BigInt(pa - 1) : BigInt(pa + 1);
  }
  if (torus_order % d != 0)
    throw Error(ErrorKind::DivisorUnavailable,
                "torus order " + torus_order.str() + " not divisible by " + d.str());
  return d;
}

std::string subfield_target(Flavor flavor, std::uint32_t p, unsigned a) {
  switch (flavor) {
    case Flavor::PGL2:
      return std::string(a == 1 && p == 5 ? target::kSym4 : target::kPGL2);
    case Flavor::PSL2:
      // For p^a = 9 the order-4 torus element r is a power of s, so <r, x> stays in Sym4.
      return std::string((a == 1 && (p == 5 || p == 7)) || (p == 3 && a == 2) ? target::kSym4
                                                                              : target::kPSL2);
    case Flavor::SL2:
      if (a == 1 && p == 5) return std::string(target::kNormalizer24);
      if ((a == 1 && p == 7) || (p == 3 && a == 2)) return std::string(target::kNormalizer48);
      return std::string(target::kSL2);
  }
  return {};
}

Recognizer::Recognizer(BlackBox& bb, RecogConfig config) : bb_(bb), config_(config) {}

std::optional<Mat2> Recognizer::involution_from(const Mat2& g) {
  Mat2 y = bb_.pow(g, bb_.odd_part());
  const Mat2 one = bb_.identity();
  if (bb_.eq_mod_center(y, one)) return std::nullopt;
  for (;;) {
    Mat2 z = bb_.mul(y, y);
    if (bb_.eq_mod_center(z, one)) return y;
    y = std::move(z);
  }
}

Mat2 Recognizer::make_involution() {
  for (unsigned attempt = 0; attempt < config_.retry_budget; ++attempt) {
    if (attempt > 0) ++retries_;
    if (auto inv = involution_from(bb_.random())) return *inv;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "make_involution: no even-order element drawn");
}

CentralizerSample Recognizer::centralizer_sample(const Mat2& i) {
  const Mat2 g = bb_.random();
  const Mat2 c = bb_.mul(bb_.inv(i), bb_.conj(i, g));
  if (auto n = bb_.odd_order_sqrt_mod_center(c)) return {bb_.mul(g, bb_.inv(*n)), true};
  // c has even order (modulo the center), so the chain reaches an involution.
  return {*involution_from(c), false};
}

TypeTag Recognizer::involution_type(const Mat2& i, const BigInt& q) {
  switch (bb_.flavor()) {
    case Flavor::PSL2: return TypeTag::Unique;
    case Flavor::SL2: return TypeTag::Pseudo;
    case Flavor::PGL2: break;
  }
  const Mat2 one = bb_.identity();
  for (unsigned n = 0; n < config_.type_samples; ++n) {
    const CentralizerSample smp = centralizer_sample(i);
    if (!smp.odd) continue;
    const Mat2& g = smp.element;
    if (bb_.eq(bb_.mul(g, g), one)) continue;
    if (!bb_.eq(bb_.pow(g, q + 1), one)) return TypeTag::Plus;
    if (!bb_.eq(bb_.pow(g, q - 1), one)) return TypeTag::Minus;
  }
  throw Error(ErrorKind::Undecided, "no type certificate among centralizer samples");
}

RightInvolution Recognizer::right_type_involution(const BigInt& q) {
  const bool q_one_mod_4 = q % 4 == 1;
  const BigInt torus = q_one_mod_4 ? BigInt(q - 1) : BigInt(q + 1);
  for (unsigned attempt = 0; attempt < config_.retry_budget; ++attempt) {
    if (attempt > 0) ++retries_;
    const Mat2 i = make_involution();
    switch (bb_.flavor()) {
      case Flavor::PSL2:
        return {i, TypeTag::Unique, torus / 2};
      case Flavor::SL2:
        return {i, TypeTag::Pseudo, torus};
      case Flavor::PGL2: {
        TypeTag tag;
        try {
          tag = involution_type(i, q);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Undecided) throw;
          continue;
        }
        if (tag == (q_one_mod_4 ? TypeTag::Plus : TypeTag::Minus)) return {i, tag, torus};
        break;
      }
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "right_type_involution");
}

Mat2 Recognizer::torus_generator(const RightInvolution& inv, std::span<const BigInt> required_orders) {
  const BigInt& order = inv.torus_order;
  if (order % 2 != 0) throw Error(ErrorKind::InvalidInput, "torus order must be even");
  for (const BigInt& d : required_orders)
    if (d < 1 || order % d != 0)
      throw Error(ErrorKind::DivisorUnavailable, d.str() + " does not divide |T| = " + order.str());

  std::vector<Factorization> required_primes;
  for (const BigInt& d : required_orders) required_primes.push_back(factorize(d));

  const Mat2 one = bb_.identity();
  const bool sl2 = bb_.flavor() == Flavor::SL2;
  for (unsigned attempt = 0; attempt < config_.retry_budget; ++attempt) {
    if (attempt > 0) ++retries_;
    const CentralizerSample smp = centralizer_sample(inv.i);
    if (!smp.odd) continue;
    const Mat2& t = smp.element;
    // Membership in T: outside T the centralizer consists of involutions
    // (pseudo-involutions inverting i in SL2).
    if (sl2) {
      if (!bb_.eq(bb_.mul(t, inv.i), bb_.mul(inv.i, t))) continue;
      if (bb_.eq_mod_center(t, one)) continue;
    } else if (bb_.eq(bb_.mul(t, t), one)) {
      continue;
    }
    if (bb_.eq(bb_.pow(t, order / 2), one)) continue;
    if (!bb_.eq(bb_.pow(t, order), one)) continue;

    bool exact = true;
    for (std::size_t idx = 0; exact && idx < required_orders.size(); ++idx) {
      const BigInt& d = required_orders[idx];
      const Mat2 r = bb_.pow(t, order / d);
      for (const auto& [prime, e] : required_primes[idx]) {
        if (bb_.eq(bb_.pow(r, d / prime), one)) {
          exact = false;
          break;
        }
      }
    }
    if (exact) return t;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "torus_generator");
}

Mat2 Recognizer::inverting_involution(const RightInvolution& inv, const std::optional<Mat2>& t) {
  const Mat2& i = inv.i;
  const Mat2 one = bb_.identity();
  const Flavor flavor = bb_.flavor();
  const BigInt q = bb_.field().order();
  std::optional<Mat2> t_inv;
  if (t) t_inv = bb_.inv(*t);

  for (unsigned attempt = 0; attempt < config_.retry_budget; ++attempt) {
    if (attempt > 0) ++retries_;
    const Mat2 w = centralizer_sample(i).element;
    if (bb_.eq_mod_center(w, one) || bb_.eq_mod_center(w, i)) continue;
    if (flavor == Flavor::SL2) {
      // pseudo-involution: w^2 = i^2 = -I
      if (!bb_.eq(bb_.mul(w, w), bb_.mul(i, i))) continue;
    } else if (!bb_.eq(bb_.mul(w, w), one)) {
      continue;
    }
    if (!bb_.eq_mod_center(bb_.mul(w, i), bb_.mul(i, w))) continue;
    if (t && !bb_.eq_mod_center(bb_.conj(*t, w), *t_inv)) continue;
    if (flavor == Flavor::PGL2) {
      try {
        if (involution_type(w, q) != inv.tag) continue;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undecided) throw;
        continue;
      }
    }
    return w;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "inverting_involution");
}

std::optional<Mat2> Recognizer::torus_sqrt(const Mat2& h, const TorusHint& hint) {
  const Mat2 one = bb_.identity();
  BigInt m = hint.order;
  unsigned e = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  if (e == 0) return std::nullopt;
  // Squares of a cyclic group of order 2^e m are exactly the solutions of y^(2^(e-1) m) = 1.
  if (!bb_.eq(bb_.pow(h, hint.order / 2), one)) return std::nullopt;
  Mat2 c = bb_.pow(hint.t, m);
  Mat2 r = bb_.pow(h, (m + 1) / 2);
  Mat2 s = bb_.pow(h, m);
  unsigned level = e;
  while (!bb_.eq(s, one)) {
    unsigned least = 0;
    Mat2 y = s;
    while (!bb_.eq(y, one)) {
      y = bb_.mul(y, y);
      if (++least >= level) return std::nullopt;  // s outside the 2-part of <t>
    }
    Mat2 b = c;
    for (unsigned n = 0; n + least + 1 < level; ++n) b = bb_.mul(b, b);
    level = least;
    c = bb_.mul(b, b);
    s = bb_.mul(s, c);
    r = bb_.mul(r, b);
  }
  if (!bb_.eq(bb_.mul(r, r), h)) return std::nullopt;
  return r;
}

Order3Attempt Recognizer::order3_attempt(const Mat2& i, const Mat2& j, const Mat2& g,
                                         const TorusHint* hint) {
  Order3Attempt out;
  const Mat2 k = bb_.mul(i, j);
  const Mat2 h1 = bb_.mul(i, bb_.conj(j, g));
  const auto n1 = bb_.odd_order_sqrt_mod_center(h1);
  if (!n1) return out;
  out.h1_odd = true;

  const Mat2 y = bb_.mul(g, bb_.inv(*n1));
  const Mat2 h2 = bb_.mul(j, bb_.conj(k, y));
  auto n2 = bb_.odd_order_sqrt_mod_center(h2);
  if (n2) {
    out.h2_odd = true;
  } else if (hint) {
    // In SL2, -h2 is equally good: both give the same conjugation action.
    n2 = torus_sqrt(h2, *hint);
    if (!n2 && bb_.flavor() == Flavor::SL2) n2 = torus_sqrt(bb_.mul(h2, bb_.mul(i, i)), *hint);
    out.h2_torus_root = n2.has_value();
  }
  if (!n2) return out;

  const Mat2 x = bb_.mul(y, bb_.inv(*n2));
  const Mat2 one = bb_.identity();
  if (bb_.eq_mod_center(x, one)) return out;
  if (!bb_.eq_mod_center(bb_.mul(bb_.mul(x, x), x), one)) return out;
  const Mat2 x_inv = bb_.inv(x);
  auto maps_to = [&](const Mat2& from, const Mat2& to) {
    return bb_.eq_mod_center(bb_.mul(bb_.mul(x_inv, from), x), to);
  };
  if (!maps_to(k, j) || !maps_to(j, i) || !maps_to(i, k)) return out;
  out.witness = Order3Witness{g, h1, *n1, h2, *n2, x};
  return out;
}

Order3Witness Recognizer::order3_element(const Mat2& i, const Mat2& j, const TorusHint* hint) {
  for (unsigned attempt = 0; attempt < config_.retry_budget; ++attempt) {
    if (attempt > 0) ++retries_;
    auto res = order3_attempt(i, j, bb_.random(), hint);
    if (res.witness) return *res.witness;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "order3_element");
}

struct Recognizer::Pipeline {
  RightInvolution inv;
  std::optional<Mat2> t;
  Mat2 j;
  Order3Witness witness;
  std::vector<StageCounters> stages;
};

Recognizer::Pipeline Recognizer::run_pipeline(std::uint32_t p, unsigned k,
                                              std::vector<BigInt> required, bool need_torus) {
  const BigInt q = power_of(p, k);
  if (q != bb_.field().order())
    throw Error(ErrorKind::InvalidInput, "p^k does not match the black box field size");

  Pipeline pl;
  auto timed = [&](const char* name, auto&& body) {
    const OpCounters before = bb_.counters();
    body();
    pl.stages.push_back({name, bb_.counters() - before});
  };
  timed("involution", [&] { pl.inv = right_type_involution(q); });
  if (need_torus) timed("torus", [&] { pl.t = torus_generator(pl.inv, required); });
  timed("inverting", [&] { pl.j = inverting_involution(pl.inv, pl.t); });
  std::optional<TorusHint> hint;
  if (pl.t && config_.torus_sqrt_fallback) hint = TorusHint{*pl.t, pl.inv.torus_order};
  timed("order3", [&] { pl.witness = order3_element(pl.inv.i, pl.j, hint ? &*hint : nullptr); });
  return pl;
}

namespace {

ConstructionResult start_result(const BlackBox& bb, std::uint32_t p, unsigned k) {
  ConstructionResult res;
  res.flavor = bb.flavor();
  res.p = p;
  res.k = k;
  res.seed = bb.seed();
  return res;
}

}  // namespace

ConstructionResult Recognizer::construct_sym4(std::uint32_t p, unsigned k) {
  if (bb_.flavor() == Flavor::SL2)
    throw Error(ErrorKind::UnsupportedFlavor, "SL2 uses construct_sl2_normalizer");
  const OpCounters start = bb_.counters();
  const unsigned start_retries = retries_;
  const BigInt q = power_of(p, k);
  const bool sym = bb_.flavor() == Flavor::PGL2 || q_is_plus_minus_one_mod_8(q);
  const std::vector<BigInt> required = sym ? std::vector<BigInt>{4} : std::vector<BigInt>{};

  for (unsigned restart = 0; restart < config_.retry_budget; ++restart) {
    if (restart > 0) ++retries_;
    Pipeline pl = run_pipeline(p, k, required, sym);
    ConstructionResult res = start_result(bb_, p, k);
    res.i = pl.inv.i;
    res.j = pl.j;
    res.ij = bb_.mul(res.i, res.j);
    res.x = pl.witness.x;
    res.witness = pl.witness;
    res.tag = pl.inv.tag;
    res.torus_order = pl.inv.torus_order;
    res.t = pl.t;
    res.stages = std::move(pl.stages);

    const OpCounters before = bb_.counters();
    bool ok = true;
    if (sym) {
      const Mat2 s = bb_.pow(*pl.t, res.torus_order / 4);
      // s^2 is the involution of T, and s swaps j and k.
      ok = bb_.eq(bb_.mul(s, s), res.i) && bb_.eq(bb_.conj(res.j, s), res.ij);
      res.s = s;
      res.generators = {s, res.x};
      res.target = target::kSym4;
    } else {
      res.generators = {res.i, res.j, res.x};
      res.target = target::kAlt4;
    }
    res.stages.push_back({"assemble", bb_.counters() - before});
    if (!ok) continue;
    res.counters = bb_.counters() - start;
    res.retries = retries_ - start_retries;
    return res;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "construct_sym4");
}

ConstructionResult Recognizer::construct_sl2_normalizer(std::uint32_t p, unsigned k) {
  if (bb_.flavor() != Flavor::SL2)
    throw Error(ErrorKind::UnsupportedFlavor, "quaternion normalizer is an SL2 construction");
  const OpCounters start = bb_.counters();
  const unsigned start_retries = retries_;
  const BigInt q = power_of(p, k);
  const bool big = q_is_plus_minus_one_mod_8(q);
  const std::vector<BigInt> required = big ? std::vector<BigInt>{8} : std::vector<BigInt>{};

  for (unsigned restart = 0; restart < config_.retry_budget; ++restart) {
    if (restart > 0) ++retries_;
    Pipeline pl = run_pipeline(p, k, required, big);
    ConstructionResult res = start_result(bb_, p, k);
    res.i = pl.inv.i;
    res.j = pl.j;
    res.ij = bb_.mul(res.i, res.j);
    res.x = pl.witness.x;
    res.witness = pl.witness;
    res.tag = pl.inv.tag;
    res.torus_order = pl.inv.torus_order;
    res.t = pl.t;
    res.stages = std::move(pl.stages);

    const OpCounters before = bb_.counters();
    bool ok = true;
    if (big) {
      const Mat2 s = bb_.pow(*pl.t, res.torus_order / 8);
      const Mat2 s2 = bb_.mul(s, s);
      // s has order 8 and s^2 = +-i.
      ok = bb_.eq(bb_.mul(s2, s2), bb_.mul(res.i, res.i)) && bb_.eq_mod_center(s2, res.i);
      res.s = s;
      res.generators = {res.i, res.j, s, res.x};
      res.target = target::kNormalizer48;
    } else {
      res.generators = {res.i, res.j, res.x};
      res.target = target::kNormalizer24;
    }
    res.stages.push_back({"assemble", bb_.counters() - before});
    if (!ok) continue;
    res.counters = bb_.counters() - start;
    res.retries = retries_ - start_retries;
    return res;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "construct_sl2_normalizer");
}

ConstructionResult Recognizer::construct_subfield(std::uint32_t p, unsigned k, unsigned a) {
  if (a < 1 || k % a != 0)
    throw Error(ErrorKind::InvalidSubfieldDegree,
                std::to_string(a) + " does not divide " + std::to_string(k));
  const OpCounters start = bb_.counters();
  const unsigned start_retries = retries_;
  const Flavor flavor = bb_.flavor();
  const BigInt q = power_of(p, k);
  const BigInt torus = q % 4 == 1 ? BigInt(q - 1) : BigInt(q + 1);
  const BigInt torus_order = flavor == Flavor::PSL2 ? BigInt(torus / 2) : torus;
  const BigInt d = subfield_torus_divisor(p, a, torus_order, flavor);

  // s as in the Sym4 tuple, when T has room for it.
  BigInt s_order = 0;
  if (flavor == Flavor::PGL2) s_order = 4;
  else if (q_is_plus_minus_one_mod_8(q)) s_order = flavor == Flavor::SL2 ? 8 : 4;
  std::vector<BigInt> required;
  if (s_order > 0) required.push_back(s_order);
  if (d > 2) required.push_back(d);
  const bool need_torus = !required.empty();

  for (unsigned restart = 0; restart < config_.retry_budget; ++restart) {
    if (restart > 0) ++retries_;
    Pipeline pl = run_pipeline(p, k, required, need_torus);
    ConstructionResult res = start_result(bb_, p, k);
    res.a = a;
    res.i = pl.inv.i;
    res.j = pl.j;
    res.ij = bb_.mul(res.i, res.j);
    res.x = pl.witness.x;
    res.witness = pl.witness;
    res.tag = pl.inv.tag;
    res.torus_order = pl.inv.torus_order;
    res.t = pl.t;
    res.stages = std::move(pl.stages);

    const OpCounters before = bb_.counters();
    const Mat2 r = d > 2 ? bb_.pow(*pl.t, res.torus_order / d) : res.i;
    // r lies in T: its power of order 2 is i (or -I = i^2 in SL2).
    const Mat2 half = bb_.pow(r, d / 2);
    const bool ok = flavor == Flavor::SL2 ? bb_.eq(half, bb_.mul(res.i, res.i))
                                          : bb_.eq(half, res.i);
    if (s_order > 0) res.s = bb_.pow(*pl.t, res.torus_order / s_order);
    res.r = r;
    res.generators = {r, res.x};
    res.target = subfield_target(flavor, p, a);
    res.stages.push_back({"assemble", bb_.counters() - before});
    if (!ok) continue;
    res.counters = bb_.counters() - start;
    res.retries = retries_ - start_retries;
    return res;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "construct_subfield");
}

ConstructionResult construct_sym4(BlackBox& bb, std::uint32_t p, unsigned k,
                                  const RecogConfig& config) {
  return Recognizer(bb, config).construct_sym4(p, k);
}

ConstructionResult construct_sl2_normalizer(BlackBox& bb, std::uint32_t p, unsigned k,
                                            const RecogConfig& config) {
  return Recognizer(bb, config).construct_sl2_normalizer(p, k);
}

ConstructionResult construct_subfield(BlackBox& bb, std::uint32_t p, unsigned k, unsigned a,
                                      const RecogConfig& config) {
  return Recognizer(bb, config).construct_subfield(p, k, a);
}

}  // namespace bbg
