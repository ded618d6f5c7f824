#include "bbgroup/blackbox.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "bbgroup/error.hpp"

namespace bbg {

Factorization factorize(const BigInt& n_in) {
  Factorization out;
  if (n_in <= 1) return out;
  BigInt n = n_in;
  auto take = [&](const BigInt& d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  };
  take(2);
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    auto m = static_cast<std::uint64_t>(n);
    for (std::uint64_t d = 3; d <= m / d; d += 2) {
      if (m % d != 0) continue;
      unsigned e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      out.emplace_back(BigInt(d), e);
    }
    if (m > 1) out.emplace_back(BigInt(m), 1);
    return out;
  }
  for (BigInt d = 3; d * d <= n; d += 2) take(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

OrderOracle::OrderOracle(Flavor flavor, BigInt exponent, Factorization factors)
    : flavor_(flavor), exponent_(std::move(exponent)), factors_(std::move(factors)) {}

OrderOracle OrderOracle::for_group(Flavor flavor, std::uint32_t p, unsigned k) {
  const BigInt q = boost::multiprecision::pow(BigInt(p), k);
  std::map<BigInt, unsigned> merged;
  merged[BigInt(p)] += k;
  for (const BigInt& part : {BigInt(q - 1), BigInt(q + 1)})
    for (const auto& [prime, e] : factorize(part)) merged[prime] += e;
  Factorization factors(merged.begin(), merged.end());
  return OrderOracle(flavor, exponent_for(flavor, p, k), std::move(factors));
}

std::uint64_t OrderOracle::order(const Mat2& x) const {
  const Mat2 one = bbg::identity(*x.field);
  if (!mat_eq(mat_pow(x, exponent_), one, flavor_))
    throw Error(ErrorKind::ExponentViolated, "x^E is not the identity");
  BigInt ord = exponent_;
  for (const auto& [prime, e] : factors_) {
    const BigInt prime_power = boost::multiprecision::pow(prime, e);
    BigInt rest = ord / prime_power;
    Mat2 y = mat_pow(x, rest);
    while (!mat_eq(y, one, flavor_)) {
      y = mat_pow(y, prime);
      rest *= prime;
    }
    ord = rest;
  }
  return static_cast<std::uint64_t>(ord);
}

BlackBox::BlackBox(Flavor flavor, std::uint32_t p, unsigned k, std::uint64_t seed,
                   ProductReplacementConfig config)
    : flavor_(flavor),
      field_(std::make_shared<const Field>(Field::create(p, k, seed))),
      seed_(seed),
      rng_(seed) {
  if (config.slots < 2) throw Error(ErrorKind::InvalidInput, "product replacement needs >= 2 slots");
  generators_ = standard_generators(flavor_, *field_, rng_);
  exponent_ = exponent_for(flavor_, p, k);
  odd_part_ = exponent_;
  while (odd_part_ % 2 == 0) {
    odd_part_ /= 2;
    ++two_valuation_;
  }
  half_odd_plus_one_ = (odd_part_ + 1) / 2;

  slots_.reserve(config.slots);
  for (unsigned s = 0; s < config.slots; ++s) slots_.push_back(generators_[s % generators_.size()]);
  accumulator_ = bbg::identity(*field_);
  for (unsigned step = 0; step < config.burn_in; ++step) product_replacement_step();
}

void BlackBox::product_replacement_step() {
  const auto n = static_cast<std::uint64_t>(slots_.size());
  const std::uint64_t i = uniform_below(rng_, n);
  std::uint64_t j = uniform_below(rng_, n - 1);
  if (j >= i) ++j;
  const std::uint64_t bits = uniform_below(rng_, 4);
  const Mat2 y = (bits & 1u) ? mat_inv(slots_[j]) : slots_[j];
  slots_[i] = (bits & 2u) ? mat_mul(slots_[i], y) : mat_mul(y, slots_[i]);
  accumulator_ = mat_mul(accumulator_, slots_[i]);
}

Mat2 BlackBox::random() {
  product_replacement_step();
  ++counters_.rand;
  return accumulator_;
}

Mat2 BlackBox::mul(const Mat2& x, const Mat2& y) {
  ++counters_.mul;
  return mat_mul(x, y);
}

Mat2 BlackBox::inv(const Mat2& x) {
  ++counters_.inv;
  return mat_inv(x);
}

bool BlackBox::eq(const Mat2& x, const Mat2& y) {
  ++counters_.eq;
  return mat_eq(x, y, flavor_);
}

bool BlackBox::eq_mod_center(const Mat2& x, const Mat2& y) {
  ++counters_.eq;
  return mat_eq_mod_center(x, y, flavor_);
}

Mat2 BlackBox::pow(const Mat2& x, const BigInt& n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
  Mat2 result = identity();
  if (n == 0) return result;
  bool have_result = false;
  Mat2 base = x;
  const std::size_t top = boost::multiprecision::msb(n);
  for (std::size_t bit = 0; bit <= top; ++bit) {
    if (boost::multiprecision::bit_test(n, bit)) {
      if (have_result) {
        result = mul(result, base);
      } else {
        // identity * base: still one counted multiplication
        ++counters_.mul;
        result = base;
        have_result = true;
      }
    }
    if (bit < top) base = mul(base, base);
  }
  return result;
}

Mat2 BlackBox::conj(const Mat2& x, const Mat2& g) { return mul(mul(inv(g), x), g); }

std::optional<Mat2> BlackBox::odd_order_sqrt(const Mat2& h) {
  // n^2 = h^(u+1) equals h exactly when h^u = 1, i.e. when |h| is odd.
  Mat2 n = pow(h, half_odd_plus_one_);
  if (!eq(mul(n, n), h)) return std::nullopt;
  return n;
}

std::optional<Mat2> BlackBox::odd_order_sqrt_mod_center(const Mat2& h) {
  Mat2 n = pow(h, half_odd_plus_one_);
  if (!eq_mod_center(mul(n, n), h)) return std::nullopt;
  return n;
}

const OrderOracle& BlackBox::order_oracle() const {
  if (!oracle_)
    oracle_ = std::make_shared<const OrderOracle>(
        OrderOracle::for_group(flavor_, field_->characteristic(), field_->degree()));
  return *oracle_;
}

std::uint64_t BlackBox::element_order(const Mat2& x) const { return order_oracle().order(x); }

}  // namespace bbg
