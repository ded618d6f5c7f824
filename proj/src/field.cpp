#include "bbgroup/field.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "bbgroup/error.hpp"

namespace bbg {

namespace {

// Dense polynomial over Z_p, constant term first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - quot * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - quot * new_r};
  }
  if (r != 1) throw Error(ErrorKind::DivisionByZero, "scalar has no inverse mod p");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    out[i] = (x + p - y) % p;
  }
  trim(out);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  trim(out);
  return out;
}

// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) return {Poly{}, std::move(a)};
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  Poly quot(a.size() - b.size() + 1, 0);
  for (std::size_t d = a.size(); d-- >= b.size();) {
    const std::uint64_t coef = a[d] * lead_inv % p;
    if (coef == 0) continue;
    const std::size_t shift = d - (b.size() - 1);
    quot[shift] = coef;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = (a[shift + j] + (p - coef) * b[j]) % p;
  }
  trim(a);
  trim(quot);
  return {std::move(quot), std::move(a)};
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    auto r = poly_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_divmod(std::move(base), f, p).second;
  while (e > 0) {
    if (e & 1u) result = poly_divmod(poly_mul(result, base, p), f, p).second;
    e >>= 1u;
    if (e > 0) base = poly_divmod(poly_mul(base, base, p), f, p).second;
  }
  return result;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  Poly f(monic.begin(), monic.end());
  for (auto& c : f) c %= p;
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;

  // frob[j] = x^(p^j) mod f
  std::vector<Poly> frob(k + 1);
  frob[0] = poly_divmod(Poly{0, 1}, f, p).second;
  for (std::size_t j = 1; j <= k; ++j) frob[j] = poly_powmod(frob[j - 1], p, f, p);

  const Poly x = poly_divmod(Poly{0, 1}, f, p).second;
  if (frob[k] != x) return false;
  for (unsigned ell : prime_divisors(static_cast<unsigned>(k))) {
    const Poly g = poly_gcd(f, poly_sub(frob[k / ell], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  q_ = boost::multiprecision::pow(BigInt(p_), k_);
}

Field Field::create(std::uint32_t p, unsigned k, std::uint64_t seed) {
  if (p % 2 == 0 || !is_prime(p) || p >= (1u << 31))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime below 2^31");
  if (k < 1 || k > kMaxDegree)
    throw Error(ErrorKind::InvalidDegree,
                "degree " + std::to_string(k) + " outside [1, " + std::to_string(kMaxDegree) + "]");
  if (k == 1) return Field(p, {0, 1});

  Rng rng(seed);
  std::vector<std::uint32_t> f(k + 1, 0);
  f[k] = 1;
  for (;;) {
    for (unsigned i = 0; i < k; ++i) f[i] = static_cast<std::uint32_t>(uniform_below(rng, p));
    if (f[0] != 0 && irreducible(p, f)) return Field(p, f);
  }
}

Field Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (p % 2 == 0 || !is_prime(p) || p >= (1u << 31))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime below 2^31");
  if (modulus.size() < 2 || modulus.size() - 1 > kMaxDegree)
    throw Error(ErrorKind::InvalidDegree, "modulus degree out of range");
  if (modulus.size() == 2) {
    if (modulus[0] != 0 || modulus[1] != 1)
      throw Error(ErrorKind::InvalidInput, "prime-field modulus must be x");
    return Field(p, std::move(modulus));
  }
  if (!irreducible(p, modulus)) throw Error(ErrorKind::InvalidInput, "modulus is not irreducible");
  return Field(p, std::move(modulus));
}

FieldElem Field::one() const {
  FieldElem e;
  e.c[0] = 1;
  return e;
}

FieldElem Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  FieldElem e;
  e.c[0] = static_cast<std::uint32_t>(((v % p) + p) % p);
  return e;
}

FieldElem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw Error(ErrorKind::InvalidInput, "too many coefficients");
  FieldElem e;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= p_) throw Error(ErrorKind::InvalidInput, "coefficient not reduced mod p");
    e.c[i] = coeffs[i];
  }
  return e;
}

FieldElem Field::generator() const {
  if (k_ == 1) return zero();
  FieldElem e;
  e.c[1] = 1;
  return e;
}

std::vector<std::uint32_t> Field::coeffs(const FieldElem& a) const {
  return {a.c.begin(), a.c.begin() + k_};
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint32_t s = a.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  for (unsigned i = 0; i < k_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
  return r;
}

FieldElem Field::neg(const FieldElem& a) const {
  FieldElem r;
  for (unsigned i = 0; i < k_; ++i) r.c[i] = a.c[i] == 0 ? 0 : p_ - a.c[i];
  return r;
}

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
  const std::uint64_t p = p_;
  if (k_ == 1) {
    FieldElem r;
    r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p);
    return r;
  }
  std::array<std::uint64_t, 2 * kMaxDegree - 1> t{};
  for (unsigned i = 0; i < k_; ++i) {
    if (a.c[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) t[i + j] = (t[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p;
  }
  // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
  for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
    const std::uint64_t coef = t[d];
    if (coef == 0) continue;
    const unsigned shift = d - k_;
    for (unsigned j = 0; j < k_; ++j)
      t[shift + j] = (t[shift + j] + coef * (p - modulus_[j])) % p;
  }
  FieldElem r;
  for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(t[i]);
  return r;
}

FieldElem Field::inv(const FieldElem& a) const {
  if (is_zero(a)) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const std::uint64_t p = p_;
  if (k_ == 1) {
    FieldElem r;
    r.c[0] = static_cast<std::uint32_t>(inv_mod(a.c[0], p));
    return r;
  }
  // Extended Euclid: track s with s*a == r (mod f).
  Poly r0(modulus_.begin(), modulus_.end());
  Poly r1(a.c.begin(), a.c.begin() + k_);
  trim(r1);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1, p);
    Poly s2 = poly_sub(s0, poly_mul(quot, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since f is irreducible.
  const std::uint64_t scale = inv_mod(r0[0], p);
  FieldElem r;
  for (std::size_t i = 0; i < s0.size(); ++i) r.c[i] = static_cast<std::uint32_t>(s0[i] * scale % p);
  return r;
}

FieldElem Field::pow(const FieldElem& a, const BigInt& n) const {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
  FieldElem result = one();
  if (n == 0) return result;
  const std::size_t top = boost::multiprecision::msb(n);
  for (std::size_t bit = top + 1; bit-- > 0;) {
    result = mul(result, result);
    if (boost::multiprecision::bit_test(n, bit)) result = mul(result, a);
  }
  return result;
}

FieldElem Field::random(Rng& rng) const {
  FieldElem e;
  for (unsigned i = 0; i < k_; ++i) e.c[i] = static_cast<std::uint32_t>(uniform_below(rng, p_));
  return e;
}

FieldElem Field::random_nonzero(Rng& rng) const {
  for (;;) {
    FieldElem e = random(rng);
    if (!is_zero(e)) return e;
  }
}

FieldElem Field::find_nonsquare(Rng& rng) const {
  const BigInt half = (q_ - 1) / 2;
  constexpr int kDraws = 256;
  for (int attempt = 0; attempt < kDraws; ++attempt) {
    const FieldElem z = random_nonzero(rng);
    if (!is_one(pow(z, half))) return z;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no nonsquare found");
}

FieldElem Field::find_primitive(Rng& rng) const {
  // Prime divisors of q - 1 by trial division.
  std::vector<BigInt> primes;
  BigInt n = q_ - 1;
  for (BigInt d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    primes.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) primes.push_back(n);

  constexpr int kDraws = 4096;
  for (int attempt = 0; attempt < kDraws; ++attempt) {
    const FieldElem z = random_nonzero(rng);
    const bool primitive = std::none_of(primes.begin(), primes.end(), [&](const BigInt& r) {
      return is_one(pow(z, (q_ - 1) / r));
    });
    if (primitive) return z;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no primitive element found");
}

std::uint64_t Field::index(const FieldElem& a) const {
  std::uint64_t idx = 0;
  for (unsigned i = k_; i-- > 0;) idx = idx * p_ + a.c[i];
  return idx;
}

FieldElem Field::from_index(std::uint64_t idx) const {
  FieldElem e;
  for (unsigned i = 0; i < k_; ++i) {
    e.c[i] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
  return e;
}

}  // namespace bbg
