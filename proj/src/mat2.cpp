#include "bbgroup/mat2.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "bbgroup/error.hpp"

namespace bbg {

namespace {

void require_same_field(const Mat2& x, const Mat2& y) {
  if (x.field != y.field && !(x.field && y.field && *x.field == *y.field))
    throw Error(ErrorKind::ContextMismatch, "matrices over different fields");
}

const FieldElem* first_nonzero(const Mat2& x) {
  const Field& f = *x.field;
  for (const FieldElem* e : {&x.a, &x.b, &x.c, &x.d})
    if (!f.is_zero(*e)) return e;
  return nullptr;
}

}  // namespace

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::SL2: return "sl2";
    case Flavor::PSL2: return "psl2";
    case Flavor::PGL2: return "pgl2";
  }
  return "?";
}

Flavor parse_flavor(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "sl2") return Flavor::SL2;
  if (lower == "psl2") return Flavor::PSL2;
  if (lower == "pgl2") return Flavor::PGL2;
  throw Error(ErrorKind::InvalidInput, "unknown flavor '" + std::string(name) + "'");
}

Mat2 identity(const Field& f) { return make_mat(f, f.one(), f.zero(), f.zero(), f.one()); }

Mat2 make_mat(const Field& f, const FieldElem& a, const FieldElem& b, const FieldElem& c,
              const FieldElem& d) {
  return Mat2{&f, a, b, c, d};
}

Mat2 mat_from_ints(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c,
                   std::int64_t d) {
  return make_mat(f, f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d));
}

FieldElem det(const Mat2& x) {
  const Field& f = *x.field;
  return f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c));
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  require_same_field(x, y);
  const Field& f = *x.field;
  return Mat2{x.field,
              f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
              f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
              f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
              f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

Mat2 mat_inv(const Mat2& x) {
  const Field& f = *x.field;
  const FieldElem dt = det(x);
  if (f.is_zero(dt)) throw Error(ErrorKind::SingularMatrix, "inverse of singular matrix");
  if (f.is_one(dt)) return Mat2{x.field, x.d, f.neg(x.b), f.neg(x.c), x.a};
  const FieldElem s = f.inv(dt);
  return Mat2{x.field, f.mul(x.d, s), f.neg(f.mul(x.b, s)), f.neg(f.mul(x.c, s)), f.mul(x.a, s)};
}

Mat2 mat_scale(const Mat2& x, const FieldElem& s) {
  const Field& f = *x.field;
  return Mat2{x.field, f.mul(x.a, s), f.mul(x.b, s), f.mul(x.c, s), f.mul(x.d, s)};
}

Mat2 mat_neg(const Mat2& x) {
  const Field& f = *x.field;
  return Mat2{x.field, f.neg(x.a), f.neg(x.b), f.neg(x.c), f.neg(x.d)};
}

Mat2 mat_pow(const Mat2& x, const BigInt& n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
  Mat2 result = identity(*x.field);
  if (n == 0) return result;
  Mat2 base = x;
  const std::size_t top = boost::multiprecision::msb(n);
  for (std::size_t bit = 0; bit <= top; ++bit) {
    if (boost::multiprecision::bit_test(n, bit)) result = mat_mul(result, base);
    if (bit < top) base = mat_mul(base, base);
  }
  return result;
}

bool is_scalar(const Mat2& x) {
  const Field& f = *x.field;
  return f.is_zero(x.b) && f.is_zero(x.c) && x.a == x.d;
}

Mat2 canonicalize(const Mat2& x, Flavor flavor) {
  const Field& f = *x.field;
  if (f.is_zero(det(x))) throw Error(ErrorKind::SingularMatrix, "cannot canonicalize");
  switch (flavor) {
    case Flavor::SL2:
      return x;
    case Flavor::PGL2: {
      const FieldElem* lead = first_nonzero(x);
      if (f.is_one(*lead)) return x;
      return mat_scale(x, f.inv(*lead));
    }
    case Flavor::PSL2: {
      const FieldElem& lead = *first_nonzero(x);
      // lead and -lead first differ at lead's first nonzero coefficient.
      for (unsigned i = 0; i < f.degree(); ++i) {
        if (lead.c[i] == 0) continue;
        return lead.c[i] < f.characteristic() - lead.c[i] ? x : mat_neg(x);
      }
      return x;
    }
  }
  return x;
}

bool mat_eq(const Mat2& x, const Mat2& y, Flavor flavor) {
  require_same_field(x, y);
  switch (flavor) {
    case Flavor::SL2:
      return x == y;
    case Flavor::PSL2:
      return x == y || x == mat_neg(y);
    case Flavor::PGL2: {
      // Proportional entry vectors: every 2x2 minor of [x; y] vanishes.
      const Field& f = *x.field;
      const std::array<const FieldElem*, 4> u{&x.a, &x.b, &x.c, &x.d};
      const std::array<const FieldElem*, 4> v{&y.a, &y.b, &y.c, &y.d};
      for (int m = 0; m < 4; ++m)
        for (int n = m + 1; n < 4; ++n)
          if (!(f.mul(*u[m], *v[n]) == f.mul(*u[n], *v[m]))) return false;
      return true;
    }
  }
  return false;
}

bool mat_eq_mod_center(const Mat2& x, const Mat2& y, Flavor flavor) {
  return mat_eq(x, y, flavor == Flavor::SL2 ? Flavor::PSL2 : flavor);
}

std::vector<Mat2> standard_generators(Flavor flavor, const Field& f, Rng& rng) {
  std::vector<Mat2> gens{mat_from_ints(f, 1, 1, 0, 1), mat_from_ints(f, 1, 0, 1, 1)};
  if (flavor == Flavor::PGL2) {
    gens.push_back(make_mat(f, f.find_primitive(rng), f.zero(), f.zero(), f.one()));
  } else if (f.degree() > 1) {
    const FieldElem w = f.find_primitive(rng);
    gens.push_back(make_mat(f, w, f.zero(), f.zero(), f.inv(w)));
  }
  return gens;
}

BigInt exponent_for(Flavor /*flavor*/, std::uint32_t p, unsigned k) {
  const BigInt q = boost::multiprecision::pow(BigInt(p), k);
  return q * (q * q - 1);
}

BigInt group_order(Flavor flavor, const BigInt& q) {
  const BigInt full = q * (q * q - 1);
  return flavor == Flavor::PSL2 ? full / 2 : full;
}

MatKey mat_key(const Mat2& m) {
  const Field& f = *m.field;
  return {f.index(m.a), f.index(m.b), f.index(m.c), f.index(m.d)};
}

Mat2 mat_from_key(const Field& f, const MatKey& key) {
  return make_mat(f, f.from_index(key[0]), f.from_index(key[1]), f.from_index(key[2]),
                  f.from_index(key[3]));
}

}  // namespace bbg
