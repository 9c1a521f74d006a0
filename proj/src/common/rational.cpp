#include "common/rational.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace gformal {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  require(!s.empty(), ErrorCode::InvalidArgument, "empty rational literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Decimal literal: exact conversion via powers of ten.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    Integer num;
    if (num.set_str(digits, 10) != 0)
      fail(ErrorCode::InvalidArgument, "malformed rational literal '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (s.front() == '+') s.erase(s.begin());
  if (q.set_str(s, 10) != 0) fail(ErrorCode::InvalidArgument, "malformed rational literal '" + s + "'");
  require(sgn(q.get_den()) != 0, ErrorCode::InvalidArgument, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rationalize(double x, long max_den) {
  require(std::isfinite(x), ErrorCode::InvalidArgument, "cannot rationalize a non-finite value");
  // Continued fraction convergents.
  long double v = x;
  long sign = v < 0 ? -1 : 1;
  v = std::fabs(v);
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(v);
    Integer ai(static_cast<double>(a));
    Integer h2 = ai * h1 + h0;
    Integer k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double rest = v - a;
    if (rest < 1e-18L) break;
    v = 1.0L / rest;
  }
  if (k1 == 0) return Rational(0);
  Rational q(sign * h1, k1);
  q.canonicalize();
  return q;
}

namespace modp {

std::uint64_t inverse(std::uint64_t a) {
  require(a % kPrime != 0, ErrorCode::Internal, "inverse of zero mod p");
  std::uint64_t result = 1, base = a % kPrime, e = kPrime - 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> image(const Rational& q) {
  static const Integer p(static_cast<unsigned long>(kPrime));
  Integer num = q.get_num() % p;
  if (num < 0) num += p;
  Integer den = q.get_den() % p;
  if (den == 0) return std::nullopt;
  std::uint64_t n = num.get_ui();
  std::uint64_t d = den.get_ui();
  return mul(n, inverse(d));
}

std::optional<Rational> reconstruct(std::uint64_t a) {
  // Extended Euclid on (p, a), stopping once the remainder drops below the bound.
  const std::int64_t bound = 32767;  // floor(sqrt(p/2))
  std::int64_t r0 = static_cast<std::int64_t>(kPrime), r1 = static_cast<std::int64_t>(a % kPrime);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 > bound) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || std::llabs(t1) > bound) return std::nullopt;
  Integer g;
  Integer num(static_cast<long>(t1 < 0 ? -r1 : r1));
  Integer den(static_cast<long>(std::llabs(t1)));
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace modp
}  // namespace gformal
