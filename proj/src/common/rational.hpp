#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gformal {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "3", "-7/2", "0.25" into an exact rational. Throws gformal::Error.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

// Scalar-kind traits: the exact and float kinds never mix within one value.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static bool zero(const Rational& q) { return sgn(q) == 0; }
  static double to_double(const Rational& q) { return q.get_d(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float64";
  static bool zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
};

// Nearest rational with bounded denominator (continued fractions); used to
// turn float witnesses into exact candidates.
Rational rationalize(double x, long max_den = 1L << 20);

// Modular arithmetic helpers for the Mersenne prime 2^31 - 1.
namespace modp {
inline constexpr std::uint64_t kPrime = 2147483647ULL;

inline std::uint64_t reduce(std::uint64_t x) {
  x = (x & kPrime) + (x >> 31);
  x = (x & kPrime) + (x >> 31);
  return x >= kPrime ? x - kPrime : x;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return reduce(a * b); }
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t inverse(std::uint64_t a);

// Image of q in Z/p; nullopt when the denominator is divisible by p.
std::optional<std::uint64_t> image(const Rational& q);

// Wang's rational reconstruction; nullopt if no fraction with both parts
// below sqrt(p/2) maps to a.
std::optional<Rational> reconstruct(std::uint64_t a);
}  // namespace modp

}  // namespace gformal
