#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ncr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when a computation is well-formed but its result does not exist
// (infinite K0, index not found within bound, pole of an Euler factor).
class UndefinedResult : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown for primes the reduction analysis does not cover (p = 2, 3).
class UnsupportedPrime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline std::string to_string(const BigInt& v) { return v.str(); }

// Boost 1.74's cpp_rational rejects a negative denominator in its two-argument constructor.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) return Rational(BigInt(-num), BigInt(-den));
  return Rational(num, den);
}

inline std::string to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s);
}

inline BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Floor division (boost's operator/ truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt floor_mod(const BigInt& a, const BigInt& b) { return a - floor_div(a, b) * b; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline BigInt isqrt(const BigInt& v) {
  if (v < 0) throw std::domain_error("isqrt of a negative integer");
  return boost::multiprecision::sqrt(v);
}

inline bool is_perfect_square(const BigInt& v) {
  if (v < 0) return false;
  BigInt r = isqrt(v);
  return r * r == v;
}

inline bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& v) {
  if (!fits_int64(v)) throw std::overflow_error("integer exceeds 64-bit range: " + v.str());
  return v.convert_to<std::int64_t>();
}

inline bool is_integer(const Rational& v) { return boost::multiprecision::denominator(v) == 1; }

inline BigInt to_bigint(const Rational& v) {
  if (!is_integer(v)) throw std::domain_error("rational is not an integer: " + to_string(v));
  return boost::multiprecision::numerator(v);
}

// Deterministic trial-division primality; callers stay at desk scale.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = lo < 2 ? 2 : lo; p <= hi; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

}  // namespace ncr
