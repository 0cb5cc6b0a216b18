#pragma once

// Shared generators and brute-force oracles for the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "ncr/bigint.hpp"
#include "ncr/matrix.hpp"

namespace ncr_test {

using ncr::BigInt;
using ncr::IntMatrix;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline IntMatrix random_matrix(std::size_t n, std::int64_t lo, std::int64_t hi) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

/// Points on y^2 = x^3 + ax + b over F_p by double loop, plus infinity.
inline std::uint64_t naive_count(std::int64_t a, std::int64_t b, std::uint64_t p) {
  const auto P = static_cast<std::int64_t>(p);
  const std::int64_t am = ((a % P) + P) % P, bm = ((b % P) + P) % P;
  std::uint64_t n = 1;
  for (std::int64_t x = 0; x < P; ++x) {
    const std::int64_t rhs = ((x * x % P) * x + am * x + bm) % P;
    for (std::int64_t y = 0; y < P; ++y)
      if (y * y % P == rhs) ++n;
  }
  return n;
}

/// Cofactor expansion along the first row.
inline BigInt cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.n();
  if (n == 1) return m(0, 0);
  BigInt acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const BigInt term = m(0, j) * cofactor_det(minor);
    acc += (j % 2 == 0) ? term : BigInt(-term);
  }
  return acc;
}

/// gcd of all k x k minors (the k-th determinantal divisor).
inline BigInt determinantal_divisor(const IntMatrix& m, std::size_t k) {
  const std::size_t n = m.n();
  BigInt g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  auto next = [n, k](std::vector<std::size_t>& idx) {
    for (std::size_t i = k; i-- > 0;) {
      if (idx[i] < n - k + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      IntMatrix sub(k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = m(rows[r], cols[c]);
      g = ncr::gcd(g, cofactor_det(sub));
    } while (next(cols));
  } while (next(rows));
  return g;
}

}  // namespace ncr_test
