#pragma once

// Local factors of both sides: the noncommutative-torus zeta built from
// K0 orders of Cuntz-Krieger algebras, and the Hasse-Weil L-factors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncr/bigint.hpp"
#include "ncr/curves.hpp"
#include "ncr/kgroups.hpp"
#include "ncr/matrix.hpp"

namespace ncr {

enum class FactorSide { nc_torus, curve };
enum class FactorStatus { good, bad };

inline const char* to_string(FactorSide s) { return s == FactorSide::nc_torus ? "nc_torus" : "curve"; }
inline const char* to_string(FactorStatus s) { return s == FactorStatus::good ? "good" : "bad"; }

/// 1 + c1 T + c2 T^2 at a prime, tagged with its side and reduction status.
class LocalFactor {
 public:
  LocalFactor(std::uint64_t prime, BigInt c1, BigInt c2, FactorSide side, FactorStatus status)
      : prime_(prime), c1_(std::move(c1)), c2_(std::move(c2)), side_(side), status_(status) {
    const BigInt p = prime_;
    if (status_ == FactorStatus::bad) {
      if (c2_ != 0 || c1_ < -1 || c1_ > 1)
        throw std::invalid_argument("bad factor must be 1 + c1 T with c1 in {-1,0,1}");
    } else {
      if (c2_ != p) throw std::invalid_argument("good factor must have c2 = p");
      if (side_ == FactorSide::curve && c1_ * c1_ > 4 * p)
        throw std::invalid_argument("good curve factor violates |c1| <= 2 sqrt(p)");
    }
  }

  std::uint64_t prime() const { return prime_; }
  const BigInt& c1() const { return c1_; }
  const BigInt& c2() const { return c2_; }
  FactorSide side() const { return side_; }
  FactorStatus status() const { return status_; }

  bool same_polynomial(const LocalFactor& o) const { return c1_ == o.c1_ && c2_ == o.c2_; }

  long double evaluate(long double t) const {
    return 1.0L + c1_.convert_to<long double>() * t + c2_.convert_to<long double>() * t * t;
  }

  std::string render() const {
    std::string s = "1";
    auto term = [&](const BigInt& c, const char* mono) {
      if (c == 0) return;
      s += c < 0 ? " - " : " + ";
      BigInt m = abs(c);
      if (m != 1) s += m.str();
      s += mono;
    };
    term(c1_, "T");
    term(c2_, "T^2");
    return s;
  }

 private:
  std::uint64_t prime_;
  BigInt c1_;
  BigInt c2_;
  FactorSide side_;
  FactorStatus status_;
};

/// Coefficients of a power series truncated at degree N, exact rationals.
struct TruncatedSeries {
  std::vector<Rational> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
};

/// exp(sum_{n>=1} s_n z^n) to degree N, from n e_n = sum_{k=1..n} k s_k e_{n-k}.
/// `log_coeffs[k]` holds s_k; index 0 is ignored.
inline TruncatedSeries series_exp(const std::vector<Rational>& log_coeffs, std::size_t degree) {
  std::vector<Rational> e(degree + 1, Rational(0));
  e[0] = 1;
  for (std::size_t n = 1; n <= degree; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n && k < log_coeffs.size(); ++k) acc += Rational(static_cast<long long>(k)) * log_coeffs[k] * e[n - k];
    e[n] = acc / static_cast<long long>(n);
  }
  return {std::move(e)};
}

/// Taylor coefficients of 1 / (1 + c1 z + c2 z^2) to degree N.
inline TruncatedSeries reciprocal_series(const BigInt& c1, const BigInt& c2, std::size_t degree) {
  std::vector<Rational> r(degree + 1, Rational(0));
  r[0] = 1;
  for (std::size_t n = 1; n <= degree; ++n) {
    Rational v = -Rational(c1) * r[n - 1];
    if (n >= 2) v -= Rational(c2) * r[n - 2];
    r[n] = v;
  }
  return {std::move(r)};
}

inline TruncatedSeries reciprocal_series(const LocalFactor& f, std::size_t degree) {
  return reciprocal_series(f.c1(), f.c2(), degree);
}

namespace detail {
inline void require_rm_matrix(const IntMatrix& a) {
  if (a.n() != 2) throw std::invalid_argument("incidence matrix must be 2x2");
  if (determinant(a) != 1) throw std::invalid_argument("incidence matrix must have det = 1");
  if (trace(a) < 2) throw std::invalid_argument("incidence matrix must have trace >= 2");
}
}  // namespace detail

struct LpForms {
  BigInt trace_power;  // tr(A^p)
  IntMatrix intro;     // [[tr - p, p], [tr - p - 1, p]]
  IntMatrix canonical; // [[tr, p], [-1, 0]]
};

/// Both forms of L_p; their characteristic polynomials (x^2 - tr(A^p) x + p)
/// are compared before returning.
inline LpForms build_Lp(const IntMatrix& a, std::uint64_t p) {
  detail::require_rm_matrix(a);
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const BigInt t = trace(power(a, p));
  const BigInt bp = p;
  IntMatrix intro{{t - bp, bp}, {t - bp - 1, bp}};
  IntMatrix canonical{{t, bp}, {-1, 0}};
  const std::vector<BigInt> expected{1, -t, bp};
  if (char_poly(intro) != expected || char_poly(canonical) != expected) {
    throw std::logic_error("L_p forms disagree on the characteristic polynomial");
  }
  return {t, std::move(intro), std::move(canonical)};
}

/// p | tr(A)^2 - 4
inline bool is_bad_prime_nt(const IntMatrix& a, std::uint64_t p) {
  detail::require_rm_matrix(a);
  const BigInt t = trace(a);
  return (t * t - 4) % BigInt(p) == 0;
}

/// det(I - B^t) vanished at some power n of L_p.
class SeriesUndefined : public UndefinedResult {
 public:
  SeriesUndefined(std::size_t n, const std::string& what) : UndefinedResult(what), n_(n) {}
  std::size_t offending_power() const { return n_; }

 private:
  std::size_t n_;
};

/// exp(sum_n |K0(O_{eps_n})| / n z^n) to degree N, with eps_n = L_p^n at
/// good primes and 1 - alpha^n at bad ones (signed alpha^n; alpha = 0
/// gives the constant series 1).
inline TruncatedSeries zeta_local_nt_series(const IntMatrix& a, std::uint64_t p, std::optional<int> alpha,
                                            std::size_t degree = 8) {
  if (degree < 1) throw std::invalid_argument("truncation degree must be >= 1");
  std::vector<Rational> logc(degree + 1, Rational(0));
  if (is_bad_prime_nt(a, p)) {
    if (!alpha) throw std::invalid_argument("bad prime " + std::to_string(p) + " needs alpha");
    if (*alpha < -1 || *alpha > 1) throw std::invalid_argument("alpha must be in {-1,0,1}");
    if (*alpha == 0) {
      TruncatedSeries one{std::vector<Rational>(degree + 1, Rational(0))};
      one.coefficients[0] = 1;
      return one;
    }
    for (std::size_t n = 1; n <= degree; ++n)
      logc[n] = Rational((n % 2 == 1 && *alpha == -1) ? -1 : 1, static_cast<long long>(n));
    return series_exp(logc, degree);
  }
  const IntMatrix lp = build_Lp(a, p).intro;
  IntMatrix lpn = IntMatrix::identity(2);
  for (std::size_t n = 1; n <= degree; ++n) {
    lpn = lpn * lp;
    try {
      logc[n] = Rational(k0_order(lpn), BigInt(n));
    } catch (const UndefinedResult&) {
      throw SeriesUndefined(n, "K0(O_{L_p^" + std::to_string(n) + "}) is infinite at p = " + std::to_string(p));
    }
  }
  return series_exp(logc, degree);
}

/// Closed local factor: 1 - tr(A^p) T + p T^2 at good primes, 1 - alpha T at bad ones.
inline LocalFactor zeta_local_nt_closed(const IntMatrix& a, std::uint64_t p, std::optional<int> alpha) {
  if (is_bad_prime_nt(a, p)) {
    if (!alpha) throw std::invalid_argument("bad prime " + std::to_string(p) + " needs alpha");
    return {p, BigInt(-*alpha), 0, FactorSide::nc_torus, FactorStatus::bad};
  }
  return {p, -trace(power(a, p)), BigInt(p), FactorSide::nc_torus, FactorStatus::good};
}

/// Hasse-Weil local factor: 1 - a_p T + p T^2 (good), 1 - T (split),
/// 1 + T (nonsplit), 1 (additive).
inline LocalFactor local_l_factor_curve(const WeierstrassCurve& curve, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (curve.has_good_reduction(p)) {
    return {p, BigInt(-trace_of_frobenius(curve, p)), BigInt(p), FactorSide::curve, FactorStatus::good};
  }
  const ReductionType r = reduction_type(curve, p);
  return {p, BigInt(-r.alpha), 0, FactorSide::curve, FactorStatus::bad};
}

struct EulerProduct {
  long double value = 1.0L;
  std::vector<std::uint64_t> included;  // ascending
  std::vector<std::uint64_t> missing;   // primes <= P_max without a factor
};

/// prod 1 / factor(p^-s) over the supplied factors with p <= P_max,
/// accumulated in ascending prime order.
inline EulerProduct euler_product_truncated(std::vector<LocalFactor> factors, long double s, std::uint64_t p_max) {
  std::sort(factors.begin(), factors.end(),
            [](const LocalFactor& x, const LocalFactor& y) { return x.prime() < y.prime(); });
  EulerProduct out;
  std::set<std::uint64_t> present;
  for (const auto& f : factors) {
    if (f.prime() > p_max) continue;
    if (!present.insert(f.prime()).second)
      throw std::invalid_argument("duplicate factor at p = " + std::to_string(f.prime()));
    const long double t = std::pow(static_cast<long double>(f.prime()), -s);
    const long double v = f.evaluate(t);
    if (v == 0.0L) throw UndefinedResult("Euler factor vanishes at p = " + std::to_string(f.prime()));
    out.value /= v;
    out.included.push_back(f.prime());
  }
  for (std::uint64_t p : primes_in_range(2, p_max))
    if (!present.count(p)) out.missing.push_back(p);
  return out;
}

}  // namespace ncr
