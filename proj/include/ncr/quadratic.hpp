#pragma once

// Real quadratic irrationals, their periodic continued fractions, the
// incidence matrix of one period, fundamental units and the unit index.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncr/bigint.hpp"
#include "ncr/matrix.hpp"

namespace ncr {

/// a + b*sqrt(D) with rational a, b. D is a positive non-square.
class QuadraticNumber {
 public:
  QuadraticNumber(Rational a, Rational b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const BigInt& radicand() const { return d_; }

  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }
  Rational trace() const { return 2 * a_; }

  double to_double() const {
    return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
  }

  // Exact sign of a + b*sqrt(D).
  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 against b^2 D
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    check_same_field(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, x.d_};
  }
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    check_same_field(x, y);
    return {x.a_ - y.a_, x.b_ - y.b_, x.d_};
  }
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    check_same_field(x, y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * Rational(x.d_), x.a_ * y.b_ + x.b_ * y.a_, x.d_};
  }
  friend QuadraticNumber operator*(const Rational& k, const QuadraticNumber& x) {
    return {k * x.a_, k * x.b_, x.d_};
  }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) {
    return os << to_string(x.a_) << " + " << to_string(x.b_) << "*sqrt(" << x.d_ << ")";
  }

 private:
  static void check_same_field(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.d_ != y.d_) throw std::invalid_argument("quadratic numbers from different fields");
  }

  Rational a_;
  Rational b_;
  BigInt d_;
};

/// (P + sqrt(D)) / Q, normalized so that Q divides D - P^2 and no common
/// scale can be removed. The sign of Q is kept (it fixes the conjugate).
class QuadraticIrrational {
 public:
  QuadraticIrrational(BigInt p, BigInt d, BigInt q) : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)) {
    if (d_ <= 0) throw std::invalid_argument("quadratic irrational needs D > 0");
    if (is_perfect_square(d_)) throw std::invalid_argument("D = " + d_.str() + " is a perfect square");
    if (q_ == 0) throw std::invalid_argument("quadratic irrational needs Q != 0");
    if ((d_ - p_ * p_) % q_ != 0) {
      BigInt s = abs(q_);
      p_ *= s;
      d_ *= s * s;
      q_ *= s;
    }
    reduce();
  }

  static QuadraticIrrational golden() { return {1, 5, 2}; }
  static QuadraticIrrational sqrt_of(const BigInt& d) { return {0, d, 1}; }

  const BigInt& p() const { return p_; }
  const BigInt& d() const { return d_; }
  const BigInt& q() const { return q_; }

  QuadraticNumber value() const { return {make_rational(p_, q_), make_rational(1, q_), d_}; }
  double to_double() const { return value().to_double(); }

  friend bool operator==(const QuadraticIrrational&, const QuadraticIrrational&) = default;

  friend std::ostream& operator<<(std::ostream& os, const QuadraticIrrational& t) {
    return os << "(" << t.p_ << " + sqrt(" << t.d_ << "))/" << t.q_;
  }

 private:
  // Largest g with g | P, g | Q, g^2 | D and g | (D - P^2)/Q, factored prime by prime.
  void reduce() {
    BigInt g = gcd(gcd(p_, q_), (d_ - p_ * p_) / q_);
    BigInt scale = 1;
    BigInt rest = g;
    auto take = [&](const BigInt prime) {
      int eg = 0;
      while (rest % prime == 0) {
        rest /= prime;
        ++eg;
      }
      BigInt dd = d_;
      int ed = 0;
      while (ed < 2 * eg && dd % prime == 0) {
        dd /= prime;
        ++ed;
      }
      for (int k = 0; k < std::min(eg, ed / 2); ++k) scale *= prime;
    };
    for (BigInt f = 2; f * f <= rest; ++f) {
      if (rest % f == 0) take(f);
    }
    if (rest > 1) take(rest);
    if (scale > 1) {
      p_ /= scale;
      q_ /= scale;
      d_ /= scale * scale;
    }
  }

  BigInt p_;
  BigInt d_;
  BigInt q_;
};

/// Exact three-way comparison of theta against a rational.
inline int compare(const QuadraticIrrational& theta, const Rational& r) {
  return (theta.value() - QuadraticNumber(r, 0, theta.d())).sign();
}

/// Eventually periodic continued fraction [pre; period...]. The period is
/// kept minimal and the preperiod is kept as short as possible.
class ContinuedFraction {
 public:
  ContinuedFraction(std::vector<BigInt> preperiod, std::vector<BigInt> period)
      : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("continued fraction period must be nonempty");
    for (const auto& a : period_)
      if (a < 1) throw std::invalid_argument("period partial quotients must be >= 1");
    for (std::size_t i = 1; i < preperiod_.size(); ++i)
      if (preperiod_[i] < 1) throw std::invalid_argument("partial quotients after the first must be >= 1");
    canonicalize();
  }

  const std::vector<BigInt>& preperiod() const { return preperiod_; }
  const std::vector<BigInt>& period() const { return period_; }
  bool purely_periodic() const { return preperiod_.empty(); }

  /// k-th partial quotient of the infinite expansion.
  const BigInt& term(std::size_t k) const {
    if (k < preperiod_.size()) return preperiod_[k];
    return period_[(k - preperiod_.size()) % period_.size()];
  }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

  friend std::ostream& operator<<(std::ostream& os, const ContinuedFraction& cf) {
    os << '[';
    for (std::size_t i = 0; i < cf.preperiod_.size(); ++i) os << (i ? "," : "") << cf.preperiod_[i];
    os << (cf.preperiod_.empty() ? "" : "; ") << "(";
    for (std::size_t i = 0; i < cf.period_.size(); ++i) os << (i ? "," : "") << cf.period_[i];
    return os << ")]";
  }

 private:
  void canonicalize() {
    const std::size_t n = period_.size();
    for (std::size_t len = 1; len < n; ++len) {
      if (n % len != 0) continue;
      bool repeats = true;
      for (std::size_t i = len; i < n && repeats; ++i) repeats = period_[i] == period_[i - len];
      if (repeats) {
        period_.resize(len);
        break;
      }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
      preperiod_.pop_back();
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
  }

  std::vector<BigInt> preperiod_;
  std::vector<BigInt> period_;
};

/// Continued fraction of theta via the exact state map on (P, Q);
/// the period closes at the first repeated state.
inline ContinuedFraction expand(const QuadraticIrrational& theta) {
  const BigInt& d = theta.d();
  const BigInt s = isqrt(d);
  BigInt p = theta.p();
  BigInt q = theta.q();
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> terms;
  while (true) {
    auto [it, inserted] = seen.emplace(std::make_pair(p, q), terms.size());
    if (!inserted) {
      const std::size_t start = it->second;
      std::vector<BigInt> pre(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
      std::vector<BigInt> per(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end());
      return {std::move(pre), std::move(per)};
    }
    BigInt a = q > 0 ? floor_div(p + s, q) : floor_div(p + s + 1, q);
    terms.push_back(a);
    p = a * q - p;
    q = (d - p * p) / q;
  }
}

/// Convergents p_k/q_k for k = 0..count-1.
inline std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count) {
  std::vector<Rational> out;
  BigInt p_prev = 1, p = cf.term(0);
  BigInt q_prev = 0, q = 1;
  if (count > 0) out.emplace_back(p, q);
  for (std::size_t k = 1; k < count; ++k) {
    const BigInt& a = cf.term(k);
    BigInt pn = a * p + p_prev;
    BigInt qn = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
    out.emplace_back(p, q);
  }
  return out;
}

/// Product of [[a,1],[1,0]] over one period of the expansion (unsquared).
inline IntMatrix period_product(const ContinuedFraction& cf) {
  IntMatrix m = IntMatrix::identity(2);
  for (const auto& a : cf.period()) m = m * IntMatrix{{a, 1}, {1, 0}};
  return m;
}

/// Incidence matrix A of the periodic part. Odd periods give det = -1;
/// the product is then squared so that det(A) = +1.
inline IntMatrix matrix_A(const ContinuedFraction& cf) {
  IntMatrix m = period_product(cf);
  if (determinant(m) == -1) m = m * m;
  return m;
}

/// Larger eigenvalue (tr + sqrt(tr^2 - 4 det))/2 of a 2x2 matrix written
/// in Q(sqrt(D)); throws when the eigenvalue does not lie in that field.
inline QuadraticNumber perron_eigenvalue(const IntMatrix& m, const BigInt& d) {
  if (m.n() != 2) throw std::invalid_argument("perron_eigenvalue: 2x2 only");
  const BigInt t = trace(m);
  const BigInt disc = t * t - 4 * determinant(m);
  const BigInt prod = disc * d;
  if (disc <= 0 || !is_perfect_square(prod)) {
    throw std::invalid_argument("eigenvalue of " + to_string(m) + " is not in Q(sqrt(" + d.str() + "))");
  }
  const BigInt den = 2 * d;
  return {make_rational(t, 2), make_rational(isqrt(prod), den), d};
}

/// x + y*omega_D, omega_D = (1 + sqrt D)/2 when D = 1 mod 4, else sqrt D.
class RealQuadraticUnit {
 public:
  RealQuadraticUnit(BigInt x, BigInt y, BigInt d) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
    const BigInt nrm = norm();
    if (nrm != 1 && nrm != -1) throw std::invalid_argument("not a unit: norm " + nrm.str());
  }

  static bool half_integral_basis(const BigInt& d) { return d % 4 == 1; }

  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }
  const BigInt& d() const { return d_; }

  QuadraticNumber omega() const {
    if (half_integral_basis(d_)) return {Rational(1, 2), Rational(1, 2), d_};
    return {0, 1, d_};
  }

  QuadraticNumber value() const { return QuadraticNumber(Rational(x_), 0, d_) + Rational(y_) * omega(); }

  BigInt norm() const {
    if (half_integral_basis(d_)) return x_ * x_ + x_ * y_ - ((d_ - 1) / 4) * y_ * y_;
    return x_ * x_ - d_ * y_ * y_;
  }

  RealQuadraticUnit pow(std::uint64_t k) const {
    QuadraticNumber acc(1, 0, d_);
    const QuadraticNumber base = value();
    for (std::uint64_t i = 0; i < k; ++i) acc = acc * base;
    return from_value(acc);
  }

  static RealQuadraticUnit from_value(const QuadraticNumber& v) {
    const BigInt& d = v.radicand();
    if (half_integral_basis(d)) {
      // a + b sqrt D = (a - b) + 2b omega
      return {to_bigint(v.rational_part() - v.surd_part()), to_bigint(2 * v.surd_part()), d};
    }
    return {to_bigint(v.rational_part()), to_bigint(v.surd_part()), d};
  }

  friend bool operator==(const RealQuadraticUnit&, const RealQuadraticUnit&) = default;

 private:
  BigInt x_;
  BigInt y_;
  BigInt d_;
};

/// Smallest unit > 1 of Z[omega_D], read off the primitive period of the
/// continued fraction of omega_D.
inline RealQuadraticUnit fundamental_unit(const BigInt& d) {
  if (d <= 0 || is_perfect_square(d)) throw std::invalid_argument("fundamental_unit needs a positive non-square D");
  QuadraticIrrational omega = RealQuadraticUnit::half_integral_basis(d) ? QuadraticIrrational(1, d, 2)
                                                                        : QuadraticIrrational::sqrt_of(d);
  return RealQuadraticUnit::from_value(perron_eigenvalue(period_product(expand(omega)), d));
}

struct UnitIndexOptions {
  std::optional<std::uint64_t> max_iterations;  // default n^2 * period length
};

/// Smallest g >= 1 with eps^g in Z + (n theta)Z, where eps is the
/// fundamental unit of the multiplier ring of Z + Z theta.
inline std::uint64_t unit_index(const QuadraticIrrational& theta, std::uint64_t n, UnitIndexOptions opts = {}) {
  if (n == 0) throw std::invalid_argument("unit_index needs n >= 1");
  if (n == 1) return 1;
  const ContinuedFraction cf = expand(theta);
  const QuadraticNumber eps = perron_eigenvalue(period_product(cf), theta.d());
  const QuadraticNumber th = theta.value();

  // coordinates of v in the basis {1, theta}
  auto coords = [&](const QuadraticNumber& v) {
    Rational y = v.surd_part() / th.surd_part();
    Rational x = v.rational_part() - y * th.rational_part();
    return std::make_pair(to_bigint(x), to_bigint(y));
  };
  const auto [e1x, e1y] = coords(eps);
  const auto [etx, ety] = coords(eps * th);

  const std::uint64_t bound =
      opts.max_iterations.value_or(n * n * static_cast<std::uint64_t>(cf.period().size()));
  const BigInt modulus = n;
  BigInt x = e1x, y = e1y;
  for (std::uint64_t g = 1; g <= bound; ++g) {
    if (y % modulus == 0) return g;
    BigInt nx = x * e1x + y * etx;
    BigInt ny = x * e1y + y * ety;
    x = std::move(nx);
    y = std::move(ny);
  }
  throw UndefinedResult("unit index not found within bound " + std::to_string(bound) + " for n = " +
                        std::to_string(n));
}

}  // namespace ncr
