#pragma once

// Endomorphism matrices of CM lattices, the matrix form of the Teichmuller
// functor F, the map rho onto units of the sublattice, and the index map.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ncr/bigint.hpp"
#include "ncr/matrix.hpp"
#include "ncr/quadratic.hpp"

namespace ncr {

/// u + v*omega in the maximal order of Q(sqrt(disc)), disc < 0;
/// omega = sqrt(disc)/2 for disc = 0 mod 4, (1 + sqrt(disc))/2 for disc = 1 mod 4.
class ImagQuadElement {
 public:
  ImagQuadElement(std::int64_t disc, std::int64_t u, std::int64_t v) : disc_(disc), u_(u), v_(v) {
    const std::int64_t r = ((disc % 4) + 4) % 4;
    if (disc >= 0 || (r != 0 && r != 1)) {
      throw std::invalid_argument("invalid imaginary quadratic discriminant " + std::to_string(disc));
    }
  }

  std::int64_t disc() const { return disc_; }
  std::int64_t u() const { return u_; }
  std::int64_t v() const { return v_; }

  // omega^2 = omega_trace * omega - omega_norm
  BigInt omega_trace() const { return disc_ % 4 == 0 ? 0 : 1; }
  BigInt omega_norm() const { return disc_ % 4 == 0 ? BigInt(-disc_ / 4) : BigInt((1 - disc_) / 4); }

  BigInt trace() const { return 2 * BigInt(u_) + BigInt(v_) * omega_trace(); }
  BigInt norm() const {
    BigInt u = u_, v = v_;
    return u * u + u * v * omega_trace() + v * v * omega_norm();
  }

  friend bool operator==(const ImagQuadElement&, const ImagQuadElement&) = default;

 private:
  std::int64_t disc_;
  std::int64_t u_;
  std::int64_t v_;
};

enum class BasisTag { raw, companion, transposed_companion };

inline const char* to_string(BasisTag t) {
  switch (t) {
    case BasisTag::raw: return "raw";
    case BasisTag::companion: return "companion";
    case BasisTag::transposed_companion: return "transposed_companion";
  }
  return "?";
}

class EndoMatrix {
 public:
  EndoMatrix(IntMatrix m, BasisTag tag) : m_(std::move(m)), tag_(tag) {
    if (m_.n() != 2) throw std::invalid_argument("endomorphism matrix must be 2x2");
    if (determinant(m_) == 0) throw std::invalid_argument("endomorphism matrix must be nonsingular");
    if (tag_ == BasisTag::transposed_companion && (m_(1, 0) != 1 || m_(1, 1) != 0)) {
      throw std::invalid_argument("transposed companion form must have bottom row (1, 0): " + to_string(m_));
    }
  }

  const IntMatrix& matrix() const { return m_; }
  BasisTag tag() const { return tag_; }

 private:
  IntMatrix m_;
  BasisTag tag_;
};

struct EndoChain {
  EndoMatrix raw;         // rows: alpha*1, alpha*omega in the basis {1, omega}
  EndoMatrix companion;   // [[a+d, 1], [c-ad, 0]]
  EndoMatrix transposed;  // [[a+d, c-ad], [1, 0]]
};

/// Multiplication by alpha, then the b = 1 rebasing {1, v*omega}, the
/// companion conjugation [[1,0],[d,1]] and the transpose similarity.
/// Trace is checked at every step.
inline EndoChain endo_chain(const ImagQuadElement& alpha) {
  if (alpha.v() == 0) throw std::invalid_argument("alpha is rational; multiplication is a scalar");
  const BigInt u = alpha.u(), v = alpha.v();
  const BigInt t = alpha.omega_trace(), n = alpha.omega_norm();
  IntMatrix raw{{u, v}, {-v * n, u + v * t}};
  // in the basis {1, v*omega} the top-right entry becomes 1
  const BigInt a = u, c = -v * v * n, d = u + v * t;
  IntMatrix comp = conjugate_to_companion(a, c, d).companion;
  IntMatrix tcomp = transpose(comp);
  const BigInt tr = alpha.trace();
  if (trace(raw) != tr || trace(comp) != tr || trace(tcomp) != tr) {
    throw std::logic_error("trace not preserved along the normalization chain");
  }
  return {EndoMatrix(std::move(raw), BasisTag::raw), EndoMatrix(std::move(comp), BasisTag::companion),
          EndoMatrix(std::move(tcomp), BasisTag::transposed_companion)};
}

inline EndoMatrix endo_matrix(const ImagQuadElement& alpha) { return endo_chain(alpha).transposed; }

/// F: [[a,b],[c,d]] -> [[a,b],[-c,-d]].
template <class Int>
Matrix<Int> teichmuller_F(const Matrix<Int>& m) {
  if (m.n() != 2) throw std::invalid_argument("teichmuller_F: 2x2 only");
  Matrix<Int> out = m;
  out.negate_row(1);
  return out;
}

inline IntMatrix teichmuller_F(const EndoMatrix& m) { return teichmuller_F(m.matrix()); }

/// rho: [[t, n], [-1, 0]] -> [[t, 1], [-1, 0]], after checking
/// [[t,n],[-1,0]] (1, theta)^t == [[t,1],[-1,0]] (1, n theta)^t as linear
/// forms in a formal theta. n may be negative (index |n|), not zero.
template <class Int>
Matrix<Int> rho(const Matrix<Int>& omega) {
  if (omega.n() != 2 || omega(1, 0) != Int(-1) || omega(1, 1) != Int(0)) {
    throw std::invalid_argument("rho expects the shape [[t, n], [-1, 0]]");
  }
  const Int t = omega(0, 0);
  const Int n = omega(0, 1);
  if (n == Int(0)) throw std::invalid_argument("rho needs n != 0");
  Matrix<Int> unit{{t, Int(1)}, {Int(-1), Int(0)}};
  for (std::size_t i = 0; i < 2; ++i) {
    // row i as (constant, coefficient of theta)
    const Int lhs_c = omega(i, 0), lhs_theta = omega(i, 1);
    const Int rhs_c = unit(i, 0), rhs_theta = unit(i, 1) * n;
    if (lhs_c != rhs_c || lhs_theta != rhs_theta) throw std::logic_error("sublattice identity failed in rho");
  }
  return unit;
}

/// Discriminants of x^2 - t x + p and of its image x^2 - t x - p under F.
template <class Int>
std::pair<Int, Int> lp_discriminants(const Int& t, const Int& p) {
  Matrix<Int> lp{{t, p}, {Int(-1), Int(0)}};
  const auto cp = char_poly(lp);
  const auto cf = char_poly(teichmuller_F(lp));
  return {cp[1] * cp[1] - Int(4) * cp[2], cf[1] * cf[1] - Int(4) * cf[2]};
}

struct IotaResult {
  std::uint64_t n;                         // |norm(alpha)|
  std::uint64_t index;                     // computed unit index g_n
  std::optional<std::uint64_t> predicted;  // n when n is prime
  bool matches_prediction() const { return predicted && *predicted == index; }
};

/// iota(alpha) as the unit index of Z + (n theta)Z, n = |norm(alpha)|.
inline IotaResult index_iota(const ImagQuadElement& alpha, const QuadraticIrrational& theta,
                             UnitIndexOptions opts = {}) {
  const BigInt nrm = abs(alpha.norm());
  if (nrm < 2) throw std::invalid_argument("index_iota needs |norm(alpha)| >= 2");
  const auto n = nrm.convert_to<std::uint64_t>();
  IotaResult r{n, unit_index(theta, n, opts), std::nullopt};
  if (is_prime(n)) r.predicted = n;
  return r;
}

}  // namespace ncr
