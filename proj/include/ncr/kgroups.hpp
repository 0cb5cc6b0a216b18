#pragma once

// K-theory of Cuntz-Krieger algebras:
//   K0(O_B) = Z^n / (I - B^t) Z^n,   K1(O_B) = Ker(I - B^t).

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncr/bigint.hpp"
#include "ncr/matrix.hpp"

namespace ncr {

/// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  FiniteAbelianGroup(std::size_t free_rank, std::vector<BigInt> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw std::invalid_argument("torsion factors must be >= 2");
      if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
        throw std::invalid_argument("torsion factors must form a divisibility chain");
    }
  }

  /// Builds the group from a Smith diagonal: 0 -> free rank, 1 -> dropped.
  static FiniteAbelianGroup from_invariant_factors(const std::vector<BigInt>& diagonal) {
    std::size_t rank = 0;
    std::vector<BigInt> torsion;
    for (const auto& d : diagonal) {
      BigInt m = abs(d);
      if (m == 0)
        ++rank;
      else if (m > 1)
        torsion.push_back(m);
    }
    std::sort(torsion.begin(), torsion.end());
    return {rank, std::move(torsion)};
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<BigInt>& torsion() const { return torsion_; }

  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_cyclic() const { return free_rank_ + torsion_.size() <= 1; }

  BigInt order() const {
    if (!is_finite()) throw UndefinedResult("group has free rank " + std::to_string(free_rank_) + "; order undefined");
    BigInt n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

  /// "ℤ^r ⊕ ℤ/d1 ⊕ ..." with "0" for the trivial group.
  std::string render() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
      os << "ℤ";
      if (free_rank_ > 1) os << '^' << free_rank_;
      first = false;
    }
    for (const auto& d : torsion_) {
      os << (first ? "" : " ⊕ ") << "ℤ/" << d;
      first = false;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) { return os << g.render(); }

 private:
  std::size_t free_rank_ = 0;
  std::vector<BigInt> torsion_;
};

/// Square integer matrix admitted as Cuntz-Krieger data. checked() enforces
/// nonnegative entries; trusted() admits any integer matrix (the K-theory
/// formula is defined for all of them, e.g. the canonical L_p form).
class CuntzKriegerMatrix {
 public:
  static CuntzKriegerMatrix checked(IntMatrix b) {
    for (const auto& v : b.entries())
      if (v < 0) throw std::invalid_argument("Cuntz-Krieger matrix must have nonnegative entries: " + to_string(b));
    return CuntzKriegerMatrix(std::move(b), false);
  }
  static CuntzKriegerMatrix trusted(IntMatrix b) { return CuntzKriegerMatrix(std::move(b), true); }

  const IntMatrix& matrix() const { return b_; }
  bool is_trusted() const { return trusted_; }

  /// I - B^t, the relation matrix of K0.
  IntMatrix relation_matrix() const { return IntMatrix::identity(b_.n()) - transpose(b_); }

 private:
  CuntzKriegerMatrix(IntMatrix b, bool trusted) : b_(std::move(b)), trusted_(trusted) {}

  IntMatrix b_;
  bool trusted_;
};

inline FiniteAbelianGroup k0_cuntz_krieger(const CuntzKriegerMatrix& b) {
  return FiniteAbelianGroup::from_invariant_factors(smith_normal_form(b.relation_matrix()).diagonal());
}

inline FiniteAbelianGroup k0_cuntz_krieger(const IntMatrix& b) {
  return k0_cuntz_krieger(CuntzKriegerMatrix::checked(b));
}

/// Rank of Ker(I - B^t): the number of zero invariant factors.
inline std::size_t k1_cuntz_krieger(const CuntzKriegerMatrix& b) {
  std::size_t rank = 0;
  for (const auto& d : smith_normal_form(b.relation_matrix()).diagonal())
    if (d == 0) ++rank;
  return rank;
}

inline std::size_t k1_cuntz_krieger(const IntMatrix& b) {
  return k1_cuntz_krieger(CuntzKriegerMatrix::checked(b));
}

/// |det(I - B^t)|. Accepts any integer matrix; the order of K0 needs only
/// the determinant.
inline BigInt k0_order(const IntMatrix& b) {
  BigInt det = determinant(IntMatrix::identity(b.n()) - transpose(b));
  if (det == 0) throw UndefinedResult("det(I - B^t) = 0: K0 is infinite, order undefined");
  return abs(det);
}

/// Primitive iff some power of B is entrywise positive (Wielandt bound (n-1)^2 + 1).
inline bool is_primitive(const IntMatrix& b) {
  for (const auto& v : b.entries())
    if (v < 0) return false;
  const std::size_t n = b.n();
  Matrix<int> pattern(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pattern(i, j) = b(i, j) > 0 ? 1 : 0;
  Matrix<int> acc = pattern;
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool positive = true;
    for (int v : acc.entries()) positive = positive && v > 0;
    if (positive) return true;
    Matrix<int> next = acc * pattern;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next(i, j) = next(i, j) > 0 ? 1 : 0;
    acc = next;
  }
  return false;
}

}  // namespace ncr
