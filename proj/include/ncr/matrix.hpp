#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncr/bigint.hpp"

namespace ncr {

template <class Int>
constexpr Int absolute(const Int& v) {
  return v < 0 ? Int(-v) : v;
}

// Square matrix over an exact integer type, row-major.
template <class Int>
class Matrix {
 public:
  using value_type = Int;

  explicit Matrix(std::size_t n) : n_(n), a_(n * n, Int(0)) {
    if (n == 0) throw std::invalid_argument("matrix dimension must be at least 1");
  }

  Matrix(std::initializer_list<std::initializer_list<Int>> rows) : Matrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("matrix must be square");
      std::size_t j = 0;
      for (const auto& v : row) a_[i * n_ + j++] = v;
      ++i;
    }
  }

  static Matrix from_rows(const std::vector<std::vector<Int>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Int(1);
    return m;
  }

  std::size_t n() const { return n_; }
  const std::vector<Int>& entries() const { return a_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void swap_rows(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t j = 0; j < n_; ++j) std::swap((*this)(r, j), (*this)(s, j));
  }
  void swap_cols(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t i = 0; i < n_; ++i) std::swap((*this)(i, r), (*this)(i, s));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t j = 0; j < n_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < n_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  friend bool operator==(const Matrix& x, const Matrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.n_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.n_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t n_;
  std::vector<Int> a_;
};

using IntMatrix = Matrix<BigInt>;

template <class Int>
std::string to_string(const Matrix<Int>& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.n());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) out(i, j) = To(m(i, j));
  return out;
}

template <class Int>
Matrix<Int> multiply(const Matrix<Int>& a, const Matrix<Int>& b) {
  if (a.n() != b.n()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.n()) + " vs " +
                                std::to_string(b.n()));
  }
  const std::size_t n = a.n();
  Matrix<Int> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class Int>
Matrix<Int> operator*(const Matrix<Int>& a, const Matrix<Int>& b) {
  return multiply(a, b);
}

template <class Int>
Matrix<Int> operator-(const Matrix<Int>& a, const Matrix<Int>& b) {
  if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch");
  Matrix<Int> c = a;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class Int>
Matrix<Int> transpose(const Matrix<Int>& m) {
  Matrix<Int> t(m.n());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class Int>
Int trace(const Matrix<Int>& m) {
  Int t(0);
  for (std::size_t i = 0; i < m.n(); ++i) t += m(i, i);
  return t;
}

/// Exact k-th power by binary exponentiation; power(m, 0) is the identity.
template <class Int>
Matrix<Int> power(const Matrix<Int>& m, std::uint64_t k) {
  Matrix<Int> result = Matrix<Int>::identity(m.n());
  Matrix<Int> base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

/// Fraction-free (Bareiss) determinant; every division is exact.
template <class Int>
Int determinant(const Matrix<Int>& m) {
  const std::size_t n = m.n();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Matrix<Int> a = m;
  Int sign(1);
  Int prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return Int(0);
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

template <class Int>
bool is_unimodular(const Matrix<Int>& m) {
  return absolute(determinant(m)) == Int(1);
}

/// Monic characteristic polynomial det(xI - M), highest degree first:
/// {1, c1, ..., cn} for x^n + c1 x^(n-1) + ... + cn.
template <class Int>
std::vector<Int> char_poly(const Matrix<Int>& m) {
  const std::size_t n = m.n();
  std::vector<Int> c(n + 1, Int(0));
  c[0] = Int(1);
  if (n == 2) {
    c[1] = -trace(m);
    c[2] = determinant(m);
    return c;
  }
  // Faddeev-LeVerrier; the division by k is exact over the integers.
  Matrix<Int> mk = Matrix<Int>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Int> am = m * mk;
    c[k] = -trace(am) / Int(static_cast<long long>(k));
    mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[k];
  }
  return c;
}

template <class Int>
std::string poly_to_string(const std::vector<Int>& coeffs) {
  std::ostringstream os;
  const std::size_t deg = coeffs.size() - 1;
  bool first = true;
  for (std::size_t i = 0; i <= deg; ++i) {
    const Int& c = coeffs[i];
    if (c == 0) continue;
    const std::size_t e = deg - i;
    Int mag = absolute(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || e == 0) os << mag;
    if (e >= 1) os << 'x';
    if (e >= 2) os << '^' << e;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

template <class Int>
struct SmithDecomposition {
  Matrix<Int> U;
  Matrix<Int> S;
  Matrix<Int> V;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < S.n(); ++i) d.push_back(S(i, i));
    return d;
  }
};

/// Smith normal form with explicit unimodular witnesses: U * M * V == S,
/// S diagonal, d1 | d2 | ... | dn, all di >= 0 (signs absorbed into U).
/// Pivot is the smallest nonzero entry by absolute value.
template <class Int>
SmithDecomposition<Int> smith_normal_form(const Matrix<Int>& m) {
  const std::size_t n = m.n();
  Matrix<Int> S = m;
  Matrix<Int> U = Matrix<Int>::identity(n);
  Matrix<Int> V = Matrix<Int>::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pr = n, pc = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          if (pr == n || absolute(S(i, j)) < absolute(S(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == n) break;  // remaining block is zero
      S.swap_rows(t, pr);
      U.swap_rows(t, pr);
      S.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (S(i, t) == 0) continue;
        Int q = S(i, t) / S(t, t);
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (S(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Int q = S(t, j) / S(t, t);
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (S(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == n) break;
      S.add_row(t, bad, Int(1));
      U.add_row(t, bad, Int(1));
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(S), std::move(V)};
}

/// Checks U*M*V == S, unimodularity, diagonal shape and the divisibility chain.
template <class Int>
bool is_valid_smith(const Matrix<Int>& m, const SmithDecomposition<Int>& sd) {
  const std::size_t n = m.n();
  if (!is_unimodular(sd.U) || !is_unimodular(sd.V)) return false;
  if (sd.U * m * sd.V != sd.S) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && sd.S(i, j) != 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (sd.S(i, i) < 0) return false;
    if (i + 1 < n) {
      const Int& a = sd.S(i, i);
      const Int& b = sd.S(i + 1, i + 1);
      if (a == 0 ? b != 0 : b % a != 0) return false;
    }
  }
  return true;
}

template <class Int>
struct CompanionConjugation {
  Matrix<Int> witness;    // W = [[1,0],[d,1]]
  Matrix<Int> companion;  // W^-1 M W = [[a+d,1],[c-ad,0]]
};

/// Conjugates M = [[a,1],[c,d]] to [[a+d,1],[c-ad,0]] by W = [[1,0],[d,1]].
/// The identity W^-1 M W == companion is re-verified before returning.
template <class Int>
CompanionConjugation<Int> conjugate_to_companion(const Int& a, const Int& c, const Int& d) {
  Matrix<Int> m{{a, Int(1)}, {c, d}};
  if (determinant(m) == 0) throw std::invalid_argument("conjugate_to_companion: det(M) = 0");
  Matrix<Int> w{{Int(1), Int(0)}, {d, Int(1)}};
  Matrix<Int> w_inv{{Int(1), Int(0)}, {Int(-d), Int(1)}};
  Matrix<Int> expected{{a + d, Int(1)}, {c - a * d, Int(0)}};
  Matrix<Int> conj = w_inv * m * w;
  if (conj != expected) {
    throw std::logic_error("companion conjugation identity failed for " + to_string(m));
  }
  return {std::move(w), std::move(conj)};
}

/// True iff w^-1 a w == b, i.e. a w == w b for the unimodular witness w.
template <class Int>
bool verify_similarity(const Matrix<Int>& a, const Matrix<Int>& b, const Matrix<Int>& w) {
  if (!is_unimodular(w)) throw std::invalid_argument("similarity witness is not unimodular");
  if (a.n() != b.n() || a.n() != w.n()) throw std::invalid_argument("dimension mismatch");
  return a * w == w * b;
}

/// Exhaustive search for a unimodular 2x2 witness with entries in [-bound, bound].
template <class Int>
std::optional<Matrix<Int>> find_conjugator(const Matrix<Int>& a, const Matrix<Int>& b, int bound) {
  if (a.n() != 2 || b.n() != 2) throw std::invalid_argument("find_conjugator: 2x2 only");
  if (char_poly(a) != char_poly(b)) return std::nullopt;
  for (int w00 = -bound; w00 <= bound; ++w00)
    for (int w01 = -bound; w01 <= bound; ++w01)
      for (int w10 = -bound; w10 <= bound; ++w10)
        for (int w11 = -bound; w11 <= bound; ++w11) {
          long long det = static_cast<long long>(w00) * w11 - static_cast<long long>(w01) * w10;
          if (det != 1 && det != -1) continue;
          Matrix<Int> w{{Int(w00), Int(w01)}, {Int(w10), Int(w11)}};
          if (a * w == w * b) return w;
        }
  return std::nullopt;
}

}  // namespace ncr
