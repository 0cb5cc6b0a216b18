#pragma once

// Self-test suite: every exact matrix identity of the construction, swept
// over small exhaustive ranges. Audits are reported but never fail the run.

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncr/curves.hpp"
#include "ncr/functor.hpp"
#include "ncr/json_io.hpp"
#include "ncr/kgroups.hpp"
#include "ncr/matrix.hpp"
#include "ncr/quadratic.hpp"
#include "ncr/report.hpp"
#include "ncr/zeta.hpp"

namespace ncr {

struct LemmaCheck {
  explicit LemmaCheck(std::string check_name, bool is_audit = false)
      : name(std::move(check_name)), audit(is_audit) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, or an audit summary
  bool audit = false;

  void fail(const std::string& what) {
    ++failures;
    passed = false;
    if (detail.empty()) detail = what;
  }
};

struct LemmaSuiteOptions {
  int sweep_bound = 5;
  std::size_t trunc = 8;
};

struct LemmaSuiteResult {
  std::vector<LemmaCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.audit && !c.passed) return false;
    return true;
  }
};

namespace detail {

inline void for_each_2x2(int bound, const std::function<void(const IntMatrix&)>& f) {
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        for (int d = -bound; d <= bound; ++d) f(IntMatrix{{BigInt(a), BigInt(b)}, {BigInt(c), BigInt(d)}});
}

/// Incidence matrices from purely periodic expansions with period length
/// <= 2 and partial quotients in [1, max_quotient], deduplicated.
inline std::vector<IntMatrix> small_period_matrices(int max_quotient) {
  std::vector<IntMatrix> out;
  auto add = [&](std::vector<BigInt> period) {
    IntMatrix a = matrix_A(ContinuedFraction({}, std::move(period)));
    for (const auto& m : out)
      if (m == a) return;
    out.push_back(std::move(a));
  };
  for (int x = 1; x <= max_quotient; ++x) {
    add({BigInt(x)});
    for (int y = 1; y <= max_quotient; ++y) add({BigInt(x), BigInt(y)});
  }
  return out;
}

inline const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> ps{2, 3, 5, 7, 11, 13};
  return ps;
}

}  // namespace detail

inline LemmaCheck check_smith_sweep(int bound) {
  LemmaCheck c("smith_normal_form");
  detail::for_each_2x2(bound, [&](const IntMatrix& m) {
    ++c.cases;
    if (!is_valid_smith(m, smith_normal_form(m))) c.fail("invalid decomposition of " + to_string(m));
  });
  return c;
}

inline LemmaCheck check_k0_order_law(int bound) {
  LemmaCheck c("k0_order_equals_det");
  detail::for_each_2x2(bound, [&](const IntMatrix& m) {
    if (determinant(IntMatrix::identity(2) - transpose(m)) == 0) return;
    ++c.cases;
    const BigInt group_order = k0_cuntz_krieger(CuntzKriegerMatrix::trusted(m)).order();
    if (group_order != k0_order(m)) c.fail("order mismatch at " + to_string(m));
  });
  return c;
}

inline LemmaCheck check_companion_conjugation(int bound) {
  LemmaCheck c("companion_conjugation");
  for (int a = -bound; a <= bound; ++a)
    for (int cc = -bound; cc <= bound; ++cc)
      for (int d = -bound; d <= bound; ++d) {
        if (static_cast<long long>(a) * d - cc == 0) continue;
        ++c.cases;
        const BigInt ba = a, bc = cc, bd = d;
        try {
          const auto r = conjugate_to_companion(ba, bc, bd);
          IntMatrix m{{ba, 1}, {bc, bd}};
          if (!verify_similarity(m, r.companion, r.witness)) c.fail("witness fails for " + to_string(m));
        } catch (const std::logic_error& e) {
          c.fail(e.what());
        }
      }
  return c;
}

/// [[t,1],[c,0]] W = W [[t,1],[c,0]]^t with W = [[0,1],[1,-t]].
inline LemmaCheck check_transpose_similarity(int bound) {
  LemmaCheck c("transpose_similarity");
  for (int t = -bound; t <= bound; ++t)
    for (int cc = -bound; cc <= bound; ++cc) {
      if (cc == 0) continue;
      ++c.cases;
      IntMatrix m{{BigInt(t), 1}, {BigInt(cc), 0}};
      IntMatrix w{{0, 1}, {1, BigInt(-t)}};
      if (!verify_similarity(m, transpose(m), w)) c.fail("witness fails for " + to_string(m));
    }
  return c;
}

/// F is an involution that flips the sign of det and keeps tr on matrices with d = 0.
inline LemmaCheck check_functor_properties(int bound) {
  LemmaCheck c{"functor_F"};
  detail::for_each_2x2(bound, [&](const IntMatrix& m) {
    ++c.cases;
    const IntMatrix f = teichmuller_F(m);
    if (teichmuller_F(f) != m) c.fail("F is not an involution at " + to_string(m));
    if (determinant(f) != -determinant(m)) c.fail("det(F(M)) != -det(M) at " + to_string(m));
    if (trace(f) != m(0, 0) - m(1, 1)) c.fail("tr(F(M)) != a - d at " + to_string(m));
  });
  return c;
}

inline LemmaCheck check_rho_identity(int bound) {
  LemmaCheck c("rho_sublattice_identity");
  for (int t = -bound; t <= bound; ++t)
    for (int n = -bound; n <= bound; ++n) {
      if (n == 0) continue;
      ++c.cases;
      try {
        const IntMatrix u = rho(IntMatrix{{BigInt(t), BigInt(n)}, {-1, 0}});
        if (trace(u) != t || determinant(u) != 1) c.fail("rho image is not [[t,1],[-1,0]]");
      } catch (const std::logic_error& e) {
        c.fail(e.what());
      }
    }
  return c;
}

/// tr(alpha) = tr(F(M_alpha)) = tr(rho(F(M_alpha))) over the nine CM orders.
inline LemmaCheck check_trace_chain(int bound) {
  LemmaCheck c("trace_chain");
  for (const auto& entry : cm_catalog())
    for (int u = -bound; u <= bound; ++u)
      for (int v = -bound; v <= bound; ++v) {
        if (v == 0) continue;
        ++c.cases;
        const ImagQuadElement alpha(entry.disc_k, u, v);
        try {
          const IntMatrix f = teichmuller_F(endo_matrix(alpha));
          const IntMatrix r = rho(f);
          const BigInt t = alpha.trace();
          if (trace(f) != t || trace(r) != t) c.fail("trace drift at disc " + std::to_string(entry.disc_k));
        } catch (const std::logic_error& e) {
          c.fail(e.what());
        }
      }
  return c;
}

/// exp(sum |K0(O_{L_p^n})| z^n / n) against 1 / (1 - tr(A^p) z + p z^2).
inline LemmaCheck check_rationality(std::size_t trunc) {
  LemmaCheck c("zeta_rationality");
  for (const auto& a : detail::small_period_matrices(3))
    for (std::uint64_t p : detail::small_primes()) {
      if (is_bad_prime_nt(a, p)) continue;
      ++c.cases;
      try {
        const TruncatedSeries lhs = zeta_local_nt_series(a, p, std::nullopt, trunc);
        const TruncatedSeries rhs = reciprocal_series(zeta_local_nt_closed(a, p, std::nullopt), trunc);
        for (std::size_t k = 0; k <= trunc; ++k) {
          if (lhs.coefficients[k] != rhs.coefficients[k]) {
            c.fail("A = " + to_string(a) + ", p = " + std::to_string(p) + ": z^" + std::to_string(k) + " is " +
                   to_string(lhs.coefficients[k]) + ", expected " + to_string(rhs.coefficients[k]));
            break;
          }
        }
      } catch (const SeriesUndefined& e) {
        c.fail(e.what());
      }
    }
  return c;
}

inline LemmaCheck check_bad_prime_series(std::size_t trunc) {
  LemmaCheck c("bad_prime_series");
  const std::pair<QuadraticIrrational, std::uint64_t> cases[] = {
      {QuadraticIrrational::golden(), 5}, {QuadraticIrrational::sqrt_of(2), 2}, {QuadraticIrrational::sqrt_of(3), 3}};
  for (const auto& [theta, p] : cases) {
    const IntMatrix a = matrix_A(expand(theta));
    if (!is_bad_prime_nt(a, p)) {
      c.fail(std::to_string(p) + " is not bad for " + to_string(a));
      continue;
    }
    for (int alpha : {-1, 0, 1}) {
      ++c.cases;
      const TruncatedSeries s = zeta_local_nt_series(a, p, alpha, trunc);
      Rational power = 1;
      for (std::size_t k = 0; k <= trunc; ++k, power *= alpha) {
        if (s.coefficients[k] != power) {
          c.fail("alpha = " + std::to_string(alpha) + ", z^" + std::to_string(k));
          break;
        }
      }
    }
  }
  return c;
}

/// Invariant factors of I - L_p^t are (1, |1 + p - tr(A^p)|).
inline LemmaCheck check_smith_reduction_Lp() {
  LemmaCheck c{"smith_reduction_Lp"};
  for (const auto& a : detail::small_period_matrices(3))
    for (std::uint64_t p : detail::small_primes()) {
      if (is_bad_prime_nt(a, p)) continue;
      ++c.cases;
      const LpForms lp = build_Lp(a, p);
      const auto diag = smith_normal_form(CuntzKriegerMatrix::trusted(lp.intro).relation_matrix()).diagonal();
      const BigInt expected = abs(1 + BigInt(p) - lp.trace_power);
      if (diag.size() != 2 || diag[0] != 1 || diag[1] != expected) {
        c.fail("A = " + to_string(a) + ", p = " + std::to_string(p));
      }
    }
  return c;
}

/// disc(x^2 - t x - p) - disc(x^2 - t x + p) = 8p, in 64-bit arithmetic.
inline LemmaCheck check_discriminant_shift(std::int64_t t_max, std::uint64_t p_max) {
  LemmaCheck c("discriminant_shift");
  for (std::uint64_t p : primes_in_range(2, p_max))
    for (std::int64_t t = 0; t <= t_max; ++t) {
      ++c.cases;
      const auto [dk, dgk] = lp_discriminants<std::int64_t>(t, static_cast<std::int64_t>(p));
      if (dk != t * t - 4 * static_cast<std::int64_t>(p) || dgk - dk != 8 * static_cast<std::int64_t>(p)) {
        c.fail("t = " + std::to_string(t) + ", p = " + std::to_string(p));
      }
    }
  return c;
}

inline LemmaCheck check_hasse_bound(std::uint64_t p_max) {
  LemmaCheck c("hasse_bound");
  for (const auto& entry : cm_catalog())
    for (std::uint64_t p : primes_in_range(2, p_max)) {
      if (!entry.curve.has_good_reduction(p)) continue;
      ++c.cases;
      try {
        const BigInt ap = trace_of_frobenius(entry.curve, p);
        if (ap * ap > 4 * BigInt(p)) c.fail("a_p out of range");
      } catch (const std::logic_error& e) {
        c.fail(e.what());
      }
    }
  return c;
}

inline LemmaCheck check_count_oracle(std::uint64_t q_max) {
  LemmaCheck c("point_count_recursion");
  for (const auto& entry : cm_catalog())
    for (std::uint64_t p : primes_in_range(5, q_max)) {
      if (!entry.curve.has_good_reduction(p)) continue;
      std::uint64_t q = p;
      for (unsigned n = 1; q <= q_max; ++n, q *= p) {
        ++c.cases;
        if (count_points_ext(entry.curve, p, n) != count_points_ext_bruteforce(entry.curve, p, n)) {
          c.fail(entry.curve.describe() + " over F_" + std::to_string(p) + "^" + std::to_string(n));
        }
      }
    }
  return c;
}

inline LemmaCheck audit_cyclicity(std::uint64_t p_max) {
  LemmaCheck c("cyclicity_audit", true);
  std::size_t non_cyclic = 0;
  std::string first;
  for (const auto& entry : cm_catalog())
    for (std::uint64_t p : primes_in_range(5, p_max)) {
      if (!entry.curve.has_good_reduction(p)) continue;
      ++c.cases;
      const FiniteAbelianGroup g = group_structure(entry.curve, p);
      if (!g.is_cyclic()) {
        if (non_cyclic++ == 0) first = entry.curve.describe() + " at p = " + std::to_string(p) + ": " + g.render();
      }
    }
  c.passed = non_cyclic > 0;
  c.detail = std::to_string(non_cyclic) + " non-cyclic" + (first.empty() ? "" : "; first " + first);
  return c;
}

/// Compares the unit index g_p with the prediction g_p = p.
inline LemmaCheck audit_unit_index(std::uint64_t p_max) {
  LemmaCheck c("unit_index_audit", true);
  std::size_t agree = 0;
  for (const auto& theta : {QuadraticIrrational::golden(), QuadraticIrrational::sqrt_of(2)})
    for (std::uint64_t p : primes_in_range(2, p_max)) {
      ++c.cases;
      if (unit_index(theta, p) == p) ++agree;
    }
  c.passed = agree == c.cases;
  c.detail = std::to_string(agree) + " of " + std::to_string(c.cases) + " primes have g_p = p";
  return c;
}

inline LemmaSuiteResult run_lemma_suite(const LemmaSuiteOptions& opts = {}) {
  if (opts.sweep_bound < 1) throw std::invalid_argument("sweep bound must be >= 1");
  if (opts.trunc < 1) throw std::invalid_argument("truncation degree must be >= 1");
  const int b = opts.sweep_bound;
  const auto ub = static_cast<std::uint64_t>(b);
  LemmaSuiteResult r;
  r.checks.push_back(check_smith_sweep(b));
  r.checks.push_back(check_k0_order_law(b));
  r.checks.push_back(check_companion_conjugation(2 * b));
  r.checks.push_back(check_transpose_similarity(2 * b));
  r.checks.push_back(check_functor_properties(b));
  r.checks.push_back(check_rho_identity(2 * b));
  r.checks.push_back(check_trace_chain(b));
  r.checks.push_back(check_rationality(opts.trunc));
  r.checks.push_back(check_bad_prime_series(opts.trunc));
  r.checks.push_back(check_smith_reduction_Lp());
  r.checks.push_back(check_discriminant_shift(2000 * b, 97));
  r.checks.push_back(check_hasse_bound(40 * ub));
  r.checks.push_back(check_count_oracle(200 * ub));
  r.checks.push_back(audit_cyclicity(20 * ub));
  r.checks.push_back(audit_unit_index(4 * ub));
  return r;
}

inline Json to_json(const LemmaSuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"cases", c.cases},
                          {"failures", c.failures},
                          {"detail", c.detail},
                          {"audit", c.audit}});
  }
  return Json{{"checks", checks}, {"all_passed", r.all_passed()}};
}

inline std::string to_text(const LemmaSuiteResult& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    const char* status = c.audit ? "AUDIT" : (c.passed ? "PASS " : "FAIL ");
    os << status << ' ' << c.name << "  cases=" << c.cases << " failures=" << c.failures;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << '\n';
  }
  os << (r.all_passed() ? "all identities hold\n" : "some identities fail\n");
  return os.str();
}

inline std::string to_csv(const LemmaSuiteResult& r) {
  std::ostringstream os;
  os << "name,passed,cases,failures,audit,detail\n";
  for (const auto& c : r.checks) {
    os << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.cases << ',' << c.failures << ','
       << (c.audit ? "true" : "false") << ',' << detail::csv_field(c.detail) << '\n';
  }
  return os.str();
}

}  // namespace ncr
