// Acceptance gate: twelve checks, one PASS/FAIL line each. Every check
// compares library output against an oracle computed here.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "ncr/ncr.hpp"

using namespace ncr;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string note;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    pass = false;
    if (note.empty()) note = "first failure: " + what;
  }
};

std::int64_t det2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d - b * c; }

std::int64_t entry(const IntMatrix& m, std::size_t i, std::size_t j) { return to_int64(m(i, j)); }

IntMatrix mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return IntMatrix{{BigInt(a), BigInt(b)}, {BigInt(c), BigInt(d)}};
}

// Incidence matrices from purely periodic expansions of period length <= 2,
// partial quotients 1..3, built by hand: [[a,1],[1,0]] products, squared
// when the determinant is -1.
std::vector<std::array<std::int64_t, 4>> sweep_matrices() {
  std::vector<std::array<std::int64_t, 4>> out;
  auto mul = [](const std::array<std::int64_t, 4>& x, const std::array<std::int64_t, 4>& y) {
    return std::array<std::int64_t, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                       x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };
  auto add = [&](std::array<std::int64_t, 4> m) {
    if (det2(m[0], m[1], m[2], m[3]) == -1) m = mul(m, m);
    for (const auto& x : out)
      if (x == m) return;
    out.push_back(m);
  };
  for (std::int64_t x = 1; x <= 3; ++x) {
    add({x, 1, 1, 0});
    for (std::int64_t y = 1; y <= 3; ++y) add(mul({x, 1, 1, 0}, {y, 1, 1, 0}));
  }
  return out;
}

// tr(A^k) for det A = 1 via t_k = tr * t_{k-1} - t_{k-2}.
BigInt trace_power(std::int64_t tr, std::uint64_t k) {
  BigInt prev = 2, cur = tr;
  for (std::uint64_t i = 1; i < k; ++i) {
    BigInt next = BigInt(tr) * cur - prev;
    prev = cur;
    cur = next;
  }
  return k == 0 ? BigInt(2) : cur;
}

const std::vector<std::uint64_t> kSmallPrimes{2, 3, 5, 7, 11, 13};

std::uint64_t naive_count(std::int64_t a, std::int64_t b, std::uint64_t p) {
  const auto P = static_cast<std::int64_t>(p);
  std::uint64_t n = 1;
  for (std::int64_t x = 0; x < P; ++x) {
    const std::int64_t rhs = (((x * x % P) * x + a % P * x + b) % P + 2 * P) % P;
    for (std::int64_t y = 0; y < P; ++y)
      if (y * y % P == rhs) ++n;
  }
  return n;
}

Outcome smith_sweep() {
  Outcome o;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int c = -5; c <= 5; ++c)
        for (int d = -5; d <= 5; ++d) {
          const IntMatrix m = mat(a, b, c, d);
          const auto sd = smith_normal_form(m);
          const IntMatrix usv = sd.U * m * sd.V;
          const std::int64_t du = det2(entry(sd.U, 0, 0), entry(sd.U, 0, 1), entry(sd.U, 1, 0), entry(sd.U, 1, 1));
          const std::int64_t dv = det2(entry(sd.V, 0, 0), entry(sd.V, 0, 1), entry(sd.V, 1, 0), entry(sd.V, 1, 1));
          const std::int64_t s1 = entry(sd.S, 0, 0), s2 = entry(sd.S, 1, 1);
          // oracle: d1 = gcd of entries, d1 d2 = |det|
          const std::int64_t g = std::gcd(std::gcd(a, b), std::gcd(c, d));
          const std::int64_t det = det2(a, b, c, d);
          const bool ok = usv == sd.S && (du == 1 || du == -1) && (dv == 1 || dv == -1) && entry(sd.S, 0, 1) == 0 &&
                          entry(sd.S, 1, 0) == 0 && s1 >= 0 && s2 >= 0 && (s1 == 0 ? s2 == 0 : s2 % s1 == 0) &&
                          s1 == g && s1 * s2 == (det < 0 ? -det : det);
          o.check(ok, to_string(m));
        }
  return o;
}

Outcome k0_order_law() {
  Outcome o;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int c = -5; c <= 5; ++c)
        for (int d = -5; d <= 5; ++d) {
          const std::int64_t det = det2(1 - a, -c, -b, 1 - d);  // I - B^t
          if (det == 0) continue;
          const FiniteAbelianGroup k0 = k0_cuntz_krieger(CuntzKriegerMatrix::trusted(mat(a, b, c, d)));
          o.check(k0.is_finite() && k0.order() == (det < 0 ? -det : det), to_string(mat(a, b, c, d)));
        }
  return o;
}

Outcome companion_conjugation() {
  Outcome o;
  for (std::int64_t a = -10; a <= 10; ++a)
    for (std::int64_t c = -10; c <= 10; ++c)
      for (std::int64_t d = -10; d <= 10; ++d) {
        if (a * d - c == 0) continue;
        // M W = [[a+d, 1], [c+d^2, d]] with W = [[1,0],[d,1]]; then W^-1 (M W)
        const std::int64_t mw00 = a + d, mw01 = 1, mw10 = c + d * d, mw11 = d;
        const IntMatrix expected = mat(mw00, mw01, -d * mw00 + mw10, -d * mw01 + mw11);
        bool ok = true;
        try {
          const auto r = conjugate_to_companion(BigInt(a), BigInt(c), BigInt(d));
          ok = r.companion == expected && r.companion == mat(a + d, 1, c - a * d, 0) &&
               r.witness == mat(1, 0, d, 1);
        } catch (const std::exception&) {
          ok = false;
        }
        o.check(ok, "a=" + std::to_string(a) + " c=" + std::to_string(c) + " d=" + std::to_string(d));
      }
  return o;
}

// Taylor coefficients of 1/(1 - t z + p z^2).
std::vector<Rational> reciprocal_oracle(const BigInt& t, std::uint64_t p, std::size_t degree) {
  std::vector<Rational> r(degree + 1);
  r[0] = 1;
  for (std::size_t n = 1; n <= degree; ++n) {
    r[n] = Rational(t) * r[n - 1];
    if (n >= 2) r[n] -= Rational(BigInt(p)) * r[n - 2];
  }
  return r;
}

Outcome rationality() {
  Outcome o;
  for (const auto& m : sweep_matrices()) {
    const std::int64_t tr = m[0] + m[3];
    const IntMatrix a = mat(m[0], m[1], m[2], m[3]);
    for (std::uint64_t p : kSmallPrimes) {
      if ((tr * tr - 4) % static_cast<std::int64_t>(p) == 0) continue;
      const auto expected = reciprocal_oracle(trace_power(tr, p), p, 8);
      bool ok = true;
      std::string where;
      try {
        const TruncatedSeries s = zeta_local_nt_series(a, p, std::nullopt, 8);
        for (std::size_t k = 0; k <= 8 && ok; ++k) {
          if (s.coefficients[k] != expected[k]) {
            ok = false;
            where = ", z^" + std::to_string(k) + ": " + to_string(s.coefficients[k]) + " vs " + to_string(expected[k]);
          }
        }
      } catch (const std::exception& e) {
        ok = false;
        where = std::string(": ") + e.what();
      }
      o.check(ok, "A=" + to_string(a) + " p=" + std::to_string(p) + where);
    }
  }
  return o;
}

Outcome bad_prime_series() {
  Outcome o;
  const std::pair<QuadraticIrrational, std::uint64_t> cases[] = {{QuadraticIrrational::golden(), 5},
                                                                 {QuadraticIrrational::sqrt_of(2), 2},
                                                                 {QuadraticIrrational::sqrt_of(3), 3},
                                                                 {QuadraticIrrational::sqrt_of(3), 2}};
  for (const auto& [theta, p] : cases) {
    const IntMatrix a = matrix_A(expand(theta));
    for (int alpha : {-1, 0, 1}) {
      const TruncatedSeries s = zeta_local_nt_series(a, p, alpha, 8);
      bool ok = s.coefficients.size() == 9;
      long long power = 1;
      for (std::size_t k = 0; ok && k <= 8; ++k, power *= alpha) ok = s.coefficients[k] == Rational(power);
      o.check(ok, "p=" + std::to_string(p) + " alpha=" + std::to_string(alpha));
    }
  }
  return o;
}

Outcome smith_reduction() {
  Outcome o;
  for (const auto& m : sweep_matrices()) {
    const std::int64_t tr = m[0] + m[3];
    const IntMatrix a = mat(m[0], m[1], m[2], m[3]);
    for (std::uint64_t p : kSmallPrimes) {
      if ((tr * tr - 4) % static_cast<std::int64_t>(p) == 0) continue;
      const BigInt t = trace_power(tr, p);
      const BigInt bp = p;
      // I - L_p^t with L_p = [[t-p, p], [t-p-1, p]]
      const IntMatrix rel{{1 - (t - bp), -(t - bp - 1)}, {-bp, 1 - bp}};
      const auto diag = smith_normal_form(rel).diagonal();
      const BigInt expected = abs(1 + bp - t);
      const auto k0 = k0_cuntz_krieger(CuntzKriegerMatrix::trusted(build_Lp(a, p).intro));
      o.check(diag.size() == 2 && diag[0] == 1 && diag[1] == expected && k0.order() == expected,
              "A=" + to_string(a) + " p=" + std::to_string(p));
    }
  }
  return o;
}

Outcome count_oracle() {
  Outcome o;
  for (const auto& entry : cm_catalog()) {
    const BigInt disc = entry.curve.discriminant();
    for (std::uint64_t p : primes_in_range(5, 10000)) {
      if (disc % BigInt(p) == 0) continue;
      std::uint64_t q = p;
      for (unsigned n = 1; q <= 10000; ++n, q *= p) {
        o.check(count_points_ext(entry.curve, p, n) == count_points_ext_bruteforce(entry.curve, p, n),
                entry.curve.describe() + " p=" + std::to_string(p) + " n=" + std::to_string(n));
      }
    }
  }
  return o;
}

Outcome hasse_bound() {
  Outcome o;
  for (const auto& entry : cm_catalog()) {
    const std::int64_t a = entry.curve.a(), b = entry.curve.b();
    for (std::uint64_t p : primes_in_range(2, 200)) {
      if (entry.curve.discriminant() % BigInt(p) == 0) continue;
      const auto ap = static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(naive_count(a, b, p));
      bool ok = ap * ap <= 4 * static_cast<std::int64_t>(p);
      try {
        ok = ok && trace_of_frobenius(entry.curve, p) == ap;
      } catch (const std::exception&) {
        ok = false;
      }
      o.check(ok, entry.curve.describe() + " p=" + std::to_string(p));
    }
  }
  return o;
}

Outcome trace_chain() {
  Outcome o;
  for (const auto& entry : cm_catalog())
    for (std::int64_t u = -5; u <= 5; ++u)
      for (std::int64_t v = -5; v <= 5; ++v) {
        if (v == 0) continue;  // rational alpha: multiplication is scalar, no chain
        const std::int64_t expected = 2 * u + ((entry.disc_k % 4 == 0) ? 0 : v);
        bool ok = true;
        try {
          const ImagQuadElement alpha(entry.disc_k, u, v);
          const IntMatrix f = teichmuller_F(endo_matrix(alpha));
          const IntMatrix r = rho(f);
          ok = alpha.trace() == expected && trace(f) == expected && trace(r) == expected;
        } catch (const std::exception&) {
          ok = false;
        }
        o.check(ok, "disc=" + std::to_string(entry.disc_k) + " u=" + std::to_string(u) + " v=" + std::to_string(v));
      }
  return o;
}

Outcome discriminant_shift() {
  Outcome o;
  std::size_t failures = 0;
  std::string first;
  std::size_t cases = 0;
  for (std::uint64_t up : primes_in_range(2, 97)) {
    const auto p = static_cast<std::int64_t>(up);
    for (std::int64_t t = 0; t <= 1000000; ++t) {
      ++cases;
      const auto [dk, dgk] = lp_discriminants<std::int64_t>(t, p);
      if (dk != t * t - 4 * p || dgk != t * t + 4 * p || dgk - dk != 8 * p) {
        if (failures++ == 0) first = "t=" + std::to_string(t) + " p=" + std::to_string(p);
      }
    }
  }
  o.cases = cases;
  o.failures = failures;
  o.pass = failures == 0;
  if (!o.pass) o.note = "first failure: " + first;
  return o;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome reciprocity_report_cli() {
  Outcome o;
  const std::string cmd = std::string("\"") + NCRECIP_PATH + "\" reciprocity cm:-4 golden --primes 5..30 --output json";
  int s1 = 0, s2 = 0;
  const std::string first = run_capture(cmd, s1);
  const std::string second = run_capture(cmd, s2);
  o.check(s1 == 0 && s2 == 0, "nonzero exit status");
  o.check(!first.empty() && first == second, "outputs differ between runs");
  Json j;
  try {
    j = Json::parse(first);
  } catch (const std::exception& e) {
    o.check(false, std::string("invalid JSON: ") + e.what());
    return o;
  }
  const std::vector<std::uint64_t> primes{5, 7, 11, 13, 17, 19, 23, 29};
  const auto& rows = j.at("rows");
  o.check(rows.size() == primes.size(), "row count");
  const IntMatrix a = mat(2, 1, 1, 1);
  for (std::size_t i = 0; i < rows.size() && i < primes.size(); ++i) {
    const auto& row = rows[i];
    const std::uint64_t p = primes[i];
    o.check(row.at("prime").get<std::uint64_t>() == p, "prime order");
    const auto& nc = row.at("nc_factor");
    const auto& cf = row.at("curve_factor");
    const bool match = cf.is_object() && cf.at("c1") == nc.at("c1") && cf.at("c2") == nc.at("c2");
    o.check(row.at("match").get<bool>() == match, "match flag at p=" + std::to_string(p));
    if (p != 5) {  // 5 divides tr(A)^2 - 4 = 5
      const BigInt t = trace_power(3, p);
      o.check(nc.at("c1").get<std::string>() == BigInt(-t).str(), "nc c1 at p=" + std::to_string(p));
      bool noted = false;
      for (const auto& note : row.at("notes")) noted = noted || note.get<std::string>().find("expected mismatch") == 0;
      o.check(!(t * t > 4 * BigInt(p)) || noted, "missing expected-mismatch note at p=" + std::to_string(p));
    }
  }
  return o;
}

Outcome cyclicity_audit() {
  Outcome o;
  std::size_t non_cyclic = 0;
  bool saw_x3_plus_x_at_5 = false;
  for (const auto& entry : cm_catalog()) {
    for (std::uint64_t p : primes_in_range(2, 100)) {
      if (entry.curve.discriminant() % BigInt(p) == 0) continue;
      const FiniteAbelianGroup g = group_structure(entry.curve, p);
      o.check(g.is_finite() && g.order() == naive_count(entry.curve.a(), entry.curve.b(), p) && g.torsion().size() <= 2,
              entry.curve.describe() + " p=" + std::to_string(p));
      if (!g.is_cyclic()) ++non_cyclic;
      if (entry.disc_k == -4 && p == 5)
        saw_x3_plus_x_at_5 = g == FiniteAbelianGroup(0, {BigInt(2), BigInt(2)});
    }
  }
  o.check(non_cyclic > 0, "no non-cyclic instance");
  o.check(saw_x3_plus_x_at_5, "y^2 = x^3 + x at p = 5 is not Z/2 + Z/2");
  o.note = std::to_string(non_cyclic) + " non-cyclic groups" + (o.note.empty() ? "" : "; " + o.note);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"smith normal form, 2x2 entries in [-5,5]", 10, smith_sweep},
      {"K0 order equals |det(I - B^t)|", 0, k0_order_law},
      {"companion conjugation, a,c,d in [-10,10]", 0, companion_conjugation},
      {"rationality: exp-series equals 1/(1 - tr(A^p) z + p z^2)", 30, rationality},
      {"bad-prime series equals 1/(1 - alpha z)", 0, bad_prime_series},
      {"Smith reduction of I - L_p^t", 0, smith_reduction},
      {"point count recursion equals brute force, p^n <= 10^4", 60, count_oracle},
      {"Hasse bound on catalog curves, p <= 200", 0, hasse_bound},
      {"trace chain alpha -> F -> rho", 0, trace_chain},
      {"discriminant shift 8p, t <= 10^6, p <= 97", 0, discriminant_shift},
      {"reciprocity report cm:-4 golden 5..30, deterministic JSON", 0, reciprocity_report_cli},
      {"cyclicity audit, good p <= 100", 0, cyclicity_audit},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.note += (o.note.empty() ? "" : "; ") + std::string("over the time budget");
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %zu cases, %zu failures, %.2f s%s%s\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.cases, o.failures, secs, o.note.empty() ? "" : "  ", o.note.c_str());
  }
  std::printf("%d of %d criteria pass\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
