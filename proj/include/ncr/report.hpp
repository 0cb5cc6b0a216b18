#pragma once

// Per-prime comparison reports: the local factors of a CM curve against
// those of the noncommutative torus of a chosen theta, and point counts
// against K0 orders of the Cuntz-Krieger algebras of L_p^n.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncr/curves.hpp"
#include "ncr/json_io.hpp"
#include "ncr/kgroups.hpp"
#include "ncr/quadratic.hpp"
#include "ncr/zeta.hpp"

namespace ncr {

struct ReciprocityRow {
  std::uint64_t prime;
  std::optional<LocalFactor> curve_factor;  // empty: reduction analysis unsupported at p
  LocalFactor nc_factor;
  bool match;
  std::vector<std::string> notes;
};

struct ReciprocitySummary {
  std::size_t match = 0;
  std::size_t mismatch = 0;
  std::size_t skip = 0;
};

struct ReciprocityReport {
  WeierstrassCurve curve;
  QuadraticIrrational theta;
  IntMatrix matrix_a;
  std::vector<ReciprocityRow> rows;
  ReciprocitySummary summary;
};

inline ReciprocityRow reciprocity_row(const WeierstrassCurve& curve, const IntMatrix& a, std::uint64_t p) {
  std::vector<std::string> notes;
  std::optional<LocalFactor> cf;
  std::optional<ReductionType> red;
  try {
    cf = local_l_factor_curve(curve, p);
  } catch (const UnsupportedPrime&) {
    notes.emplace_back("curve: bad reduction at p = " + std::to_string(p) + "; reduction type unsupported");
  }
  if (p > 3) red = reduction_type(curve, p);

  std::optional<int> alpha;
  if (is_bad_prime_nt(a, p)) {
    alpha = red ? red->alpha : 0;
    if (red && red->tag == ReductionKind::good) {
      notes.emplace_back("nc: p | tr(A)^2 - 4; curve has good reduction, alpha = 0");
    } else if (red) {
      notes.emplace_back("nc: p | tr(A)^2 - 4; alpha = " + std::to_string(*alpha) + " from curve reduction " +
                         to_string(red->tag));
    } else {
      notes.emplace_back("nc: p | tr(A)^2 - 4; alpha unavailable, using 0");
    }
  }
  LocalFactor nc = zeta_local_nt_closed(a, p, alpha);

  if (nc.status() == FactorStatus::good) {
    const BigInt bp = p;
    if (nc.c1() * nc.c1() > 4 * bp) {
      notes.emplace_back("expected mismatch: |tr(A^p)| exceeds the Hasse bound 2*sqrt(p)");
    }
  }
  if (cf && cf->status() != nc.status()) {
    notes.emplace_back(std::string("reduction status differs: curve ") + to_string(cf->status()) + ", nc " +
                       to_string(nc.status()));
  }
  const bool match = cf && cf->same_polynomial(nc);
  return {p, std::move(cf), std::move(nc), match, std::move(notes)};
}

/// One row per prime in [lo, hi], ascending.
inline ReciprocityReport reciprocity_report(const WeierstrassCurve& curve, const QuadraticIrrational& theta,
                                            std::uint64_t lo, std::uint64_t hi) {
  IntMatrix a = matrix_A(expand(theta));
  ReciprocityReport report{curve, theta, a, {}, {}};
  for (std::uint64_t p : primes_in_range(lo, hi)) {
    report.rows.push_back(reciprocity_row(curve, a, p));
    const auto& row = report.rows.back();
    if (!row.curve_factor)
      ++report.summary.skip;
    else if (row.match)
      ++report.summary.match;
    else
      ++report.summary.mismatch;
  }
  return report;
}

inline Json to_json(const ReciprocityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"prime", row.prime},
                        {"curve_factor", row.curve_factor ? to_json(*row.curve_factor) : Json("unsupported")},
                        {"nc_factor", to_json(row.nc_factor)},
                        {"match", row.match},
                        {"notes", row.notes}});
  }
  return Json{{"curve", to_json(r.curve)},
              {"theta", to_json(r.theta)},
              {"matrix_a", to_json(r.matrix_a)},
              {"rows", rows},
              {"summary", {{"match", r.summary.match}, {"mismatch", r.summary.mismatch}, {"skip", r.summary.skip}}}};
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}
}  // namespace detail

inline std::string to_csv(const ReciprocityReport& r) {
  std::ostringstream os;
  os << "prime,curve_c1,curve_c2,nc_c1,nc_c2,match,notes\n";
  for (const auto& row : r.rows) {
    os << row.prime << ',';
    if (row.curve_factor)
      os << row.curve_factor->c1() << ',' << row.curve_factor->c2() << ',';
    else
      os << "unsupported,unsupported,";
    os << row.nc_factor.c1() << ',' << row.nc_factor.c2() << ',' << (row.match ? "true" : "false") << ','
       << detail::csv_field(detail::join(row.notes, "; ")) << '\n';
  }
  return os.str();
}

inline std::string to_text(const ReciprocityReport& r) {
  std::ostringstream os;
  os << "curve: " << r.curve.describe() << (r.curve.label() ? " (" + *r.curve.label() + ")" : "") << '\n';
  os << "theta: " << r.theta << "  A = " << r.matrix_a << '\n';
  for (const auto& row : r.rows) {
    os << "p = " << row.prime << ": curve " << (row.curve_factor ? row.curve_factor->render() : "unsupported")
       << " | nc " << row.nc_factor.render() << " | " << (row.match ? "match" : "mismatch") << '\n';
    for (const auto& n : row.notes) os << "    " << n << '\n';
  }
  os << "summary: " << r.summary.match << " match, " << r.summary.mismatch << " mismatch, " << r.summary.skip
     << " skip\n";
  return os.str();
}

struct PointCountRow {
  unsigned n;
  BigInt count_recursion;
  std::optional<std::uint64_t> count_bruteforce;  // present iff p^n <= 10^4
  std::optional<FiniteAbelianGroup> k0_group;     // present iff theta was supplied
  std::optional<bool> k0_matches_count;
};

struct PointCountReport {
  WeierstrassCurve curve;
  std::uint64_t prime;
  std::optional<QuadraticIrrational> theta;
  std::string reduction;  // "good", a bad ReductionKind, or "unsupported"
  std::vector<PointCountRow> rows;
  std::vector<std::string> notes;
};

inline constexpr std::uint64_t kBruteForceLimit = 10000;

/// Counts over F_{p^n}, n = 1..n_max. At a bad prime only the reduction type is reported.
inline PointCountReport point_count_report(const WeierstrassCurve& curve, std::uint64_t p, unsigned n_max,
                                           const std::optional<QuadraticIrrational>& theta) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  PointCountReport report{curve, p, theta, "good", {}, {}};
  if (!curve.has_good_reduction(p)) {
    try {
      report.reduction = to_string(reduction_type(curve, p).tag);
    } catch (const UnsupportedPrime&) {
      report.reduction = "unsupported";
    }
    report.notes.emplace_back("bad prime: reduced report");
    return report;
  }
  std::optional<IntMatrix> a;
  std::optional<IntMatrix> base;
  if (theta) {
    a = matrix_A(expand(*theta));
    if (is_bad_prime_nt(*a, p)) {
      report.notes.emplace_back("nc: p | tr(A)^2 - 4; eps_n = 1 - alpha^n with alpha = 0");
    } else {
      base = build_Lp(*a, p).canonical;
    }
  }
  std::uint64_t q = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    PointCountRow row{n, count_points_ext(curve, p, n), std::nullopt, std::nullopt, std::nullopt};
    if (q <= kBruteForceLimit / p) {
      q *= p;
      row.count_bruteforce = count_points_ext_bruteforce(curve, p, n);
    } else {
      q = kBruteForceLimit + 1;
    }
    if (a) {
      IntMatrix eps = base ? power(*base, n) : IntMatrix{{BigInt(1)}};  // 1 - 0^n
      row.k0_group = k0_cuntz_krieger(CuntzKriegerMatrix::trusted(eps));
      row.k0_matches_count = row.k0_group->is_finite() && row.k0_group->order() == row.count_recursion;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline Json to_json(const PointCountReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"n", row.n}, {"count_recursion", row.count_recursion.str()}};
    if (row.count_bruteforce) j["count_bruteforce"] = std::to_string(*row.count_bruteforce);
    if (row.k0_group) j["k0_group"] = to_json(*row.k0_group);
    if (row.k0_matches_count) j["k0_matches_count"] = *row.k0_matches_count;
    rows.push_back(j);
  }
  Json out{{"curve", to_json(r.curve)}, {"prime", r.prime}, {"reduction", r.reduction},
           {"rows", rows},              {"notes", r.notes}};
  if (r.theta) out["theta"] = to_json(*r.theta);
  return out;
}

inline std::string to_csv(const PointCountReport& r) {
  std::ostringstream os;
  os << "n,count_recursion,count_bruteforce,k0_group,k0_matches_count\n";
  for (const auto& row : r.rows) {
    os << row.n << ',' << row.count_recursion << ','
       << (row.count_bruteforce ? std::to_string(*row.count_bruteforce) : "") << ','
       << (row.k0_group ? detail::csv_field(row.k0_group->render()) : "") << ','
       << (row.k0_matches_count ? (*row.k0_matches_count ? "true" : "false") : "") << '\n';
  }
  return os.str();
}

inline std::string to_text(const PointCountReport& r) {
  std::ostringstream os;
  os << "curve: " << r.curve.describe() << "  p = " << r.prime << "  reduction: " << r.reduction << '\n';
  for (const auto& row : r.rows) {
    os << "n = " << row.n << ": #E = " << row.count_recursion;
    if (row.count_bruteforce) os << " (brute force " << *row.count_bruteforce << ")";
    if (row.k0_group) {
      os << "  K0 = " << row.k0_group->render() << (*row.k0_matches_count ? "  |K0| = #E" : "  |K0| != #E");
    }
    os << '\n';
  }
  for (const auto& n : r.notes) os << "  " << n << '\n';
  return os.str();
}

}  // namespace ncr
