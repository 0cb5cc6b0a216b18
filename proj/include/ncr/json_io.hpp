#pragma once

// JSON encodings of the domain types and parsers for the CLI's
// shorthand specs ("golden", "sqrt:D", "cm:-4", "a,b").

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ncr/bigint.hpp"
#include "ncr/curves.hpp"
#include "ncr/functor.hpp"
#include "ncr/kgroups.hpp"
#include "ncr/matrix.hpp"
#include "ncr/quadratic.hpp"
#include "ncr/zeta.hpp"

namespace ncr {

using Json = nlohmann::json;

// Integers are JSON numbers while they fit in 64 bits, decimal strings beyond.
inline Json int_json(const BigInt& v) {
  if (fits_int64(v)) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline Json to_json(const QuadraticIrrational& t) {
  return Json{{"p", int_json(t.p())}, {"d", int_json(t.d())}, {"q", int_json(t.q())}};
}

inline QuadraticIrrational quadratic_from_json(const Json& j) {
  return {bigint_from_json(j.at("p")), bigint_from_json(j.at("d")), bigint_from_json(j.at("q"))};
}

inline Json to_json(const ContinuedFraction& cf) {
  Json pre = Json::array(), per = Json::array();
  for (const auto& a : cf.preperiod()) pre.push_back(int_json(a));
  for (const auto& a : cf.period()) per.push_back(int_json(a));
  return Json{{"preperiod", pre}, {"period", per}};
}

inline ContinuedFraction continued_fraction_from_json(const Json& j) {
  std::vector<BigInt> pre, per;
  for (const auto& v : j.at("preperiod")) pre.push_back(bigint_from_json(v));
  for (const auto& v : j.at("period")) per.push_back(bigint_from_json(v));
  return {std::move(pre), std::move(per)};
}

/// {"n": int, "rows": [[string]]}; entries are always strings.
inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.n(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return Json{{"n", m.n()}, {"rows", rows}};
}

/// Accepts {"n", "rows"} or a bare array of rows; entries may be numbers or strings.
inline IntMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("rows") : j;
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix JSON needs a nonempty array of rows");
  std::vector<std::vector<BigInt>> out;
  for (const auto& row : rows) {
    if (!row.is_array()) throw std::invalid_argument("matrix row must be an array");
    std::vector<BigInt> r;
    for (const auto& v : row) r.push_back(bigint_from_json(v));
    out.push_back(std::move(r));
  }
  if (j.is_object() && j.contains("n") && j.at("n").get<std::size_t>() != out.size()) {
    throw std::invalid_argument("matrix JSON: n does not match the row count");
  }
  return IntMatrix::from_rows(out);
}

inline Json to_json(const FiniteAbelianGroup& g) {
  Json torsion = Json::array();
  for (const auto& d : g.torsion()) torsion.push_back(int_json(d));
  return Json{{"free_rank", g.free_rank()}, {"torsion", torsion}};
}

inline FiniteAbelianGroup group_from_json(const Json& j) {
  std::vector<BigInt> torsion;
  for (const auto& v : j.at("torsion")) torsion.push_back(bigint_from_json(v));
  return {j.at("free_rank").get<std::size_t>(), std::move(torsion)};
}

inline Json to_json(const WeierstrassCurve& c) {
  Json j{{"a", c.a()}, {"b", c.b()}};
  if (c.label()) j["label"] = *c.label();
  return j;
}

inline WeierstrassCurve curve_from_json(const Json& j) {
  std::optional<std::string> label;
  if (j.contains("label") && !j.at("label").is_null()) label = j.at("label").get<std::string>();
  return {to_int64(bigint_from_json(j.at("a"))), to_int64(bigint_from_json(j.at("b"))), label};
}

inline Json to_json(const LocalFactor& f) {
  return Json{{"prime", f.prime()},
              {"c1", f.c1().str()},
              {"c2", f.c2().str()},
              {"side", to_string(f.side())},
              {"status", to_string(f.status())}};
}

inline LocalFactor local_factor_from_json(const Json& j) {
  const std::string side = j.at("side").get<std::string>();
  const std::string status = j.at("status").get<std::string>();
  if (side != "nc_torus" && side != "curve") throw std::invalid_argument("unknown factor side " + side);
  if (status != "good" && status != "bad") throw std::invalid_argument("unknown factor status " + status);
  return {j.at("prime").get<std::uint64_t>(), bigint_from_json(j.at("c1")), bigint_from_json(j.at("c2")),
          side == "curve" ? FactorSide::curve : FactorSide::nc_torus,
          status == "good" ? FactorStatus::good : FactorStatus::bad};
}

inline Json to_json(const ImagQuadElement& a) { return Json{{"disc", a.disc()}, {"u", a.u()}, {"v", a.v()}}; }

inline ImagQuadElement imag_quad_from_json(const Json& j) {
  return {j.at("disc").get<std::int64_t>(), j.at("u").get<std::int64_t>(), j.at("v").get<std::int64_t>()};
}

namespace detail {
inline bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

inline Json parse_json_arg(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed ") + what + " JSON: " + e.what());
  }
}
}  // namespace detail

/// "golden", "sqrt:D" or a JSON object {"p","d","q"}.
inline QuadraticIrrational parse_theta_spec(std::string_view spec) {
  if (spec == "golden") return QuadraticIrrational::golden();
  if (detail::starts_with(spec, "sqrt:")) return QuadraticIrrational::sqrt_of(parse_bigint(spec.substr(5)));
  if (detail::starts_with(spec, "{")) {
    try {
      return quadratic_from_json(detail::parse_json_arg(spec, "theta"));
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("theta JSON: ") + e.what());
    }
  }
  throw std::invalid_argument("theta spec must be 'golden', 'sqrt:D' or {\"p\":..,\"d\":..,\"q\":..}");
}

/// "cm:<disc>", "a,b" or a JSON object {"a","b","label"?}.
inline WeierstrassCurve parse_curve_spec(std::string_view spec) {
  if (detail::starts_with(spec, "cm:")) {
    return cm_lookup(to_int64(parse_bigint(spec.substr(3)))).curve;
  }
  if (detail::starts_with(spec, "{")) {
    try {
      return curve_from_json(detail::parse_json_arg(spec, "curve"));
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("curve JSON: ") + e.what());
    }
  }
  const auto comma = spec.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("curve spec must be 'a,b', 'cm:D' or JSON");
  return {to_int64(parse_bigint(spec.substr(0, comma))), to_int64(parse_bigint(spec.substr(comma + 1)))};
}

inline IntMatrix parse_matrix_spec(std::string_view spec) {
  try {
    return matrix_from_json(detail::parse_json_arg(spec, "matrix"));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
}

/// "A..B" inclusive.
inline std::pair<std::uint64_t, std::uint64_t> parse_prime_range(std::string_view spec) {
  const auto dots = spec.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("prime range must look like A..B");
  const BigInt lo = parse_bigint(spec.substr(0, dots));
  const BigInt hi = parse_bigint(spec.substr(dots + 2));
  if (lo < 0 || hi < 0) throw std::invalid_argument("prime range bounds must be nonnegative");
  return {lo.convert_to<std::uint64_t>(), hi.convert_to<std::uint64_t>()};
}

}  // namespace ncr
