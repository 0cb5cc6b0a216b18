// ncrecip: command-line front end for the reciprocity harness.
//
//   ncrecip cf golden
//   ncrecip k0 '[[2,1],[1,1]]' --order
//   ncrecip count cm:-4 5 3 --theta golden
//   ncrecip reciprocity cm:-4 golden --primes 5..30 --output json
//   ncrecip lemmas --sweep-bound 10
//
// Exit codes: 0 success, 1 a self-test identity failed, 2 usage,
// 3 undefined result, 4 I/O.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncr/ncr.hpp"

namespace {

constexpr int kExitIdentityFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUndefined = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string output = "text";
  std::string primes = "5..50";
  std::size_t trunc = 8;
  int sweep_bound = 5;
  std::string config;
};

void apply_config(GlobalOptions& g, const CLI::App& app) {
  if (g.config.empty()) return;
  std::ifstream in(g.config);
  if (!in) throw IoError("cannot read config file " + g.config);
  ncr::Json j;
  try {
    j = ncr::Json::parse(in);
  } catch (const ncr::Json::parse_error& e) {
    throw std::invalid_argument("malformed config " + g.config + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "output") {
        if (unset("--output")) g.output = value.get<std::string>();
      } else if (key == "primes") {
        if (unset("--primes")) g.primes = value.get<std::string>();
      } else if (key == "trunc") {
        if (unset("--trunc")) g.trunc = value.get<std::size_t>();
      } else if (key == "sweep_bound") {
        if (unset("--sweep-bound")) g.sweep_bound = value.get<int>();
      } else {
        throw std::invalid_argument("unknown config key " + key);
      }
    }
  } catch (const ncr::Json::type_error& e) {
    throw std::invalid_argument(std::string("config value has the wrong type: ") + e.what());
  }
  if (g.output != "text" && g.output != "json" && g.output != "csv") {
    throw std::invalid_argument("config output must be text, json or csv");
  }
}

std::string csv_pairs(std::initializer_list<std::pair<std::string, std::string>> rows) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += k + ',' + ncr::detail::csv_field(v) + '\n';
  return out;
}

std::string render_terms(const std::vector<ncr::BigInt>& terms) {
  std::string s = "[";
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? ", " : "") + terms[i].str();
  return s + "]";
}

int cmd_cf(const GlobalOptions& g, const std::string& spec) {
  using namespace ncr;
  const QuadraticIrrational theta = parse_theta_spec(spec);
  const ContinuedFraction cf = expand(theta);
  const IntMatrix a = matrix_A(cf);
  const BigInt tr = trace(a);
  const QuadraticNumber unit = perron_eigenvalue(period_product(cf), theta.d());
  std::ostringstream approx;
  approx << std::setprecision(12) << unit.to_double();
  std::ostringstream unit_text;
  unit_text << unit;

  if (g.output == "json") {
    Json j{{"theta", to_json(theta)},
           {"continued_fraction", to_json(cf)},
           {"matrix_a", to_json(a)},
           {"trace", int_json(tr)},
           {"trace_sq_minus_4", int_json(tr * tr - 4)},
           {"fundamental_unit",
            {{"rational_part", to_string(unit.rational_part())},
             {"surd_part", to_string(unit.surd_part())},
             {"d", int_json(unit.radicand())},
             {"approx", approx.str()}}}};
    std::cout << j.dump(2) << '\n';
  } else if (g.output == "csv") {
    std::cout << csv_pairs({{"preperiod", render_terms(cf.preperiod())},
                            {"period", render_terms(cf.period())},
                            {"matrix_a", to_string(a)},
                            {"trace", tr.str()},
                            {"trace_sq_minus_4", BigInt(tr * tr - 4).str()},
                            {"fundamental_unit", unit_text.str()}});
  } else {
    std::cout << "theta: " << theta << '\n'
              << "preperiod: " << render_terms(cf.preperiod()) << "  period: " << render_terms(cf.period()) << '\n'
              << "A = " << a << '\n'
              << "tr(A) = " << tr << '\n'
              << "tr(A)^2 - 4 = " << BigInt(tr * tr - 4) << '\n'
              << "fundamental unit: " << unit_text.str() << " ~ " << approx.str() << '\n';
  }
  return 0;
}

int cmd_k0(const GlobalOptions& g, const std::string& spec, bool trusted, bool want_order) {
  using namespace ncr;
  const IntMatrix b = parse_matrix_spec(spec);
  const CuntzKriegerMatrix ck = trusted ? CuntzKriegerMatrix::trusted(b) : CuntzKriegerMatrix::checked(b);
  const FiniteAbelianGroup k0 = k0_cuntz_krieger(ck);
  const std::size_t k1 = k1_cuntz_krieger(ck);
  std::optional<BigInt> order;
  if (want_order && k0.is_finite()) order = k0.order();

  if (g.output == "json") {
    Json j{{"matrix", to_json(b)}, {"k0", to_json(k0)}, {"k0_render", k0.render()}, {"k1_rank", k1}};
    if (want_order) j["order"] = order ? int_json(*order) : Json(nullptr);
    std::cout << j.dump(2) << '\n';
  } else if (g.output == "csv") {
    std::cout << csv_pairs({{"k0", k0.render()},
                            {"k1_rank", std::to_string(k1)},
                            {"order", order ? order->str() : std::string()}});
  } else {
    std::cout << "K0 = " << k0.render() << (k0.is_trivial() ? " (trivial)" : "") << '\n';
    std::cout << "K1 = " << (k1 == 0 ? std::string("0") : k1 == 1 ? std::string("ℤ") : "ℤ^" + std::to_string(k1))
              << '\n';
    if (order) std::cout << "order = " << *order << '\n';
  }
  if (want_order && !order) {
    std::cerr << "ncrecip: K0 has free rank " << k0.free_rank() << "; order undefined\n";
    return kExitUndefined;
  }
  return 0;
}

int cmd_count(const GlobalOptions& g, const std::string& curve_spec, std::uint64_t p, unsigned n_max,
              const std::string& theta_spec) {
  using namespace ncr;
  if (n_max < 1) throw std::invalid_argument("N_MAX must be >= 1");
  const WeierstrassCurve curve = parse_curve_spec(curve_spec);
  std::optional<QuadraticIrrational> theta;
  if (!theta_spec.empty()) theta = parse_theta_spec(theta_spec);
  const PointCountReport report = point_count_report(curve, p, n_max, theta);
  if (g.output == "json")
    std::cout << to_json(report).dump(2) << '\n';
  else if (g.output == "csv")
    std::cout << to_csv(report);
  else
    std::cout << to_text(report);
  return 0;
}

int cmd_reciprocity(const GlobalOptions& g, const std::string& curve_spec, const std::string& theta_spec,
                    const std::string& out_path) {
  using namespace ncr;
  const WeierstrassCurve curve = parse_curve_spec(curve_spec);
  const QuadraticIrrational theta = parse_theta_spec(theta_spec);
  const auto [lo, hi] = parse_prime_range(g.primes);
  const ReciprocityReport report = reciprocity_report(curve, theta, lo, hi);

  std::string body;
  if (g.output == "json")
    body = to_json(report).dump(2) + '\n';
  else if (g.output == "csv")
    body = to_csv(report);
  else
    body = to_text(report);

  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out << body;
    out.close();
    if (!out) throw IoError("write to " + out_path + " failed");
  }
  return 0;
}

int cmd_lemmas(const GlobalOptions& g, bool json) {
  using namespace ncr;
  const LemmaSuiteResult r = run_lemma_suite({g.sweep_bound, g.trunc});
  if (json || g.output == "json")
    std::cout << to_json(r).dump(2) << '\n';
  else if (g.output == "csv")
    std::cout << to_csv(r);
  else
    std::cout << to_text(r);
  return r.all_passed() ? 0 : kExitIdentityFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative reciprocity harness: real-multiplication tori against CM elliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--primes", g.primes, "Prime range A..B (inclusive)");
  app.add_option("--trunc", g.trunc, "Series truncation degree")->check(CLI::PositiveNumber);
  app.add_option("--sweep-bound", g.sweep_bound, "Entry bound for exhaustive self-test sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "JSON file with defaults for the flags above");

  std::string theta_spec, curve_spec, matrix_spec, out_path;
  std::uint64_t prime = 0;
  unsigned n_max = 3;
  bool trusted = false, want_order = false, lemmas_json = false;

  auto* cf = app.add_subcommand("cf", "Continued fraction, matrix A and fundamental unit of theta");
  cf->add_option("THETA", theta_spec, "'golden', 'sqrt:D' or {\"p\":..,\"d\":..,\"q\":..}")->required();

  auto* k0 = app.add_subcommand("k0", "K-theory of the Cuntz-Krieger algebra of a square matrix");
  k0->add_option("MATRIX", matrix_spec, "JSON rows, e.g. [[2,1],[1,1]]")->required();
  k0->add_flag("--trusted", trusted, "Accept negative entries");
  k0->add_flag("--order", want_order, "Report |K0|; exit 3 when K0 is infinite");

  auto* count = app.add_subcommand("count", "Point counts over F_{p^n} against K0 orders");
  count->add_option("CURVE", curve_spec, "'a,b', 'cm:D' or JSON")->required();
  count->add_option("P", prime, "Prime")->required();
  count->add_option("N_MAX", n_max, "Largest extension degree");
  count->add_option("--theta", theta_spec, "Pair with the torus of this theta");

  auto* rec = app.add_subcommand("reciprocity", "Per-prime comparison of local factors");
  rec->add_option("CURVE", curve_spec, "'a,b', 'cm:D' or JSON")->required();
  rec->add_option("THETA", theta_spec, "'golden', 'sqrt:D' or JSON")->required();
  rec->add_option("--out", out_path, "Write the report to this file");

  auto* lemmas = app.add_subcommand("lemmas", "Run the exact-identity self-test suite");
  lemmas->add_flag("--json", lemmas_json, "Machine-readable results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    apply_config(g, app);
    if (*cf) return cmd_cf(g, theta_spec);
    if (*k0) return cmd_k0(g, matrix_spec, trusted, want_order);
    if (*count) return cmd_count(g, curve_spec, prime, n_max, theta_spec);
    if (*rec) return cmd_reciprocity(g, curve_spec, theta_spec, out_path);
    if (*lemmas) return cmd_lemmas(g, lemmas_json);
  } catch (const IoError& e) {
    std::cerr << "ncrecip: " << e.what() << '\n';
    return kExitIo;
  } catch (const ncr::UndefinedResult& e) {
    std::cerr << "ncrecip: undefined: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const ncr::UnsupportedPrime& e) {
    std::cerr << "ncrecip: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ncrecip: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "ncrecip: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
