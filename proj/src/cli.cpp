#include "shapeinv/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapeinv/error.hpp"
#include "shapeinv/exactalg.hpp"
#include "shapeinv/families.hpp"
#include "shapeinv/numquad.hpp"
#include "shapeinv/verify.hpp"

namespace shapeinv::cli {

namespace {

using exact::BigRational;
using exact::Poly;
using families::Couplings;
using families::Family;
using nlohmann::ordered_json;

constexpr int kSchema = 1;
constexpr double kEndpointOffset = 1e-6;
constexpr char kFloatTag[] = "@@float:";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Floats are stored as tagged strings and unquoted after dump() so that every
// number is written with the same %.17g format.
ordered_json float_value(double v) { return std::string(kFloatTag) + format_double(v); }

std::string dump(const ordered_json& j) {
  static const std::regex tagged("\"@@float:([^\"]*)\"");
  return std::regex_replace(j.dump(2), tagged, "$1") + "\n";
}

ordered_json rational_json(const BigRational& q) {
  return ordered_json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

ordered_json poly_json(const Poly& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : p.coeffs()) arr.push_back(rational_json(c));
  return arr;
}

ordered_json params_json(Family f, const Couplings& c) {
  ordered_json j{{"g", rational_json(c.g)}};
  if (f != Family::L) j["h"] = rational_json(c.h);
  return j;
}

struct Options {
  std::string format;
  std::string out_path;
};

struct ParamFlags {
  std::string family;
  int ell = 0;
  std::string g;
  std::string h;
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
  cmd->set_help_flag("--help", "print this help and exit");
  cmd->add_option("--family", p.family, "L, J or hJ")->required();
  cmd->add_option("--ell", p.ell, "deformation degree")->check(CLI::NonNegativeNumber);
  cmd->add_option("--g", p.g, "coupling g (p/q or decimal)")->required();
  cmd->add_option("--h", p.h, "coupling h (J, hJ)");
}

BigRational parse_coupling(const std::string& name, const std::string& text) {
  try {
    return exact::parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + name + ": cannot parse '" + text + "' as a rational");
  }
}

std::pair<Family, Couplings> resolve(const ParamFlags& p) {
  auto f = families::parse_family(p.family);
  if (!f) throw UsageError("unknown family '" + p.family + "'");
  Couplings c{parse_coupling("g", p.g), 0};
  if (*f != Family::L) {
    if (p.h.empty()) throw UsageError("--h is required for family " + std::string(families::name(*f)));
    c.h = parse_coupling("h", p.h);
  }
  families::validate(*f, p.ell, c);
  return {*f, c};
}

std::string format_or(const Options& o, const char* fallback) { return o.format.empty() ? fallback : o.format; }

// ---------------------------------------------------------------------------
// coeffs

struct CoeffsFlags {
  ParamFlags p;
  int n = 0;
};

std::string cmd_coeffs(const CoeffsFlags& flags, const Options& o) {
  auto [f, c] = resolve(flags.p);
  const Poly poly = families::deformed_poly(f, flags.p.ell, flags.n, c);
  if (format_or(o, "json") == "csv") {
    std::string s = "k,num,den\n";
    for (std::size_t k = 0; k < poly.coeffs().size(); ++k) {
      const auto& q = poly.coeffs()[k];
      s += std::to_string(k) + "," + q.get_num().get_str() + "," + q.get_den().get_str() + "\n";
    }
    return s;
  }
  ordered_json j{{"schema", kSchema},
                 {"family", families::name(f)},
                 {"ell", flags.p.ell},
                 {"n", flags.n},
                 {"params", params_json(f, c)},
                 {"variable", "eta"},
                 {"coeffs", poly_json(poly)}};
  return dump(j);
}

// ---------------------------------------------------------------------------
// potential

struct PotentialFlags {
  ParamFlags p;
  int n = 0;
  int samples = 200;
  bool phi = false;
  std::optional<double> xmin;
  std::optional<double> xmax;
};

// Evaluates p at eta(x), expanding around the nearest finite endpoint of the
// eta-domain so that 1 - eta and 1 + eta keep full relative precision.
class EndpointEvaluator {
 public:
  EndpointEvaluator(Family f, const Poly& p) : f_(f), plain_(p) {
    if (f == Family::J) {
      near_plus_ = p.compose(Poly{1, 1});
      near_minus_ = p.compose(Poly{-1, 1});
    } else if (f == Family::hJ) {
      near_plus_ = p.compose(Poly{1, 1});
    }
  }

  double operator()(double x) const {
    switch (f_) {
      case Family::L:
        return plain_.eval(x * x);
      case Family::J:
        if (x < std::numbers::pi / 4) {
          const double s = std::sin(x);
          return near_plus_.eval(-2.0 * s * s);
        } else {
          const double c = std::cos(x);
          return near_minus_.eval(2.0 * c * c);
        }
      case Family::hJ: {
        const double s = std::sinh(x);
        return near_plus_.eval(2.0 * s * s);
      }
    }
    return 0.0;
  }

 private:
  Family f_;
  Poly plain_;
  Poly near_plus_;
  Poly near_minus_;
};

double hj_cutoff(int ell, int n, const Couplings& c) {
  constexpr double step = 0.01;
  double peak = 0.0;
  double x = step;
  for (; x < 500.0; x += step) {
    const double v = numquad::eigenfunction(Family::hJ, ell, n, c, x);
    const double v2 = v * v;
    peak = std::max(peak, v2);
    if (v2 < peak && v2 < 1e-16 * peak) break;
  }
  return x;
}

std::pair<double, double> plot_range(Family f, int ell, int n, const Couplings& c) {
  switch (f) {
    case Family::L:
      return {kEndpointOffset, 6.0 + std::sqrt(families::energy(f, ell, n, c).get_d())};
    case Family::J:
      return {kEndpointOffset, std::numbers::pi / 2 - kEndpointOffset};
    case Family::hJ:
      return {kEndpointOffset, hj_cutoff(ell, n, c)};
  }
  return {0.0, 1.0};
}

std::string cmd_potential(const PotentialFlags& flags, const Options& o) {
  auto [f, c] = resolve(flags.p);
  const int ell = flags.p.ell;
  if (flags.samples < 2) throw UsageError("--samples must be >= 2");
  if (flags.n < 0) throw UsageError("--n must be >= 0");
  if (auto top = families::max_level(f, ell, c); top && flags.n > *top) {
    throw UsageError("--n exceeds n_B - ell = " + std::to_string(*top));
  }
  auto [lo, hi] = plot_range(f, ell, flags.n, c);
  if (flags.xmin) lo = *flags.xmin;
  if (flags.xmax) hi = *flags.xmax;
  if (!(lo < hi)) throw UsageError("empty x range");
  const auto& sp = families::spec(f);
  if (lo <= sp.x_lo || hi >= sp.x_hi) throw UsageError("x range must lie inside the open domain");

  const exact::RationalFunction u = families::potential(f, ell, c);
  const EndpointEvaluator num(f, u.num());
  const EndpointEvaluator den(f, u.den());

  std::vector<std::array<double, 3>> rows;
  for (int i = 0; i < flags.samples; ++i) {
    const double x = i == flags.samples - 1 ? hi : lo + (hi - lo) * i / (flags.samples - 1);
    const double eta = families::eta_of(f, x);
    const double value = flags.phi ? numquad::eigenfunction(f, ell, flags.n, c, x) : num(x) / den(x);
    rows.push_back({x, eta, value});
  }
  const char* column = flags.phi ? "phi" : "U";
  if (format_or(o, "csv") == "csv") {
    std::string s = std::string("x,eta,") + column + "\n";
    for (const auto& r : rows) s += format_double(r[0]) + "," + format_double(r[1]) + "," + format_double(r[2]) + "\n";
    return s;
  }
  ordered_json j{{"schema", kSchema},
                 {"family", families::name(f)},
                 {"ell", ell},
                 {"params", params_json(f, c)}};
  if (flags.phi) j["n"] = flags.n;
  j["columns"] = {"x", "eta", column};
  ordered_json data = ordered_json::array();
  for (const auto& r : rows) data.push_back({float_value(r[0]), float_value(r[1]), float_value(r[2])});
  j["rows"] = data;
  return dump(j);
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumFlags {
  ParamFlags p;
  int n_max = 5;
};

std::string cmd_spectrum(const SpectrumFlags& flags, const Options& o) {
  auto [f, c] = resolve(flags.p);
  const int ell = flags.p.ell;
  if (flags.n_max < 0) throw UsageError("--n-max must be >= 0");
  int top = flags.n_max;
  const auto bound = families::max_level(f, ell, c);
  if (bound) top = std::min(top, *bound);
  std::vector<BigRational> energies;
  for (int n = 0; n <= top; ++n) energies.push_back(families::energy(f, ell, n, c));

  if (format_or(o, "json") == "csv") {
    std::string s = "n,num,den\n";
    for (std::size_t n = 0; n < energies.size(); ++n) {
      s += std::to_string(n) + "," + energies[n].get_num().get_str() + "," + energies[n].get_den().get_str() + "\n";
    }
    return s;
  }
  ordered_json j{{"schema", kSchema},
                 {"family", families::name(f)},
                 {"ell", ell},
                 {"params", params_json(f, c)}};
  if (f == Family::hJ) {
    j["n_B"] = families::n_bound(c.g, c.h);
    j["truncated"] = top < flags.n_max;
  }
  ordered_json list = ordered_json::array();
  for (const auto& e : energies) list.push_back(rational_json(e));
  j["energies"] = list;
  return dump(j);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyFlags {
  std::string families = "all";
  int ell_max = 3;
  int n_max = 5;
  int samples = 5;
  std::uint64_t seed = 1;
  std::string fault = "none";
  bool no_timing = false;
};

std::vector<Family> parse_family_list(const std::string& text) {
  std::vector<Family> out;
  if (text == "none") return out;
  if (text == "all") return {Family::L, Family::J, Family::hJ};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto f = families::parse_family(item);
    if (!f) throw UsageError("unknown family '" + item + "' in --families");
    if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
  }
  return out;
}

ordered_json report_json(const verify::VerificationReport& r) {
  ordered_json j{{"identity", r.identity},
                 {"family", families::name(r.family)},
                 {"ell", r.ell},
                 {"n", r.n},
                 {"sample", r.sample},
                 {"params", params_json(r.family, r.params)},
                 {"status", verify::status_name(r.status)}};
  j["witness"] = r.witness ? poly_json(*r.witness) : ordered_json(nullptr);
  ordered_json constants = ordered_json::object();
  for (const auto& [name, value] : r.constants) constants[name] = rational_json(value);
  j["constants"] = constants;
  j["injected"] = r.injected;
  j["note"] = r.note;
  return j;
}

std::pair<std::string, int> cmd_verify(const VerifyFlags& flags, const Options& o) {
  verify::SuiteConfig config;
  config.families = parse_family_list(flags.families);
  if (flags.ell_max < 0 || flags.n_max < 0 || flags.samples < 1) throw UsageError("suite sizes must be non-negative");
  config.ell_max = flags.ell_max;
  config.n_max = flags.n_max;
  config.samples = flags.samples;
  config.seed = flags.seed;
  auto fault = verify::parse_fault(flags.fault);
  if (!fault) throw UsageError("unknown --fault-injection '" + flags.fault + "'");
  config.fault = *fault;

  const auto t0 = std::chrono::steady_clock::now();
  const auto reports = verify::run_suite(config);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto summary = verify::summarize(reports);
  const int code = summary.fail == 0 ? kExitOk : kExitFailure;

  if (format_or(o, "json") == "csv") {
    std::string s = "identity,family,ell,n,sample,g,h,status,injected\n";
    for (const auto& r : reports) {
      s += r.identity + "," + std::string(families::name(r.family)) + "," + std::to_string(r.ell) + "," +
           std::to_string(r.n) + "," + std::to_string(r.sample) + "," + exact::to_string(r.params.g) + "," +
           exact::to_string(r.params.h) + "," + std::string(verify::status_name(r.status)) + "," +
           (r.injected ? "1" : "0") + "\n";
    }
    return {s, code};
  }
  ordered_json list = ordered_json::array();
  for (const auto& r : reports) list.push_back(report_json(r));
  ordered_json j{{"schema", kSchema}, {"reports", list}};
  j["summary"] = {{"pass", summary.pass},
                  {"fail", summary.fail},
                  {"skipped", summary.skipped},
                  {"wall_time_s", flags.no_timing ? ordered_json(nullptr) : float_value(elapsed)}};
  return {dump(j), code};
}

// ---------------------------------------------------------------------------
// orthonorm

struct OrthonormFlags {
  ParamFlags p;
  int n_max = 4;
  double tol = 1e-9;
};

std::pair<std::string, int> cmd_orthonorm(const OrthonormFlags& flags, const Options& o) {
  auto [f, c] = resolve(flags.p);
  if (flags.n_max < 0) throw UsageError("--n-max must be >= 0");
  if (!(flags.tol > 0)) throw UsageError("--tol must be positive");
  if (auto top = families::max_level(f, flags.p.ell, c); top && flags.n_max > *top) {
    throw UsageError("--n-max exceeds n_B - ell = " + std::to_string(*top));
  }
  const auto res = numquad::orthonormality_matrix(f, flags.p.ell, c, flags.n_max);

  bool ok = res.max_offdiag_rel < flags.tol;
  if (res.max_diag_rel_err) ok = ok && *res.max_diag_rel_err < flags.tol;
  for (std::size_t n = 0; n < res.gram.size(); ++n) ok = ok && std::isfinite(res.gram[n][n]) && res.gram[n][n] > 0;
  const int code = ok ? kExitOk : kExitFailure;

  if (format_or(o, "json") == "csv") {
    std::string s;
    for (std::size_t n = 0; n < res.gram.size(); ++n) {
      s += n == 0 ? "" : ",";
      s += "m" + std::to_string(n);
    }
    s = "n," + s + ",closed_form\n";
    for (std::size_t n = 0; n < res.gram.size(); ++n) {
      s += std::to_string(n);
      for (double v : res.gram[n]) s += "," + format_double(v);
      s += "," + (res.closed_form[n] ? format_double(*res.closed_form[n]) : std::string());
      s += "\n";
    }
    return {s, code};
  }
  ordered_json gram = ordered_json::array();
  for (const auto& row : res.gram) {
    ordered_json r = ordered_json::array();
    for (double v : row) r.push_back(float_value(v));
    gram.push_back(r);
  }
  ordered_json closed = ordered_json::array();
  for (const auto& v : res.closed_form) closed.push_back(v ? float_value(*v) : ordered_json(nullptr));
  ordered_json j{{"schema", kSchema},
                 {"family", families::name(f)},
                 {"ell", flags.p.ell},
                 {"params", params_json(f, c)},
                 {"n_max", flags.n_max},
                 {"tol", float_value(flags.tol)},
                 {"gram", gram},
                 {"closed_form", closed},
                 {"max_offdiag_rel", float_value(res.max_offdiag_rel)}};
  j["max_diag_rel_err"] = res.max_diag_rel_err ? float_value(*res.max_diag_rel_err) : ordered_json(nullptr);
  j["quadrature_error_estimate"] = float_value(res.max_abs_error_estimate);
  j["pass"] = ok;
  return {dump(j), code};
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-invariant deformed potentials and exceptional orthogonal polynomials", "shapeinv"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opts.out_path, "output file (default: standard output)");

  CoeffsFlags coeffs;
  auto* c_coeffs = app.add_subcommand("coeffs", "exact coefficients of P_{ell,n} in eta");
  add_param_flags(c_coeffs, coeffs.p);
  c_coeffs->add_option("--n", coeffs.n, "degree index")->check(CLI::NonNegativeNumber);

  PotentialFlags potential;
  auto* c_potential = app.add_subcommand("potential", "tabulate U(x) or phi_{ell,n}(x)");
  add_param_flags(c_potential, potential.p);
  c_potential->add_option("--samples", potential.samples, "number of rows");
  c_potential->add_option("--n", potential.n, "state index for --phi and the plot range");
  c_potential->add_flag("--phi", potential.phi, "tabulate the eigenfunction instead of the potential");
  c_potential->add_option("--xmin", potential.xmin, "override the lower end of the range");
  c_potential->add_option("--xmax", potential.xmax, "override the upper end of the range");

  SpectrumFlags spectrum;
  auto* c_spectrum = app.add_subcommand("spectrum", "exact energies E_{ell,n}");
  add_param_flags(c_spectrum, spectrum.p);
  c_spectrum->add_option("--n-max", spectrum.n_max, "highest n");

  VerifyFlags vflags;
  auto* c_verify = app.add_subcommand("verify", "run the exact verification suite");
  c_verify->add_option("--families", vflags.families, "all, none, or a comma list of L,J,hJ");
  c_verify->add_option("--ell-max", vflags.ell_max);
  c_verify->add_option("--n-max", vflags.n_max);
  c_verify->add_option("--samples", vflags.samples, "coupling samples per family");
  c_verify->add_option("--seed", vflags.seed);
  c_verify->add_option("--fault-injection", vflags.fault, "none, energy, ladder or xi");
  c_verify->add_flag("--no-timing", vflags.no_timing, "write wall_time_s as null");

  OrthonormFlags oflags;
  auto* c_orthonorm = app.add_subcommand("orthonorm", "numerical Gram matrix against the closed-form norms");
  add_param_flags(c_orthonorm, oflags.p);
  c_orthonorm->add_option("--n-max", oflags.n_max);
  c_orthonorm->add_option("--tol", oflags.tol, "relative threshold");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  std::string text;
  int code = kExitOk;
  try {
    if (app.got_subcommand(c_coeffs)) {
      text = cmd_coeffs(coeffs, opts);
    } else if (app.got_subcommand(c_potential)) {
      text = cmd_potential(potential, opts);
    } else if (app.got_subcommand(c_spectrum)) {
      text = cmd_spectrum(spectrum, opts);
    } else if (app.got_subcommand(c_verify)) {
      std::tie(text, code) = cmd_verify(vflags, opts);
    } else {
      std::tie(text, code) = cmd_orthonorm(oflags, opts);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OutOfSpectrum& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  if (opts.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << opts.out_path << "\n";
      return kExitUsage;
    }
    file << text;
  }
  return code;
}

}  // namespace shapeinv::cli
