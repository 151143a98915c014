#include "shapeinv/numquad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shapeinv/error.hpp"

namespace shapeinv::numquad {

namespace {

constexpr double kTMax = 6.0;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kUnderflowLog = -745.0;

struct Node {
  double x;
  double weight;
};

// Abscissa and weight for parameter t, or nullopt when the node has fallen
// onto an endpoint in double precision.
std::optional<Node> node(Domain domain, double t) {
  const double u = kHalfPi * std::sinh(t);
  if (domain == Domain::half_line) {
    if (std::abs(u) > 700.0) return std::nullopt;
    const double x = std::exp(u);
    return Node{x, x * kHalfPi * std::cosh(t)};
  }
  // x = r (1 + tanh u), r = pi/4, written to keep the left end exact.
  constexpr double r = std::numbers::pi / 4;
  if (u < -350.0 || u > 350.0) return std::nullopt;
  const double x = 2.0 * r / (1.0 + std::exp(-2.0 * u));
  if (x <= 0.0 || x >= kHalfPi) return std::nullopt;
  const double c = std::cosh(u);
  return Node{x, r * kHalfPi * std::cosh(t) / (c * c)};
}

struct LevelSum {
  double sum = 0.0;
  double abs_sum = 0.0;
};

// Sum over t = k h, k odd (or all k at level 0), |t| <= kTMax.
LevelSum level_terms(const std::function<double(double)>& f, Domain domain, int level) {
  const double h = std::ldexp(1.0, -level);
  const long kmax = static_cast<long>(kTMax / h);
  const long step = level == 0 ? 1 : 2;
  const long start = level == 0 ? 0 : 1;
  LevelSum out;
  auto add = [&](double t) {
    if (auto nd = node(domain, t)) {
      const double v = f(nd->x) * nd->weight;
      if (std::isfinite(v)) {
        out.sum += v;
        out.abs_sum += std::abs(v);
      }
    }
  };
  for (long k = start; k <= kmax; k += step) {
    add(k * h);
    if (k != 0) add(-k * h);
  }
  return out;
}

// ln Gamma via Lanczos (g = 7, n = 9)
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// eta(x) together with log|eta| and 1/eta, usable past the overflow of cosh.
struct EtaPoint {
  double eta;
  double log_abs;
  double inv;
};

EtaPoint eta_point(Family f, double x) {
  if (f == Family::hJ && x > 20.0) {
    const double e = std::exp(-4.0 * x);
    return EtaPoint{std::cosh(2.0 * x), 2.0 * x + std::log1p(e) - std::numbers::ln2, 2.0 * std::exp(-2.0 * x) / (1.0 + e)};
  }
  const double eta = families::eta_of(f, x);
  return EtaPoint{eta, std::log(std::abs(eta)), 1.0 / eta};
}

LogValue log_poly(const std::vector<double>& c, const EtaPoint& p) {
  if (c.empty()) return LogValue{0, -std::numeric_limits<double>::infinity()};
  const std::size_t d = c.size() - 1;
  double s = 0.0;
  double log_scale = 0.0;
  int scale_sign = 1;
  if (std::abs(p.eta) <= 1.0) {
    for (std::size_t k = c.size(); k-- > 0;) s = s * p.eta + c[k];
  } else {
    // p(eta) = eta^d * sum_j c_{d-j} eta^-j
    for (std::size_t j = 0; j <= d; ++j) s = s * p.inv + c[j];
    log_scale = static_cast<double>(d) * p.log_abs;
    if (p.eta < 0 && d % 2 == 1) scale_sign = -1;
  }
  if (s == 0.0) return LogValue{0, -std::numeric_limits<double>::infinity()};
  return LogValue{(s < 0 ? -1 : 1) * scale_sign, log_scale + std::log(std::abs(s))};
}

}  // namespace

Domain domain_of(Family f) { return f == Family::J ? Domain::quarter_period : Domain::half_line; }

double integrate_at_level(const std::function<double(double)>& f, Domain domain, int level) {
  double sum = 0.0;
  for (int l = 0; l <= level; ++l) sum += level_terms(f, domain, l).sum;
  return sum * std::ldexp(1.0, -level);
}

QuadratureResult integrate(const std::function<double(double)>& f, Domain domain, double tol, int max_levels) {
  constexpr int kMinLevels = 3;
  LevelSum acc = level_terms(f, domain, 0);
  double previous = acc.sum;
  QuadratureResult out{previous, std::numeric_limits<double>::infinity(), 0};
  for (int level = 1; level <= max_levels; ++level) {
    LevelSum add = level_terms(f, domain, level);
    acc.sum += add.sum;
    acc.abs_sum += add.abs_sum;
    const double h = std::ldexp(1.0, -level);
    const double current = acc.sum * h;
    const double l1 = acc.abs_sum * h;
    const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * l1;
    out = QuadratureResult{current, std::max(std::abs(current - previous), roundoff), level};
    if (level >= kMinLevels && out.abs_error_estimate <= tol * std::max(l1, std::numeric_limits<double>::min())) {
      return out;
    }
    previous = current;
  }
  throw NoConvergence("quadrature did not reach tol " + std::to_string(tol) + " after " +
                      std::to_string(max_levels) + " levels (estimate " + std::to_string(out.abs_error_estimate) + ")");
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x < 0.5) return log_gamma_lanczos(x + 1.0) - std::log(x);
  return log_gamma_lanczos(x);
}

double evaluate(const families::NormFormula& formula) {
  double log_part = 0.0;
  for (const auto& a : formula.gamma_numerator) log_part += log_gamma(a.get_d());
  for (const auto& a : formula.gamma_denominator) log_part -= log_gamma(a.get_d());
  return formula.prefactor.get_d() * std::exp(log_part);
}

LogValue log_poly_at(Family f, const std::vector<double>& coeffs, double x) { return log_poly(coeffs, eta_point(f, x)); }

double eigenfunction(Family f, int ell, int n, const Couplings& lambda, double x) {
  const families::WeightDescriptor w = families::weight(f, ell, lambda);
  const std::vector<double> p = families::deformed_poly(f, ell, n, lambda).to_double();
  const std::vector<double> xi = families::xi(f, ell, lambda).to_double();
  const EtaPoint e = eta_point(f, x);
  const LogValue lp = log_poly(p, e);
  const LogValue lx = log_poly(xi, e);
  if (lp.sign == 0) return 0.0;
  const double log_abs = 0.5 * w.log_base(x) + lp.log_abs - lx.log_abs;
  return lp.sign * lx.sign * std::exp(log_abs);
}

GramResult orthonormality_matrix(Family f, int ell, const Couplings& lambda, int n_max, double tol) {
  if (n_max < 0) throw InvalidParams("n_max must be >= 0");
  if (auto top = families::max_level(f, ell, lambda); top && n_max > *top) {
    throw OutOfSpectrum("n_max exceeds n_B - ell = " + std::to_string(*top));
  }
  const families::WeightDescriptor w = families::weight(f, ell, lambda);
  const std::vector<double> xi = families::xi(f, ell, lambda).to_double();
  std::vector<std::vector<double>> polys;
  for (int n = 0; n <= n_max; ++n) polys.push_back(families::deformed_poly(f, ell, n, lambda).to_double());

  const std::size_t size = polys.size();
  GramResult out;
  out.gram.assign(size, std::vector<double>(size, 0.0));
  for (std::size_t n = 0; n < size; ++n) {
    for (std::size_t m = 0; m < size; ++m) {
      auto integrand = [&](double x) {
        const EtaPoint e = eta_point(f, x);
        const LogValue a = log_poly(polys[n], e);
        const LogValue b = log_poly(polys[m], e);
        const LogValue d = log_poly(xi, e);
        if (a.sign == 0 || b.sign == 0) return 0.0;
        const double total = w.log_base(x) - 2.0 * d.log_abs + a.log_abs + b.log_abs;
        if (!(total > kUnderflowLog)) return 0.0;
        return a.sign * b.sign * std::exp(total);
      };
      QuadratureResult q = integrate(integrand, domain_of(f), tol);
      out.gram[n][m] = q.value;
      out.max_abs_error_estimate = std::max(out.max_abs_error_estimate, q.abs_error_estimate);
    }
  }

  for (std::size_t n = 0; n < size; ++n) {
    for (std::size_t m = 0; m < size; ++m) {
      if (n == m) continue;
      const double scale = std::sqrt(std::abs(out.gram[n][n] * out.gram[m][m]));
      out.max_offdiag_rel = std::max(out.max_offdiag_rel, std::abs(out.gram[n][m]) / scale);
    }
  }
  if (f != Family::hJ) {
    double worst = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
      const double expected = evaluate(families::norm_closed_form(f, ell, static_cast<int>(n), lambda));
      out.closed_form.emplace_back(expected);
      worst = std::max(worst, std::abs(out.gram[n][n] - expected) / std::abs(expected));
    }
    out.max_diag_rel_err = worst;
  } else {
    out.closed_form.assign(size, std::nullopt);
  }
  return out;
}

}  // namespace shapeinv::numquad
