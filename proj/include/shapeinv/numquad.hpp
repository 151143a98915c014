#ifndef SHAPEINV_NUMQUAD_HPP
#define SHAPEINV_NUMQUAD_HPP

// Floating-point layer: double-exponential quadrature over the two x-domains
// used by the families, log-gamma, and numerical Gram matrices of the
// deformed eigenpolynomials.

#include <functional>
#include <optional>
#include <vector>

#include "shapeinv/families.hpp"

namespace shapeinv::numquad {

using families::Couplings;
using families::Family;

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int levels_used = 0;
};

enum class Domain {
  half_line,       // (0, inf), exp-sinh
  quarter_period,  // (0, pi/2), tanh-sinh
};

Domain domain_of(Family f);

inline constexpr int kMaxLevels = 12;
inline constexpr double kDefaultTol = 1e-11;

/// Adaptive DE quadrature, halving the step until successive levels agree to
/// tol relative to the L1 norm of the integrand. Throws NoConvergence.
QuadratureResult integrate(const std::function<double(double)>& f, Domain domain, double tol = kDefaultTol,
                           int max_levels = kMaxLevels);

/// Plain trapezoid sum of the transformed integrand with step 2^-level.
double integrate_at_level(const std::function<double(double)>& f, Domain domain, int level);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7). Throws DomainError for x <= 0.
double log_gamma(double x);

double evaluate(const families::NormFormula& formula);

/// Signed value stored as (sign, log|value|).
struct LogValue {
  int sign = 0;
  double log_abs = 0.0;
};

/// log|p(eta(x))| without overflow for large eta.
LogValue log_poly_at(Family f, const std::vector<double>& coeffs, double x);

/// phi_{ell,n}(x) = P_{ell,n}(eta) psi_ell(x).
double eigenfunction(Family f, int ell, int n, const Couplings& lambda, double x);

struct GramResult {
  std::vector<std::vector<double>> gram;
  std::vector<std::optional<double>> closed_form;  // empty entries for hJ
  double max_offdiag_rel = 0.0;
  std::optional<double> max_diag_rel_err;
  double max_abs_error_estimate = 0.0;
};

/// G[n][m] = int psi_ell^2 P_{ell,n} P_{ell,m} dx for 0 <= n, m <= n_max.
/// tol is the quadrature tolerance. Throws OutOfSpectrum for hJ with
/// n_max > n_B - ell.
GramResult orthonormality_matrix(Family f, int ell, const Couplings& lambda, int n_max, double tol = kDefaultTol);

}  // namespace shapeinv::numquad

#endif  // SHAPEINV_NUMQUAD_HPP
