#ifndef SHAPEINV_FAMILIES_HPP
#define SHAPEINV_FAMILIES_HPP

// The three shape-invariant families and their deformations, written in the
// algebraic variable eta = eta(x):
//
//   L  (radial oscillator)                eta = x^2       on 0 < x < inf
//   J  (trigonometric Poschl-Teller)      eta = cos 2x    on 0 < x < pi/2
//   hJ (hyperbolic Poschl-Teller)         eta = cosh 2x   on 0 < x < inf
//
// For each family (eta')^2 = sigma(eta) and eta'' = tau(eta) are polynomials
// and every prepotential has the form w = W(eta) with W' rational, so
// w' = eta' W', w'^2 = sigma W'^2 and w'' = tau W' + sigma W''. That closes
// all identities in the field Q(eta).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shapeinv/exactalg.hpp"

namespace shapeinv::families {

using exact::BigRational;
using exact::Poly;
using exact::RationalFunction;

enum class Family { L, J, hJ };

std::string_view name(Family f);
/// Accepts "L", "J", "hJ" (case-insensitive).
std::optional<Family> parse_family(std::string_view text);

/// Coupling constants lambda. h is ignored by the L family.
struct Couplings {
  BigRational g;
  BigRational h;

  friend bool operator==(const Couplings& a, const Couplings& b) { return a.g == b.g && a.h == b.h; }
};

struct FamilySpec {
  Family tag;
  std::string eta_map;
  Poly sigma;  // (eta')^2 as a polynomial in eta
  Poly tau;    // eta''
  exact::Interval domain_eta;
  BigRational delta_g;
  BigRational delta_h;
  // exp(w0(x; mu + delta) - w0(x; mu)) = kappa * eta'(x) for every mu.
  BigRational kappa;
  double x_lo;
  double x_hi;  // +inf for the half-line families
};

const FamilySpec& spec(Family f);

/// lambda + k*delta
Couplings shifted(Family f, const Couplings& lambda, int k);

/// Greatest integer strictly below (h-g)/2. Throws InvalidParams for h <= g.
int n_bound(const BigRational& g, const BigRational& h);

/// Throws InvalidParams unless lambda lies in the family's admissible region
/// (L: g > 0; J: h > g > 0; hJ: h > g > 0 and ell <= n_B).
void validate(Family f, int ell, const Couplings& lambda);

/// Highest admissible level index n, or nullopt for an infinite spectrum.
std::optional<int> max_level(Family f, int ell, const Couplings& lambda);

/// Undeformed eigenpolynomial P_n(eta; lambda); n = -1 gives 0.
Poly classical_poly(Family f, int n, const Couplings& lambda);

/// Deforming polynomial xi_ell(eta; lambda), no validation. ell = -1 gives 0
/// and ell = 0 gives 1.
Poly xi_unchecked(Family f, int ell, const Couplings& lambda);

/// xi_ell with parameter validation; throws DegenerateParameter when the
/// degree drops below ell.
Poly xi(Family f, int ell, const Couplings& lambda);

/// Eigenpolynomial P_{ell,n}(eta; lambda) of degree ell + n.
Poly deformed_poly(Family f, int ell, int n, const Couplings& lambda);

/// E_{ell,n}(lambda), exact.
BigRational energy(Family f, int ell, int n, const Couplings& lambda);

/// W0'(eta) for the undeformed prepotential w0(x; mu) = W0(eta(x)).
RationalFunction base_log_derivative(Family f, const Couplings& mu);

/// W'(eta) for w = w0(x; mu) + log upper(eta) - log lower(eta).
RationalFunction log_derivative(Family f, const Couplings& mu, const Poly& upper, const Poly& lower);

/// W_ell'(eta) for the deformed prepotential w_ell(x; lambda).
RationalFunction log_derivative(Family f, int ell, const Couplings& lambda);

struct Prepotential {
  RationalFunction w_prime_sq;
  RationalFunction w_double_prime;
};

/// (w'^2, w'') from W'(eta).
Prepotential prepotential_from(Family f, const RationalFunction& log_deriv);

Prepotential prepotential_data(Family f, int ell, const Couplings& lambda);

/// U = w'^2 + w'' as a rational function of eta.
RationalFunction potential(Family f, int ell, const Couplings& lambda);

/// psi_ell(x)^2 = base(x) / denominator(eta(x)) where base(x) is
///   L : exp(-x^2) x^p1
///   J : sin(x)^p1 cos(x)^p2
///   hJ: sinh(x)^p1 cosh(x)^p2
struct WeightDescriptor {
  Family family;
  Couplings base_couplings;  // lambda + ell*delta
  BigRational first_power;
  BigRational second_power;  // 0 for L
  Poly denominator;          // xi_ell(eta; lambda)^2

  double log_base(double x) const;
};

WeightDescriptor weight(Family f, int ell, const Couplings& lambda);

/// prefactor * prod Gamma(numerator args) / prod Gamma(denominator args).
struct NormFormula {
  BigRational prefactor;
  std::vector<BigRational> gamma_numerator;
  std::vector<BigRational> gamma_denominator;

  std::string to_string() const;
};

/// Closed-form value of int psi_ell^2 P_{ell,n}^2 dx. Throws UnsupportedFamily for hJ.
NormFormula norm_closed_form(Family f, int ell, int n, const Couplings& lambda);

/// Exponential growth rate of phi_{ell,n}(x)^2 as x -> inf in the hJ family.
BigRational decay_exponent(int ell, int n, const Couplings& lambda);

struct EigenData {
  Family family;
  Couplings couplings;
  int ell;
  int n;
  Poly poly;
  BigRational energy;
  WeightDescriptor weight;
};

EigenData eigen_data(Family f, int ell, int n, const Couplings& lambda);

/// eta(x) in floating point.
double eta_of(Family f, double x);

}  // namespace shapeinv::families

#endif  // SHAPEINV_FAMILIES_HPP
