#include "shapeinv/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shapeinv/classical.hpp"
#include "shapeinv/error.hpp"

namespace shapeinv::families {

namespace {

const BigRational kHalf(1, 2);

std::string describe(Family f, const Couplings& c) {
  std::string s = std::string(name(f)) + " g=" + c.g.get_str();
  if (f != Family::L) s += " h=" + c.h.get_str();
  return s;
}

BigRational factorial(int m) {
  BigRational out = 1;
  for (int j = 2; j <= m; ++j) out *= j;
  return out;
}

// The hyperbolic family is the trigonometric one with h -> -h (its delta is
// (1,-1) and its Jacobi parameters carry -h), so the polynomial formulas are
// written once in terms of the signed coupling hs = +h (J) or -h (hJ).
BigRational signed_h(Family f, const BigRational& h) { return f == Family::hJ ? BigRational(-h) : h; }

Poly jacobi_xi(int ell, const BigRational& g, const BigRational& hs) {
  if (ell < 0) return {};
  return classical::jacobi(ell, -g - ell - kHalf, hs + ell - BigRational(3, 2));
}

Poly jacobi_deformed(int ell, int n, const BigRational& g, const BigRational& hs) {
  const Poly p_n = classical::jacobi(n, g + ell - kHalf, hs + ell - kHalf);
  const Poly p_nm1 = classical::jacobi(n - 1, g + ell - kHalf, hs + ell - kHalf);
  const Poly xi_lm1 = jacobi_xi(ell - 1, g, hs + 2);
  const Poly xi_lm2 = jacobi_xi(ell - 2, g + 1, hs + 3);

  auto ratio = [](const BigRational& num, const BigRational& den) {
    if (den == 0) throw DegenerateParameter("vanishing denominator in the a/b coefficients");
    return BigRational(num / den);
  };

  Poly a = jacobi_xi(ell, g + 1, hs + 1);
  Poly b;
  if (!xi_lm1.is_zero() && n > 0) {
    a += ratio(2 * n * (-g + hs + ell - 1), (-g + hs + 2 * ell - 2) * (g + hs + 2 * n + 2 * ell - 1)) * xi_lm1;
    b = ratio((-g + hs + ell - 1) * (2 * g + 2 * n + 2 * ell - 1), (2 * g + 2 * n + 1) * (g + hs + 2 * n + 2 * ell - 1)) *
        xi_lm1;
  }
  if (!xi_lm2.is_zero() && n > 0) {
    a -= ratio(n * (2 * hs + 4 * ell - 3), (2 * g + 2 * n + 1) * (-g + hs + 2 * ell - 2)) * xi_lm2;
  }
  return a * p_n + b * p_nm1;
}

void require_level(Family f, int ell, int n, const Couplings& lambda) {
  if (n < 0) throw InvalidParams("level index n must be >= 0");
  if (auto top = max_level(f, ell, lambda); top && n > *top) {
    throw OutOfSpectrum("n = " + std::to_string(n) + " exceeds n_B - ell = " + std::to_string(*top) + " for " +
                        describe(f, lambda));
  }
}

double log_sinh(double x) { return x < 20.0 ? std::log(std::sinh(x)) : x - std::numbers::ln2 + std::log1p(-std::exp(-2 * x)); }
double log_cosh(double x) { return x < 20.0 ? std::log(std::cosh(x)) : x - std::numbers::ln2 + std::log1p(std::exp(-2 * x)); }

}  // namespace

std::string_view name(Family f) {
  switch (f) {
    case Family::L:
      return "L";
    case Family::J:
      return "J";
    case Family::hJ:
      return "hJ";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "l") return Family::L;
  if (t == "j") return Family::J;
  if (t == "hj") return Family::hJ;
  return std::nullopt;
}

const FamilySpec& spec(Family f) {
  static const FamilySpec L{Family::L,
                            "x^2",
                            Poly{0, 4},
                            Poly{2},
                            exact::Interval{BigRational(0), std::nullopt, true},
                            1,
                            0,
                            kHalf,
                            0.0,
                            std::numeric_limits<double>::infinity()};
  static const FamilySpec J{Family::J,
                            "cos 2x",
                            Poly{4, 0, -4},
                            Poly{0, -4},
                            exact::Interval{BigRational(-1), BigRational(1), true},
                            1,
                            1,
                            BigRational(-1, 4),
                            0.0,
                            std::numbers::pi / 2};
  static const FamilySpec hJ{Family::hJ,
                             "cosh 2x",
                             Poly{-4, 0, 4},
                             Poly{0, 4},
                             exact::Interval{BigRational(1), std::nullopt, true},
                             1,
                             -1,
                             BigRational(1, 4),
                             0.0,
                             std::numeric_limits<double>::infinity()};
  switch (f) {
    case Family::L:
      return L;
    case Family::J:
      return J;
    case Family::hJ:
      return hJ;
  }
  return L;
}

Couplings shifted(Family f, const Couplings& lambda, int k) {
  const FamilySpec& s = spec(f);
  return Couplings{lambda.g + k * s.delta_g, lambda.h + k * s.delta_h};
}

int n_bound(const BigRational& g, const BigRational& h) {
  if (h <= g) throw InvalidParams("n_bound requires h > g");
  BigRational half_gap = (h - g) / 2;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), half_gap.get_num_mpz_t(), half_gap.get_den_mpz_t());
  if (half_gap.get_den() == 1) fl -= 1;
  return static_cast<int>(fl.get_si());
}

void validate(Family f, int ell, const Couplings& lambda) {
  if (ell < 0) throw InvalidParams("deformation degree ell must be >= 0");
  if (lambda.g <= 0) throw InvalidParams("g must be positive (" + describe(f, lambda) + ")");
  if (f == Family::L) return;
  if (lambda.h <= lambda.g) throw InvalidParams("h > g > 0 required (" + describe(f, lambda) + ")");
  if (f == Family::hJ) {
    int nb = n_bound(lambda.g, lambda.h);
    if (ell > nb) {
      throw InvalidParams("hJ requires ell <= n_B = " + std::to_string(nb) + " (" + describe(f, lambda) + ")");
    }
  }
}

std::optional<int> max_level(Family f, int ell, const Couplings& lambda) {
  if (f != Family::hJ) return std::nullopt;
  return n_bound(lambda.g, lambda.h) - ell;
}

Poly classical_poly(Family f, int n, const Couplings& lambda) {
  if (f == Family::L) return classical::laguerre(n, lambda.g - kHalf);
  return classical::jacobi(n, lambda.g - kHalf, signed_h(f, lambda.h) - kHalf);
}

Poly xi_unchecked(Family f, int ell, const Couplings& lambda) {
  if (ell < 0) return {};
  if (f == Family::L) return classical::laguerre(ell, lambda.g + ell - BigRational(3, 2)).reflect();
  return jacobi_xi(ell, lambda.g, signed_h(f, lambda.h));
}

Poly xi(Family f, int ell, const Couplings& lambda) {
  if (ell == -1) return {};
  validate(f, ell, lambda);
  Poly p = xi_unchecked(f, ell, lambda);
  if (p.degree() != ell) throw DegenerateParameter("xi_ell drops degree at " + describe(f, lambda));
  return p;
}

Poly deformed_poly(Family f, int ell, int n, const Couplings& lambda) {
  validate(f, ell, lambda);
  require_level(f, ell, n, lambda);
  Poly p;
  if (f == Family::L) {
    const BigRational alpha = lambda.g + ell - kHalf;
    p = xi_unchecked(f, ell, Couplings{lambda.g + 1, 0}) * classical::laguerre(n, alpha) -
        xi_unchecked(f, ell - 1, Couplings{lambda.g + 2, 0}) * classical::laguerre(n - 1, alpha);
  } else {
    p = jacobi_deformed(ell, n, lambda.g, signed_h(f, lambda.h));
  }
  if (p.degree() != ell + n) {
    throw DegenerateParameter("P_{ell,n} drops degree at " + describe(f, lambda));
  }
  return p;
}

BigRational energy(Family f, int ell, int n, const Couplings& lambda) {
  validate(f, ell, lambda);
  require_level(f, ell, n, lambda);
  switch (f) {
    case Family::L:
      return BigRational(4 * n);
    case Family::J:
      return 4 * n * (n + 2 * ell + lambda.g + lambda.h);
    case Family::hJ:
      return 4 * n * (lambda.h - lambda.g - 2 * ell - n);
  }
  return 0;
}

RationalFunction base_log_derivative(Family f, const Couplings& mu) {
  switch (f) {
    case Family::L:
      // w0 = -eta/2 + (g/2) log eta
      return RationalFunction(Poly{mu.g, -1}, Poly{0, 2});
    case Family::J:
      // w0 = (g/2) log((1-eta)/2) + (h/2) log((1+eta)/2)
      return RationalFunction(Poly{-mu.g}, Poly{2, -2}) + RationalFunction(Poly{mu.h}, Poly{2, 2});
    case Family::hJ:
      // w0 = (g/2) log((eta-1)/2) - (h/2) log((eta+1)/2)
      return RationalFunction(Poly{mu.g}, Poly{-2, 2}) - RationalFunction(Poly{mu.h}, Poly{2, 2});
  }
  return {};
}

RationalFunction log_derivative(Family f, const Couplings& mu, const Poly& upper, const Poly& lower) {
  return base_log_derivative(f, mu) + RationalFunction(upper.derivative(), upper) -
         RationalFunction(lower.derivative(), lower);
}

RationalFunction log_derivative(Family f, int ell, const Couplings& lambda) {
  validate(f, ell, lambda);
  const Poly lower = xi(f, ell, lambda);
  const Poly upper = xi_unchecked(f, ell, shifted(f, lambda, 1));
  return log_derivative(f, shifted(f, lambda, ell), upper, lower);
}

Prepotential prepotential_from(Family f, const RationalFunction& log_deriv) {
  const FamilySpec& s = spec(f);
  const RationalFunction sigma(s.sigma);
  const RationalFunction tau(s.tau);
  return Prepotential{sigma * log_deriv * log_deriv, tau * log_deriv + sigma * log_deriv.derivative()};
}

Prepotential prepotential_data(Family f, int ell, const Couplings& lambda) {
  return prepotential_from(f, log_derivative(f, ell, lambda));
}

RationalFunction potential(Family f, int ell, const Couplings& lambda) {
  Prepotential w = prepotential_data(f, ell, lambda);
  return w.w_prime_sq + w.w_double_prime;
}

double WeightDescriptor::log_base(double x) const {
  const double p1 = first_power.get_d();
  const double p2 = second_power.get_d();
  switch (family) {
    case Family::L:
      return -x * x + p1 * std::log(x);
    case Family::J:
      return p1 * std::log(std::sin(x)) + p2 * std::log(std::cos(x));
    case Family::hJ:
      return p1 * log_sinh(x) + p2 * log_cosh(x);
  }
  return 0.0;
}

WeightDescriptor weight(Family f, int ell, const Couplings& lambda) {
  const Poly x = xi(f, ell, lambda);
  if (exact::sturm_count(x, spec(f).domain_eta) != 0) {
    throw DenominatorVanishes("xi_ell has a root inside the domain for " + describe(f, lambda));
  }
  const Couplings mu = shifted(f, lambda, ell);
  WeightDescriptor w{f, mu, 2 * mu.g, 0, x * x};
  if (f == Family::J) w.second_power = 2 * mu.h;
  if (f == Family::hJ) w.second_power = -2 * mu.h;
  return w;
}

std::string NormFormula::to_string() const {
  std::ostringstream os;
  os << prefactor.get_str();
  for (const auto& a : gamma_numerator) os << " * Gamma(" << a.get_str() << ")";
  for (const auto& a : gamma_denominator) os << " / Gamma(" << a.get_str() << ")";
  return os.str();
}

NormFormula norm_closed_form(Family f, int ell, int n, const Couplings& lambda) {
  if (f == Family::hJ) throw UnsupportedFamily("no closed-form norm for the hJ family");
  validate(f, ell, lambda);
  require_level(f, ell, n, lambda);
  const BigRational& g = lambda.g;
  const BigRational& h = lambda.h;
  if (f == Family::L) {
    return NormFormula{(n + g + 2 * ell - kHalf) / (2 * factorial(n)), {n + g + ell - kHalf}, {}};
  }
  BigRational pre = 1 / (2 * factorial(n) * (2 * n + g + h + 2 * ell));
  pre *= (n + g + ell + kHalf) * (n + h + 2 * ell - kHalf) / ((n + g + kHalf) * (n + h + ell - kHalf));
  return NormFormula{pre, {n + g + ell + kHalf, n + h + ell + kHalf}, {n + g + h + 2 * ell}};
}

BigRational decay_exponent(int ell, int n, const Couplings& lambda) {
  return 2 * (2 * n + 2 * ell + lambda.g - lambda.h);
}

EigenData eigen_data(Family f, int ell, int n, const Couplings& lambda) {
  return EigenData{f, lambda, ell, n, deformed_poly(f, ell, n, lambda), energy(f, ell, n, lambda), weight(f, ell, lambda)};
}

double eta_of(Family f, double x) {
  switch (f) {
    case Family::L:
      return x * x;
    case Family::J:
      return std::cos(2 * x);
    case Family::hJ:
      return std::cosh(2 * x);
  }
  return 0.0;
}

}  // namespace shapeinv::families
