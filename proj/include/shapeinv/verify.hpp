#ifndef SHAPEINV_VERIFY_HPP
#define SHAPEINV_VERIFY_HPP

// Exact verification engine. Every identity is reduced to the statement
// "this rational function of eta is zero"; there is no tolerance anywhere.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapeinv/exactalg.hpp"
#include "shapeinv/families.hpp"

namespace shapeinv::verify {

using exact::BigRational;
using exact::Poly;
using exact::RationalFunction;
using families::Couplings;
using families::Family;

// ---------------------------------------------------------------------------
// eta-calculus

/// f(x) = (eta')^odd * r(eta) * exp(w0(x; base)), with the base couplings
/// fixed by the EtaCalculus that produced it.
struct EtaFunction {
  bool odd = false;
  RationalFunction r;

  bool is_zero() const { return r.is_zero(); }
};

class EtaCalculus {
 public:
  EtaCalculus(Family family, const Couplings& base);

  /// d/dx
  EtaFunction derivative(const EtaFunction& f) const;
  /// f * eta' * c
  EtaFunction times_eta_prime(const EtaFunction& f, const RationalFunction& c) const;
  EtaFunction times(const EtaFunction& f, const RationalFunction& c) const;
  /// exp(w0(x; base + m*delta)) in this representation.
  EtaFunction shifted_base(int m) const;

  /// A f = f' - w' f with w' = eta' * log_deriv.
  EtaFunction apply_A(const EtaFunction& f, const RationalFunction& log_deriv) const;
  /// A^dagger f = -f' - w' f.
  EtaFunction apply_A_dagger(const EtaFunction& f, const RationalFunction& log_deriv) const;
  /// -f'' + U f
  EtaFunction apply_hamiltonian(const EtaFunction& f, const RationalFunction& potential) const;

 private:
  Family family_;
  RationalFunction sigma_;
  RationalFunction tau_;
  RationalFunction base_log_deriv_;
};

/// Numerator of a - b, or nullopt when a == b as functions of x.
std::optional<Poly> difference_witness(const EtaFunction& a, const EtaFunction& b);

// ---------------------------------------------------------------------------
// reports

enum class Status { pass, fail, skipped };

std::string_view status_name(Status s);

struct VerificationReport {
  std::string identity;
  Family family = Family::L;
  int ell = 0;
  int n = 0;
  Couplings params;
  int sample = 0;
  Status status = Status::skipped;
  std::optional<Poly> witness;  // set exactly when status == fail
  std::vector<std::pair<std::string, BigRational>> constants;
  bool injected = false;
  std::string note;
};

/// Deliberate corruption of one ingredient. A zero offset means "untouched".
struct Perturbation {
  BigRational energy_offset = 0;  // added to E_{ell,1} / E_{ell,n}
  BigRational ladder_offset = 0;  // added to the expected A / forward-shift constant
  BigRational xi_offset = 0;      // added to the constant coefficient of xi_ell(eta; lambda)

  bool any() const { return energy_offset != 0 || ladder_offset != 0 || xi_offset != 0; }
};

// ---------------------------------------------------------------------------
// reference constants

/// E_{ell,1}(lambda), the shape-invariance constant.
BigRational excitation_step(Family f, int ell, const Couplings& lambda);

/// (c_A, c_Adagger): A phi_{ell,n}(lambda) = c_A phi_{ell,n-1}(lambda+delta) and
/// A^dagger phi_{ell,n-1}(lambda+delta) = c_Adagger phi_{ell,n}(lambda).
std::pair<BigRational, BigRational> ladder_constants(Family f, int ell, int n, const Couplings& lambda);

/// The l = 0 and l = 1 reference potentials, transcribed into eta.
RationalFunction reference_potential(Family f, int ell, const Couplings& lambda);

// ---------------------------------------------------------------------------
// shift operators acting on polynomial parts

/// F_ell(lambda) p = (xi_+ p' - xi_+' p) / (kappa xi), xi = xi_ell(lambda), xi_+ = xi_ell(lambda+delta).
RationalFunction forward_shift(Family f, int ell, const Couplings& lambda, const Poly& p);

/// B_ell(lambda) q = -(kappa sigma / xi_+) (xi q' - xi' q + xi q (W0'(mu) + W0'(mu+delta))),
/// mu = lambda + ell*delta.
RationalFunction backward_shift(Family f, int ell, const Couplings& lambda, const Poly& q);

// ---------------------------------------------------------------------------
// checks

VerificationReport check_shape_invariance(Family f, int ell, const Couplings& lambda, const Perturbation& fault = {});
VerificationReport check_eigen_equation(Family f, int ell, int n, const Couplings& lambda,
                                        const Perturbation& fault = {});
/// A_ell phi_{ell,0} = 0.
VerificationReport check_groundstate(Family f, int ell, const Couplings& lambda);
VerificationReport check_ladder(Family f, int ell, int n, const Couplings& lambda, const Perturbation& fault = {});
VerificationReport check_rodrigues(Family f, int ell, int n, const Couplings& lambda);
VerificationReport check_shift_operators(Family f, int ell, int n, const Couplings& lambda,
                                         const Perturbation& fault = {});
VerificationReport check_ell1_regression(Family f, const Couplings& lambda, const Perturbation& fault = {});
VerificationReport check_ell0_regression(Family f, const Couplings& lambda);
VerificationReport check_xi_root_free(Family f, int ell, const Couplings& lambda);
VerificationReport check_zero_count(Family f, int ell, int n, const Couplings& lambda);
VerificationReport check_energy_sum(Family f, int ell, int n, const Couplings& lambda);
/// P_{0,n} equals the classical polynomial and satisfies the classical ODE.
VerificationReport check_ell0_reduction(Family f, int n, const Couplings& lambda);
/// Passes when eta * P_{ell,k} leaves span{P_{ell,k-1}, P_{ell,k}, P_{ell,k+1}} for some 1 <= k < n_max.
VerificationReport check_no_three_term_recurrence(Family f, int ell, const Couplings& lambda, int n_max = 4);

// ---------------------------------------------------------------------------
// suite

enum class Fault { none, energy, ladder, xi };

std::string_view fault_name(Fault f);
std::optional<Fault> parse_fault(std::string_view text);

struct SuiteConfig {
  std::vector<Family> families{Family::L, Family::J, Family::hJ};
  int ell_max = 3;
  int n_max = 5;
  int samples = 5;
  std::uint64_t seed = 1;
  Fault fault = Fault::none;
  // Faults are injected only into cases with this ell and sample index.
  int fault_ell = 1;
  int fault_sample = 0;
};

/// Deterministic rational couplings, denominators <= 16. hJ samples satisfy
/// n_B >= ell_max + 2.
std::vector<Couplings> sample_couplings(Family f, int count, std::uint64_t seed, int ell_max);

/// All reports, sorted by (identity, family, ell, n, sample).
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

struct SuiteSummary {
  int pass = 0;
  int fail = 0;
  int skipped = 0;
};

SuiteSummary summarize(const std::vector<VerificationReport>& reports);

}  // namespace shapeinv::verify

#endif  // SHAPEINV_VERIFY_HPP
