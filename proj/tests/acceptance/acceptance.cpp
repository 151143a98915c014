// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "shapeinv/classical.hpp"
#include "shapeinv/families.hpp"
#include "shapeinv/numquad.hpp"
#include "shapeinv/verify.hpp"

using namespace shapeinv;
using exact::BigRational;
using families::Couplings;
using families::Family;
using verify::Status;
using verify::VerificationReport;

namespace {

constexpr Family kFamilies[] = {Family::L, Family::J, Family::hJ};
constexpr int kEllMax = 3;
constexpr int kSamples = 5;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  int checks = 0;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

std::string describe(Family f, int ell, int n, const Couplings& c) {
  std::ostringstream s;
  s << families::name(f) << " ell=" << ell << " n=" << n << " g=" << c.g.get_str();
  if (f != Family::L) s << " h=" << c.h.get_str();
  return s.str();
}

bool passes(const VerificationReport& r) { return r.status == Status::pass && !r.witness; }

std::optional<BigRational> constant(const VerificationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.constants)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<Couplings> grid_samples(Family f) { return verify::sample_couplings(f, kSamples, kSeed, kEllMax); }

int n_top(Family f, int ell, const Couplings& c, int cap) {
  if (f != Family::hJ) return cap;
  return std::min(cap, families::n_bound(c.g, c.h) - ell);
}

// Reference energies and ladder constants, transcribed independently of the library.
BigRational reference_energy(Family f, int ell, int n, const Couplings& c) {
  switch (f) {
    case Family::L: return 4 * BigRational(n);
    case Family::J: return 4 * BigRational(n) * (n + 2 * ell + c.g + c.h);
    case Family::hJ: return 4 * BigRational(n) * (c.h - c.g - 2 * ell - n);
  }
  return 0;
}

BigRational reference_c_A(Family f, int ell, int n, const Couplings& c) {
  switch (f) {
    case Family::L: return -2;
    case Family::J: return -2 * (n + 2 * ell + c.g + c.h);
    case Family::hJ: return -2 * (c.h - c.g - 2 * ell - n);
  }
  return 0;
}

BigRational reference_c_Adagger(int n) { return -2 * BigRational(n); }

double reference_norm(Family f, int ell, int n, double g, double h) {
  const double nf = std::tgamma(n + 1.0);
  if (f == Family::L) return (n + g + 2 * ell - 0.5) * std::tgamma(n + g + ell - 0.5) / (2 * nf);
  const double head = std::tgamma(n + g + ell + 0.5) * std::tgamma(n + h + ell + 0.5) /
                      (2 * nf * (2 * n + g + h + 2 * ell) * std::tgamma(n + g + h + 2 * ell));
  return head * (n + g + ell + 0.5) * (n + h + 2 * ell - 0.5) / ((n + g + 0.5) * (n + h + ell - 0.5));
}

Outcome criterion1() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f)) {
      if (f == Family::hJ) o.expect(families::n_bound(c.g, c.h) >= kEllMax + 2, "hJ sample with n_B < ell + 2");
      for (int ell = 0; ell <= kEllMax; ++ell) o.expect(passes(verify::check_shape_invariance(f, ell, c)), describe(f, ell, 1, c));
    }
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f))
      for (int ell = 0; ell <= kEllMax; ++ell)
        for (int n = 0; n <= n_top(f, ell, c, 5); ++n) {
          const VerificationReport r = verify::check_eigen_equation(f, ell, n, c);
          o.expect(passes(r), describe(f, ell, n, c));
          o.expect(constant(r, "E_recovered") == reference_energy(f, ell, n, c), describe(f, ell, n, c) + " energy");
          o.expect(families::energy(f, ell, n, c) == reference_energy(f, ell, n, c), describe(f, ell, n, c) + " E table");
        }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f))
      for (int ell = 0; ell <= kEllMax; ++ell)
        for (int n = 1; n <= n_top(f, ell, c, 5); ++n) {
          const std::string where = describe(f, ell, n, c);
          const VerificationReport lad = verify::check_ladder(f, ell, n, c);
          o.expect(passes(lad), where + " ladder");
          o.expect(constant(lad, "c_A_recovered") == reference_c_A(f, ell, n, c), where + " c_A");
          o.expect(constant(lad, "c_Adagger_recovered") == reference_c_Adagger(n), where + " c_Adagger");
          const VerificationReport sh = verify::check_shift_operators(f, ell, n, c);
          o.expect(passes(sh), where + " shift");
          o.expect(constant(sh, "c_F_recovered") == reference_c_A(f, ell, n, c), where + " c_F");
          o.expect(constant(sh, "c_B_recovered") == reference_c_Adagger(n), where + " c_B");
        }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f))
      for (int ell = 0; ell <= 2; ++ell)
        for (int n = 0; n <= 3; ++n) o.expect(passes(verify::check_rodrigues(f, ell, n, c)), describe(f, ell, n, c));
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f)) o.expect(passes(verify::check_ell1_regression(f, c)), describe(f, 1, 0, c));
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f))
      for (int ell = 0; ell <= kEllMax; ++ell) {
        o.expect(passes(verify::check_xi_root_free(f, ell, c)), describe(f, ell, 0, c) + " xi");
        for (int n = 0; n <= n_top(f, ell, c, 5); ++n) {
          const VerificationReport r = verify::check_zero_count(f, ell, n, c);
          o.expect(passes(r) && constant(r, "roots") == n, describe(f, ell, n, c));
        }
      }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const double tol = 1e-9;
  for (Family f : kFamilies)
    for (const Couplings& c : verify::sample_couplings(f, 3, kSeed, 4))
      for (int ell = 1; ell <= 2; ++ell) {
        const std::string where = describe(f, ell, 4, c);
        const numquad::GramResult r = numquad::orthonormality_matrix(f, ell, c, 4);
        o.expect(r.max_offdiag_rel < tol, where + " off-diagonal");
        for (int n = 0; n <= 4; ++n) {
          const double d = r.gram[n][n];
          if (f == Family::hJ) {
            o.expect(std::isfinite(d) && d > 0, where + " diagonal");
          } else {
            const double expected = reference_norm(f, ell, n, c.g.get_d(), c.h.get_d());
            o.expect(std::abs(d - expected) < tol * expected, where + " diagonal");
          }
        }
      }
  const double l1 = numquad::orthonormality_matrix(Family::L, 1, {1, 0}, 0).gram[0][0];
  o.expect(std::abs(l1 - 5 * std::sqrt(std::numbers::pi) / 8) < 1e-9 * l1, "L ell=1 n=0 g=1");
  return o;
}

Outcome criterion8() {
  Outcome o;
  o.expect(families::n_bound(1, 5) == 1, "n_bound(1, 5)");
  o.expect(families::n_bound(1, 6) == 2, "n_bound(1, 6)");
  o.expect(families::n_bound(BigRational(1, 2), BigRational(9, 2)) == 1, "n_bound(1/2, 9/2)");
  std::vector<Couplings> samples = verify::sample_couplings(Family::hJ, 8, kSeed, 1);
  for (const char* gh : {"1 5", "2 7", "1/3 20/3", "3/4 31/4"}) {
    std::istringstream in(gh);
    std::string g, h;
    in >> g >> h;
    samples.push_back({BigRational(g), BigRational(h)});
  }
  o.expect(samples.size() >= 10, "sample count");
  for (const Couplings& c : samples) {
    const int nb = families::n_bound(c.g, c.h);
    for (int ell = 0; ell <= nb; ++ell)
      for (int n = 0; n <= nb - ell + 3; ++n)
        o.expect((families::decay_exponent(ell, n, c) < 0) == (n <= nb - ell), describe(Family::hJ, ell, n, c));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (Family f : kFamilies)
    for (const Couplings& c : grid_samples(f)) {
      o.expect(families::xi(f, 0, c) == exact::Poly::constant(1), describe(f, 0, 0, c) + " xi_0");
      o.expect(passes(verify::check_ell0_regression(f, c)), describe(f, 0, 0, c) + " potential");
      for (int n = 0; n <= n_top(f, 0, c, 5); ++n) {
        o.expect(passes(verify::check_ell0_reduction(f, n, c)), describe(f, 0, n, c));
        o.expect(passes(verify::check_eigen_equation(f, 0, n, c)), describe(f, 0, n, c) + " eigen");
        // Classical data up to normalization: L_n^{(g-1/2)}(eta) and P_n^{(g-1/2, h-1/2)}(eta).
        const exact::Poly p = families::deformed_poly(f, 0, n, c);
        exact::Poly classical;
        if (f == Family::L) {
          classical = classical::laguerre(n, c.g - BigRational(1, 2));
        } else if (f == Family::J) {
          classical = classical::jacobi(n, c.g - BigRational(1, 2), c.h - BigRational(1, 2));
        } else {
          classical = classical::jacobi(n, c.g - BigRational(1, 2), -c.h - BigRational(1, 2));
        }
        o.expect(p * classical.leading() == classical * p.leading(), describe(f, 0, n, c) + " classical");
      }
    }
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (verify::Fault fault : {verify::Fault::energy, verify::Fault::ladder, verify::Fault::xi}) {
    verify::SuiteConfig config;
    config.fault = fault;
    const auto reports = verify::run_suite(config);
    int injected = 0;
    for (const auto& r : reports) {
      injected += r.injected;
      o.expect((r.status == Status::fail) == r.injected,
               std::string(verify::fault_name(fault)) + " " + r.identity + " " + describe(r.family, r.ell, r.n, r.params));
    }
    o.expect(injected > 0, std::string(verify::fault_name(fault)) + " injected nothing");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "exact shape invariance", 10, criterion1},
      {2, "exact eigen-equations and energies", 60, criterion2},
      {3, "ladder and shift constants", 0, criterion3},
      {4, "Rodrigues cross-construction", 0, criterion4},
      {5, "ell = 1 regression", 0, criterion5},
      {6, "zero counts", 0, criterion6},
      {7, "orthogonality norms", 60, criterion7},
      {8, "bound-state counting", 0, criterion8},
      {9, "ell = 0 reduction", 0, criterion9},
      {10, "fault injection falsifiability", 0, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs >= c.budget_s) o.expect(false, "runtime budget exceeded");
    std::printf("%s criterion %d: %s (%d checks, %.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, o.checks, secs,
                o.ok ? "" : " first failure: ", o.first_failure.c_str());
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
