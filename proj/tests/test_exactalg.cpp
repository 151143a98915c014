#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "shapeinv/error.hpp"
#include "shapeinv/exactalg.hpp"
#include "support.hpp"

using namespace shapeinv;
using namespace shapeinv::exact;
using testsupport::poly;
using testsupport::q;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("3/2") == BigRational(3, 2));
  CHECK(parse_rational("-6/4") == BigRational(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("0.125") == BigRational(1, 8));
  CHECK(parse_rational("-2.5e-1") == BigRational(-1, 4));
  CHECK(parse_rational("1e3") == 1000);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}

TEST_CASE("poly arithmetic examples") {
  const Poly a = poly({"1", "1"});
  const Poly b = poly({"-1", "1"});
  CHECK(a * b == poly({"-1", "0", "1"}));
  CHECK((a * Poly{}).is_zero());
  CHECK(poly({"3/2", "1"}) * poly({"5/2", "1"}) == poly({"15/4", "4", "1"}));
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
}

TEST_CASE("poly derivative examples") {
  CHECK(poly({"15/4", "4", "1"}).derivative() == poly({"4", "2"}));
  CHECK(Poly::constant(7).derivative().is_zero());
  CHECK(poly({"0", "-5/2", "0", "1/2"}).derivative() == poly({"-5/2", "0", "3/2"}));
}

TEST_CASE("poly evaluation, reflect and compose") {
  const Poly p = poly({"1", "-2", "3"});
  CHECK(p(q("1/2")) == BigRational(3, 4));
  CHECK(p.reflect() == poly({"1", "2", "3"}));
  CHECK(p.compose(poly({"1", "1"})) == poly({"2", "4", "3"}));
  CHECK(p.eval(0.5) == doctest::Approx(0.75));
  CHECK(p.monic().leading() == 1);
}

TEST_CASE("divmod and gcd") {
  const Poly a = poly({"-1", "0", "1"});
  const Poly b = poly({"1", "1"});
  auto [quo, rem] = divmod(a, b);
  CHECK(quo == poly({"-1", "1"}));
  CHECK(rem.is_zero());
  CHECK(gcd(a * poly({"2", "1"}), b * poly({"3", "1"}) * poly({"2", "1"})) == poly({"2", "3", "1"}));
  CHECK_THROWS_AS(divmod(a, Poly{}), DivisionByZero);
}

TEST_CASE("rational function arithmetic examples") {
  const RationalFunction one_minus(Poly::constant(1), poly({"1", "-1"}));
  const RationalFunction one_plus(Poly::constant(1), poly({"1", "1"}));
  const RationalFunction sum = one_minus + one_plus;
  CHECK(sum.num() == Poly::constant(-2));
  CHECK(sum.den() == poly({"-1", "0", "1"}));

  const RationalFunction a(poly({"0", "1"}), poly({"1", "1"}));
  CHECK((a - a).is_zero());
  const RationalFunction inv(poly({"1", "1"}), poly({"0", "1"}));
  CHECK((a * inv).as_constant() == BigRational(1));
  CHECK_THROWS_AS(a / RationalFunction(Poly{}), DivisionByZero);
  CHECK_THROWS_AS(RationalFunction(Poly::constant(1), Poly{}), DivisionByZero);
}

TEST_CASE("rational function canonical form has coprime parts and a monic denominator") {
  const RationalFunction r(poly({"2", "2"}) * poly({"0", "1"}), poly({"3", "3"}) * poly({"5", "2"}));
  CHECK(r.den().leading() == 1);
  CHECK(gcd(r.num(), r.den()).degree() == 0);
  CHECK(r.num() == poly({"0", "1/3"}));
  CHECK(r.den() == poly({"5/2", "1"}));
}

TEST_CASE("rational function derivative") {
  const RationalFunction r(Poly::constant(1), poly({"0", "1"}));
  const RationalFunction d = r.derivative();
  CHECK(d.num() == Poly::constant(-1));
  CHECK(d.den() == poly({"0", "0", "1"}));
}

TEST_CASE("property: canonical form is idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly common = testsupport::random_poly(rng, 2);
    Poly num = testsupport::random_poly(rng, 3) * common;
    Poly den = testsupport::random_poly(rng, 2) * common;
    const RationalFunction r(num, den);
    const RationalFunction again(r.num(), r.den());
    CHECK(again.num() == r.num());
    CHECK(again.den() == r.den());
    CHECK(r.den().leading() == 1);
  }
}

TEST_CASE("property: derivative is linear") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = testsupport::random_poly(rng, 5);
    const Poly r = testsupport::random_poly(rng, 4);
    const BigRational alpha = testsupport::random_rational(rng);
    const BigRational beta = testsupport::random_rational(rng);
    CHECK((alpha * p + beta * r).derivative() == alpha * p.derivative() + beta * r.derivative());
  }
}

TEST_CASE("property: rational function field axioms on random samples") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const RationalFunction a(testsupport::random_poly(rng, 2), testsupport::random_poly(rng, 2));
    const RationalFunction b(testsupport::random_poly(rng, 3), testsupport::random_poly(rng, 1));
    const RationalFunction c(testsupport::random_poly(rng, 1), testsupport::random_poly(rng, 2));
    CHECK(((a + b) * c - (a * c + b * c)).is_zero());
    CHECK(((a * b) / b - a).is_zero());
    CHECK(((a * b).derivative() - (a.derivative() * b + a * b.derivative())).is_zero());
  }
}

TEST_CASE("sturm_count examples") {
  CHECK(sturm_count(poly({"3/2", "1"}), Interval{BigRational(0), std::nullopt, true}) == 0);
  CHECK(sturm_count(poly({"-1", "0", "1"}), Interval{BigRational(-2), BigRational(2), true}) == 2);
  CHECK_THROWS_AS(sturm_count(Poly{}, Interval{}), ZeroPolynomial);
}

TEST_CASE("sturm_count endpoint conventions") {
  const Poly p = poly({"-1", "0", "1"});
  CHECK(sturm_count(p, Interval{BigRational(-1), BigRational(1), true}) == 0);
  CHECK(sturm_count(p, Interval{BigRational(-1), BigRational(1), false}) == 2);
  CHECK(sturm_count(p, Interval{BigRational(0), BigRational(1), false}) == 1);
  CHECK(sturm_count(p, Interval{std::nullopt, std::nullopt, true}) == 2);
  CHECK(sturm_count(p * p, Interval{}) == 2);
  CHECK(sturm_count(Poly::constant(3), Interval{}) == 0);
}

namespace {

// Indices of grid cells where p changes sign, on a grid offset by an
// irrational amount so that no grid point lands on a rational root.
std::set<int> sign_change_cells(const Poly& p, double lo, double hi, int cells) {
  std::set<int> out;
  const double step = (hi - lo) / cells;
  const double offset = step * (std::sqrt(2.0) - 1.0);
  double prev = p.eval(lo + offset);
  for (int i = 1; i <= cells; ++i) {
    const double v = p.eval(lo + offset + i * step);
    if ((prev < 0) != (v < 0)) out.insert(i);
    prev = v;
  }
  return out;
}

Poly from_roots(const std::vector<BigRational>& roots, const BigRational& quad_shift) {
  Poly p = Poly::constant(1);
  for (const auto& r : roots) p *= Poly{-r, 1};
  return p * Poly{quad_shift, 0, 1};
}

}  // namespace

TEST_CASE("property: sturm_count of a product counts the union of distinct roots") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> root_index(-36, 36);  // roots k/8 in [-4.5, 4.5]
  std::uniform_int_distribution<int> count(0, 4);
  const BigRational lo(-13, 10), hi(7, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<int> rp, rq;
    for (int i = count(rng); i > 0; --i) rp.insert(root_index(rng));
    for (int i = count(rng); i > 0; --i) rq.insert(root_index(rng));
    if (!rp.empty() && trial % 2 == 0) rq.insert(*rp.begin());  // shared root
    std::vector<BigRational> vp, vq;
    for (int k : rp) vp.emplace_back(k, 8);
    for (int k : rq) vq.emplace_back(k, 8);
    const BigRational shift = testsupport::random_rational(rng, 10, 4);
    const Poly p = from_roots(vp, shift * shift + 1);
    const Poly r = from_roots(vq, BigRational(1, 3));

    std::set<int> cells = sign_change_cells(p, lo.get_d(), hi.get_d(), 10000);
    for (int c : sign_change_cells(r, lo.get_d(), hi.get_d(), 10000)) cells.insert(c);
    CHECK(sturm_count(p * r, Interval{lo, hi, true}) == static_cast<int>(cells.size()));
  }
}

TEST_CASE("property: sturm_count agrees with a grid scan for random polynomials") {
  std::mt19937_64 rng(15);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = testsupport::random_poly(rng, 1 + trial % 6);
    // Only square-free inputs with well separated roots suit the grid oracle.
    if (gcd(p, p.derivative()).degree() > 0) continue;
    const std::set<int> cells = sign_change_cells(p, -3.0, 3.0, 10000);
    const int exact = sturm_count(p, Interval{BigRational(-3), BigRational(3), true});
    if (exact == static_cast<int>(cells.size())) {
      ++checked;
    } else {
      // A pair of roots closer than one grid cell: confirm on a finer grid.
      CHECK(exact == static_cast<int>(sign_change_cells(p, -3.0, 3.0, 2000000).size()));
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("pow of polynomial and rational function") {
  CHECK(pow(poly({"1", "1"}), 3u) == poly({"1", "3", "3", "1"}));
  CHECK(pow(poly({"1", "1"}), 0u) == Poly::constant(1));
  const RationalFunction r(Poly::constant(1), poly({"0", "1"}));
  CHECK(pow(r, -2).num() == poly({"0", "0", "1"}));
}
