#ifndef SHAPEINV_EXACTALG_HPP
#define SHAPEINV_EXACTALG_HPP

// Exact arithmetic over Q: dense univariate polynomials, rational
// functions and Sturm root counting. Rationals are GMP mpq values, always
// kept canonical (reduced, positive denominator).

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shapeinv::exact {

using BigRational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal ("-0.125", "2.5e-3") exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
BigRational parse_rational(std::string_view text);

std::string to_string(const BigRational& q);

/// Dense polynomial; coefficient k multiplies var^k. The zero polynomial has
/// no coefficients, every other polynomial has a nonzero leading coefficient.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<BigRational> coeffs);
  Poly(std::initializer_list<BigRational> coeffs);

  static Poly constant(const BigRational& c);
  static Poly monomial(const BigRational& c, std::size_t power);
  /// The identity polynomial, var.
  static Poly variable();

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  BigRational coeff(std::size_t k) const;
  BigRational leading() const;

  BigRational operator()(const BigRational& x) const;
  double eval(double x) const;
  std::vector<double> to_double() const;

  Poly derivative() const;
  /// p(-var).
  Poly reflect() const;
  /// p(q(var)).
  Poly compose(const Poly& q) const;
  Poly monic() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const BigRational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const BigRational& c) { return a *= c; }
  friend Poly operator*(const BigRational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Euclidean division: a = q*b + r with deg r < deg b. Throws DivisionByZero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& p, unsigned k);

/// num/den with gcd(num, den) = 1 and monic den. Zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(Poly::constant(1)) {}
  RationalFunction(const Poly& p);  // NOLINT(google-explicit-constructor)
  RationalFunction(const BigRational& c);  // NOLINT(google-explicit-constructor)
  RationalFunction(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// Constant value if the function is constant.
  std::optional<BigRational> as_constant() const;

  BigRational operator()(const BigRational& x) const;
  double eval(double x) const;

  RationalFunction derivative() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(std::string_view var = "x") const;

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& r);

RationalFunction pow(const RationalFunction& r, int k);

/// Real interval with optional infinite ends (nullopt = -inf / +inf).
struct Interval {
  std::optional<BigRational> lo;
  std::optional<BigRational> hi;
  bool open = true;
};

/// Number of distinct real roots of p in the interval, counted exactly with a
/// Sturm sequence. Throws ZeroPolynomial for p = 0.
int sturm_count(const Poly& p, const Interval& interval);

}  // namespace shapeinv::exact

#endif  // SHAPEINV_EXACTALG_HPP
