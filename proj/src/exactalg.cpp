#include "shapeinv/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "shapeinv/error.hpp"

namespace shapeinv::exact {

namespace {

int sign(const BigRational& q) { return sgn(q); }

BigRational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? BigRational(mpz_class(1), p) : BigRational(p);
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

BigRational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || !all_digits(exp_text) || exp_text.size() > 6) {
      throw std::invalid_argument("malformed exponent");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) || !all_digits(frac_part)) {
    throw std::invalid_argument("malformed number");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits.empty() ? "0" : digits, 10);
  BigRational out(mantissa);
  out *= pow10(exponent - static_cast<long>(frac_part.size()));
  out.canonicalize();
  return negative ? BigRational(-out) : out;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  std::string_view s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = strip(s.substr(0, slash));
    std::string_view q = strip(s.substr(slash + 1));
    bool negative = false;
    if (!p.empty() && (p.front() == '+' || p.front() == '-')) {
      negative = p.front() == '-';
      p.remove_prefix(1);
    }
    if (p.empty() || q.empty() || !all_digits(p) || !all_digits(q)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class num(std::string(p), 10);
    mpz_class den(std::string(q), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    BigRational out(negative ? mpz_class(-num) : num, den);
    out.canonicalize();
    return out;
  }
  try {
    return parse_decimal(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  }
}

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<BigRational> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::constant(const BigRational& c) { return Poly(std::vector<BigRational>{c}); }

Poly Poly::monomial(const BigRational& c, std::size_t power) {
  std::vector<BigRational> v(power + 1);
  v[power] = c;
  return Poly(std::move(v));
}

Poly Poly::variable() { return monomial(1, 1); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational Poly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigRational(0); }

BigRational Poly::leading() const { return coeffs_.empty() ? BigRational(0) : coeffs_.back(); }

BigRational Poly::operator()(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::vector<double> Poly::to_double() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_d());
  return out;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigRational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return Poly(std::move(d));
}

Poly Poly::reflect() const {
  Poly out = *this;
  for (std::size_t k = 1; k < out.coeffs_.size(); k += 2) out.coeffs_[k] = -out.coeffs_[k];
  return out;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * q;
    acc += Poly::constant(*it);
  }
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Poly out = *this;
  BigRational inv = 1 / leading();
  return out *= inv;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const BigRational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

std::string Poly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const BigRational& c = coeffs_[k];
    if (c == 0) continue;
    BigRational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1 && k > 0;
    if (!unit) os << mag.get_str();
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<BigRational> rem = a.coeffs();
  std::vector<BigRational> quot(a.coeffs().size() - b.coeffs().size() + 1);
  const auto& bc = b.coeffs();
  BigRational inv_lead = 1 / b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    BigRational f = rem[k + bc.size() - 1] * inv_lead;
    quot[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[k + j] -= f * bc[j];
  }
  rem.resize(bc.size() - 1);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.monic();
  Poly y = b.monic();
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Poly pow(const Poly& p, unsigned k) {
  Poly out = Poly::constant(1);
  Poly base = p;
  while (k > 0) {
    if (k & 1u) out *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Poly& p) : num_(p), den_(Poly::constant(1)) {}

RationalFunction::RationalFunction(const BigRational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  BigRational lead = den_.leading();
  if (lead != 1) {
    BigRational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

std::optional<BigRational> RationalFunction::as_constant() const {
  if (num_.degree() <= 0 && den_.degree() == 0) return num_.coeff(0);
  return std::nullopt;
}

BigRational RationalFunction::operator()(const BigRational& x) const {
  BigRational d = den_(x);
  if (d == 0) throw DivisionByZero("rational function evaluated at a pole");
  return num_(x) / d;
}

double RationalFunction::eval(double x) const { return num_.eval(x) / den_.eval(x); }

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DivisionByZero("division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

std::string RationalFunction::to_string(std::string_view var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

RationalFunction pow(const RationalFunction& r, int k) {
  if (k >= 0) return RationalFunction(pow(r.num(), static_cast<unsigned>(k)), pow(r.den(), static_cast<unsigned>(k)));
  if (r.is_zero()) throw DivisionByZero("negative power of zero");
  return RationalFunction(pow(r.den(), static_cast<unsigned>(-k)), pow(r.num(), static_cast<unsigned>(-k)));
}

// ---------------------------------------------------------------------------
// Sturm counting

namespace {

std::vector<Poly> sturm_chain(const Poly& squarefree) {
  std::vector<Poly> chain{squarefree, squarefree.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = -divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  return chain;
}

int count_variations(const std::vector<int>& signs) {
  int variations = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int variations_at(const std::vector<Poly>& chain, const std::optional<BigRational>& x, int infinity_sign) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) {
    if (x) {
      signs.push_back(sign(p(*x)));
    } else {
      int s = sign(p.leading());
      if (infinity_sign < 0 && p.degree() % 2 == 1) s = -s;
      signs.push_back(s);
    }
  }
  return count_variations(signs);
}

}  // namespace

int sturm_count(const Poly& p, const Interval& interval) {
  if (p.is_zero()) throw ZeroPolynomial("sturm_count of the zero polynomial");
  if (p.degree() == 0) return 0;
  Poly squarefree = divmod(p, gcd(p, p.derivative())).first;
  std::vector<Poly> chain = sturm_chain(squarefree);
  // V(lo) - V(hi) counts the roots in the half-open interval (lo, hi].
  int count = variations_at(chain, interval.lo, -1) - variations_at(chain, interval.hi, +1);
  if (interval.open) {
    if (interval.hi && squarefree(*interval.hi) == 0) --count;
  } else {
    if (interval.lo && squarefree(*interval.lo) == 0) ++count;
  }
  return std::max(count, 0);
}

}  // namespace shapeinv::exact
