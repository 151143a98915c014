#include "shapeinv/classical.hpp"

#include <stdexcept>

namespace shapeinv::classical {

namespace {

// (a)_m
BigRational rising(const BigRational& a, int m) {
  BigRational out = 1;
  for (int j = 0; j < m; ++j) out *= a + j;
  return out;
}

BigRational factorial(int m) {
  BigRational out = 1;
  for (int j = 2; j <= m; ++j) out *= j;
  return out;
}

void check_degree(int n) {
  if (n < -1) throw std::invalid_argument("polynomial degree must be >= -1");
}

}  // namespace

Poly laguerre(int n, const BigRational& alpha) {
  check_degree(n);
  if (n < 0) return {};
  // L_n^(alpha)(x) = sum_k (-1)^k (alpha+k+1)_{n-k} / ((n-k)! k!) x^k
  std::vector<BigRational> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    BigRational term = rising(alpha + k + 1, n - k) / (factorial(n - k) * factorial(k));
    c[k] = (k % 2 == 0) ? term : BigRational(-term);
  }
  return Poly(std::move(c));
}

Poly jacobi(int n, const BigRational& a, const BigRational& b) {
  check_degree(n);
  if (n < 0) return {};
  // P_n^(a,b)(x) = sum_k (a+k+1)_{n-k} (n+a+b+1)_k / ((n-k)! k!) ((x-1)/2)^k
  const Poly half_shift{BigRational(-1, 2), BigRational(1, 2)};
  Poly acc;
  for (int k = n; k >= 0; --k) {
    BigRational c = rising(a + k + 1, n - k) * rising(a + b + n + 1, k) / (factorial(n - k) * factorial(k));
    acc = acc * half_shift + Poly::constant(c);
  }
  return acc;
}

}  // namespace shapeinv::classical
