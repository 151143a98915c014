#ifndef SHAPEINV_TESTS_SUPPORT_HPP
#define SHAPEINV_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "shapeinv/exactalg.hpp"

namespace testsupport {

using shapeinv::exact::BigRational;
using shapeinv::exact::Poly;

inline BigRational q(const char* text) { return shapeinv::exact::parse_rational(text); }

inline Poly poly(std::initializer_list<const char*> coeffs) {
  std::vector<BigRational> c;
  for (const char* s : coeffs) c.push_back(q(s));
  return Poly(c);
}

// p/q with |p| <= num_bound, 1 <= q <= den_bound
inline BigRational random_rational(std::mt19937_64& rng, int num_bound = 20, int den_bound = 16) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  BigRational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Poly random_poly(std::mt19937_64& rng, int degree) {
  std::vector<BigRational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_rational(rng));
  if (c.back() == 0) c.back() = 1;
  return Poly(c);
}

}  // namespace testsupport

#endif
