#ifndef SHAPEINV_CLASSICAL_HPP
#define SHAPEINV_CLASSICAL_HPP

#include "shapeinv/exactalg.hpp"

namespace shapeinv::classical {

using exact::BigRational;
using exact::Poly;

/// Generalized Laguerre polynomial L_n^(alpha), leading coefficient (-1)^n/n!.
/// n = -1 gives the zero polynomial. Any rational alpha is accepted.
Poly laguerre(int n, const BigRational& alpha);

/// Jacobi polynomial P_n^(a,b) in hypergeometric normalization, built from
/// the terminating sum in powers of (x-1)/2 so that negative parameters are
/// handled without dividing by (a+1)_k. n = -1 gives the zero polynomial.
Poly jacobi(int n, const BigRational& a, const BigRational& b);

}  // namespace shapeinv::classical

#endif  // SHAPEINV_CLASSICAL_HPP
