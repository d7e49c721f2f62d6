#ifndef SVA_POLY_MOD_CUBIC_HPP
#define SVA_POLY_MOD_CUBIC_HPP

#include <array>

#include "sva/rational.hpp"

namespace sva {

/// Arithmetic of degree < 3 polynomials modulo a monic cubic
/// t^3 - a t^2 - b t - c with rational coefficients. Shared by the cubic
/// field elements (modulus = minimal polynomial of rho) and the loop
/// analysis (modulus = characteristic polynomial of the loop unit).
struct CubicModulus {
    Rational a, b, c;
    // t^3 = c + b t + a t^2 ; t^4 = a*c + (a*b + c) t + (a*a + b) t^2
};

using PolyMod = std::array<Rational, 3>;

PolyMod mul_mod_cubic(const PolyMod& x, const PolyMod& y, const CubicModulus& m);

/// Inverse by the extended Euclidean algorithm; requires gcd(x, modulus) = 1
/// (always true for nonzero x when the modulus is irreducible). Throws
/// DomainError for zero and InvariantViolation when the gcd is not constant
/// (reducible modulus sharing a factor with x).
PolyMod invert_mod_cubic(const PolyMod& x, const CubicModulus& m);

} // namespace sva

#endif
