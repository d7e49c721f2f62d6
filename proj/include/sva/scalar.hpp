#ifndef SVA_SCALAR_HPP
#define SVA_SCALAR_HPP

#include <compare>
#include <concepts>
#include <string>

#include "sva/bigreal.hpp"
#include "sva/cubic_field.hpp"
#include "sva/errors.hpp"
#include "sva/rational.hpp"

namespace sva {

/// Uniform view over the three scalar substrates. Exact backends
/// (Rational, CubicFieldElement) have infallible comparisons; BigReal
/// comparisons take an epsilon and raise PrecisionExhausted when two
/// distinct bit patterns are closer than it.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static int sign(const Rational& a) { return sign_of(a); }
    static bool is_zero(const Rational& a) { return a == 0; }
    static Rational mul_integer(const Rational& a, const Integer& n) { return Rational(a * n); }
    static BigReal to_bigreal(const Rational& a, mpfr_prec_t prec) {
        return BigReal::from_rational(a, prec);
    }
    static std::string to_decimal(const Rational& a, int digits) {
        return BigReal::from_rational(a, static_cast<mpfr_prec_t>(digits * 4 + 64)).to_decimal(digits);
    }
};

template <>
struct ScalarOps<CubicFieldElement> {
    static constexpr bool exact = true;
    static constexpr const char* name = "cubic";
    static int sign(const CubicFieldElement& a) { return a.sign(); }
    static bool is_zero(const CubicFieldElement& a) { return a.is_zero(); }
    static CubicFieldElement mul_integer(const CubicFieldElement& a, const Integer& n) {
        return mul_int(a, n);
    }
    static BigReal to_bigreal(const CubicFieldElement& a, mpfr_prec_t prec) {
        return a.to_bigreal(prec);
    }
    static std::string to_decimal(const CubicFieldElement& a, int digits) {
        return a.to_decimal(digits);
    }
};

template <>
struct ScalarOps<BigReal> {
    static constexpr bool exact = false;
    static constexpr const char* name = "bigreal";
    static int sign(const BigReal& a) { return a.sign(); }
    static bool is_zero(const BigReal& a) { return a.is_zero(); }
    static BigReal mul_integer(const BigReal& a, const Integer& n) { return mul_int(a, n); }
    static BigReal to_bigreal(const BigReal& a, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set(r.raw(), a.raw(), MPFR_RNDN);
        return r;
    }
    static std::string to_decimal(const BigReal& a, int digits) { return a.to_decimal(digits); }
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { ScalarOps<S>::sign(a) } -> std::convertible_to<int>;
};

/// Three-way comparison for exact scalars.
template <Scalar S>
    requires(ScalarOps<S>::exact)
std::strong_ordering compare_scalars(const S& a, const S& b) {
    int s = ScalarOps<S>::sign(a - b);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

/// BigReal comparison guarded by an epsilon: identical values compare equal,
/// values closer than eps (but not identical) are not decidable at the
/// working precision.
std::strong_ordering compare_scalars(const BigReal& a, const BigReal& b, const BigReal& eps);

} // namespace sva

#endif
