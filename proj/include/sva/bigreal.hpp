#ifndef SVA_BIGREAL_HPP
#define SVA_BIGREAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "sva/rational.hpp"

namespace sva {

/// Arbitrary-precision real number backed by MPFR. The precision is fixed at
/// construction; binary operations round to the larger operand precision
/// (uniform within a run, where every value comes from one configuration).
class BigReal {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 256;

    BigReal() { mpfr_init2(v_, kDefaultPrec); mpfr_set_nan(v_); }
    explicit BigReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_nan(v_); }

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    static BigReal from_long(long n, mpfr_prec_t prec);
    static BigReal from_integer(const Integer& n, mpfr_prec_t prec);
    static BigReal from_rational(const Rational& q, mpfr_prec_t prec);
    static BigReal from_double(double d, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    int sign() const { return mpfr_zero_p(v_) ? 0 : (mpfr_signbit(v_) ? -1 : 1); }
    int cmp(const BigReal& o) const { return mpfr_cmp(v_, o.v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    BigReal operator-() const;

    BigReal& operator+=(const BigReal& o) { *this = *this + o; return *this; }
    BigReal& operator-=(const BigReal& o) { *this = *this - o; return *this; }
    BigReal& operator*=(const BigReal& o) { *this = *this * o; return *this; }
    BigReal& operator/=(const BigReal& o) { *this = *this / o; return *this; }

    friend bool operator<(const BigReal& a, const BigReal& b) { return a.cmp(b) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return a.cmp(b) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return a.cmp(b) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }

    BigReal abs() const;
    BigReal sqrt() const;
    Integer floor() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// 2^e at this value's precision.
    static BigReal pow2(long e, mpfr_prec_t prec);

    /// Fixed count of significant digits, round-to-nearest, no trailing-zero
    /// trimming; plain positional notation for moderate exponents.
    std::string to_decimal(int significant_digits) const;

private:
    mpfr_t v_;
};

BigReal mul_int(const BigReal& a, const Integer& n);

} // namespace sva

#endif
