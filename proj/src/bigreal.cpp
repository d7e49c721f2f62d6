#include "sva/bigreal.hpp"

#include <algorithm>
#include <cstring>

namespace sva {

BigReal BigReal::from_long(long n, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
}

BigReal BigReal::from_integer(const Integer& n, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
    return r;
}

BigReal BigReal::from_rational(const Rational& q, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigReal BigReal::from_double(double d, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
}

namespace {
mpfr_prec_t join_prec(const BigReal& a, const BigReal& b) {
    return std::max(a.precision(), b.precision());
}
} // namespace

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(join_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal BigReal::operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::abs() const {
    BigReal r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::sqrt() const {
    BigReal r(precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

Integer BigReal::floor() const {
    BigReal f(precision());
    mpfr_floor(f.v_, v_);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), f.v_, MPFR_RNDZ);
    return z;
}

BigReal BigReal::pow2(long e, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

BigReal mul_int(const BigReal& a, const Integer& n) {
    BigReal r(a.precision());
    mpfr_mul_z(r.raw(), a.raw(), n.get_mpz_t(), MPFR_RNDN);
    return r;
}

std::string BigReal::to_decimal(int significant_digits) const {
    if (significant_digits < 1) significant_digits = 1;
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_signbit(v_) ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) {
        std::string s = "0";
        if (significant_digits > 1) s += "." + std::string(significant_digits - 1, '0');
        return s;
    }

    mpfr_exp_t exp10 = 0;
    char* digits = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(significant_digits),
                                v_, MPFR_RNDN);
    std::string d(digits);
    mpfr_free_str(digits);

    std::string sign;
    if (!d.empty() && d[0] == '-') {
        sign = "-";
        d.erase(0, 1);
    }
    // d is the digit string of 0.d1d2... * 10^exp10.
    std::string body;
    if (exp10 > 21 || exp10 < -3) {
        body = d.substr(0, 1);
        if (d.size() > 1) body += "." + d.substr(1);
        body += "e" + std::to_string(exp10 - 1);
    } else if (exp10 <= 0) {
        body = "0." + std::string(static_cast<size_t>(-exp10), '0') + d;
    } else if (static_cast<size_t>(exp10) >= d.size()) {
        body = d + std::string(static_cast<size_t>(exp10) - d.size(), '0');
    } else {
        body = d.substr(0, static_cast<size_t>(exp10)) + "." + d.substr(static_cast<size_t>(exp10));
    }
    return sign + body;
}

} // namespace sva
