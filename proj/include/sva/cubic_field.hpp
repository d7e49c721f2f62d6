#ifndef SVA_CUBIC_FIELD_HPP
#define SVA_CUBIC_FIELD_HPP

#include <array>
#include <memory>
#include <mutex>
#include <string>

#include "sva/bigreal.hpp"
#include "sva/minimal_polynomial.hpp"
#include "sva/rational.hpp"

namespace sva {

/// Shared context for elements of Q[rho]: the minimal polynomial, the
/// reduction rows for rho^3 and rho^4, and a cached isolating interval of
/// the selected root that only ever shrinks. The cache is internal; callers
/// see pure value semantics.
class CubicField : public std::enable_shared_from_this<CubicField> {
public:
    static std::shared_ptr<const CubicField> make(MinimalPolynomial poly);
    static std::shared_ptr<const CubicField> make(const Rational& a, const Rational& b,
                                                  const Rational& c, int root_index);

    const MinimalPolynomial& poly() const { return poly_; }

    // rho^3 = r3[0] + r3[1] rho + r3[2] rho^2, likewise rho^4.
    const std::array<Rational, 3>& rho3() const { return rho3_; }
    const std::array<Rational, 3>& rho4() const { return rho4_; }

    /// Isolating interval with width <= max_width (cached; never grows).
    RootInterval root_enclosure(const Rational& max_width) const;
    RootInterval root_enclosure() const;

    bool same_as(const CubicField& o) const { return poly_ == o.poly_; }

private:
    explicit CubicField(MinimalPolynomial poly);

    MinimalPolynomial poly_;
    std::array<Rational, 3> rho3_, rho4_;
    mutable std::mutex mutex_;
    mutable RootInterval cache_;
};

using CubicFieldPtr = std::shared_ptr<const CubicField>;

/// Element c0 + c1 rho + c2 rho^2 of Q[rho] with exact arithmetic and
/// decidable sign. A default-constructed element is the context-free zero,
/// usable as an additive identity with any field.
class CubicFieldElement {
public:
    CubicFieldElement() : c_{Rational(0), Rational(0), Rational(0)} {}
    CubicFieldElement(CubicFieldPtr field, Rational c0, Rational c1, Rational c2);
    static CubicFieldElement from_rational(const CubicFieldPtr& field, const Rational& q);
    static CubicFieldElement rho(const CubicFieldPtr& field);

    const CubicFieldPtr& field() const { return field_; }
    const Rational& c0() const { return c_[0]; }
    const Rational& c1() const { return c_[1]; }
    const Rational& c2() const { return c_[2]; }
    const std::array<Rational, 3>& coeffs() const { return c_; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

    friend CubicFieldElement operator+(const CubicFieldElement& a, const CubicFieldElement& b);
    friend CubicFieldElement operator-(const CubicFieldElement& a, const CubicFieldElement& b);
    friend CubicFieldElement operator*(const CubicFieldElement& a, const CubicFieldElement& b);
    friend CubicFieldElement operator/(const CubicFieldElement& a, const CubicFieldElement& b);
    CubicFieldElement operator-() const;

    CubicFieldElement& operator+=(const CubicFieldElement& o) { return *this = *this + o; }
    CubicFieldElement& operator-=(const CubicFieldElement& o) { return *this = *this - o; }
    CubicFieldElement& operator*=(const CubicFieldElement& o) { return *this = *this * o; }

    /// Multiplicative inverse by the extended Euclidean algorithm against P.
    CubicFieldElement inverse() const;

    /// Exact sign at the selected root. Terminates because a nonzero triple
    /// cannot vanish at a root of an irreducible cubic.
    int sign() const;

    bool operator==(const CubicFieldElement& o) const;
    bool operator!=(const CubicFieldElement& o) const { return !(*this == o); }

    /// Enclosure of the value in an exact rational interval whose width is
    /// at most 2^-bits relative to the value (absolute for zero).
    std::pair<Rational, Rational> enclosure(long bits) const;

    BigReal to_bigreal(mpfr_prec_t prec) const;
    std::string to_decimal(int significant_digits) const;

    /// Coefficients in the depressed basis theta = rho - a/3.
    std::array<Rational, 3> depressed_coeffs() const;

    /// Canonical text form "c0 + c1*r + c2*r^2" with rationals as p/q.
    std::string to_text() const;

private:
    const CubicFieldPtr& field_for(const CubicFieldElement& other) const;

    CubicFieldPtr field_; // null only for the context-free zero
    std::array<Rational, 3> c_;
};

CubicFieldElement mul_int(const CubicFieldElement& a, const Integer& n);
CubicFieldElement mul_rat(const CubicFieldElement& a, const Rational& q);

/// Parses the canonical textual form, e.g. "1/2 + r - 3*r^2".
CubicFieldElement parse_element(const CubicFieldPtr& field, const std::string& text);

} // namespace sva

#endif
