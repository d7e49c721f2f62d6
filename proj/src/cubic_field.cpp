#include "sva/cubic_field.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "sva/errors.hpp"
#include "sva/poly_mod_cubic.hpp"

namespace sva {

CubicField::CubicField(MinimalPolynomial poly)
    : poly_(std::move(poly)), cache_(poly_.selected_root()) {
    const Rational& a = poly_.a();
    const Rational& b = poly_.b();
    const Rational& c = poly_.c();
    rho3_ = {c, b, a};
    // rho^4 = a*rho^3 + b*rho^2 + c*rho
    rho4_ = {a * c, a * b + c, a * a + b};
}

std::shared_ptr<const CubicField> CubicField::make(MinimalPolynomial poly) {
    return std::shared_ptr<const CubicField>(new CubicField(std::move(poly)));
}

std::shared_ptr<const CubicField> CubicField::make(const Rational& a, const Rational& b,
                                                   const Rational& c, int root_index) {
    return make(MinimalPolynomial(a, b, c, root_index));
}

RootInterval CubicField::root_enclosure(const Rational& max_width) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_.width() > max_width) cache_ = cache_.refined_to_width(poly_, max_width);
    return cache_;
}

RootInterval CubicField::root_enclosure() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_;
}

CubicFieldElement::CubicFieldElement(CubicFieldPtr field, Rational c0, Rational c1, Rational c2)
    : field_(std::move(field)), c_{std::move(c0), std::move(c1), std::move(c2)} {
    if (!field_) throw UsageError("element constructed without a field");
}

CubicFieldElement CubicFieldElement::from_rational(const CubicFieldPtr& field, const Rational& q) {
    return CubicFieldElement(field, q, 0, 0);
}

CubicFieldElement CubicFieldElement::rho(const CubicFieldPtr& field) {
    return CubicFieldElement(field, 0, 1, 0);
}

const CubicFieldPtr& CubicFieldElement::field_for(const CubicFieldElement& other) const {
    if (field_ && other.field_ && !field_->same_as(*other.field_))
        throw UsageError("operands belong to different cubic fields");
    return field_ ? field_ : other.field_;
}

CubicFieldElement operator+(const CubicFieldElement& a, const CubicFieldElement& b) {
    CubicFieldElement r;
    r.field_ = a.field_for(b);
    for (int i = 0; i < 3; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

CubicFieldElement operator-(const CubicFieldElement& a, const CubicFieldElement& b) {
    CubicFieldElement r;
    r.field_ = a.field_for(b);
    for (int i = 0; i < 3; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

CubicFieldElement CubicFieldElement::operator-() const {
    CubicFieldElement r;
    r.field_ = field_;
    for (int i = 0; i < 3; ++i) r.c_[i] = -c_[i];
    return r;
}

CubicFieldElement operator*(const CubicFieldElement& a, const CubicFieldElement& b) {
    CubicFieldElement r;
    r.field_ = a.field_for(b);

    // Degree-4 product, then reduce with rho^3 and rho^4.
    Rational e0 = a.c_[0] * b.c_[0];
    Rational e1 = a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0];
    Rational e2 = a.c_[0] * b.c_[2] + a.c_[1] * b.c_[1] + a.c_[2] * b.c_[0];
    Rational e3 = a.c_[1] * b.c_[2] + a.c_[2] * b.c_[1];
    Rational e4 = a.c_[2] * b.c_[2];

    if ((e3 != 0 || e4 != 0) && !r.field_)
        throw UsageError("context-free zero cannot appear here");
    if (r.field_) {
        const auto& r3 = r.field_->rho3();
        const auto& r4 = r.field_->rho4();
        e0 += e3 * r3[0] + e4 * r4[0];
        e1 += e3 * r3[1] + e4 * r4[1];
        e2 += e3 * r3[2] + e4 * r4[2];
    }
    r.c_ = {std::move(e0), std::move(e1), std::move(e2)};
    return r;
}

CubicFieldElement mul_rat(const CubicFieldElement& a, const Rational& q) {
    if (!a.field()) return CubicFieldElement(); // context-free zero stays zero
    return CubicFieldElement(a.field(), a.c0() * q, a.c1() * q, a.c2() * q);
}

CubicFieldElement mul_int(const CubicFieldElement& a, const Integer& n) {
    return mul_rat(a, Rational(n));
}

namespace {

// Exact interval arithmetic for c0 + c1 t + c2 t^2 over t in [lo, hi].
std::pair<Rational, Rational> eval_on_interval(const std::array<Rational, 3>& c,
                                               const Rational& lo, const Rational& hi) {
    auto scale = [](const Rational& k, const Rational& a, const Rational& b) {
        if (sign_of(k) >= 0) return std::make_pair(Rational(k * a), Rational(k * b));
        return std::make_pair(Rational(k * b), Rational(k * a));
    };
    Rational sq_lo, sq_hi;
    Rational l2 = lo * lo, h2 = hi * hi;
    if (sign_of(lo) >= 0) {
        sq_lo = l2; sq_hi = h2;
    } else if (sign_of(hi) <= 0) {
        sq_lo = h2; sq_hi = l2;
    } else {
        sq_lo = 0; sq_hi = std::max(l2, h2);
    }
    auto [a1, b1] = scale(c[1], lo, hi);
    auto [a2, b2] = scale(c[2], sq_lo, sq_hi);
    return {c[0] + a1 + a2, c[0] + b1 + b2};
}

} // namespace

CubicFieldElement CubicFieldElement::inverse() const {
    if (is_zero()) throw DomainError("inversion of zero field element");
    if (!field_) throw UsageError("context-free element cannot be inverted");
    const MinimalPolynomial& p = field_->poly();
    PolyMod u = invert_mod_cubic(c_, CubicModulus{p.a(), p.b(), p.c()});
    return CubicFieldElement(field_, u[0], u[1], u[2]);
}

CubicFieldElement operator/(const CubicFieldElement& a, const CubicFieldElement& b) {
    return a * b.inverse();
}

int CubicFieldElement::sign() const {
    if (is_zero()) return 0;
    if (is_rational() || !field_) return sign_of(c_[0]);
    RootInterval iv = field_->root_enclosure();
    for (;;) {
        auto [lo, hi] = eval_on_interval(c_, iv.lo, iv.hi);
        if (sign_of(lo) > 0) return 1;
        if (sign_of(hi) < 0) return -1;
        iv = field_->root_enclosure(iv.width() / 16);
    }
}

bool CubicFieldElement::operator==(const CubicFieldElement& o) const {
    if (field_ && o.field_ && !field_->same_as(*o.field_)) return false;
    return c_ == o.c_;
}

std::pair<Rational, Rational> CubicFieldElement::enclosure(long bits) const {
    if (is_zero()) return {Rational(0), Rational(0)};
    if (is_rational()) return {c_[0], c_[0]};
    Rational eps = make_rational(1, Integer(1) << static_cast<unsigned long>(bits < 0 ? 0 : bits));
    RootInterval iv = field_->root_enclosure();
    for (;;) {
        auto [lo, hi] = eval_on_interval(c_, iv.lo, iv.hi);
        if (sign_of(lo) * sign_of(hi) > 0) {
            Rational mag = std::max(abs(lo), abs(hi));
            if (hi - lo <= mag * eps) return {lo, hi};
        }
        iv = field_->root_enclosure(iv.width() / 16);
    }
}

BigReal CubicFieldElement::to_bigreal(mpfr_prec_t prec) const {
    if (is_zero()) return BigReal::from_long(0, prec);
    if (is_rational()) return BigReal::from_rational(c_[0], prec);
    auto [lo, hi] = enclosure(static_cast<long>(prec) + 4);
    Rational mid = (lo + hi) / 2;
    return BigReal::from_rational(mid, prec);
}

std::string CubicFieldElement::to_decimal(int significant_digits) const {
    long bits = static_cast<long>(significant_digits) * 4 + 32;
    if (is_zero()) return BigReal::from_long(0, 64).to_decimal(significant_digits);
    auto [lo, hi] = enclosure(bits);
    Rational mid = (lo + hi) / 2;
    BigReal v = BigReal::from_rational(mid, static_cast<mpfr_prec_t>(bits + 32));
    return v.to_decimal(significant_digits);
}

std::array<Rational, 3> CubicFieldElement::depressed_coeffs() const {
    // rho = theta + a/3
    Rational a3 = field_ ? field_->poly().a() / 3 : Rational(0);
    return {c_[0] + c_[1] * a3 + c_[2] * a3 * a3, c_[1] + 2 * c_[2] * a3, c_[2]};
}

std::string CubicFieldElement::to_text() const {
    std::string out = to_string(c_[0]);
    auto term = [](const Rational& q, const std::string& suffix) {
        std::string s = sign_of(q) < 0 ? " - " : " + ";
        Rational a = abs(q);
        if (a == 1) return s + suffix;
        return s + to_string(a) + "*" + suffix;
    };
    out += term(c_[1], "r");
    out += term(c_[2], "r^2");
    return out;
}

CubicFieldElement parse_element(const CubicFieldPtr& field, const std::string& text) {
    // Grammar: sum of terms; term = rational | rational '*'? 'r' ('^' '2')? | 'r' | 'r^2'.
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ValidationError("empty field element literal");

    std::array<Rational, 3> c = {Rational(0), Rational(0), Rational(0)};
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ValidationError("expected + or - in element literal: " + text);
        }
        first = false;
        std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/' || s[i] == '.' ||
                                s[i] == 'e' || s[i] == 'E'))
            ++i;
        Rational coef(1);
        if (i > start) coef = parse_rational(s.substr(start, i - start));
        if (sgn < 0) coef = -coef;
        int degree = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && (s[i] == 'r' || s[i] == 'R')) {
            ++i;
            degree = 1;
            if (i + 1 < s.size() && s[i] == '^' && s[i + 1] == '2') {
                degree = 2;
                i += 2;
            } else if (i < s.size() && s[i] == '^') {
                throw ValidationError("only powers r and r^2 are allowed: " + text);
            }
        } else if (i == start) {
            throw ValidationError("malformed term in element literal: " + text);
        }
        c[degree] += coef;
    }
    return CubicFieldElement(field, c[0], c[1], c[2]);
}

} // namespace sva
