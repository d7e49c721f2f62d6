#include <doctest.h>

#include <random>

#include "sva/cubic_field.hpp"
#include "sva/errors.hpp"
#include "sva/minimal_polynomial.hpp"
#include "sva/scalar.hpp"

using namespace sva;

namespace {

CubicFieldPtr field_cbrt13() { return CubicField::make(0, 0, 13, 0); }

CubicFieldPtr field_cos2pi7() {
    // r^3 - r^2 - 2r + 1, the polynomial of 2cos(pi/7); largest root selected.
    return CubicField::make(1, 2, -1, 2);
}

CubicFieldElement elem(const CubicFieldPtr& f, long c0, long c1, long c2) {
    return CubicFieldElement(f, c0, c1, c2);
}

std::mt19937 rng(20260810);

Rational random_rational() {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    return make_rational(num(rng), den(rng));
}

CubicFieldElement random_element(const CubicFieldPtr& f) {
    return CubicFieldElement(f, random_rational(), random_rational(), random_rational());
}

} // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rational("3/7") == make_rational(3, 7));
    CHECK(parse_rational("-6/8") == make_rational(-3, 4));
    CHECK(parse_rational("1.25") == make_rational(5, 4));
    CHECK(parse_rational("-12.0625") == make_rational(-193, 16));
    CHECK(parse_rational("3e-4") == make_rational(3, 10000));
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
}

TEST_CASE("irreducibility screening") {
    // r^3 = 0 has the rational root 0.
    CHECK_FALSE(MinimalPolynomial::is_irreducible(0, 0, 0));
    // r^3 - 1 = (r-1)(...)
    CHECK_FALSE(MinimalPolynomial::is_irreducible(0, 0, 1));
    // r^3 - r (roots 0, +-1)
    CHECK_FALSE(MinimalPolynomial::is_irreducible(0, 1, 0));
    CHECK(MinimalPolynomial::is_irreducible(0, 0, 13));
    CHECK(MinimalPolynomial::is_irreducible(1, 2, -1));
    // Repeated-root cubic (r-1)^2 (r+2) = r^3 - 3r + 2: a=0, b=3, c=-2.
    CHECK_FALSE(MinimalPolynomial::is_irreducible(0, 3, -2));
    CHECK_THROWS_AS(MinimalPolynomial(0, 0, 8, 0), ValidationError); // r^3 - 8
}

TEST_CASE("select_root isolates the requested real root") {
    MinimalPolynomial p13(0, 0, 13, 0);
    CHECK(p13.real_root_count() == 1);
    RootInterval iv = p13.isolate_root(0);
    CHECK(iv.lo < iv.hi);
    // cbrt(13) = 2.3513...: P(2) < 0 < P(3)
    CHECK(p13.sign_at(2) == -1);
    CHECK(p13.sign_at(3) == 1);
    CHECK(iv.lo >= 2);
    CHECK(iv.hi <= 3);

    MinimalPolynomial p7(1, 2, -1, 2);
    CHECK(p7.real_root_count() == 3);
    RootInterval top = p7.isolate_root(2);
    // 2cos(pi/7) = 1.8019...
    CHECK(top.lo > 1);
    CHECK(top.hi < 2);
    RootInterval bottom = p7.isolate_root(0);
    CHECK(bottom.hi < 0);

    CHECK_THROWS_AS(MinimalPolynomial(0, 0, 2, 1), UsageError); // r^3-2 has one real root
    CHECK_THROWS_AS(p7.isolate_root(3), UsageError);
}

TEST_CASE("root interval refinement halves the width") {
    MinimalPolynomial p(0, 0, 13, 0);
    RootInterval iv = p.isolate_root(0);
    Rational w0 = iv.width();
    RootInterval cur = iv;
    for (int n = 1; n <= 40; ++n) {
        cur = cur.refined_once(p);
        Rational bound = w0 / (Integer(1) << static_cast<unsigned long>(n));
        CHECK(cur.width() <= bound);
        CHECK(p.sign_at(cur.lo) * p.sign_at(cur.hi) < 0);
    }
}

TEST_CASE("field multiplication reduction rules") {
    auto f = field_cbrt13();
    // rho * rho = rho^2 regardless of P
    CHECK(elem(f, 0, 1, 0) * elem(f, 0, 1, 0) == elem(f, 0, 0, 1));
    // theta^2 * theta = theta^3 = 13 for t^3 - 13
    CHECK(elem(f, 0, 0, 1) * elem(f, 0, 1, 0) == elem(f, 13, 0, 0));
    auto g = field_cos2pi7();
    // rho^3 = rho^2 + 2 rho - 1 for r^3 - r^2 - 2r + 1
    CHECK(elem(g, 0, 0, 1) * elem(g, 0, 1, 0) == elem(g, -1, 2, 1));
}

TEST_CASE("field inverse via extended Euclid") {
    auto f = field_cbrt13();
    CubicFieldElement theta = elem(f, 0, 1, 0);
    CubicFieldElement inv = theta.inverse();
    CHECK(inv == CubicFieldElement(f, 0, 0, make_rational(1, 13)));
    CHECK(theta * inv == CubicFieldElement::from_rational(f, 1));
    CHECK_THROWS_AS(elem(f, 0, 0, 0).inverse(), DomainError);
}

TEST_CASE("mismatched fields are rejected") {
    auto f = field_cbrt13();
    auto g = field_cos2pi7();
    CHECK_THROWS_AS(elem(f, 1, 1, 0) + elem(g, 1, 0, 0), UsageError);
}

TEST_CASE("exact signs against the selected root") {
    auto f = field_cbrt13();
    CHECK(elem(f, 0, 0, 0).sign() == 0);
    CHECK(elem(f, -2, 1, 0).sign() == 1);  // theta - 2 > 0 since 2^3 < 13
    CHECK(elem(f, -3, 1, 0).sign() == -1); // theta - 3 < 0 since 3^3 > 13

    auto g = field_cos2pi7();
    // 2cos(pi/7) ~ 1.8019
    CHECK(elem(g, -1, 1, 0).sign() == 1);
    CHECK(elem(g, -2, 1, 0).sign() == -1);
}

TEST_CASE("field axioms on random triples") {
    auto f = field_cos2pi7();
    for (int i = 0; i < 300; ++i) {
        CubicFieldElement a = random_element(f), b = random_element(f), c = random_element(f);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == CubicFieldElement::from_rational(f, 1));
    }
}

TEST_CASE("field_sign agrees with 200-bit numeric evaluation") {
    auto f = field_cbrt13();
    auto g = field_cos2pi7();
    int nonzero = 0;
    for (int i = 0; i < 1000; ++i) {
        const CubicFieldPtr& fld = (i % 2 == 0) ? f : g;
        CubicFieldElement e = random_element(fld);
        BigReal v = e.to_bigreal(200);
        if (e.is_zero()) {
            CHECK(v.sign() == 0);
            continue;
        }
        ++nonzero;
        CHECK(e.sign() == v.sign());
    }
    CHECK(nonzero > 900);
}

TEST_CASE("decimal rendering of cubic elements") {
    auto f = field_cbrt13();
    CubicFieldElement theta = CubicFieldElement::rho(f);
    CHECK(theta.to_decimal(24) == "2.35133468772075748950002");
    CHECK(theta.to_decimal(23) == "2.3513346877207574895000");
    CubicFieldElement theta2 = theta * theta;
    CHECK(theta2.to_decimal(23) == "5.5287748136788721414723");
    auto g = field_cos2pi7();
    CHECK(CubicFieldElement::rho(g).to_decimal(15) == "1.80193773580484");
}

TEST_CASE("depressed form") {
    MinimalPolynomial p(1, 2, -1, 2);
    auto [m, n] = p.depressed();
    // r = t + 1/3: t^3 - (7/3) t + 7/27
    CHECK(m == make_rational(7, 3));
    CHECK(n == make_rational(-7, 27));
    auto g = field_cos2pi7();
    CubicFieldElement rho = CubicFieldElement::rho(g);
    auto dep = rho.depressed_coeffs();
    CHECK(dep[0] == make_rational(1, 3));
    CHECK(dep[1] == 1);
    CHECK(dep[2] == 0);
}

TEST_CASE("element text round trip") {
    auto f = field_cbrt13();
    CubicFieldElement e(f, make_rational(1, 2), -1, make_rational(3, 4));
    CubicFieldElement back = parse_element(f, e.to_text());
    CHECK(back == e);
    CHECK(parse_element(f, "1") == CubicFieldElement::from_rational(f, 1));
    CHECK(parse_element(f, "r^2") == elem(f, 0, 0, 1));
    CHECK(parse_element(f, "2 - r") == elem(f, 2, -1, 0));
    CHECK_THROWS_AS(parse_element(f, "r^3"), ValidationError);
}

TEST_CASE("bigreal decimal rendering") {
    BigReal x = BigReal::from_rational(make_rational(1, 3), 256);
    CHECK(x.to_decimal(10) == "0.3333333333");
    BigReal big = BigReal::from_long(450, 128);
    CHECK(big.to_decimal(5) == "450.00");
    BigReal tiny = BigReal::from_rational(make_rational(1, 100000), 128);
    CHECK(tiny.to_decimal(3) == "1.00e-5");
    CHECK(BigReal::from_long(0, 64).to_decimal(4) == "0.000");
    CHECK(BigReal::from_long(-2, 64).to_decimal(3) == "-2.00");
}
