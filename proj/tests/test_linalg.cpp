#include <doctest.h>

#include <random>

#include "sva/engine.hpp"
#include "sva/linalg3.hpp"

using namespace sva;

namespace {

Mat3i from_columns(std::array<long, 3> c0, std::array<long, 3> c1, std::array<long, 3> c2) {
    Mat3i m;
    for (int i = 0; i < 3; ++i) {
        m.column(0)[i] = c0[static_cast<std::size_t>(i)];
        m.column(1)[i] = c1[static_cast<std::size_t>(i)];
        m.column(2)[i] = c2[static_cast<std::size_t>(i)];
    }
    return m;
}

// Random unimodular matrix as a product of elementary column operations.
Mat3i random_unimodular(std::mt19937& rng) {
    std::uniform_int_distribution<int> col(0, 2);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> ops(4, 10);
    Mat3i m = Mat3i::identity();
    int n = ops(rng);
    for (int k = 0; k < n; ++k) {
        int i = col(rng), j = col(rng);
        if (i == j) continue;
        long c = coef(rng);
        for (int r = 0; r < 3; ++r) m.column(i)[r] += c * m.column(j)[r];
        if (coef(rng) > 0) std::swap(m.column(i), m.column(j)); // det flips sign
    }
    return m;
}

std::array<CubicFieldElement, 3> cbrt13_triple() {
    auto f = CubicField::make(0, 0, 13, 0);
    CubicFieldElement rho = CubicFieldElement::rho(f);
    return {CubicFieldElement::from_rational(f, 1), rho, rho * rho};
}

} // namespace

TEST_CASE("polar of the identity and a hand adjugate") {
    Mat3i id = Mat3i::identity();
    CHECK(polar(id) == id);

    Mat3i m = from_columns({1, 1, 0}, {0, 1, 0}, {0, 0, 1});
    Mat3i p = polar(m);
    CHECK(p == from_columns({1, 0, 0}, {-1, 1, 0}, {0, 0, 1}));
    // T(polar(M)) * M = I
    CHECK(p.transposed() * m == id);
}

TEST_CASE("polar rejects non-unimodular input") {
    Mat3i m = from_columns({2, 0, 0}, {0, 1, 0}, {0, 0, 1});
    CHECK_THROWS_AS(polar(m), ValidationError);
}

TEST_CASE("polar involution and determinant preservation on random unimodular matrices") {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
        Mat3i m = random_unimodular(rng);
        REQUIRE(m.is_unimodular());
        Mat3i p = polar(m);
        CHECK(p.det() == m.det());
        CHECK(polar(p) == m);
        CHECK(p.transposed() * m == Mat3i::identity());
    }
}

TEST_CASE("projection split on the cube-root target") {
    auto x = cbrt13_triple();

    Vec3i zero{};
    ProjectionSplit<CubicFieldElement> zs = projection_split(zero, x);
    CHECK(zs.dot.is_zero());
    CHECK(zs.prime_norm2.is_zero());

    // h = e2 - e0: ||h'||^2 = 2 - (cbrt169 - 1)^2 / ||X||^2 ~ 1.4471
    Vec3i h{{-1, 0, 1}};
    ProjectionSplit<CubicFieldElement> ps = projection_split(h, x);
    CHECK(ps.prime_norm2.sign() == 1);
    std::string dec = ps.prime_norm2.to_decimal(5);
    CHECK(dec.substr(0, 6) == "1.4471");

    // Exact Pythagoras: prime_norm2 * ||X||^2 + dot^2 == ||h||^2 ||X||^2.
    CubicFieldElement lhs = ps.prime_norm2 * ps.norm_x2 + ps.dot * ps.dot;
    CubicFieldElement rhs = mul_int(ps.norm_x2, h.norm2());
    CHECK(lhs == rhs);
}

TEST_CASE("pythagoras identity holds for random vectors") {
    auto x = cbrt13_triple();
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coord(-9, 9);
    for (int i = 0; i < 200; ++i) {
        Vec3i h{{coord(rng), coord(rng), coord(rng)}};
        ProjectionSplit<CubicFieldElement> ps = projection_split(h, x);
        CHECK(ps.prime_norm2.sign() >= 0);
        CHECK(ps.prime_norm2 * ps.norm_x2 + ps.dot * ps.dot == mul_int(ps.norm_x2, h.norm2()));
        if (!h.is_zero()) CHECK(ps.prime_norm2.sign() == 1); // rational independence
    }
}

TEST_CASE("prime norm comparison drives the first SVA choice") {
    auto x = cbrt13_triple();
    Vec3i d01{{-1, 1, 0}}; // e1 - e0, squared plane distance ~1.9508
    Vec3i d12{{0, -1, 1}}; // e2 - e1, ~1.7278
    Vec3i d02{{-1, 0, 1}}; // e2 - e0, ~1.4471
    CHECK(compare_prime_norms(d01, d02, x) == std::strong_ordering::greater);
    CHECK(compare_prime_norms(d12, d02, x) == std::strong_ordering::greater);
    CHECK(compare_prime_norms(d01, d12, x) == std::strong_ordering::greater);
    CHECK(compare_prime_norms(d01, d01, x) == std::strong_ordering::equal);

    // On the cos(pi/7) field (~1.96 vs ~1.86 vs ~1.66): same ordering, so
    // the first subtraction there is also the (0,2) pair.
    auto g = CubicField::make(1, 2, -1, 2);
    CubicFieldElement rho = CubicFieldElement::rho(g);
    std::array<CubicFieldElement, 3> y = {CubicFieldElement::from_rational(g, 1), rho, rho * rho};
    CHECK(compare_prime_norms(d01, d12, y) == std::strong_ordering::greater);
    CHECK(compare_prime_norms(d12, d02, y) == std::strong_ordering::greater);
}

TEST_CASE("bigreal comparison signals exhaustion inside epsilon") {
    mpfr_prec_t prec = 128;
    std::array<BigReal, 3> x = {BigReal::from_long(1, prec),
                                BigReal::from_rational(make_rational(3, 2), prec),
                                BigReal::from_long(2, prec)};
    Vec3i a{{-1, 1, 0}}, b{{0, -1, 2}};
    BigReal eps_tiny = BigReal::pow2(-100, prec);
    CHECK_NOTHROW((void)compare_prime_norms(a, b, x, eps_tiny));
    CHECK(compare_prime_norms(a, a, x, eps_tiny) == std::strong_ordering::equal);
    // Same squared norms through different vectors: the scaled difference is
    // exactly zero in floating arithmetic too, so this stays decidable.
    Vec3i c{{1, -1, 0}};
    CHECK(compare_prime_norms(a, c, x, eps_tiny) == std::strong_ordering::equal);
    // Force an undecidable comparison with a huge epsilon.
    BigReal eps_huge = BigReal::from_long(1000000, prec);
    CHECK_THROWS_AS((void)compare_prime_norms(a, b, x, eps_huge), PrecisionExhausted);
}
