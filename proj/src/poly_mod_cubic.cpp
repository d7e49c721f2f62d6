#include "sva/poly_mod_cubic.hpp"

#include <vector>

#include "sva/errors.hpp"

namespace sva {

PolyMod mul_mod_cubic(const PolyMod& x, const PolyMod& y, const CubicModulus& m) {
    Rational e0 = x[0] * y[0];
    Rational e1 = x[0] * y[1] + x[1] * y[0];
    Rational e2 = x[0] * y[2] + x[1] * y[1] + x[2] * y[0];
    Rational e3 = x[1] * y[2] + x[2] * y[1];
    Rational e4 = x[2] * y[2];
    // t^3 and t^4 reduction rows.
    Rational r4_0 = m.a * m.c, r4_1 = m.a * m.b + m.c, r4_2 = m.a * m.a + m.b;
    e0 += e3 * m.c + e4 * r4_0;
    e1 += e3 * m.b + e4 * r4_1;
    e2 += e3 * m.a + e4 * r4_2;
    return {std::move(e0), std::move(e1), std::move(e2)};
}

PolyMod invert_mod_cubic(const PolyMod& x, const CubicModulus& m) {
    if (x[0] == 0 && x[1] == 0 && x[2] == 0)
        throw DomainError("inversion of zero polynomial residue");

    using Poly = std::vector<Rational>;
    auto trim = [](Poly& v) { while (!v.empty() && v.back() == 0) v.pop_back(); };
    auto divmod = [&](Poly num, const Poly& den, Poly& quot) {
        quot.assign(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, Rational(0));
        while (num.size() >= den.size()) {
            Rational q = num.back() / den.back();
            std::size_t shift = num.size() - den.size();
            quot[shift] = q;
            for (std::size_t i = 0; i + 1 < den.size(); ++i) num[i + shift] -= q * den[i];
            num.pop_back();
            trim(num);
        }
        trim(quot);
        return num;
    };

    Poly r0 = {-m.c, -m.b, -m.a, Rational(1)};
    Poly r1 = {x[0], x[1], x[2]};
    trim(r1);
    Poly s0 = {}, s1 = {Rational(1)};

    while (r1.size() > 1) {
        Poly quot;
        Poly rem = divmod(r0, r1, quot);
        Poly prod(quot.size() + s1.size(), Rational(0));
        for (std::size_t i = 0; i < quot.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j) prod[i + j] += quot[i] * s1[j];
        Poly s2(std::max(s0.size(), prod.size()), Rational(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (std::size_t i = 0; i < prod.size(); ++i) s2[i] -= prod[i];
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty())
        throw InvariantViolation("nonconstant gcd: modulus shares a factor with the residue");
    Rational g = r1[0];
    PolyMod u = {Rational(0), Rational(0), Rational(0)};
    for (std::size_t i = 0; i < s1.size() && i < 3; ++i) u[i] = s1[i] / g;
    return u;
}

} // namespace sva
