#include "sva/linalg3.hpp"

#include "sva/errors.hpp"

namespace sva {

Vec3i cross(const Vec3i& a, const Vec3i& b) {
    return {{a.e[1] * b.e[2] - a.e[2] * b.e[1],
             a.e[2] * b.e[0] - a.e[0] * b.e[2],
             a.e[0] * b.e[1] - a.e[1] * b.e[0]}};
}

Integer dot(const Vec3i& a, const Vec3i& b) {
    return a.e[0] * b.e[0] + a.e[1] * b.e[1] + a.e[2] * b.e[2];
}

Mat3i Mat3i::identity() {
    Mat3i m;
    for (int i = 0; i < 3; ++i) m.col[static_cast<std::size_t>(i)][i] = 1;
    return m;
}

Integer Mat3i::det() const {
    return dot(col[0], cross(col[1], col[2]));
}

Mat3i Mat3i::transposed() const {
    Mat3i t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.col[static_cast<std::size_t>(j)][i] = at(j, i);
    return t;
}

Mat3i operator*(const Mat3i& a, const Mat3i& b) {
    Mat3i r;
    for (int j = 0; j < 3; ++j) r.col[static_cast<std::size_t>(j)] = a.apply(b.column(j));
    return r;
}

Vec3i Mat3i::apply(const Vec3i& v) const {
    Vec3i r;
    for (int i = 0; i < 3; ++i)
        r[i] = col[0].e[static_cast<std::size_t>(i)] * v[0] + col[1].e[static_cast<std::size_t>(i)] * v[1] +
               col[2].e[static_cast<std::size_t>(i)] * v[2];
    return r;
}

Vec3i Mat3i::apply_transposed(const Vec3i& v) const {
    return {{dot(col[0], v), dot(col[1], v), dot(col[2], v)}};
}

Mat3i polar(const Mat3i& m) {
    Integer d = m.det();
    if (d != 1 && d != -1) throw ValidationError("polar requires a unimodular matrix");
    Mat3i p;
    // Column i of (T M)^-1 is det(M) * (col_j x col_k), (i,j,k) circular.
    p.col[0] = cross(m.col[1], m.col[2]);
    p.col[1] = cross(m.col[2], m.col[0]);
    p.col[2] = cross(m.col[0], m.col[1]);
    if (d == -1)
        for (auto& c : p.col) c = -c;
    return p;
}

std::strong_ordering compare_scalars(const BigReal& a, const BigReal& b, const BigReal& eps) {
    int c = a.cmp(b);
    if (c == 0) return std::strong_ordering::equal;
    BigReal diff = (a - b).abs();
    if (diff < eps)
        throw PrecisionExhausted("comparison below working epsilon: |diff| = " + diff.to_decimal(8));
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering compare_prime_norms(const Vec3i& h1, const Vec3i& h2,
                                         const std::array<BigReal, 3>& x, const BigReal& eps) {
    BigReal diff = prime_norm2_diff_scaled(h1, h2, x);
    BigReal zero = BigReal::from_long(0, diff.precision());
    return compare_scalars(diff, zero, eps);
}

} // namespace sva
