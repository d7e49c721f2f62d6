#ifndef SVA_LINALG3_HPP
#define SVA_LINALG3_HPP

#include <array>
#include <compare>
#include <string>

#include "sva/rational.hpp"
#include "sva/scalar.hpp"

namespace sva {

/// Exact integer 3-vector. Entries grow without bound; arbitrary-size
/// integers are part of the contract, not an optimization.
struct Vec3i {
    std::array<Integer, 3> e{};

    Integer& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
    const Integer& operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

    friend Vec3i operator+(const Vec3i& a, const Vec3i& b) {
        return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]}};
    }
    friend Vec3i operator-(const Vec3i& a, const Vec3i& b) {
        return {{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2]}};
    }
    Vec3i operator-() const { return {{-e[0], -e[1], -e[2]}}; }
    bool operator==(const Vec3i&) const = default;

    bool is_zero() const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }
    Integer norm2() const { return e[0] * e[0] + e[1] * e[1] + e[2] * e[2]; }
};

Vec3i cross(const Vec3i& a, const Vec3i& b);
Integer dot(const Vec3i& a, const Vec3i& b);

/// 3x3 integer matrix stored by columns (the paper's g0,g1,g2 convention).
struct Mat3i {
    std::array<Vec3i, 3> col{};

    static Mat3i identity();

    Vec3i& column(int i) { return col[static_cast<std::size_t>(i)]; }
    const Vec3i& column(int i) const { return col[static_cast<std::size_t>(i)]; }
    const Integer& at(int row, int c) const { return col[static_cast<std::size_t>(c)].e[static_cast<std::size_t>(row)]; }

    Integer det() const;
    bool is_unimodular() const { Integer d = det(); return d == 1 || d == -1; }
    Mat3i transposed() const;
    bool operator==(const Mat3i&) const = default;

    friend Mat3i operator*(const Mat3i& a, const Mat3i& b);
    Vec3i apply(const Vec3i& v) const;           // M v
    Vec3i apply_transposed(const Vec3i& v) const; // (T M) v, i.e. dots with columns
};

/// Polar matrix M* = (transpose(M))^-1, computed exactly for unimodular M as
/// signed column cross products. Involution: polar(polar(M)) == M.
Mat3i polar(const Mat3i& m);

/// Projection quantities of an integer vector h relative to the target X,
/// kept in forms that avoid square roots: the squared plane part and the
/// pair (|h.X|, ||X||) standing for the line part ||h''|| = |h.X|/||X||.
template <Scalar S>
struct ProjectionSplit {
    S dot;         // h . X
    S norm_x2;     // ||X||^2
    S prime_norm2; // ||h'||^2 = ||h||^2 - (h.X)^2 / ||X||^2
    S abs_dot;     // |h . X|; with norm_x2 this represents ||h''||
};

template <Scalar S>
ProjectionSplit<S> projection_split(const Vec3i& h, const std::array<S, 3>& x) {
    S d = ScalarOps<S>::mul_integer(x[0], h[0]) + ScalarOps<S>::mul_integer(x[1], h[1]) +
          ScalarOps<S>::mul_integer(x[2], h[2]);
    S nx2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    // ||h'||^2 = (||h||^2 ||X||^2 - (h.X)^2) / ||X||^2
    S num = ScalarOps<S>::mul_integer(nx2, h.norm2()) - d * d;
    S prime = num / nx2;
    S ad = ScalarOps<S>::sign(d) < 0 ? S(-d) : d;
    return ProjectionSplit<S>{d, nx2, prime, ad};
}

/// Sign of ||h1'||^2 - ||h2'||^2 without any division:
/// (||h1||^2 - ||h2||^2) ||X||^2 - ((h1.X)^2 - (h2.X)^2).
template <Scalar S>
S prime_norm2_diff_scaled(const Vec3i& h1, const Vec3i& h2, const std::array<S, 3>& x) {
    S d1 = ScalarOps<S>::mul_integer(x[0], h1[0]) + ScalarOps<S>::mul_integer(x[1], h1[1]) +
           ScalarOps<S>::mul_integer(x[2], h1[2]);
    S d2 = ScalarOps<S>::mul_integer(x[0], h2[0]) + ScalarOps<S>::mul_integer(x[1], h2[1]) +
           ScalarOps<S>::mul_integer(x[2], h2[2]);
    S nx2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    Integer n_diff = h1.norm2() - h2.norm2();
    return ScalarOps<S>::mul_integer(nx2, n_diff) - (d1 * d1 - d2 * d2);
}

/// Orders ||h1'|| vs ||h2'|| exactly (exact scalars).
template <Scalar S>
    requires(ScalarOps<S>::exact)
std::strong_ordering compare_prime_norms(const Vec3i& h1, const Vec3i& h2,
                                         const std::array<S, 3>& x) {
    int s = ScalarOps<S>::sign(prime_norm2_diff_scaled(h1, h2, x));
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

/// BigReal ordering; raises PrecisionExhausted when the scaled difference is
/// below eps yet not bit-identical to zero.
std::strong_ordering compare_prime_norms(const Vec3i& h1, const Vec3i& h2,
                                         const std::array<BigReal, 3>& x, const BigReal& eps);

} // namespace sva

#endif
