#ifndef SVA_MINIMAL_POLYNOMIAL_HPP
#define SVA_MINIMAL_POLYNOMIAL_HPP

#include <utility>

#include "sva/rational.hpp"

namespace sva {

class MinimalPolynomial;

/// Rational interval [lo, hi] isolating one real root of a cubic:
/// P(lo) and P(hi) have opposite signs and no other root lies inside.
/// Refinement is by bisection and returns a new interval.
struct RootInterval {
    Rational lo, hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }

    RootInterval refined_once(const MinimalPolynomial& p) const;
    RootInterval refined_to_width(const MinimalPolynomial& p, const Rational& max_width) const;
};

/// Monic irreducible cubic P(r) = r^3 - a r^2 - b r - c over Q, together
/// with the index (ascending order) of the real root the caller selected.
/// Irreducibility is validated at construction: a rational cubic is
/// reducible exactly when it has a rational root, and for the monicized
/// integer form a rational root must be an integer.
class MinimalPolynomial {
public:
    MinimalPolynomial(Rational a, Rational b, Rational c, int root_index);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    int root_index() const { return root_index_; }

    Rational eval(const Rational& t) const;
    int sign_at(const Rational& t) const { return sign_of(eval(t)); }

    int real_root_count() const { return real_root_count_; }

    /// Isolating interval for the k-th real root, ascending. Throws
    /// UsageError when k is out of range.
    RootInterval isolate_root(int k) const;

    RootInterval selected_root() const { return isolate_root(root_index_); }

    /// Depressed form t^3 - m t - n reached by t = r - a/3; returns (m, n).
    std::pair<Rational, Rational> depressed() const;

    bool operator==(const MinimalPolynomial& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && root_index_ == o.root_index_;
    }

    /// True when r^3 - a r^2 - b r - c has no rational root.
    static bool is_irreducible(const Rational& a, const Rational& b, const Rational& c);

private:
    Rational a_, b_, c_;
    int root_index_;
    int real_root_count_;
};

} // namespace sva

#endif
