#include "sva/minimal_polynomial.hpp"

#include <algorithm>
#include <vector>

#include "sva/errors.hpp"

namespace sva {

namespace {

// Dense polynomial over Q, ascending coefficients, used only for the Sturm
// chain of a cubic.
using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Rational eval_poly(const Poly& p, const Rational& t) {
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

Poly remainder(Poly num, const Poly& den) {
    while (num.size() >= den.size()) {
        Rational q = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        for (std::size_t i = 0; i + 1 < den.size(); ++i) num[i + shift] -= q * den[i];
        num.pop_back(); // leading term cancels exactly
        trim(num);
    }
    return num;
}

// Sturm chain; degenerates (early zero remainder) only for non-squarefree
// input, which for a cubic implies a rational root.
std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(p);
    chain.push_back(derivative(p));
    while (chain.back().size() > 1) {
        Poly r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rational& t) {
    int variations = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(eval_poly(p, t));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

struct SturmData {
    std::vector<Poly> chain;
    Rational bound;     // all real roots lie in (-bound, bound]
    bool squarefree;
};

SturmData sturm_for(const Rational& a, const Rational& b, const Rational& c) {
    Poly p = {-c, -b, -a, Rational(1)};
    SturmData d;
    d.chain = sturm_chain(p);
    d.squarefree = d.chain.back().size() == 1; // gcd(P, P') constant
    Rational m = abs(a);
    m = std::max(m, Rational(abs(b)));
    m = std::max(m, Rational(abs(c)));
    d.bound = m + 1;
    return d;
}

int roots_in(const SturmData& d, const Rational& lo, const Rational& hi) {
    return sign_variations(d.chain, lo) - sign_variations(d.chain, hi);
}

} // namespace

bool MinimalPolynomial::is_irreducible(const Rational& a, const Rational& b, const Rational& c) {
    // Monicize: with r = u/D, D = lcm of denominators, the cubic becomes
    // u^3 - (aD) u^2 - (bD^2) u - (cD^3), monic over Z; a rational root of
    // the original is an integer root of this one.
    Integer D = a.get_den();
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), b.get_den_mpz_t());
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
    Rational A = a * D, B = b * D * D, C = c * D * D * D;

    SturmData d = sturm_for(A, B, C);
    if (!d.squarefree) return false; // repeated root => rational root for a cubic

    // Isolate every real root to width < 1 and test the nearby integers.
    struct Box { Rational lo, hi; int count; };
    std::vector<Box> work{{-d.bound, d.bound, roots_in(d, -d.bound, d.bound)}};
    auto poly_at = [&](const Integer& u) -> Rational {
        Rational t(u);
        return ((t - A) * t - B) * t - C;
    };
    while (!work.empty()) {
        Box box = work.back();
        work.pop_back();
        if (box.count == 0) continue;
        if (box.hi - box.lo < 1) {
            Integer lo_floor = floor_div(Rational(box.lo));
            for (Integer u = lo_floor; u <= lo_floor + 2; ++u)
                if (poly_at(u) == 0) return false;
            continue;
        }
        Rational mid = (box.lo + box.hi) / 2;
        int left = roots_in(d, box.lo, mid);
        work.push_back({box.lo, mid, left});
        work.push_back({mid, box.hi, box.count - left});
    }
    return true;
}

MinimalPolynomial::MinimalPolynomial(Rational a, Rational b, Rational c, int root_index)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), root_index_(root_index) {
    if (!is_irreducible(a_, b_, c_))
        throw ValidationError("cubic is reducible over Q (has a rational root)");
    SturmData d = sturm_for(a_, b_, c_);
    real_root_count_ = roots_in(d, -d.bound, d.bound);
    if (root_index_ < 0 || root_index_ >= real_root_count_)
        throw UsageError("root index " + std::to_string(root_index_) + " out of range: polynomial has " +
                         std::to_string(real_root_count_) + " real root(s)");
}

Rational MinimalPolynomial::eval(const Rational& t) const {
    return ((t - a_) * t - b_) * t - c_;
}

RootInterval MinimalPolynomial::isolate_root(int k) const {
    if (k < 0 || k >= real_root_count_)
        throw UsageError("root index out of range");
    SturmData d = sturm_for(a_, b_, c_);
    Rational lo = -d.bound, hi = d.bound;
    // Shrink until exactly the k-th root remains (counting from the left).
    int below = 0; // roots in (-bound, lo]
    while (roots_in(d, lo, hi) > 1) {
        Rational mid = (lo + hi) / 2;
        int left = roots_in(d, lo, mid);
        if (below + left > k) {
            hi = mid;
        } else {
            below += left;
            lo = mid;
        }
    }
    // A single simple root inside a rational-endpoint interval always gives
    // a sign change; irreducibility rules out roots at the endpoints.
    if (sign_at(lo) * sign_at(hi) >= 0)
        throw InvariantViolation("root isolation failed to produce a sign-change bracket");
    RootInterval iv{lo, hi};
    return iv.refined_to_width(*this, make_rational(1, 4));
}

std::pair<Rational, Rational> MinimalPolynomial::depressed() const {
    // r = t + a/3 turns r^3 - a r^2 - b r - c into t^3 - m t - n.
    Rational a3 = a_ / 3;
    Rational m = b_ + a_ * a3;
    Rational n = c_ + b_ * a3 + 2 * a3 * a3 * a3;
    return {m, n};
}

RootInterval RootInterval::refined_once(const MinimalPolynomial& p) const {
    Rational mid = midpoint();
    int sm = p.sign_at(mid);
    // Irreducibility guarantees no rational point, midpoints included, is a root.
    if (sm == 0) throw InvariantViolation("midpoint is a rational root of an irreducible cubic");
    if (sm == p.sign_at(lo)) return RootInterval{mid, hi};
    return RootInterval{lo, mid};
}

RootInterval RootInterval::refined_to_width(const MinimalPolynomial& p, const Rational& max_width) const {
    RootInterval r = *this;
    while (r.width() > max_width) r = r.refined_once(p);
    return r;
}

} // namespace sva
