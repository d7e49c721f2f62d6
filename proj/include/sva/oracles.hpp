#ifndef SVA_ORACLES_HPP
#define SVA_ORACLES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sva/engine.hpp"
#include "sva/geometry.hpp"

namespace sva {

struct PrismOptions {
    mpfr_prec_t prec = 256;
    long free_triplet_samples = 200; // graded claim 4, sampled
    unsigned seed = 1;
};

/// Outcome of the exhaustive best-approximation check: every nonzero
/// integer point of the box whose plane projection lands in the hexagon
/// H' must obey the graded lower bounds on ||h''||.
struct PrismVerdict {
    long box_points = 0;        // nonzero points enumerated
    long in_hull = 0;
    long skipped_boundary = 0;  // within the membership margin of the hull boundary
    long violations = 0;
    int first_violation_claim = 0;
    std::optional<Vec3i> counterexample;
    long free_triplets_checked = 0;
    long free_triplet_violations = 0;

    bool pass() const { return violations == 0 && free_triplet_violations == 0; }
};

template <Scalar S>
PrismVerdict prism_check(const State<S>& st, const Target<S>& target, long box_m,
                         PrismOptions opt = {});

std::string prism_verdict_to_json(const PrismVerdict& v);

/// Classical one-dimensional continued fraction in the paper's matrix
/// formalism: B_{n+1} = B_n (0 1; 1 a_n), cofactors x_n = g_{0,n}.X.
/// One record per index n >= 1 (B_1 = I).
template <class S>
struct Cf1dState {
    long n = 0;
    std::array<Integer, 4> b{}; // (p_{n-1}, q_{n-1}, p_n, q_n) column-major
    Integer a;                  // partial quotient a_n (0 on exact termination)
    S xi;                       // x_n / x_{n-1} in (0,1), 0 on termination

    const Integer& p() const { return b[2]; }
    const Integer& q() const { return b[3]; }
};

template <class S>
struct Cf1dResult {
    std::vector<Cf1dState<S>> states;
    bool terminated_exactly = false; // rational input reached xi = 0
};

/// Runs n_steps partial quotients (or fewer on exact termination) for
/// 0 < x < 1. Verifies det(B_n) = +-1 and the cofactor relation
/// x_n b_{0,n} + x_{n-1} b_{1,n} = (x, 1) at every step.
Cf1dResult<Rational> cf1d_run(const Rational& x, long n_steps);
Cf1dResult<BigReal> cf1d_run(const BigReal& x, long n_steps);

} // namespace sva

#endif
