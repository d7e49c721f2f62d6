#include "sva/engine.hpp"

#include <algorithm>
#include <numeric>

namespace sva {

Target<CubicFieldElement> target_from_matrix(const CubicFieldPtr& field,
                                             const std::array<std::array<Rational, 3>, 3>& rows) {
    std::array<CubicFieldElement, 3> x = {
        CubicFieldElement(field, rows[0][0], rows[0][1], rows[0][2]),
        CubicFieldElement(field, rows[1][0], rows[1][1], rows[1][2]),
        CubicFieldElement(field, rows[2][0], rows[2][1], rows[2][2]),
    };
    return Target<CubicFieldElement>(std::move(x));
}

namespace {

template <Scalar S>
std::array<S, 3> cofactors_of(const Mat3i& g, const std::array<S, 3>& x) {
    std::array<S, 3> cof = x;
    for (int i = 0; i < 3; ++i) {
        const Vec3i& col = g.column(i);
        cof[static_cast<std::size_t>(i)] =
            ScalarOps<S>::mul_integer(x[0], col[0]) + ScalarOps<S>::mul_integer(x[1], col[1]) +
            ScalarOps<S>::mul_integer(x[2], col[2]);
    }
    return cof;
}

mpfr_prec_t precision_of(const Target<BigReal>& t) { return t.x[0].precision(); }

} // namespace

template <Scalar S>
Engine<S>::Engine(Target<S> target, EngineOptions opt)
    : target_(std::move(target)), opt_(std::move(opt)) {
    state_.s = 0;
    state_.G = Mat3i::identity();
    state_.B = Mat3i::identity();
    state_.cof = target_.x;
    cof_recurrence_ = state_.cof;
    if constexpr (std::is_same_v<S, BigReal>) {
        mpfr_prec_t prec = precision_of(target_);
        if (!opt_.compare_eps) opt_.compare_eps = BigReal::pow2(-static_cast<long>(prec) / 2, prec);
        if (!opt_.dependence_eps) opt_.dependence_eps = BigReal::pow2(-static_cast<long>(prec) / 2, prec);
        crosscheck_tol_ = BigReal::pow2(-static_cast<long>(prec) / 4, prec);
    }
}

template <Scalar S>
std::strong_ordering Engine<S>::cmp(const S& a, const S& b) const {
    if constexpr (ScalarOps<S>::exact) {
        return compare_scalars(a, b);
    } else {
        // Plain floating compare: cofactor ordering must stay total and
        // deterministic; the epsilon gate applies to Delta_min decisions only.
        int c = a.cmp(b);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
}

template <Scalar S>
std::optional<DependenceCertificate> Engine<S>::dependence() const {
    bool zero;
    if constexpr (ScalarOps<S>::exact)
        zero = ScalarOps<S>::is_zero(state_.cof[0]);
    else
        zero = state_.cof[0] < *opt_.dependence_eps;
    if (!zero) return std::nullopt;
    return DependenceCertificate{state_.s, state_.G.column(0), ScalarOps<S>::exact};
}

template <Scalar S>
void Engine<S>::check_state_invariants() const {
    if (!state_.G.is_unimodular())
        throw InvariantViolation("det(G) drifted from +-1 at step " + std::to_string(state_.s));
    if constexpr (ScalarOps<S>::exact) {
        if (cmp(state_.cof[0], state_.cof[1]) > 0 || cmp(state_.cof[1], state_.cof[2]) > 0)
            throw InvariantViolation("cofactor ordering broken at step " + std::to_string(state_.s));
        if (ScalarOps<S>::sign(state_.cof[0]) < 0)
            throw InvariantViolation("negative cofactor at step " + std::to_string(state_.s));
    } else {
        // Recomputed dots may land a rounding error away from the sorted
        // propagated values; only order breaks beyond the dependence
        // threshold indicate a real problem.
        const BigReal& eps = *opt_.dependence_eps;
        auto badly_above = [&](const S& a, const S& b) { return a > b && (a - b) > eps; };
        if (badly_above(state_.cof[0], state_.cof[1]) || badly_above(state_.cof[1], state_.cof[2]))
            throw InvariantViolation("cofactor ordering broken at step " + std::to_string(state_.s));
        if (state_.cof[0].sign() < 0 && state_.cof[0].abs() > eps)
            throw InvariantViolation("negative cofactor at step " + std::to_string(state_.s));
    }

    // Cofactor identity: sum_i cof_i b_i = X.
    for (int row = 0; row < 3; ++row) {
        S lhs = ScalarOps<S>::mul_integer(state_.cof[0], state_.B.at(row, 0)) +
                ScalarOps<S>::mul_integer(state_.cof[1], state_.B.at(row, 1)) +
                ScalarOps<S>::mul_integer(state_.cof[2], state_.B.at(row, 2));
        S diff = lhs - target_.x[static_cast<std::size_t>(row)];
        if constexpr (ScalarOps<S>::exact) {
            if (!ScalarOps<S>::is_zero(diff))
                throw InvariantViolation("cofactor identity broken at step " + std::to_string(state_.s));
        } else {
            // Residual growth here tracks ||G|| ||B|| roundoff, so crossing
            // 2^-(prec/2) means the working precision no longer carries the
            // state, not that the algorithm is wrong.
            BigReal rel = diff.abs() / target_.x[static_cast<std::size_t>(row)];
            if (rel > *opt_.compare_eps)
                throw PrecisionExhausted("cofactor identity degraded beyond 2^-(prec/2) at step " +
                                         std::to_string(state_.s));
        }
    }
}

template <Scalar S>
StepInfo Engine<S>::advance() {
    if (dependence())
        throw UsageError("cannot step: dependence certificate already available (cof0 = 0)");

    // Candidate subtraction vectors g_hi - g_lo for the pairs in tie-break
    // order (0,1), (1,2), (0,2); pick the strictly smallest plane distance.
    std::array<Vec3i, 3> cand;
    for (std::size_t k = 0; k < 3; ++k)
        cand[k] = state_.G.column(kPairs[k].second) - state_.G.column(kPairs[k].first);

    int best = 0;
    for (int k = 1; k < 3; ++k) {
        std::strong_ordering ord = std::strong_ordering::equal;
        if constexpr (ScalarOps<S>::exact)
            ord = compare_prime_norms(cand[static_cast<std::size_t>(k)],
                                      cand[static_cast<std::size_t>(best)], target_.x);
        else
            ord = compare_prime_norms(cand[static_cast<std::size_t>(k)],
                                      cand[static_cast<std::size_t>(best)], target_.x,
                                      *opt_.compare_eps);
        if (ord < 0) best = k;
    }

    // Replace the larger-cofactor column of the chosen pair by the
    // difference; the cofactor follows subtractively.
    auto [lo, hi] = kPairs[static_cast<std::size_t>(best)];
    state_.G.column(hi) = cand[static_cast<std::size_t>(best)];
    state_.cof[static_cast<std::size_t>(hi)] =
        state_.cof[static_cast<std::size_t>(hi)] - state_.cof[static_cast<std::size_t>(lo)];
    cof_recurrence_[static_cast<std::size_t>(hi)] =
        cof_recurrence_[static_cast<std::size_t>(hi)] - cof_recurrence_[static_cast<std::size_t>(lo)];

    // Stable reorder by cofactor (equal cofactors keep relative order).
    std::array<int, 3> perm = {0, 1, 2};
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        return cmp(state_.cof[static_cast<std::size_t>(a)], state_.cof[static_cast<std::size_t>(b)]) < 0;
    });
    Mat3i g_sorted;
    std::array<S, 3> cof_sorted = state_.cof, rec_sorted = cof_recurrence_;
    for (int i = 0; i < 3; ++i) {
        g_sorted.column(i) = state_.G.column(perm[static_cast<std::size_t>(i)]);
        cof_sorted[static_cast<std::size_t>(i)] = state_.cof[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        rec_sorted[static_cast<std::size_t>(i)] = cof_recurrence_[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    state_.G = std::move(g_sorted);
    state_.cof = std::move(cof_sorted);
    cof_recurrence_ = std::move(rec_sorted);
    state_.s += 1;

    recompute_derived(false);
    if (opt_.check_invariants) check_state_invariants();
    return StepInfo{state_.s, best};
}

template <Scalar S>
void Engine<S>::recompute_derived(bool) {
    state_.B = polar(state_.G);
    if constexpr (!ScalarOps<S>::exact) {
        // Fresh dot products bound the error by the dot-product condition
        // number instead of the shrinking subtractive recurrence.
        state_.cof = cofactors_of(state_.G, target_.x);
        if (opt_.recurrence_crosscheck) {
            for (int i = 0; i < 3; ++i) {
                BigReal diff = (state_.cof[static_cast<std::size_t>(i)] - cof_recurrence_[static_cast<std::size_t>(i)]).abs();
                BigReal scale = state_.cof[static_cast<std::size_t>(i)].abs();
                if (scale < *opt_.dependence_eps) scale = *opt_.dependence_eps;
                if (diff / scale > crosscheck_tol_)
                    throw PrecisionExhausted(
                        "recurrence/recomputation cofactor drift beyond 2^-(prec/4) at step " +
                        std::to_string(state_.s));
            }
        }
    } else {
        // Subtractive propagation is exact here; recomputation would give the
        // identical triple.
        state_.cof = cof_recurrence_;
    }
}

template <Scalar S>
RunResult<S> run_sva(const Target<S>& target, long max_steps, EngineOptions opt,
                     const StepHook<S>& hook, bool keep_states) {
    if (max_steps < 1) throw ValidationError("run requires max_steps >= 1");
    Engine<S> engine(target, opt);
    RunResult<S> result;
    result.reason = StopReason::max_steps;
    if (keep_states) result.states.push_back(engine.state());
    result.steps.push_back(StepInfo{0, -1});
    if (hook) hook(engine.state(), result.steps.back());

    for (long done = 0; done < max_steps; ++done) {
        if (auto dep = engine.dependence()) {
            result.dependence = dep;
            result.reason = StopReason::dependence;
            return result;
        }
        StepInfo info;
        try {
            info = engine.advance();
        } catch (const PrecisionExhausted& e) {
            result.reason = StopReason::precision_exhausted;
            result.message = e.what();
            return result;
        }
        if (keep_states) result.states.push_back(engine.state());
        result.steps.push_back(info);
        if (hook) hook(engine.state(), info);
    }
    if (auto dep = engine.dependence()) {
        result.dependence = dep;
        result.reason = StopReason::dependence;
    }
    return result;
}

template class Engine<Rational>;
template class Engine<CubicFieldElement>;
template class Engine<BigReal>;

template RunResult<Rational> run_sva(const Target<Rational>&, long, EngineOptions,
                                     const StepHook<Rational>&, bool);
template RunResult<CubicFieldElement> run_sva(const Target<CubicFieldElement>&, long, EngineOptions,
                                              const StepHook<CubicFieldElement>&, bool);
template RunResult<BigReal> run_sva(const Target<BigReal>&, long, EngineOptions,
                                    const StepHook<BigReal>&, bool);

} // namespace sva
