#ifndef SVA_ENGINE_HPP
#define SVA_ENGINE_HPP

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sva/errors.hpp"
#include "sva/linalg3.hpp"
#include "sva/scalar.hpp"

namespace sva {

/// The target triple X = (x0, x1, x2) with 0 < x0 < x1 < x2, in one scalar
/// substrate. Ordering is validated at construction; rational independence
/// is not required (dependence is detected at run time instead).
template <Scalar S>
struct Target {
    std::array<S, 3> x;

    explicit Target(std::array<S, 3> coords) : x(std::move(coords)) {
        if (ScalarOps<S>::sign(x[0]) <= 0)
            throw ValidationError("target requires 0 < x0");
        if (ScalarOps<S>::sign(x[1] - x[0]) <= 0 || ScalarOps<S>::sign(x[2] - x[1]) <= 0)
            throw ValidationError("target requires x0 < x1 < x2");
    }
};

/// Builds a cubic target X = R * (1, rho, rho^2) from a rational 3x3 matrix
/// given by rows.
Target<CubicFieldElement> target_from_matrix(const CubicFieldPtr& field,
                                             const std::array<std::array<Rational, 3>, 3>& rows);

// Subtraction pairs in tie-break order; values index kPairs.
inline constexpr std::array<std::pair<int, int>, 3> kPairs = {{{0, 1}, {1, 2}, {0, 2}}};

template <Scalar S>
struct State {
    long s = 0;
    Mat3i G; // columns g0, g1, g2
    Mat3i B; // polar(G)
    std::array<S, 3> cof; // (T G) X, ordered 0 <= cof0 <= cof1 <= cof2
};

struct StepInfo {
    long s = 0;             // index of the state this step produced
    int pair = -1;          // which of kPairs was subtracted (-1 for the initial state)
};

enum class StopReason { max_steps, dependence, precision_exhausted };

struct DependenceCertificate {
    long s = 0;
    Vec3i g0;           // integer relation: g0 . X = 0
    bool exact = false; // true in exact substrates, "numerical - unverified" otherwise
};

template <Scalar S>
struct RunResult {
    std::vector<State<S>> states; // states[0] is the initial state (empty if keep_states off)
    std::vector<StepInfo> steps;  // steps[i] describes how states[i] was reached
    StopReason reason = StopReason::max_steps;
    std::optional<DependenceCertificate> dependence;
    std::string message;
};

struct EngineOptions {
    bool check_invariants = true;
    // BigReal substrate only:
    std::optional<BigReal> compare_eps;    // default 2^-(prec/2)
    std::optional<BigReal> dependence_eps; // default 2^-(prec/2)
    bool recurrence_crosscheck = true;     // compare recomputed vs propagated cofactors
};

/// One SVA run. Strictly sequential; states are immutable values.
template <Scalar S>
class Engine {
public:
    Engine(Target<S> target, EngineOptions opt = {});

    const Target<S>& target() const { return target_; }
    const State<S>& state() const { return state_; }

    /// True when cof0 vanished: the first column is an exact (or, for
    /// BigReal, epsilon-level) integer relation for X.
    std::optional<DependenceCertificate> dependence() const;

    /// Applies one step of the algorithm. Requires cof0 > 0.
    StepInfo advance();

private:
    void recompute_derived(bool initial);
    std::strong_ordering cmp(const S& a, const S& b) const;
    void check_state_invariants() const;

    Target<S> target_;
    EngineOptions opt_;
    State<S> state_;
    std::array<S, 3> cof_recurrence_; // subtraction-propagated copy (BigReal crosscheck)
    BigReal crosscheck_tol_;
};

template <Scalar S>
using StepHook = std::function<void(const State<S>&, const StepInfo&)>;

/// Runs up to max_steps steps, invoking the hook on the initial state and
/// after every step. Stops early on dependence or precision exhaustion.
template <Scalar S>
RunResult<S> run_sva(const Target<S>& target, long max_steps, EngineOptions opt = {},
                     const StepHook<S>& hook = {}, bool keep_states = true);

} // namespace sva

#endif
