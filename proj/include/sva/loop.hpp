#ifndef SVA_LOOP_HPP
#define SVA_LOOP_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sva/engine.hpp"
#include "sva/poly_mod_cubic.hpp"

namespace sva {

/// Canonical key of the projective cofactor vector x^(s) = (cof0/cof2,
/// cof1/cof2). Exact substrates use the reduced representation; BigReal uses
/// a fingerprint rounded to the matching epsilon's grid.
std::string projective_key(const State<Rational>& st);
std::string projective_key(const State<CubicFieldElement>& st);
std::string projective_key(const State<BigReal>& st, const BigReal& match_eps);

struct LoopHit {
    long s = 0; // earlier index
    long p = 0; // gap, > 0
};

/// Detects the first recurrence of a projective key over a stream of
/// states. Exact substrates collide on exact equality; BigReal fingerprint
/// collisions are confirmed by a full-precision comparison at match_eps.
template <Scalar S>
class LoopScanner {
public:
    LoopScanner() = default;
    explicit LoopScanner(BigReal match_eps) : match_eps_(std::move(match_eps)) {}

    /// Feeds one state; returns a hit the first time its key was seen before.
    std::optional<LoopHit> add(const State<S>& st);

    const std::vector<LoopHit>& hits() const { return hits_; }
    std::optional<LoopHit> first_hit() const {
        return hits_.empty() ? std::nullopt : std::optional<LoopHit>(hits_.front());
    }
    /// First index at which the key of `st` was inserted, if any.
    std::optional<long> occurrence_of(const State<S>& st) const;

private:
    std::string key_of(const State<S>& st) const;

    std::optional<BigReal> match_eps_;
    std::unordered_map<std::string, long> first_seen_;
    std::unordered_map<std::string, std::array<BigReal, 2>> first_ratios_; // BigReal confirmation
    std::vector<LoopHit> hits_;
};

/// Certified (or, for BigReal, candidate) Lagrange loop: X^(s+p) = lambda X^(s).
struct LoopResult {
    long s = 0, p = 0;
    Mat3i btilde;                      // (B^(s+p))^-1 B^(s) = (T G^(s+p)) B^(s)
    std::array<Integer, 4> charpoly;   // F(xi) = det(btilde - xi I), ascending
    bool unit = false;                 // |F(0)| == 1
    bool charpoly_rational_root = false;
    bool lambda_rank3 = false;         // rank {1, lambda, lambda^2} == 3 over Q
    bool lambda_root_bracketed = false; // BigReal candidate: F changes sign near the ratio
    bool certified = false;            // all exact checks passed (cubic substrate)
    std::optional<CubicFieldElement> lambda; // exact unit, cubic substrate
    std::string lambda_decimal;

    // x0/x2 = ratio_num0/ratio_den and x1/x2 = ratio_num1/ratio_den, as
    // degree <= 2 polynomials in lambda.
    bool ratios_valid = false;
    PolyMod ratio_num0{}, ratio_num1{}, ratio_den{};
};

/// Exact integer part of loop extraction (valid in every substrate):
/// btilde, F, the unit test |F(0)| = 1, and the rational-root test. For the
/// monic-up-to-sign integer F a rational root must be +-1.
LoopResult loop_core(const Mat3i& b_s, const Mat3i& g_sp, long s, long p);

/// Full certification in the cubic substrate: lambda = cof2^(s+p)/cof2^(s)
/// in Q[rho], F(lambda) = 0 exactly, lambda != +-1, rank{1,lambda,lambda^2}=3.
/// Throws ValidationError for a degenerate loop (lambda = +-1) and
/// InvariantViolation when an exact check fails.
LoopResult extract_lambda(const State<CubicFieldElement>& at_s,
                          const State<CubicFieldElement>& at_sp, int render_digits);

/// BigReal candidate: exact matrix/unit checks plus a numeric bracketing of
/// a root of F near the observed cofactor ratio. Never certified.
LoopResult extract_lambda_candidate(const State<BigReal>& at_s, const State<BigReal>& at_sp,
                                    int render_digits);

/// Solves (btilde - lambda I) Y = 0 with y2 = 1 over Q(lambda) and expresses
/// x0/x2, x1/x2 through the rows of B^(s). Fills the ratio fields.
void recover_ratios(LoopResult& loop, const Mat3i& b_s);

/// Evaluates a degree <= 2 polynomial at an exact lambda in Q[rho].
CubicFieldElement eval_poly_at(const PolyMod& coeffs, const CubicFieldElement& lambda);

std::string loop_result_to_json(const LoopResult& loop);

} // namespace sva

#endif
