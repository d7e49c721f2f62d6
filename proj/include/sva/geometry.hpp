#ifndef SVA_GEOMETRY_HPP
#define SVA_GEOMETRY_HPP

#include <array>
#include <optional>
#include <ostream>
#include <vector>

#include "sva/engine.hpp"

namespace sva {

struct Vec2R {
    BigReal x, y;
};

/// Orthonormal basis (u, v) of the plane orthogonal to X, built by
/// orthogonalizing e0 then e1 against X. Deterministic for a given X and
/// precision.
struct PlaneBasis {
    std::array<BigReal, 3> u, v;
};

PlaneBasis plane_basis(const std::array<BigReal, 3>& x);

struct InradiusResult {
    BigReal rho;
    bool degenerate = false; // origin on the hull boundary or flat hull
};

/// Radius of the largest origin-centered disk inside the hull of the six
/// points +-p0, +-p1, +-p2: the minimum distance from the origin to the
/// supporting lines of the hull edges.
InradiusResult hexagon_inradius(const std::array<Vec2R, 3>& pts);

/// Numeric (working precision) view of a state, substrate-independent.
struct NumericState {
    long s = 0;
    Mat3i G, B;
    std::array<BigReal, 3> cof;
};

template <Scalar S>
NumericState numeric_view(const State<S>& st, mpfr_prec_t prec) {
    NumericState v;
    v.s = st.s;
    v.G = st.G;
    v.B = st.B;
    for (int i = 0; i < 3; ++i)
        v.cof[static_cast<std::size_t>(i)] = ScalarOps<S>::to_bigreal(st.cof[static_cast<std::size_t>(i)], prec);
    return v;
}

/// Per-step diagnostics. Column roles I/II/III order the plane norms
/// ascending; in_T marks a step whose successor strictly increased
/// ||g'_III|| (so the Lemma-10 geometry bounds apply to THIS state);
/// in_Tstar additionally requires the almost-flat thresholds.
struct MetricRecord {
    long s = 0;
    std::array<BigReal, 3> prime;      // ||g_i'|| by column
    std::array<BigReal, 3> dbl_prime;  // ||g_i''|| by column
    std::array<int, 3> order{0, 1, 2}; // column indices sorted by prime norm (I, II, III)
    BigReal max_prime, min_dbl, max_dbl;
    BigReal b_max_prime, b_max_dbl;
    BigReal dirichlet_a, dirichlet_b, dirichlet_c;
    BigReal area2;   // doubled triangle area A^(s)
    BigReal rho;     // hexagon inradius
    bool rho_degenerate = false;
    BigReal balance; // max ||g'|| / rho
    BigReal alpha;   // A^(s) / ||g'_III||^2
    std::array<BigReal, 3> angle; // signed angles (g0',g1'), (g1',g2'), (g0',g2') in (-pi, pi]
    bool in_T = false;
    bool in_Tstar = false;
    bool finalized = false; // in_T/in_Tstar meaningful only once the successor was seen
};

struct MetricsSummary {
    long steps = 0;
    long t_count = 0, tstar_count = 0;
    std::optional<BigReal> da_min_T, da_max_T, db_min_T, db_max_T, dc_min_T, dc_max_T;
    std::optional<BigReal> da_min_all, da_max_all, db_min_all, db_max_all, dc_min_all, dc_max_all;
};

/// Streaming collector: feed consecutive states; each record is finalized
/// when its successor arrives (T membership needs the next step).
class MetricsCollector {
public:
    MetricsCollector(std::array<BigReal, 3> x, mpfr_prec_t prec);

    void push(const NumericState& st);
    void finish();

    const std::vector<MetricRecord>& records() const { return records_; }
    const MetricsSummary& summary() const { return summary_; }
    const PlaneBasis& basis() const { return basis_; }

    /// Plane coordinates of the columns of G for a state (u,v components).
    std::array<Vec2R, 3> plane_points(const Mat3i& g) const;

private:
    MetricRecord build_record(const NumericState& st) const;
    void finalize_prev(const MetricRecord& next);

    std::array<BigReal, 3> x_;
    mpfr_prec_t prec_;
    PlaneBasis basis_;
    BigReal norm_x_;
    std::vector<MetricRecord> records_;
    MetricsSummary summary_;
    bool finished_ = false;
};

/// Windows where every advancing step is almost flat, with the
/// Monotonic Subsequence Lemma's conclusion (alpha nondecreasing along T)
/// evaluated diagnostically on each.
struct MonotonicWindow {
    long first_s = 0, last_s = 0; // T-step range of the window
    long t_steps = 0;
    bool alpha_nondecreasing = true;
    long violation_at = -1;
};

struct MonotonicReport {
    std::vector<MonotonicWindow> windows;
    bool consistent = true;
};

MonotonicReport monotonic_subsequence_check(const std::vector<MetricRecord>& records);

void write_metrics_csv_header(std::ostream& os);
void write_metrics_csv(std::ostream& os, const MetricRecord& r, int digits);
std::string metrics_summary_to_json(const MetricsSummary& s, int digits);

} // namespace sva

#endif
