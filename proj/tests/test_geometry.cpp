#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sva/engine.hpp"
#include "sva/geometry.hpp"

using namespace sva;

namespace {

constexpr mpfr_prec_t kPrec = 256;

BigReal br(double v) { return BigReal::from_double(v, kPrec); }

Vec2R pt(double x, double y) { return Vec2R{br(x), br(y)}; }

std::array<BigReal, 3> cbrt13_coords() {
    auto f = CubicField::make(0, 0, 13, 0);
    CubicFieldElement rho = CubicFieldElement::rho(f);
    return {BigReal::from_long(1, kPrec), rho.to_bigreal(kPrec), (rho * rho).to_bigreal(kPrec)};
}

// Support-function sampling oracle: for a hull containing the origin, the
// inradius is the minimum of the support function over directions. A coarse
// 4096-direction scan brackets the argmin; ternary search converges it (the
// minimum can sit at a kink, where one coarse step is only first-order
// accurate).
double inradius_by_sampling(const std::array<Vec2R, 3>& pts, int directions) {
    auto support = [&](double th) {
        double cx = std::cos(th), cy = std::sin(th);
        double s = -1e300;
        for (const auto& p : pts) {
            double px = p.x.to_double(), py = p.y.to_double();
            s = std::max(s, std::abs(px * cx + py * cy));
        }
        return s;
    };
    double best = 1e300, best_th = 0;
    for (int k = 0; k < directions; ++k) {
        double th = 2.0 * M_PI * k / directions;
        double s = support(th);
        if (s < best) {
            best = s;
            best_th = th;
        }
    }
    double lo = best_th - 2.0 * M_PI / directions, hi = best_th + 2.0 * M_PI / directions;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (support(m1) < support(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::min(best, support((lo + hi) / 2));
}

} // namespace

TEST_CASE("plane basis is orthonormal and deterministic") {
    auto x = cbrt13_coords();
    PlaneBasis pb = plane_basis(x);
    auto dot = [](const std::array<BigReal, 3>& a, const std::array<BigReal, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    BigReal tol = BigReal::pow2(-200, kPrec);
    CHECK(dot(pb.u, x).abs() < tol);
    CHECK(dot(pb.v, x).abs() < tol);
    CHECK(dot(pb.u, pb.v).abs() < tol);
    CHECK((dot(pb.u, pb.u) - BigReal::from_long(1, kPrec)).abs() < tol);
    CHECK((dot(pb.v, pb.v) - BigReal::from_long(1, kPrec)).abs() < tol);

    PlaneBasis pb2 = plane_basis(x);
    for (int i = 0; i < 3; ++i) {
        CHECK(pb.u[static_cast<std::size_t>(i)] == pb2.u[static_cast<std::size_t>(i)]);
        CHECK(pb.v[static_cast<std::size_t>(i)] == pb2.v[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("plane basis residuals for a near-degenerate target") {
    std::array<BigReal, 3> x = {BigReal::from_long(1, kPrec),
                                BigReal::from_rational(parse_rational("1.0001"), kPrec),
                                BigReal::from_rational(parse_rational("1.0002"), kPrec)};
    PlaneBasis pb = plane_basis(x);
    BigReal r = (pb.u[0] * x[0] + pb.u[1] * x[1] + pb.u[2] * x[2]).abs();
    CHECK(r < BigReal::pow2(-(kPrec - 8), kPrec));
}

TEST_CASE("hexagon inradius on hand geometries") {
    // (1,0),(0,1),(-1,-1): distance to the edge through (1,0),(0,1) = 1/sqrt2
    InradiusResult a = hexagon_inradius({pt(1, 0), pt(0, 1), pt(-1, -1)});
    CHECK_FALSE(a.degenerate);
    CHECK(std::abs(a.rho.to_double() - 1.0 / std::sqrt(2.0)) < 1e-12);

    // Regular hexagon: apothem sqrt(3)/2.
    InradiusResult b = hexagon_inradius({pt(1, 0), pt(-0.5, std::sqrt(3.0) / 2), pt(-0.5, -std::sqrt(3.0) / 2)});
    CHECK_FALSE(b.degenerate);
    CHECK(std::abs(b.rho.to_double() - std::sqrt(3.0) / 2) < 1e-12);

    // Collinear points: zero-inradius signal.
    InradiusResult c = hexagon_inradius({pt(1, 0), pt(-1, 0), pt(2, 0)});
    CHECK(c.degenerate);
}

TEST_CASE("hexagon inradius agrees with dense angular sampling") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    int tested = 0;
    while (tested < 50) {
        std::array<Vec2R, 3> pts = {pt(coord(rng), coord(rng)), pt(coord(rng), coord(rng)),
                                    pt(coord(rng), coord(rng))};
        InradiusResult r = hexagon_inradius(pts);
        if (r.degenerate || r.rho.to_double() < 0.5) continue;
        ++tested;
        double sampled = inradius_by_sampling(pts, 4096);
        // Sampling overestimates by at most (1 - cos(pi/N)) relative.
        CHECK(r.rho.to_double() <= sampled * (1 + 1e-9));
        CHECK(sampled - r.rho.to_double() <= 0.001 * r.rho.to_double());
    }
}

TEST_CASE("metrics of the initial cube-root state") {
    auto x = cbrt13_coords();
    Target<CubicFieldElement> t = [] {
        auto f = CubicField::make(0, 0, 13, 0);
        CubicFieldElement rho = CubicFieldElement::rho(f);
        return Target<CubicFieldElement>({CubicFieldElement::from_rational(f, 1), rho, rho * rho});
    }();
    auto run = run_sva(t, 2, {});
    MetricsCollector mc(x, kPrec);
    for (const auto& st : run.states) mc.push(numeric_view(st, kPrec));
    mc.finish();
    REQUIRE(mc.records().size() == 3);
    const MetricRecord& r0 = mc.records()[0];
    CHECK(r0.finalized);
    CHECK(r0.area2.sign() > 0);
    CHECK(r0.rho.sign() > 0);
    CHECK_FALSE(r0.rho_degenerate);
    CHECK(r0.alpha.sign() > 0);
    CHECK(r0.balance > BigReal::from_long(1, kPrec));
    // dbl_prime = cof / ||X||, so min over the identity state is 1/||X||.
    double nx = std::sqrt(1 + std::pow(2.35133468772, 2) + std::pow(5.52877481368, 2));
    CHECK(std::abs(r0.min_dbl.to_double() - 1.0 / nx) < 1e-9);
    CHECK(std::abs(r0.dirichlet_a.to_double() - r0.max_prime.to_double() * r0.max_prime.to_double() *
                                                    r0.min_dbl.to_double()) < 1e-9);
}

TEST_CASE("area A is nondecreasing and T geometry bounds hold on a long run") {
    auto x = cbrt13_coords();
    auto f = CubicField::make(0, 0, 13, 0);
    CubicFieldElement rho = CubicFieldElement::rho(f);
    Target<CubicFieldElement> t({CubicFieldElement::from_rational(f, 1), rho, rho * rho});
    auto run = run_sva(t, 500, {});
    MetricsCollector mc(x, kPrec);
    for (const auto& st : run.states) mc.push(numeric_view(st, kPrec));
    mc.finish();

    const auto& recs = mc.records();
    BigReal slack = BigReal::pow2(-static_cast<long>(kPrec) / 4, kPrec);
    BigReal one = BigReal::from_long(1, kPrec);
    double pi3 = M_PI / 3 - 1e-6;
    long t_count = 0;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const MetricRecord& r = recs[i];
        const MetricRecord& nxt = recs[i + 1];
        CHECK(nxt.area2 >= r.area2 * (one - slack));
        if (!r.in_T) continue;
        ++t_count;
        // Lemma "Geometry on T": ||g'_II|| > 1/2 ||g'_III||, angles > pi/3.
        const BigReal& p2 = r.prime[static_cast<std::size_t>(r.order[1])];
        const BigReal& p3 = r.prime[static_cast<std::size_t>(r.order[2])];
        CHECK(p2 + p2 > p3 * (one - slack));
        for (const auto& ang : r.angle) CHECK(std::abs(ang.to_double()) > pi3);
    }
    CHECK(t_count > 50);

    // Flat Triangle bounds on T*, when any T* step occurs.
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const MetricRecord& r = recs[i];
        if (!r.in_Tstar) continue;
        double p1 = r.prime[static_cast<std::size_t>(r.order[0])].to_double();
        double p2 = r.prime[static_cast<std::size_t>(r.order[1])].to_double();
        double p3 = r.prime[static_cast<std::size_t>(r.order[2])].to_double();
        CHECK(p2 / p3 >= 0.979 - 1e-9);
        CHECK(p1 <= 0.1 * p2 + 1e-9);
    }
}

TEST_CASE("doubled area agrees with a 3D cross-product oracle") {
    auto x = cbrt13_coords();
    auto f = CubicField::make(0, 0, 13, 0);
    CubicFieldElement rho = CubicFieldElement::rho(f);
    Target<CubicFieldElement> t({CubicFieldElement::from_rational(f, 1), rho, rho * rho});
    auto run = run_sva(t, 40, {});
    MetricsCollector mc(x, kPrec);
    for (const auto& st : run.states) mc.push(numeric_view(st, kPrec));
    mc.finish();

    // Independent route: project in 3D (no plane basis) and take the norm
    // of the cross product of the triangle's edge vectors.
    BigReal nx2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    for (std::size_t k = 0; k < run.states.size(); k += 7) {
        const Mat3i& g = run.states[k].G;
        std::array<std::array<BigReal, 3>, 3> proj;
        for (int i = 0; i < 3; ++i) {
            BigReal d = mul_int(x[0], g.at(0, i)) + mul_int(x[1], g.at(1, i)) + mul_int(x[2], g.at(2, i));
            BigReal c = d / nx2;
            for (int r = 0; r < 3; ++r)
                proj[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] =
                    BigReal::from_integer(g.at(r, i), kPrec) - c * x[static_cast<std::size_t>(r)];
        }
        std::array<BigReal, 3> e1, e2;
        for (int r = 0; r < 3; ++r) {
            e1[static_cast<std::size_t>(r)] = proj[1][static_cast<std::size_t>(r)] - proj[0][static_cast<std::size_t>(r)];
            e2[static_cast<std::size_t>(r)] = proj[2][static_cast<std::size_t>(r)] - proj[0][static_cast<std::size_t>(r)];
        }
        std::array<BigReal, 3> cr = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                                     e1[0] * e2[1] - e1[1] * e2[0]};
        BigReal doubled = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
        BigReal diff = (doubled - mc.records()[k].area2).abs();
        CHECK(diff < doubled * BigReal::pow2(-200, kPrec));
    }
}

TEST_CASE("long cube-root run is monotonic-consistent") {
    auto x = cbrt13_coords();
    auto f = CubicField::make(0, 0, 13, 0);
    CubicFieldElement rho = CubicFieldElement::rho(f);
    Target<CubicFieldElement> t({CubicFieldElement::from_rational(f, 1), rho, rho * rho});
    auto run = run_sva(t, 2000, {});
    MetricsCollector mc(x, kPrec);
    for (const auto& st : run.states) mc.push(numeric_view(st, kPrec));
    mc.finish();
    MonotonicReport rep = monotonic_subsequence_check(mc.records());
    CHECK(rep.consistent);
}

TEST_CASE("monotonic subsequence check flags a fabricated violation") {
    auto mk = [](long s, bool in_t, bool in_ts, double alpha) {
        MetricRecord r;
        r.s = s;
        r.in_T = in_t;
        r.in_Tstar = in_ts;
        r.finalized = true;
        r.alpha = BigReal::from_double(alpha, 64);
        return r;
    };
    // Empty window: vacuously consistent.
    std::vector<MetricRecord> none = {mk(0, true, false, 1.0), mk(1, false, false, 0.5)};
    CHECK(monotonic_subsequence_check(none).consistent);
    CHECK(monotonic_subsequence_check(none).windows.empty());

    // Increasing alpha inside a T* window: consistent.
    std::vector<MetricRecord> good = {mk(0, true, true, 1.0), mk(1, true, true, 1.5),
                                      mk(2, true, true, 2.0)};
    MonotonicReport g = monotonic_subsequence_check(good);
    CHECK(g.consistent);
    REQUIRE(g.windows.size() == 1);
    CHECK(g.windows[0].t_steps == 3);

    // Decreasing alpha inside a T* window: flagged, not thrown.
    std::vector<MetricRecord> bad = {mk(0, true, true, 1.0), mk(1, true, true, 0.25)};
    MonotonicReport b = monotonic_subsequence_check(bad);
    CHECK_FALSE(b.consistent);
    REQUIRE(b.windows.size() == 1);
    CHECK(b.windows[0].violation_at == 1);
}

TEST_CASE("metrics summary and csv emission") {
    auto x = cbrt13_coords();
    auto f = CubicField::make(0, 0, 13, 0);
    CubicFieldElement rho = CubicFieldElement::rho(f);
    Target<CubicFieldElement> t({CubicFieldElement::from_rational(f, 1), rho, rho * rho});
    auto run = run_sva(t, 50, {});
    MetricsCollector mc(x, kPrec);
    for (const auto& st : run.states) mc.push(numeric_view(st, kPrec));
    mc.finish();
    const MetricsSummary& s = mc.summary();
    CHECK(s.steps == 51);
    CHECK(s.t_count > 0);
    REQUIRE(s.da_min_T.has_value());
    CHECK(s.da_min_T->sign() > 0);
    std::ostringstream os;
    write_metrics_csv_header(os);
    for (const auto& r : mc.records()) write_metrics_csv(os, r, 12);
    std::string csv = os.str();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 52);
    std::string js = metrics_summary_to_json(s, 12);
    CHECK(js.find("Da_min_over_T") != std::string::npos);
}
