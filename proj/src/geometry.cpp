#include "sva/geometry.hpp"

#include <algorithm>

#include <json.hpp>

namespace sva {

namespace {

BigReal dot3(const std::array<BigReal, 3>& a, const std::array<BigReal, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

BigReal dot3i(const std::array<BigReal, 3>& a, const Vec3i& v) {
    return mul_int(a[0], v[0]) + mul_int(a[1], v[1]) + mul_int(a[2], v[2]);
}

BigReal cross2(const Vec2R& a, const Vec2R& b) { return a.x * b.y - a.y * b.x; }

BigReal norm2d(const Vec2R& a) { return (a.x * a.x + a.y * a.y).sqrt(); }

BigReal atan2_big(const BigReal& y, const BigReal& x) {
    BigReal r(std::max(y.precision(), x.precision()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

} // namespace

PlaneBasis plane_basis(const std::array<BigReal, 3>& x) {
    mpfr_prec_t prec = x[0].precision();
    BigReal nx2 = dot3(x, x);
    auto axis = [&](int k) {
        std::array<BigReal, 3> e = {BigReal::from_long(k == 0 ? 1 : 0, prec),
                                    BigReal::from_long(k == 1 ? 1 : 0, prec),
                                    BigReal::from_long(k == 2 ? 1 : 0, prec)};
        return e;
    };
    std::array<BigReal, 3> u = axis(0);
    BigReal cu = dot3(u, x) / nx2;
    for (int i = 0; i < 3; ++i) u[static_cast<std::size_t>(i)] -= cu * x[static_cast<std::size_t>(i)];
    BigReal nu = dot3(u, u).sqrt();
    for (auto& c : u) c /= nu;

    std::array<BigReal, 3> v = axis(1);
    BigReal cv = dot3(v, x) / nx2;
    BigReal cu2 = dot3(v, u);
    for (int i = 0; i < 3; ++i)
        v[static_cast<std::size_t>(i)] -= cv * x[static_cast<std::size_t>(i)] + cu2 * u[static_cast<std::size_t>(i)];
    BigReal nv = dot3(v, v).sqrt();
    for (auto& c : v) c /= nv;
    return PlaneBasis{std::move(u), std::move(v)};
}

InradiusResult hexagon_inradius(const std::array<Vec2R, 3>& pts) {
    mpfr_prec_t prec = pts[0].x.precision();
    std::vector<Vec2R> p;
    for (const auto& q : pts) {
        p.push_back(q);
        p.push_back(Vec2R{-q.x, -q.y});
    }
    // Monotone chain hull, CCW.
    std::sort(p.begin(), p.end(), [](const Vec2R& a, const Vec2R& b) {
        int cx = a.x.cmp(b.x);
        return cx != 0 ? cx < 0 : a.y.cmp(b.y) < 0;
    });
    p.erase(std::unique(p.begin(), p.end(),
                        [](const Vec2R& a, const Vec2R& b) { return a.x == b.x && a.y == b.y; }),
            p.end());
    auto build = [&](auto begin, auto end) {
        std::vector<Vec2R> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2) {
                Vec2R d1{h.back().x - h[h.size() - 2].x, h.back().y - h[h.size() - 2].y};
                Vec2R d2{it->x - h.back().x, it->y - h.back().y};
                if (cross2(d1, d2).sign() > 0) break;
                h.pop_back();
            }
            h.push_back(*it);
        }
        return h;
    };
    std::vector<Vec2R> lower = build(p.begin(), p.end());
    std::vector<Vec2R> upper = build(p.rbegin(), p.rend());
    std::vector<Vec2R> hull = std::move(lower);
    hull.pop_back();
    for (std::size_t i = 0; i + 1 < upper.size(); ++i) hull.push_back(upper[i]);

    InradiusResult out{BigReal::from_long(0, prec), false};
    if (hull.size() < 3) {
        out.degenerate = true;
        return out;
    }
    bool first = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2R& a = hull[i];
        const Vec2R& b = hull[(i + 1) % hull.size()];
        Vec2R edge{b.x - a.x, b.y - a.y};
        BigReal len = norm2d(edge);
        if (len.is_zero()) continue;
        BigReal dist = cross2(a, b).abs() / len; // origin to supporting line
        if (first || dist < out.rho) {
            out.rho = dist;
            first = false;
        }
    }
    if (first || out.rho.is_zero()) out.degenerate = true;
    return out;
}

MetricsCollector::MetricsCollector(std::array<BigReal, 3> x, mpfr_prec_t prec)
    : x_(std::move(x)), prec_(prec), basis_(plane_basis(x_)), norm_x_(dot3(x_, x_).sqrt()) {}

std::array<Vec2R, 3> MetricsCollector::plane_points(const Mat3i& g) const {
    std::array<Vec2R, 3> pts;
    for (int i = 0; i < 3; ++i)
        pts[static_cast<std::size_t>(i)] =
            Vec2R{dot3i(basis_.u, g.column(i)), dot3i(basis_.v, g.column(i))};
    return pts;
}

MetricRecord MetricsCollector::build_record(const NumericState& st) const {
    MetricRecord r;
    r.s = st.s;
    std::array<Vec2R, 3> gp = plane_points(st.G);
    for (int i = 0; i < 3; ++i) {
        r.prime[static_cast<std::size_t>(i)] = norm2d(gp[static_cast<std::size_t>(i)]);
        r.dbl_prime[static_cast<std::size_t>(i)] = st.cof[static_cast<std::size_t>(i)].abs() / norm_x_;
    }
    r.order = {0, 1, 2};
    std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
        return r.prime[static_cast<std::size_t>(a)] < r.prime[static_cast<std::size_t>(b)];
    });
    r.max_prime = r.prime[static_cast<std::size_t>(r.order[2])];
    r.min_dbl = r.dbl_prime[0];
    r.max_dbl = r.dbl_prime[0];
    for (int i = 1; i < 3; ++i) {
        if (r.dbl_prime[static_cast<std::size_t>(i)] < r.min_dbl) r.min_dbl = r.dbl_prime[static_cast<std::size_t>(i)];
        if (r.dbl_prime[static_cast<std::size_t>(i)] > r.max_dbl) r.max_dbl = r.dbl_prime[static_cast<std::size_t>(i)];
    }

    // Polar-column norms for the Dirichlet c) product.
    bool first = true;
    for (int i = 0; i < 3; ++i) {
        const Vec3i& b = st.B.column(i);
        BigReal bd = dot3i(x_, b);
        BigReal b_dbl = bd.abs() / norm_x_;
        Vec2R bp{dot3i(basis_.u, b), dot3i(basis_.v, b)};
        BigReal b_prime = norm2d(bp);
        if (first) {
            r.b_max_prime = b_prime;
            r.b_max_dbl = b_dbl;
            first = false;
        } else {
            if (b_prime > r.b_max_prime) r.b_max_prime = b_prime;
            if (b_dbl > r.b_max_dbl) r.b_max_dbl = b_dbl;
        }
    }

    r.dirichlet_a = r.max_prime * r.max_prime * r.min_dbl;
    r.dirichlet_b = r.max_prime * r.max_prime * r.max_dbl;
    r.dirichlet_c = r.b_max_prime * r.b_max_prime * r.b_max_dbl;

    r.area2 = (cross2(gp[0], gp[1]) + cross2(gp[1], gp[2]) + cross2(gp[2], gp[0])).abs();
    InradiusResult inr = hexagon_inradius(gp);
    r.rho = inr.rho;
    r.rho_degenerate = inr.degenerate;
    r.balance = inr.degenerate ? BigReal::from_long(0, prec_) : r.max_prime / r.rho;
    r.alpha = r.area2 / (r.max_prime * r.max_prime);

    auto ang = [&](int i, int j) {
        return atan2_big(cross2(gp[static_cast<std::size_t>(i)], gp[static_cast<std::size_t>(j)]),
                         gp[static_cast<std::size_t>(i)].x * gp[static_cast<std::size_t>(j)].x +
                             gp[static_cast<std::size_t>(i)].y * gp[static_cast<std::size_t>(j)].y);
    };
    r.angle = {ang(0, 1), ang(1, 2), ang(0, 2)};
    return r;
}

void MetricsCollector::finalize_prev(const MetricRecord& next) {
    MetricRecord& prev = records_.back();
    prev.in_T = prev.max_prime < next.max_prime;
    if (prev.in_T) {
        // Almost-flat thresholds from the needling analysis.
        const BigReal& p1 = prev.prime[static_cast<std::size_t>(prev.order[0])];
        const BigReal& p2 = prev.prime[static_cast<std::size_t>(prev.order[1])];
        BigReal ratio = p1 / p2;
        // |angle(g'_III, g'_II)| >= 30*pi/31
        int i = prev.order[1], j = prev.order[2];
        int slot = (i == 0 && j == 1) || (i == 1 && j == 0)   ? 0
                   : (i == 1 && j == 2) || (i == 2 && j == 1) ? 1
                                                              : 2;
        BigReal pi_val(prec_);
        mpfr_const_pi(pi_val.raw(), MPFR_RNDN);
        BigReal threshold = mul_int(pi_val, 30) / BigReal::from_long(31, prec_);
        BigReal limit = BigReal::from_rational(make_rational(1, 10), prec_);
        prev.in_Tstar = ratio <= limit && prev.angle[static_cast<std::size_t>(slot)].abs() >= threshold;
    }
    prev.finalized = true;

    auto upd = [](std::optional<BigReal>& mn, std::optional<BigReal>& mx, const BigReal& v) {
        if (!mn || v < *mn) mn = v;
        if (!mx || v > *mx) mx = v;
    };
    if (prev.in_T) {
        ++summary_.t_count;
        if (prev.in_Tstar) ++summary_.tstar_count;
        upd(summary_.da_min_T, summary_.da_max_T, prev.dirichlet_a);
        upd(summary_.db_min_T, summary_.db_max_T, prev.dirichlet_b);
        upd(summary_.dc_min_T, summary_.dc_max_T, prev.dirichlet_c);
    }
    upd(summary_.da_min_all, summary_.da_max_all, prev.dirichlet_a);
    upd(summary_.db_min_all, summary_.db_max_all, prev.dirichlet_b);
    upd(summary_.dc_min_all, summary_.dc_max_all, prev.dirichlet_c);
}

void MetricsCollector::push(const NumericState& st) {
    MetricRecord r = build_record(st);
    if (!records_.empty() && !records_.back().finalized) finalize_prev(r);
    records_.push_back(std::move(r));
    ++summary_.steps;
}

void MetricsCollector::finish() {
    if (finished_) return;
    finished_ = true;
    if (!records_.empty() && !records_.back().finalized) {
        records_.back().in_T = false;
        records_.back().finalized = true;
    }
}

MonotonicReport monotonic_subsequence_check(const std::vector<MetricRecord>& records) {
    MonotonicReport report;
    // T-steps in order; windows are maximal runs of T-steps that are all T*.
    std::vector<const MetricRecord*> t_steps;
    for (const auto& r : records)
        if (r.finalized && r.in_T) t_steps.push_back(&r);

    std::size_t i = 0;
    while (i < t_steps.size()) {
        if (!t_steps[i]->in_Tstar) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < t_steps.size() && t_steps[j]->in_Tstar) ++j;
        MonotonicWindow w;
        w.first_s = t_steps[i]->s;
        w.last_s = t_steps[j - 1]->s;
        w.t_steps = static_cast<long>(j - i);
        for (std::size_t k = i + 1; k < j; ++k) {
            if (t_steps[k]->alpha < t_steps[k - 1]->alpha) {
                w.alpha_nondecreasing = false;
                w.violation_at = t_steps[k]->s;
                report.consistent = false;
                break;
            }
        }
        report.windows.push_back(w);
        i = j;
    }
    return report;
}

void write_metrics_csv_header(std::ostream& os) {
    os << "s,prime0,prime1,prime2,dbl0,dbl1,dbl2,orderI,orderII,orderIII,"
          "max_prime,min_dbl,max_dbl,Da,Db,Dc,area2,rho,balance,alpha,"
          "angle01,angle12,angle02,inT,inTstar\n";
}

void write_metrics_csv(std::ostream& os, const MetricRecord& r, int digits) {
    os << r.s;
    for (const auto& v : r.prime) os << ',' << v.to_decimal(digits);
    for (const auto& v : r.dbl_prime) os << ',' << v.to_decimal(digits);
    os << ',' << r.order[0] << ',' << r.order[1] << ',' << r.order[2];
    os << ',' << r.max_prime.to_decimal(digits) << ',' << r.min_dbl.to_decimal(digits) << ','
       << r.max_dbl.to_decimal(digits);
    os << ',' << r.dirichlet_a.to_decimal(digits) << ',' << r.dirichlet_b.to_decimal(digits) << ','
       << r.dirichlet_c.to_decimal(digits);
    os << ',' << r.area2.to_decimal(digits) << ',' << (r.rho_degenerate ? "0" : r.rho.to_decimal(digits))
       << ',' << r.balance.to_decimal(digits) << ',' << r.alpha.to_decimal(digits);
    for (const auto& v : r.angle) os << ',' << v.to_decimal(digits);
    os << ',' << (r.in_T ? 1 : 0) << ',' << (r.in_Tstar ? 1 : 0) << '\n';
}

std::string metrics_summary_to_json(const MetricsSummary& s, int digits) {
    nlohmann::json j;
    j["steps"] = s.steps;
    j["t_count"] = s.t_count;
    j["tstar_count"] = s.tstar_count;
    auto put = [&](const char* key, const std::optional<BigReal>& v) {
        if (v)
            j[key] = v->to_decimal(digits);
        else
            j[key] = nullptr;
    };
    put("Da_min_over_T", s.da_min_T);
    put("Da_max_over_T", s.da_max_T);
    put("Db_min_over_T", s.db_min_T);
    put("Db_max_over_T", s.db_max_T);
    put("Dc_min_over_T", s.dc_min_T);
    put("Dc_max_over_T", s.dc_max_T);
    put("Da_min_overall", s.da_min_all);
    put("Da_max_overall", s.da_max_all);
    put("Db_min_overall", s.db_min_all);
    put("Db_max_overall", s.db_max_all);
    put("Dc_min_overall", s.dc_min_all);
    put("Dc_max_overall", s.dc_max_all);
    return j.dump(2);
}

} // namespace sva
