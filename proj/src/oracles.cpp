#include "sva/oracles.hpp"

#include <random>

#include <json.hpp>

namespace sva {

namespace {

// Signed distance of pt to each hull edge (CCW hull, positive inside);
// returns the minimum.
BigReal min_signed_edge_distance(const std::vector<Vec2R>& hull, const Vec2R& pt) {
    BigReal best;
    bool first = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2R& a = hull[i];
        const Vec2R& b = hull[(i + 1) % hull.size()];
        Vec2R edge{b.x - a.x, b.y - a.y};
        BigReal len = (edge.x * edge.x + edge.y * edge.y).sqrt();
        Vec2R rel{pt.x - a.x, pt.y - a.y};
        BigReal d = (edge.x * rel.y - edge.y * rel.x) / len;
        if (first || d < best) {
            best = d;
            first = false;
        }
    }
    return best;
}

std::vector<Vec2R> hull_of_hexagon(const std::array<Vec2R, 3>& pts) {
    std::vector<Vec2R> p;
    for (const auto& q : pts) {
        p.push_back(q);
        p.push_back(Vec2R{-q.x, -q.y});
    }
    std::sort(p.begin(), p.end(), [](const Vec2R& a, const Vec2R& b) {
        int cx = a.x.cmp(b.x);
        return cx != 0 ? cx < 0 : a.y.cmp(b.y) < 0;
    });
    p.erase(std::unique(p.begin(), p.end(),
                        [](const Vec2R& a, const Vec2R& b) { return a.x == b.x && a.y == b.y; }),
            p.end());
    auto cross = [](const Vec2R& o, const Vec2R& a, const Vec2R& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    auto build = [&](auto begin, auto end) {
        std::vector<Vec2R> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), *it).sign() <= 0) h.pop_back();
            h.push_back(*it);
        }
        return h;
    };
    std::vector<Vec2R> lower = build(p.begin(), p.end());
    std::vector<Vec2R> upper = build(p.rbegin(), p.rend());
    lower.pop_back();
    for (std::size_t i = 0; i + 1 < upper.size(); ++i) lower.push_back(upper[i]);
    return lower;
}

// "a is definitely below b": exact sign for exact scalars, relative slack
// at the working precision otherwise (roundoff must not manufacture
// counterexamples).
template <Scalar S>
bool definitely_less(const S& a, const S& b, mpfr_prec_t prec) {
    if constexpr (ScalarOps<S>::exact) {
        (void)prec;
        return ScalarOps<S>::sign(a - b) < 0;
    } else {
        BigReal slack = b.abs() * BigReal::pow2(-static_cast<long>(prec) / 2, prec);
        return (b - a) > slack;
    }
}

} // namespace

// Exact membership machinery: the sign of the 2D cross product of two
// projected vectors p', q' equals the sign of det(p, q, X) = (p x q) . X,
// which lives in the scalar substrate. Hull construction and point location
// never need plane coordinates.
template <Scalar S>
class ExactHexagon {
public:
    ExactHexagon(const Mat3i& g, const std::array<S, 3>& x) : x_(x) {
        // Orient g1', g2' into the CCW half-plane of g0' and sort.
        std::array<Vec3i, 3> w = {g.column(0), g.column(1), g.column(2)};
        for (int i = 1; i < 3; ++i) {
            int s = cross_sign(w[0], w[static_cast<std::size_t>(i)]);
            if (s == 0) throw ValidationError("degenerate hexagon: collinear projections");
            if (s < 0) w[static_cast<std::size_t>(i)] = -w[static_cast<std::size_t>(i)];
        }
        if (cross_sign(w[1], w[2]) < 0) std::swap(w[1], w[2]);
        std::vector<Vec3i> ring = {w[0], w[1], w[2], -w[0], -w[1], -w[2]};
        // Graham pass with exact signs. The ring is in CCW angular order; a
        // true corner lies strictly right of the chord that skips it, so
        // anything on or left of its chord is not extreme and drops out.
        for (bool changed = true; changed && ring.size() > 3;) {
            changed = false;
            for (std::size_t i = 0; i < ring.size() && ring.size() > 3;) {
                const Vec3i& prev = ring[(i + ring.size() - 1) % ring.size()];
                const Vec3i& cur = ring[i];
                const Vec3i& next = ring[(i + 1) % ring.size()];
                if (edge_side(prev, next, cur) >= 0) {
                    ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                } else {
                    ++i;
                }
            }
        }
        hull_ = std::move(ring);
    }

    const std::vector<Vec3i>& hull() const { return hull_; }

    // 1 inside, 0 on the boundary, -1 outside; exact.
    int locate(const Vec3i& h) const {
        bool on_edge = false;
        for (std::size_t i = 0; i < hull_.size(); ++i) {
            int s = edge_side(hull_[i], hull_[(i + 1) % hull_.size()], h);
            if (s < 0) return -1;
            if (s == 0) on_edge = true;
        }
        return on_edge ? 0 : 1;
    }

private:
    int cross_sign(const Vec3i& p, const Vec3i& q) const {
        Vec3i c = cross(p, q);
        S d = ScalarOps<S>::mul_integer(x_[0], c[0]) + ScalarOps<S>::mul_integer(x_[1], c[1]) +
              ScalarOps<S>::mul_integer(x_[2], c[2]);
        return ScalarOps<S>::sign(d);
    }
    // Sign of the cross of (b - a)' and (p - a)'.
    int edge_side(const Vec3i& a, const Vec3i& b, const Vec3i& p) const {
        Vec3i e = b - a;
        Vec3i r = p - a;
        return cross_sign(e, r);
    }

    const std::array<S, 3>& x_;
    std::vector<Vec3i> hull_;
};

template <Scalar S>
PrismVerdict prism_check(const State<S>& st, const Target<S>& target, long box_m, PrismOptions opt) {
    if (box_m < 1) throw ValidationError("prism box bound must be >= 1");
    PrismVerdict verdict;

    // Exact substrates locate points exactly (boundary included, nothing
    // skipped); BigReal falls back to plane coordinates with a margin that
    // absorbs roundoff.
    std::optional<ExactHexagon<S>> exact_hex;
    std::vector<Vec2R> hull;
    PlaneBasis basis;
    BigReal margin;
    auto plane_of = [&](const Vec3i& h) {
        BigReal px = mul_int(basis.u[0], h[0]) + mul_int(basis.u[1], h[1]) + mul_int(basis.u[2], h[2]);
        BigReal py = mul_int(basis.v[0], h[0]) + mul_int(basis.v[1], h[1]) + mul_int(basis.v[2], h[2]);
        return Vec2R{std::move(px), std::move(py)};
    };
    if constexpr (ScalarOps<S>::exact) {
        exact_hex.emplace(st.G, target.x);
    } else {
        std::array<BigReal, 3> x_num;
        for (int i = 0; i < 3; ++i)
            x_num[static_cast<std::size_t>(i)] =
                ScalarOps<S>::to_bigreal(target.x[static_cast<std::size_t>(i)], opt.prec);
        basis = plane_basis(x_num);
        std::array<Vec2R, 3> gp;
        for (int i = 0; i < 3; ++i) gp[static_cast<std::size_t>(i)] = plane_of(st.G.column(i));
        hull = hull_of_hexagon(gp);
        if (hull.size() < 3) throw ValidationError("degenerate hexagon: cannot run the prism check");
        BigReal diameter = BigReal::from_long(0, opt.prec);
        for (const auto& v : hull) {
            BigReal d = (v.x * v.x + v.y * v.y).sqrt();
            if (d > diameter) diameter = d;
        }
        margin = (diameter + diameter) * BigReal::pow2(-static_cast<long>(opt.prec) / 2, opt.prec);
    }

    auto abs_dot = [&](const Vec3i& h) {
        S d = ScalarOps<S>::mul_integer(target.x[0], h[0]) + ScalarOps<S>::mul_integer(target.x[1], h[1]) +
              ScalarOps<S>::mul_integer(target.x[2], h[2]);
        return ScalarOps<S>::sign(d) < 0 ? S(-d) : d;
    };

    std::vector<Vec3i> in_hull_points;
    Vec3i h;
    for (long i = -box_m; i <= box_m; ++i)
        for (long j = -box_m; j <= box_m; ++j)
            for (long k = -box_m; k <= box_m; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                h[0] = i;
                h[1] = j;
                h[2] = k;
                ++verdict.box_points;
                if constexpr (ScalarOps<S>::exact) {
                    if (exact_hex->locate(h) < 0) continue; // outside the prism
                } else {
                    BigReal d = min_signed_edge_distance(hull, plane_of(h));
                    if (d.abs() <= margin) {
                        ++verdict.skipped_boundary; // too close to the hull boundary to judge
                        continue;
                    }
                    if (d.sign() < 0) continue; // outside the prism
                }
                ++verdict.in_hull;
                in_hull_points.push_back(h);

                // Lattice coordinates n = (T B) h decide the sublattice
                // exemptions exactly.
                Vec3i n = st.B.apply_transposed(h);
                S ad = abs_dot(h);
                int claim = 0;
                if (definitely_less(ad, st.cof[0], opt.prec))
                    claim = 1;
                else if (!(n[1] == 0 && n[2] == 0) && definitely_less(ad, st.cof[1], opt.prec))
                    claim = 2;
                else if (n[2] != 0 && definitely_less(ad, st.cof[2], opt.prec))
                    claim = 3;
                if (claim != 0) {
                    ++verdict.violations;
                    if (!verdict.counterexample) {
                        verdict.counterexample = h;
                        verdict.first_violation_claim = claim;
                    }
                }
            }

    // Graded claim 4 on sampled free triplets: max ||h_i''|| >= ||g_2''||.
    if (in_hull_points.size() >= 3 && opt.free_triplet_samples > 0) {
        std::mt19937 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> pick(0, in_hull_points.size() - 1);
        for (long t = 0; t < opt.free_triplet_samples; ++t) {
            Mat3i m;
            m.column(0) = in_hull_points[pick(rng)];
            m.column(1) = in_hull_points[pick(rng)];
            m.column(2) = in_hull_points[pick(rng)];
            if (m.det() == 0) continue;
            ++verdict.free_triplets_checked;
            S m0 = abs_dot(m.column(0));
            S m1 = abs_dot(m.column(1));
            S m2 = abs_dot(m.column(2));
            if (ScalarOps<S>::sign(m1 - m0) > 0) m0 = m1;
            if (ScalarOps<S>::sign(m2 - m0) > 0) m0 = m2;
            if (definitely_less(m0, st.cof[2], opt.prec)) ++verdict.free_triplet_violations;
        }
    }
    return verdict;
}

template PrismVerdict prism_check(const State<Rational>&, const Target<Rational>&, long, PrismOptions);
template PrismVerdict prism_check(const State<CubicFieldElement>&, const Target<CubicFieldElement>&,
                                  long, PrismOptions);
template PrismVerdict prism_check(const State<BigReal>&, const Target<BigReal>&, long, PrismOptions);

std::string prism_verdict_to_json(const PrismVerdict& v) {
    nlohmann::json j;
    j["box_points"] = v.box_points;
    j["in_hull"] = v.in_hull;
    j["skipped_boundary"] = v.skipped_boundary;
    j["violations"] = v.violations;
    j["free_triplets_checked"] = v.free_triplets_checked;
    j["free_triplet_violations"] = v.free_triplet_violations;
    j["pass"] = v.pass();
    if (v.counterexample) {
        j["first_violation_claim"] = v.first_violation_claim;
        j["counterexample"] = {(*v.counterexample)[0].get_str(), (*v.counterexample)[1].get_str(),
                               (*v.counterexample)[2].get_str()};
    }
    return j.dump(2);
}

namespace {

template <class S>
struct Cf1dOps;

template <>
struct Cf1dOps<Rational> {
    static bool is_zero(const Rational& v) { return v == 0; }
    static Integer floor_ratio(const Rational& num, const Rational& den) {
        return floor_div(num / den);
    }
    static bool relation_holds(const Rational& x, const Rational& x_prev, const Rational& x_cur,
                               const std::array<Integer, 4>& b) {
        // x_cur (p_{n-1}, q_{n-1}) + x_prev (p_n, q_n) = (x, 1)
        return x_cur * b[0] + x_prev * b[2] == x && x_cur * b[1] + x_prev * b[3] == 1;
    }
};

template <>
struct Cf1dOps<BigReal> {
    static bool is_zero(const BigReal& v) { return v.is_zero(); }
    static Integer floor_ratio(const BigReal& num, const BigReal& den) { return (num / den).floor(); }
    static bool relation_holds(const BigReal& x, const BigReal& x_prev, const BigReal& x_cur,
                               const std::array<Integer, 4>& b) {
        mpfr_prec_t prec = x.precision();
        BigReal tol = BigReal::pow2(-static_cast<long>(prec) / 2, prec);
        BigReal r0 = mul_int(x_cur, b[0]) + mul_int(x_prev, b[2]) - x;
        BigReal one = BigReal::from_long(1, prec);
        BigReal r1 = mul_int(x_cur, b[1]) + mul_int(x_prev, b[3]) - one;
        return r0.abs() <= tol && r1.abs() <= tol;
    }
};

template <class S>
Cf1dResult<S> cf1d_run_impl(const S& x, long n_steps) {
    if (n_steps < 1) throw ValidationError("cf1d requires n_steps >= 1");
    bool ok_range;
    if constexpr (std::is_same_v<S, Rational>)
        ok_range = x > 0 && x < 1;
    else
        ok_range = x.sign() > 0 && x.cmp(BigReal::from_long(1, x.precision())) < 0;
    if (!ok_range) throw ValidationError("cf1d input must satisfy 0 < x < 1");

    Cf1dResult<S> out;
    std::array<Integer, 4> b = {1, 0, 0, 1}; // B_1 = I
    S x_prev = x / x;                        // x_0 = 1 in the scalar's own representation
    S x_cur = x;                             // x_1 = x

    for (long n = 1; n <= n_steps; ++n) {
        Cf1dState<S> st;
        st.n = n;
        st.b = b;
        st.xi = x_cur / x_prev;

        Integer det = b[0] * b[3] - b[1] * b[2];
        if (det != 1 && det != -1) throw InvariantViolation("cf1d convergent matrix not unimodular");
        if (!Cf1dOps<S>::relation_holds(x, x_prev, x_cur, b))
            throw InvariantViolation("cf1d cofactor relation failed at n=" + std::to_string(n));

        if (Cf1dOps<S>::is_zero(x_cur)) {
            st.a = 0;
            out.states.push_back(std::move(st));
            out.terminated_exactly = true;
            return out;
        }
        Integer a = Cf1dOps<S>::floor_ratio(x_prev, x_cur);
        st.a = a;
        out.states.push_back(st);

        // x_{n+1} = x_{n-1} - a_n x_n ; B_{n+1} = B_n (0 1; 1 a_n)
        S x_next = x_prev - ScalarOps<S>::mul_integer(x_cur, a);
        x_prev = x_cur;
        x_cur = std::move(x_next);
        std::array<Integer, 4> nb = {b[2], b[3], b[0] + a * b[2], b[1] + a * b[3]};
        b = std::move(nb);
    }
    return out;
}

} // namespace

Cf1dResult<Rational> cf1d_run(const Rational& x, long n_steps) { return cf1d_run_impl(x, n_steps); }
Cf1dResult<BigReal> cf1d_run(const BigReal& x, long n_steps) { return cf1d_run_impl(x, n_steps); }

} // namespace sva
