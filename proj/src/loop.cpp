#include "sva/loop.hpp"

#include <sstream>

#include <json.hpp>

namespace sva {

std::string projective_key(const State<Rational>& st) {
    Rational r0 = st.cof[0] / st.cof[2], r1 = st.cof[1] / st.cof[2];
    return to_string(r0) + "|" + to_string(r1);
}

std::string projective_key(const State<CubicFieldElement>& st) {
    CubicFieldElement r0 = st.cof[0] / st.cof[2], r1 = st.cof[1] / st.cof[2];
    std::string key;
    for (const auto& q : r0.coeffs()) key += to_string(q) + "|";
    for (const auto& q : r1.coeffs()) key += to_string(q) + "|";
    return key;
}

std::string projective_key(const State<BigReal>& st, const BigReal& match_eps) {
    // Grid fingerprint: round(ratio / eps) as an integer label.
    BigReal r0 = st.cof[0] / st.cof[2], r1 = st.cof[1] / st.cof[2];
    BigReal half = BigReal::from_rational(make_rational(1, 2), r0.precision());
    Integer f0 = (r0 / match_eps + half).floor();
    Integer f1 = (r1 / match_eps + half).floor();
    return f0.get_str() + "|" + f1.get_str();
}

template <Scalar S>
std::string LoopScanner<S>::key_of(const State<S>& st) const {
    if constexpr (ScalarOps<S>::exact)
        return projective_key(st);
    else
        return projective_key(st, *match_eps_);
}

template <Scalar S>
std::optional<LoopHit> LoopScanner<S>::add(const State<S>& st) {
    std::string key = key_of(st);
    auto [it, inserted] = first_seen_.try_emplace(key, st.s);
    if constexpr (!ScalarOps<S>::exact) {
        std::array<BigReal, 2> ratios = {st.cof[0] / st.cof[2], st.cof[1] / st.cof[2]};
        if (inserted) {
            first_ratios_.emplace(key, ratios);
        } else {
            const auto& first = first_ratios_.at(key);
            bool close = (ratios[0] - first[0]).abs() <= *match_eps_ &&
                         (ratios[1] - first[1]).abs() <= *match_eps_;
            if (!close) return std::nullopt; // fingerprint collision, values differ
        }
    }
    if (inserted) return std::nullopt;
    LoopHit hit{it->second, st.s - it->second};
    hits_.push_back(hit);
    return hit;
}

template <Scalar S>
std::optional<long> LoopScanner<S>::occurrence_of(const State<S>& st) const {
    auto it = first_seen_.find(key_of(st));
    if (it == first_seen_.end()) return std::nullopt;
    return it->second;
}

template class LoopScanner<Rational>;
template class LoopScanner<CubicFieldElement>;
template class LoopScanner<BigReal>;

namespace {

Integer charpoly_eval(const std::array<Integer, 4>& f, long x) {
    Integer acc = 0;
    for (int i = 3; i >= 0; --i) acc = acc * x + f[static_cast<std::size_t>(i)];
    return acc;
}

} // namespace

LoopResult loop_core(const Mat3i& b_s, const Mat3i& g_sp, long s, long p) {
    if (p <= 0) throw UsageError("loop extraction requires p > 0");
    LoopResult out;
    out.s = s;
    out.p = p;
    out.btilde = g_sp.transposed() * b_s; // (B^(s+p))^-1 = T G^(s+p)

    Integer d = out.btilde.det();
    if (d != 1 && d != -1) throw InvariantViolation("btilde is not unimodular");

    // det(btilde - xi I) = -xi^3 + tr xi^2 - m2 xi + det
    Integer tr = out.btilde.at(0, 0) + out.btilde.at(1, 1) + out.btilde.at(2, 2);
    Integer m2 = out.btilde.at(0, 0) * out.btilde.at(1, 1) - out.btilde.at(0, 1) * out.btilde.at(1, 0) +
                 out.btilde.at(0, 0) * out.btilde.at(2, 2) - out.btilde.at(0, 2) * out.btilde.at(2, 0) +
                 out.btilde.at(1, 1) * out.btilde.at(2, 2) - out.btilde.at(1, 2) * out.btilde.at(2, 1);
    out.charpoly = {d, -m2, tr, Integer(-1)};

    out.unit = (d == 1 || d == -1);
    // Leading and constant coefficients are units, so any rational root is +-1.
    out.charpoly_rational_root =
        charpoly_eval(out.charpoly, 1) == 0 || charpoly_eval(out.charpoly, -1) == 0;
    return out;
}

LoopResult extract_lambda(const State<CubicFieldElement>& at_s,
                          const State<CubicFieldElement>& at_sp, int render_digits) {
    LoopResult out = loop_core(at_s.B, at_sp.G, at_s.s, at_sp.s - at_s.s);

    if (out.charpoly_rational_root)
        throw ValidationError("degenerate loop: characteristic polynomial has a rational root");

    CubicFieldElement lambda = at_sp.cof[2] / at_s.cof[2];
    if (lambda.is_rational())
        throw ValidationError("degenerate loop: lambda is rational");

    // Loop consistency: X^(s+p) = lambda X^(s) componentwise.
    for (int i = 0; i < 3; ++i)
        if (!(at_sp.cof[static_cast<std::size_t>(i)] - lambda * at_s.cof[static_cast<std::size_t>(i)]).is_zero())
            throw InvariantViolation("X^(s+p) != lambda X^(s): false loop collision");

    // F(lambda) = 0 exactly in Q[rho].
    CubicFieldElement acc = mul_int(lambda, Integer(0));
    for (int i = 3; i >= 0; --i)
        acc = acc * lambda + CubicFieldElement::from_rational(lambda.field(),
                                                              Rational(out.charpoly[static_cast<std::size_t>(i)]));
    if (!acc.is_zero()) throw InvariantViolation("F(lambda) != 0 for a detected loop");

    // rank {1, lambda, lambda^2} = 3 over Q: Q[lambda] = Q[rho].
    CubicFieldElement l2 = lambda * lambda;
    const auto& a = lambda.coeffs();
    const auto& b = l2.coeffs();
    Rational rank_det = a[1] * b[2] - a[2] * b[1]; // det [[1,0,0],[a],[b]]
    out.lambda_rank3 = rank_det != 0;
    if (!out.lambda_rank3) throw InvariantViolation("lambda generates a proper subfield");

    out.lambda = lambda;
    out.lambda_decimal = lambda.to_decimal(render_digits);
    out.certified = out.unit && !out.charpoly_rational_root && out.lambda_rank3;
    return out;
}

LoopResult extract_lambda_candidate(const State<BigReal>& at_s, const State<BigReal>& at_sp,
                                    int render_digits) {
    LoopResult out = loop_core(at_s.B, at_sp.G, at_s.s, at_sp.s - at_s.s);
    out.certified = false;

    BigReal lambda = at_sp.cof[2] / at_s.cof[2];
    out.lambda_decimal = lambda.to_decimal(render_digits);

    // Bracket a sign change of F around the observed ratio; candidate
    // evidence only, no exact statement.
    mpfr_prec_t prec = lambda.precision();
    auto feval = [&](const BigReal& x) {
        BigReal acc = BigReal::from_long(0, prec);
        for (int i = 3; i >= 0; --i)
            acc = acc * x + BigReal::from_integer(out.charpoly[static_cast<std::size_t>(i)], prec);
        return acc;
    };
    BigReal width = lambda.abs() * BigReal::pow2(-static_cast<long>(prec) / 4, prec);
    BigReal lo = lambda - width, hi = lambda + width;
    out.lambda_root_bracketed = feval(lo).sign() * feval(hi).sign() <= 0;
    return out;
}

namespace {

CubicModulus modulus_of(const std::array<Integer, 4>& f) {
    // F = f0 + f1 xi + f2 xi^2 - xi^3, so xi^3 = f0 + f1 xi + f2 xi^2.
    return CubicModulus{Rational(f[2]), Rational(f[1]), Rational(f[0])};
}

PolyMod pm_add(const PolyMod& a, const PolyMod& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

PolyMod pm_sub(const PolyMod& a, const PolyMod& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

PolyMod pm_const(const Integer& n) { return {Rational(n), Rational(0), Rational(0)}; }

bool pm_zero(const PolyMod& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

} // namespace

void recover_ratios(LoopResult& loop, const Mat3i& b_s) {
    CubicModulus m = modulus_of(loop.charpoly);
    const PolyMod xi = {Rational(0), Rational(1), Rational(0)};

    // M = btilde - xi I over Q(xi); A = first two rows, A' = its left 2x2
    // block, a2 = its third column.
    auto entry = [&](int r, int c) {
        PolyMod e = pm_const(loop.btilde.at(r, c));
        if (r == c) e = pm_sub(e, xi);
        return e;
    };
    PolyMod a00 = entry(0, 0), a01 = entry(0, 1), a02 = entry(0, 2);
    PolyMod a10 = entry(1, 0), a11 = entry(1, 1), a12 = entry(1, 2);

    PolyMod det = pm_sub(mul_mod_cubic(a00, a11, m), mul_mod_cubic(a01, a10, m));
    if (pm_zero(det))
        throw DomainError("det(A') = 0: characteristic polynomial is not minimal");
    PolyMod det_inv = invert_mod_cubic(det, m);

    // Y' = -(A')^-1 a2, with (A')^-1 = adj/det.
    PolyMod y0 = mul_mod_cubic(det_inv, pm_sub(mul_mod_cubic(a01, a12, m), mul_mod_cubic(a11, a02, m)), m);
    PolyMod y1 = mul_mod_cubic(det_inv, pm_sub(mul_mod_cubic(a10, a02, m), mul_mod_cubic(a00, a12, m)), m);

    // Z = (y0, y1, 1); ratios through the rows of B^(s).
    auto row_dot = [&](int r) {
        PolyMod acc = mul_mod_cubic(pm_const(b_s.at(r, 0)), y0, m);
        acc = pm_add(acc, mul_mod_cubic(pm_const(b_s.at(r, 1)), y1, m));
        acc = pm_add(acc, pm_const(b_s.at(r, 2)));
        return acc;
    };
    loop.ratio_num0 = row_dot(0);
    loop.ratio_num1 = row_dot(1);
    loop.ratio_den = row_dot(2);
    if (pm_zero(loop.ratio_den))
        throw DomainError("b2_row . Z vanished: inconsistent loop data");
    loop.ratios_valid = true;
}

CubicFieldElement eval_poly_at(const PolyMod& coeffs, const CubicFieldElement& lambda) {
    CubicFieldElement acc = CubicFieldElement::from_rational(lambda.field(), coeffs[2]);
    acc = acc * lambda + CubicFieldElement::from_rational(lambda.field(), coeffs[1]);
    acc = acc * lambda + CubicFieldElement::from_rational(lambda.field(), coeffs[0]);
    return acc;
}

std::string loop_result_to_json(const LoopResult& loop) {
    nlohmann::json j;
    j["s"] = loop.s;
    j["p"] = loop.p;
    std::vector<std::string> bt;
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) bt.push_back(loop.btilde.at(r, c).get_str());
    j["btilde_columns"] = bt;
    std::vector<std::string> f;
    for (const auto& z : loop.charpoly) f.push_back(z.get_str());
    j["charpoly"] = f; // ascending coefficients of det(btilde - xi I)
    j["unit"] = loop.unit;
    j["charpoly_rational_root"] = loop.charpoly_rational_root;
    j["lambda_rank3"] = loop.lambda_rank3;
    j["lambda_root_bracketed"] = loop.lambda_root_bracketed;
    j["certified"] = loop.certified;
    j["lambda_decimal"] = loop.lambda_decimal;
    if (loop.lambda) {
        std::vector<std::string> lc;
        for (const auto& q : loop.lambda->coeffs()) lc.push_back(to_string(q));
        j["lambda_triple"] = lc;
    }
    if (loop.ratios_valid) {
        auto poly = [](const PolyMod& p) {
            std::vector<std::string> v;
            for (const auto& q : p) v.push_back(to_string(q));
            return v;
        };
        j["ratio_x0_over_x2_num"] = poly(loop.ratio_num0);
        j["ratio_x1_over_x2_num"] = poly(loop.ratio_num1);
        j["ratio_den"] = poly(loop.ratio_den);
    }
    return j.dump(2);
}

} // namespace sva
