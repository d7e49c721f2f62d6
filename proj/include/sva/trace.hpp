#ifndef SVA_TRACE_HPP
#define SVA_TRACE_HPP

#include <array>
#include <ostream>
#include <string>

#include "sva/engine.hpp"

namespace sva {

/// Decimal rendering of one state. ratio10 is (cof1/cof0, cof2/cof0) and
/// matches the values the paper prints; ratio02 is (cof0/cof2, cof1/cof2),
/// the convention of the paper's labels. Both are emitted; see README.
struct TraceRecord {
    long s = 0;
    int pair = -1; // kPairs index of the subtraction that produced this state, -1 at s=0
    std::array<std::string, 3> cof;
    std::array<std::string, 2> ratio10;
    std::array<std::string, 2> ratio02;
    std::array<std::string, 3> prime_norm2; // squared plane norms of g0,g1,g2
    std::array<Integer, 9> g;               // column-major
    std::array<Integer, 9> b;
};

template <Scalar S>
TraceRecord make_trace_record(const State<S>& st, const StepInfo& info, const Target<S>& target,
                              int digits) {
    TraceRecord r;
    r.s = st.s;
    r.pair = info.pair;
    for (int i = 0; i < 3; ++i) {
        r.cof[static_cast<std::size_t>(i)] = ScalarOps<S>::to_decimal(st.cof[static_cast<std::size_t>(i)], digits);
        ProjectionSplit<S> ps = projection_split(st.G.column(i), target.x);
        r.prime_norm2[static_cast<std::size_t>(i)] = ScalarOps<S>::to_decimal(ps.prime_norm2, digits);
        for (int row = 0; row < 3; ++row) {
            r.g[static_cast<std::size_t>(3 * i + row)] = st.G.at(row, i);
            r.b[static_cast<std::size_t>(3 * i + row)] = st.B.at(row, i);
        }
    }
    if (ScalarOps<S>::is_zero(st.cof[0])) {
        r.ratio10 = {"inf", "inf"}; // dependence state
    } else {
        r.ratio10 = {ScalarOps<S>::to_decimal(st.cof[1] / st.cof[0], digits),
                     ScalarOps<S>::to_decimal(st.cof[2] / st.cof[0], digits)};
    }
    r.ratio02 = {ScalarOps<S>::to_decimal(st.cof[0] / st.cof[2], digits),
                 ScalarOps<S>::to_decimal(st.cof[1] / st.cof[2], digits)};
    return r;
}

/// One JSON object per line with keys {s, pair, cof, ratio10, ratio02, G, B}.
/// Integers are emitted as bare JSON numbers of arbitrary size.
void write_trace_jsonl(std::ostream& os, const TraceRecord& r);

void write_trace_csv_header(std::ostream& os);
void write_trace_csv(std::ostream& os, const TraceRecord& r);

} // namespace sva

#endif
