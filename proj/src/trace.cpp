#include "sva/trace.hpp"

namespace sva {

namespace {

void write_string_array(std::ostream& os, const std::string* v, std::size_t n) {
    os << '[';
    for (std::size_t i = 0; i < n; ++i) {
        if (i) os << ',';
        os << '"' << v[i] << '"';
    }
    os << ']';
}

void write_int_array(std::ostream& os, const std::array<Integer, 9>& v) {
    os << '[';
    for (std::size_t i = 0; i < 9; ++i) {
        if (i) os << ',';
        os << v[i].get_str();
    }
    os << ']';
}

} // namespace

void write_trace_jsonl(std::ostream& os, const TraceRecord& r) {
    os << "{\"s\":" << r.s << ",\"pair\":";
    if (r.pair < 0)
        os << "null";
    else
        os << "[" << kPairs[static_cast<std::size_t>(r.pair)].first << ','
           << kPairs[static_cast<std::size_t>(r.pair)].second << ']';
    os << ",\"cof\":";
    write_string_array(os, r.cof.data(), 3);
    os << ",\"ratio10\":";
    write_string_array(os, r.ratio10.data(), 2);
    os << ",\"ratio02\":";
    write_string_array(os, r.ratio02.data(), 2);
    os << ",\"G\":";
    write_int_array(os, r.g);
    os << ",\"B\":";
    write_int_array(os, r.b);
    os << "}\n";
}

void write_trace_csv_header(std::ostream& os) {
    os << "s,pair_lo,pair_hi,cof0,cof1,cof2,ratio10_0,ratio10_1,ratio02_0,ratio02_1,"
          "prime_norm2_0,prime_norm2_1,prime_norm2_2,"
          "G00,G10,G20,G01,G11,G21,G02,G12,G22,"
          "B00,B10,B20,B01,B11,B21,B02,B12,B22\n";
}

void write_trace_csv(std::ostream& os, const TraceRecord& r) {
    os << r.s << ',';
    if (r.pair < 0)
        os << ",";
    else
        os << kPairs[static_cast<std::size_t>(r.pair)].first << ','
           << kPairs[static_cast<std::size_t>(r.pair)].second;
    for (const auto& c : r.cof) os << ',' << c;
    for (const auto& c : r.ratio10) os << ',' << c;
    for (const auto& c : r.ratio02) os << ',' << c;
    for (const auto& c : r.prime_norm2) os << ',' << c;
    for (const auto& z : r.g) os << ',' << z.get_str();
    for (const auto& z : r.b) os << ',' << z.get_str();
    os << '\n';
}

} // namespace sva
