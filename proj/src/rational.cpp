#include "sva/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace sva {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer floor_div(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_plain_integer(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ValidationError("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_plain_integer(num) || !is_plain_integer(den))
            throw ValidationError("bad rational literal: " + text);
        Integer n(num), d(den);
        if (d == 0) throw ValidationError("zero denominator in: " + text);
        return make_rational(n, d);
    }

    // Decimal / scientific form denotes the exact scaled-integer rational.
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    std::string digits;
    long frac_len = 0, exponent = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_len;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            std::string e = s.substr(i + 1);
            if (!is_plain_integer(e)) throw ValidationError("bad exponent in: " + text);
            exponent = std::strtol(e.c_str(), nullptr, 10);
            break;
        } else {
            throw ValidationError("bad rational literal: " + text);
        }
    }
    if (!seen_digit) throw ValidationError("bad rational literal: " + text);

    Integer mant(digits.empty() ? "0" : digits);
    if (neg) mant = -mant;
    long ten_power = exponent - frac_len;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(ten_power)));
    if (ten_power >= 0) return make_rational(mant * scale, 1);
    return make_rational(mant, scale);
}

} // namespace sva
