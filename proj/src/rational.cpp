#include "gentess/rational.hpp"

#include <cctype>
#include <limits>

#include "gentess/errors.hpp"

namespace gentess {

namespace {

[[noreturn]] void bad(std::string_view text) {
    throw InvalidParameter("malformed coordinate \"" + std::string(text) + "\"");
}

std::int64_t pow10(int e, std::string_view text) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / 10) bad(text);
        r *= 10;
    }
    return r;
}

std::int64_t parse_integer(std::string_view s, std::string_view text) {
    if (s.empty()) bad(text);
    std::int64_t v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) bad(text);
        if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) bad(text);
        v = v * 10 + (ch - '0');
    }
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad(text);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den.numerator() == 0) bad(text);
        return num / den;
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view ex = s.substr(e + 1);
        bool eneg = false;
        if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
            eneg = ex.front() == '-';
            ex.remove_prefix(1);
        }
        std::int64_t ev = parse_integer(ex, text);
        if (ev > 18) bad(text);
        exponent = static_cast<int>(eneg ? -ev : ev);
        s = s.substr(0, e);
    }
    std::string_view int_part = s, frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad(text);
    std::string digits(int_part);
    digits += frac_part;
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    const std::int64_t mant = parse_integer(digits, text);
    const int scale = static_cast<int>(frac_part.size()) - exponent;
    Rational r = scale >= 0 ? Rational(mant, pow10(scale, text))
                            : Rational(mant * pow10(-scale, text), 1);
    return negative ? -r : r;
}

std::string to_string(const Rational& r) {
    std::int64_t den = r.denominator();
    if (den == 1) return std::to_string(r.numerator());
    std::int64_t d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::to_string(r.numerator()) + "/" + std::to_string(den);

    const int digits = std::max(twos, fives);
    // numerator * 10^digits / den is an integer.
    std::int64_t scaled = r.numerator() * (pow10(digits, "") / den);
    const bool negative = scaled < 0;
    std::string body = std::to_string(negative ? -scaled : scaled);
    if (static_cast<int>(body.size()) <= digits) body.insert(0, digits - body.size() + 1, '0');
    body.insert(body.size() - digits, ".");
    return (negative ? "-" : "") + body;
}

} // namespace gentess
