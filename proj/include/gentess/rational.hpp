#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace gentess {

/// Exact mesh coordinate. All combinatorial predicates on meshes use it.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-0.125", "2.5e-1" or "7/4". Throws InvalidParameter.
Rational parse_rational(std::string_view text);

/// Terminating decimals print as decimals ("0.125"), others as "p/q".
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace gentess
