#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace rsaudit {

using Rational = boost::rational<std::int64_t>;

[[nodiscard]] inline double to_double(const Rational &r) {
    return boost::rational_cast<double>(r);
}

/// Fixed-point rendering of a non-negative or negative rational, rounded half-to-even at `places`.
[[nodiscard]] std::string to_decimal(const Rational &r, int places = 4);

/// Rounds a double half-to-even at `places` and renders it in fixed notation.
[[nodiscard]] std::string to_decimal(double value, int places);

}  // namespace rsaudit
