#include "rsaudit/rational.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rsaudit {

namespace {

std::int64_t pow10(int places) {
    std::int64_t p = 1;
    for (int i = 0; i < places; ++i) {
        p *= 10;
    }
    return p;
}

}  // namespace

std::string to_decimal(const Rational &r, int places) {
    if (places < 0 || places > 12) {
        throw std::invalid_argument("to_decimal: places must be in [0, 12]");
    }
    const bool negative = r.numerator() < 0;
    const auto scale = pow10(places);
    // |r| * 10^places = q + rem/den
    const __int128 num = static_cast<__int128>(negative ? -r.numerator() : r.numerator()) * scale;
    const __int128 den = r.denominator();
    __int128 q = num / den;
    const __int128 twice_rem = 2 * (num % den);
    if (twice_rem > den || (twice_rem == den && (q % 2) == 1)) {
        ++q;
    }
    const auto whole = static_cast<long long>(q / scale);
    const auto frac = static_cast<long long>(q % scale);
    std::string out = (negative && q != 0) ? "-" : "";
    out += std::to_string(whole);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

std::string to_decimal(double value, int places) {
    const double scale = std::pow(10.0, places);
    // nearbyint honours the default round-to-nearest-even mode
    const double rounded = std::nearbyint(value * scale) / scale;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, rounded == 0.0 ? 0.0 : rounded);
    return buf;
}

}  // namespace rsaudit
