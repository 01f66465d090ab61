#include "gridshare/ratio.hpp"

#include <cmath>
#include <numeric>

#include "gridshare/errors.hpp"

namespace gridshare {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::int64_t pow10(int n) {
    std::int64_t p = 1;
    for (int i = 0; i < n; ++i) {
        p *= 10;
    }
    return p;
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw ConfigError("ratio with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g != 0 ? num / g : 0;
    den_ = g != 0 ? den / g : 1;
}

Ratio Ratio::percent(std::int64_t num, std::int64_t den) { return Ratio(100 * num, den); }

std::int64_t Ratio::scaled(int decimals) const {
    // floor(x * 10^d + 1/2)
    return floor_div(2 * num_ * pow10(decimals) + den_, 2 * den_);
}

std::string Ratio::to_string(int decimals) const {
    const std::int64_t v = scaled(decimals);
    const std::int64_t p = pow10(decimals);
    const bool negative = v < 0;
    const std::int64_t a = negative ? -v : v;
    std::string out = (negative ? "-" : "") + std::to_string(a / p);
    if (decimals > 0) {
        std::string frac = std::to_string(a % p);
        out += "." + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
    }
    return out;
}

double Ratio::rounded(int decimals) const {
    return static_cast<double>(scaled(decimals)) / static_cast<double>(pow10(decimals));
}

}  // namespace gridshare
