#pragma once

#include <cstdint>
#include <string>

namespace gridshare {

/// Exact rational value. Rounding happens only when formatting for output.
class Ratio {
public:
    Ratio() = default;
    /// Throws ConfigError on a zero denominator.
    Ratio(std::int64_t num, std::int64_t den);

    /// 100 * num / den.
    static Ratio percent(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Value scaled by 10^decimals, rounded half up (towards +inf on ties).
    std::int64_t scaled(int decimals) const;
    /// Fixed-point text with exactly `decimals` digits, e.g. "30.30".
    std::string to_string(int decimals) const;
    /// Rounded value as a double (for JSON output).
    double rounded(int decimals) const;

    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num_ * b.den_ == b.num_ * a.den_; }
    friend bool operator<(const Ratio& a, const Ratio& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace gridshare
