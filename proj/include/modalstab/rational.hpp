#pragma once

#include <cstdint>
#include <string>

namespace modalstab {

/// Exact rational number with overflow-checked arithmetic. The denominator is
/// kept positive and the fraction gcd-reduced, so equal values compare equal.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den);

    /// Parses "3", "-1/4", or a plain decimal such as "0.25" (converted
    /// exactly via its power-of-ten denominator). Reduced denominators above
    /// 10^6 are rejected.
    static Rational parse(const std::string& text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Canonical form: "num/den", or "num" when the denominator is 1.
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) noexcept;

/// Least common multiple with overflow check.
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

/// Largest denominator accepted when parsing rationals from text.
inline constexpr std::int64_t kMaxParseDenominator = 1'000'000;

}  // namespace modalstab
