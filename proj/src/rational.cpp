#include "modalstab/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

std::int64_t narrow_i128(__int128 v, const char* context) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw ConfigError(std::string("rational overflow in ") + context);
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) noexcept {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) throw ConfigError("lcm of zero");
    std::int64_t g = gcd_i64(a, b);
    return narrow_i128(static_cast<__int128>(a / g) * b, "lcm");
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = gcd_i64(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.empty()) throw ConfigError("empty rational literal");

    auto parse_int = [](const std::string& part, const char* what) {
        if (part.empty()) throw ConfigError(std::string("malformed rational: missing ") + what);
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &pos);
        } catch (const std::exception&) {
            throw ConfigError("malformed rational '" + part + "'");
        }
        if (pos != part.size()) throw ConfigError("malformed rational '" + part + "'");
        return static_cast<std::int64_t>(v);
    };

    Rational r;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::int64_t num = parse_int(s.substr(0, slash), "numerator");
        std::int64_t den = parse_int(s.substr(slash + 1), "denominator");
        r = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0 || frac_len > 18) throw ConfigError("malformed decimal '" + s + "'");
        std::int64_t num = parse_int(digits, "decimal digits");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) {
            den = narrow_i128(static_cast<__int128>(den) * 10, "decimal denominator");
        }
        r = Rational(num, den);
    } else {
        r = Rational(parse_int(s, "integer"), 1);
    }

    if (r.den() > kMaxParseDenominator) {
        throw ConfigError("rational '" + text + "' has reduced denominator above 10^6");
    }
    return r;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return Rational(narrow_i128(num, "addition"), narrow_i128(den, "addition"));
}

Rational operator-(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return Rational(narrow_i128(num, "subtraction"), narrow_i128(den, "subtraction"));
}

Rational operator*(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.num_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return Rational(narrow_i128(num, "multiplication"), narrow_i128(den, "multiplication"));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ConfigError("rational division by zero");
    __int128 num = static_cast<__int128>(a.num_) * b.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.num_;
    return Rational(narrow_i128(num, "division"), narrow_i128(den, "division"));
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace modalstab
