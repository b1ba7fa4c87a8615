#include "rational.hpp"

#include <charconv>
#include <limits>

namespace ringmap {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        raise(errc::overflow, "rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

std::int64_t parse_int(const std::string &text) {
    std::int64_t value = 0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        raise(errc::parse, "bad integer: '" + text + "'");
    }
    return value;
}

}  // namespace

rational rational::from_i128(__int128 num, __int128 den) {
    if (den == 0) raise(errc::invalid, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
}

rational::rational(std::int64_t num, std::int64_t den) {
    *this = from_i128(num, den);
}

rational rational::parse(const std::string &text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return rational(parse_int(text));
    }
    std::int64_t p = parse_int(text.substr(0, slash));
    std::int64_t q = parse_int(text.substr(slash + 1));
    if (q == 0) raise(errc::parse, "rational with zero denominator: '" + text + "'");
    return rational(p, q);
}

std::string rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

rational rational::operator-() const {
    rational r;
    r.num_ = narrow(-static_cast<__int128>(num_));
    r.den_ = den_;
    return r;
}

rational operator+(const rational &a, const rational &b) {
    return rational::from_i128(
        static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
        static_cast<__int128>(a.den_) * b.den_);
}

rational operator-(const rational &a, const rational &b) {
    return a + (-b);
}

rational operator*(const rational &a, const rational &b) {
    return rational::from_i128(static_cast<__int128>(a.num_) * b.num_,
                               static_cast<__int128>(a.den_) * b.den_);
}

rational operator/(const rational &a, const rational &b) {
    if (b.num_ == 0) raise(errc::invalid, "rational division by zero");
    return rational::from_i128(static_cast<__int128>(a.num_) * b.den_,
                               static_cast<__int128>(a.den_) * b.num_);
}

bool operator<(const rational &a, const rational &b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace ringmap
