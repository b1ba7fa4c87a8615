#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace ringmap {

/// Exact signed rational on int64 numerator/denominator, always normalized
/// (gcd 1, denominator > 0). Intermediate products run through __int128 and
/// any result that does not fit back into int64 raises errc::overflow rather
/// than wrapping. This is the arithmetic backbone of the ring timing model:
/// no floating point is allowed before the report boundary.
class rational {
  public:
    constexpr rational() = default;
    rational(std::int64_t value) : num_(value), den_(1) {}
    rational(std::int64_t num, std::int64_t den);

    static rational parse(const std::string &text);  // "p/q" or "p"

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    std::string str() const;  // "p" when integral, else "p/q"
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Largest integer <= value / smallest integer >= value.
    std::int64_t floor() const;
    std::int64_t ceil() const;

    rational operator-() const;
    friend rational operator+(const rational &a, const rational &b);
    friend rational operator-(const rational &a, const rational &b);
    friend rational operator*(const rational &a, const rational &b);
    friend rational operator/(const rational &a, const rational &b);

    friend bool operator==(const rational &a, const rational &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const rational &a, const rational &b) { return !(a == b); }
    friend bool operator<(const rational &a, const rational &b);
    friend bool operator>(const rational &a, const rational &b) { return b < a; }
    friend bool operator<=(const rational &a, const rational &b) { return !(b < a); }
    friend bool operator>=(const rational &a, const rational &b) { return !(a < b); }

  private:
    static rational from_i128(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace ringmap
