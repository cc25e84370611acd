#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lt {

// Small exact rational used for Gauss valuations and valuation bounds.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational &a, const Rational &b)
    {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational &a, const Rational &b)
    {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational &a, const Rational &b)
    {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational &a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend auto operator<=>(const Rational &a, const Rational &b)
    {
        // denominators are positive
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

    std::string str() const
    {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
    void normalize()
    {
        if (den_ == 0)
            throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace lt
