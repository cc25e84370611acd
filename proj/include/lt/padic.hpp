#pragma once

// Capped-relative-precision arithmetic in the unramified extension F of Q_p
// of degree h. An element is p^v * u with u a unit of O_F known modulo
// p^rel (rel <= N, the context cap). Zero is tracked with an absolute
// precision: "zero" means "O(p^v)".

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lt/errors.hpp"
#include "lt/rational.hpp"

namespace lt {

inline constexpr int kMaxDegree = 8;
using Digits = std::array<std::uint64_t, kMaxDegree>;

class PadicElement;

class FieldContext {
public:
    // Builds the context for F = Q_{p^h} at working relative precision N.
    // Throws InputError if p is not prime, h or N out of range, or p^N does
    // not fit the 62-bit residue kernel.
    static std::shared_ptr<const FieldContext> make(int p, int h, int precision);

    int p() const { return p_; }
    int h() const { return h_; }
    std::int64_t q() const { return q_; }
    int precision() const { return precision_; }

    std::uint64_t modulus() const { return pow_p_[precision_]; }
    std::uint64_t pow_p(int k) const { return pow_p_.at(k); }

    // Coefficients m_0..m_{h-1} of the monic defining polynomial
    // x^h + m_{h-1} x^{h-1} + ... + m_0 (integers in [0, p)).
    std::span<const std::uint64_t> defining_polynomial() const { return {poly_.data(), static_cast<std::size_t>(h_)}; }

    // Image of the generator x under sigma, to precision N.
    const Digits &sigma_image() const { return sigma_image_; }

    PadicElement zero(int abs_precision) const;
    PadicElement zero() const;
    PadicElement one() const;
    PadicElement from_int(std::int64_t n) const;
    PadicElement from_rational(std::int64_t num, std::int64_t den) const;
    PadicElement generator() const;
    // p^v * (digits), digits interpreted modulo p^rel; valuation is
    // extracted automatically when the digits are divisible by p.
    PadicElement from_digits(std::int64_t v, std::span<const std::uint64_t> digits, int rel) const;

    // Residue-ring kernels on unit parts, all modulo p^N.
    Digits ring_mul(const Digits &a, const Digits &b) const;
    Digits ring_add(const Digits &a, const Digits &b) const;
    Digits ring_sub(const Digits &a, const Digits &b) const;
    Digits ring_scale(const Digits &a, std::uint64_t s) const;
    Digits ring_reduce(const Digits &a, int rel) const;
    Digits ring_sigma(const Digits &a) const;
    // Inverse of a unit modulo p^N (input must be nonzero mod p).
    Digits ring_unit_inverse(const Digits &a) const;
    // Minimal p-adic valuation of the digits modulo p^limit (limit if zero).
    int ring_valuation(const Digits &a, int limit) const;

private:
    FieldContext() = default;
    void init_sigma();

    int p_ = 0;
    int h_ = 0;
    int precision_ = 0;
    std::int64_t q_ = 0;
    std::vector<std::uint64_t> pow_p_;
    Digits poly_{};
    Digits sigma_image_{};
    std::vector<Digits> sigma_matrix_; // column i = sigma(x^i)
};

using FieldPtr = std::shared_ptr<const FieldContext>;

class PadicElement {
public:
    PadicElement() = default;

    const FieldContext *context() const { return ctx_; }

    bool is_zero() const { return rel_ == 0; }
    // Valuation for nonzero elements; the absolute precision for zero.
    std::int64_t valuation() const { return val_; }
    int relative_precision() const { return rel_; }
    std::int64_t absolute_precision() const { return val_ + rel_; }
    const Digits &unit() const { return unit_; }

    PadicElement operator-() const;
    friend PadicElement operator+(const PadicElement &x, const PadicElement &y);
    friend PadicElement operator-(const PadicElement &x, const PadicElement &y);
    friend PadicElement operator*(const PadicElement &x, const PadicElement &y);
    friend PadicElement operator/(const PadicElement &x, const PadicElement &y);
    PadicElement &operator+=(const PadicElement &y) { return *this = *this + y; }
    PadicElement &operator-=(const PadicElement &y) { return *this = *this - y; }
    PadicElement &operator*=(const PadicElement &y) { return *this = *this * y; }

    PadicElement inverse() const;
    PadicElement pow(std::int64_t n) const;
    // sigma^k, k taken modulo h.
    PadicElement frobenius(std::int64_t k = 1) const;
    // N_{F/Q_p}(x) = prod_{k<h} sigma^k(x).
    PadicElement norm() const;
    // Multiply by p^k (k may be negative).
    PadicElement shift(std::int64_t k) const;
    // Drop precision to at most rel relative digits.
    PadicElement with_relative_precision(int rel) const;

    // True when the element lies in Q_p (all generator components vanish).
    bool in_qp() const;
    // Representative digit vector of p^{-v}x reduced mod p^rel.
    std::string str() const;

    // x and y agree modulo p^target; throws PrecisionError when the
    // difference is not known to that absolute precision.
    friend bool agree_to(const PadicElement &x, const PadicElement &y, std::int64_t target);

    // Structural identity (same valuation, precision, digits).
    friend bool operator==(const PadicElement &x, const PadicElement &y);

private:
    friend class FieldContext;
    PadicElement(const FieldContext *ctx, std::int64_t v, int rel, const Digits &u) : ctx_(ctx), val_(v), rel_(rel), unit_(u) {}

    const FieldContext *ctx_ = nullptr;
    std::int64_t val_ = 0;
    int rel_ = 0;
    Digits unit_{};
};

// val_p of the element as a rational (integral here, unramified field).
Rational valuation_of(const PadicElement &x);

bool is_prime(std::int64_t n);

} // namespace lt
