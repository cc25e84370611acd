#include "lt/padic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace lt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Polynomials over F_p as coefficient vectors, lowest degree first.
using FpPoly = std::vector<std::int64_t>;

void fp_trim(FpPoly &a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::int64_t fp_inv(std::int64_t a, std::int64_t p)
{
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly &m, std::int64_t p)
{
    fp_trim(a);
    const std::size_t dm = m.size() - 1;
    const std::int64_t lead_inv = fp_inv(m.back(), p);
    while (a.size() > dm) {
        const std::int64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        fp_trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly &a, const FpPoly &b, const FpPoly &m, std::int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return fp_mod(std::move(c), m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::int64_t p)
{
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or style test: m has no factor of degree <= deg/2.
bool fp_irreducible(const FpPoly &m, std::int64_t p)
{
    const int deg = static_cast<int>(m.size()) - 1;
    if (deg <= 1)
        return deg == 1;
    FpPoly xp = fp_mod({0, 1}, m, p);
    for (int i = 1; i <= deg / 2; ++i) {
        // xp <- xp^p
        FpPoly acc{1};
        FpPoly base = xp;
        std::int64_t e = p;
        while (e > 0) {
            if (e & 1)
                acc = fp_mulmod(acc, base, m, p);
            base = fp_mulmod(base, base, m, p);
            e >>= 1;
        }
        xp = acc;
        FpPoly diff = xp;
        if (diff.size() < 2)
            diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        fp_trim(diff);
        if (diff.empty())
            return false;
        FpPoly g = fp_gcd(m, diff, p);
        if (g.size() > 1)
            return false;
    }
    return true;
}

} // namespace

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::shared_ptr<const FieldContext> FieldContext::make(int p, int h, int precision)
{
    if (!is_prime(p))
        throw InputError("p = " + std::to_string(p) + " is not prime");
    if (h < 1 || h > kMaxDegree)
        throw InputError("h must lie in [1, " + std::to_string(kMaxDegree) + "]");
    if (precision < 1)
        throw InputError("precision must be >= 1");

    std::shared_ptr<FieldContext> ctx(new FieldContext());
    ctx->p_ = p;
    ctx->h_ = h;
    ctx->precision_ = precision;
    ctx->pow_p_.assign(1, 1);
    for (int k = 1; k <= precision; ++k) {
        const u64 prev = ctx->pow_p_.back();
        if (prev > (u64{1} << 62) / static_cast<u64>(p))
            throw InputError("p^N exceeds the 62-bit residue kernel (p=" + std::to_string(p) +
                             ", N=" + std::to_string(precision) + ")");
        ctx->pow_p_.push_back(prev * static_cast<u64>(p));
    }
    ctx->q_ = 1;
    for (int i = 0; i < h; ++i)
        ctx->q_ *= p;

    // First monic irreducible polynomial of degree h over F_p, scanning
    // (m_{h-1}, ..., m_0) in lexicographic order.
    bool found = false;
    for (std::int64_t idx = 0; idx < ctx->q_ && !found; ++idx) {
        FpPoly m(h + 1, 0);
        std::int64_t rest = idx;
        for (int i = 0; i < h; ++i) {
            m[i] = rest % p;
            rest /= p;
        }
        m[h] = 1;
        if (fp_irreducible(m, p)) {
            for (int i = 0; i < h; ++i)
                ctx->poly_[i] = static_cast<u64>(m[i]);
            found = true;
        }
    }
    assert(found && "an irreducible polynomial of every degree exists over F_p");
    if (!found)
        throw std::logic_error("no irreducible polynomial found");

    ctx->init_sigma();
    return ctx;
}

void FieldContext::init_sigma()
{
    const u64 M = modulus();
    Digits x{};
    if (h_ == 1) {
        sigma_image_ = Digits{};
        sigma_matrix_.assign(1, Digits{});
        sigma_matrix_[0][0] = 1;
        return;
    }
    x[1] = 1;
    // s0 = x^p
    Digits s{};
    s[0] = 1;
    {
        Digits base = x;
        std::int64_t e = p_;
        while (e > 0) {
            if (e & 1)
                s = ring_mul(s, base);
            base = ring_mul(base, base);
            e >>= 1;
        }
    }
    // Newton: s <- s - m(s)/m'(s)
    auto eval = [&](const Digits &at, bool derivative) {
        Digits acc{};
        for (int i = h_; i >= (derivative ? 1 : 0); --i) {
            const u64 coeff = (i == h_) ? 1 : poly_[i];
            const u64 c = derivative ? mulmod(coeff, static_cast<u64>(i) % M, M) : coeff;
            acc = ring_mul(acc, at);
            acc[0] = (acc[0] + c) % M;
        }
        return acc;
    };
    for (int iter = 0; iter < 80; ++iter) {
        const Digits ms = eval(s, false);
        bool zero = true;
        for (int i = 0; i < h_; ++i)
            zero = zero && ms[i] == 0;
        if (zero)
            break;
        const Digits dms = eval(s, true);
        s = ring_sub(s, ring_mul(ms, ring_unit_inverse(dms)));
    }
    sigma_image_ = s;
    sigma_matrix_.assign(h_, Digits{});
    Digits power{};
    power[0] = 1;
    for (int i = 0; i < h_; ++i) {
        sigma_matrix_[i] = power;
        power = ring_mul(power, s);
    }
}

Digits FieldContext::ring_mul(const Digits &a, const Digits &b) const
{
    const u64 M = modulus();
    if (h_ == 1)
        return Digits{mulmod(a[0], b[0], M)};
    std::array<u128, 2 * kMaxDegree> acc{};
    for (int i = 0; i < h_; ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; j < h_; ++j)
            acc[i + j] += static_cast<u128>(a[i]) * b[j] % M;
    }
    std::array<u64, 2 * kMaxDegree> c{};
    for (int k = 0; k < 2 * h_ - 1; ++k)
        c[k] = static_cast<u64>(acc[k] % M);
    for (int k = 2 * h_ - 2; k >= h_; --k) {
        const u64 t = c[k];
        if (t == 0)
            continue;
        for (int i = 0; i < h_; ++i)
            if (poly_[i] != 0)
                c[k - h_ + i] = (c[k - h_ + i] + mulmod(t, M - poly_[i], M)) % M;
        c[k] = 0;
    }
    Digits out{};
    for (int i = 0; i < h_; ++i)
        out[i] = c[i];
    return out;
}

Digits FieldContext::ring_add(const Digits &a, const Digits &b) const
{
    const u64 M = modulus();
    Digits out{};
    for (int i = 0; i < h_; ++i) {
        out[i] = a[i] + b[i];
        if (out[i] >= M)
            out[i] -= M;
    }
    return out;
}

Digits FieldContext::ring_sub(const Digits &a, const Digits &b) const
{
    const u64 M = modulus();
    Digits out{};
    for (int i = 0; i < h_; ++i)
        out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + (M - b[i]);
    return out;
}

Digits FieldContext::ring_scale(const Digits &a, std::uint64_t s) const
{
    const u64 M = modulus();
    Digits out{};
    for (int i = 0; i < h_; ++i)
        out[i] = mulmod(a[i], s % M, M);
    return out;
}

Digits FieldContext::ring_reduce(const Digits &a, int rel) const
{
    const u64 m = pow_p_[std::clamp(rel, 0, precision_)];
    Digits out{};
    for (int i = 0; i < h_; ++i)
        out[i] = a[i] % m;
    return out;
}

Digits FieldContext::ring_sigma(const Digits &a) const
{
    const u64 M = modulus();
    Digits out{};
    for (int i = 0; i < h_; ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; j < h_; ++j)
            out[j] = (out[j] + mulmod(a[i], sigma_matrix_[i][j], M)) % M;
    }
    return out;
}

Digits FieldContext::ring_unit_inverse(const Digits &a) const
{
    // Inverse modulo p in F_q by Fermat (a^{q-2}), then Newton lifting.
    const u64 M = modulus();
    Digits ap = ring_reduce(a, 1);
    Digits inv{};
    inv[0] = 1;
    {
        Digits base = ap;
        std::int64_t e = q_ - 2;
        while (e > 0) {
            if (e & 1)
                inv = ring_reduce(ring_mul(inv, base), 1);
            base = ring_reduce(ring_mul(base, base), 1);
            e >>= 1;
        }
    }
    for (int known = 1; known < precision_; known *= 2) {
        // inv <- inv * (2 - a*inv)
        Digits t = ring_mul(a, inv);
        Digits two{};
        two[0] = 2 % M;
        inv = ring_mul(inv, ring_sub(two, t));
    }
    return inv;
}

int FieldContext::ring_valuation(const Digits &a, int limit) const
{
    int best = limit;
    const u64 m = pow_p_[std::clamp(limit, 0, precision_)];
    for (int i = 0; i < h_; ++i) {
        u64 c = a[i] % m;
        if (c == 0)
            continue;
        int v = 0;
        while (c % static_cast<u64>(p_) == 0) {
            c /= static_cast<u64>(p_);
            ++v;
        }
        best = std::min(best, v);
    }
    return best;
}

PadicElement FieldContext::zero(int abs_precision) const { return PadicElement(this, abs_precision, 0, Digits{}); }
PadicElement FieldContext::zero() const { return zero(precision_); }

PadicElement FieldContext::one() const
{
    Digits d{};
    d[0] = 1;
    return PadicElement(this, 0, precision_, d);
}

PadicElement FieldContext::from_int(std::int64_t n) const
{
    if (n == 0)
        return zero();
    // Exact integer: strip the p-part first so the unit keeps N digits.
    std::int64_t v = 0;
    while (n % p_ == 0) {
        n /= p_;
        ++v;
    }
    const u64 M = modulus();
    Digits d{};
    if (n >= 0)
        d[0] = static_cast<u64>(n) % M;
    else
        d[0] = (M - (static_cast<u64>(-(n + 1)) + 1) % M) % M;
    return from_digits(0, {d.data(), static_cast<std::size_t>(h_)}, precision_).shift(v);
}

PadicElement FieldContext::from_rational(std::int64_t num, std::int64_t den) const
{
    return from_int(num) / from_int(den);
}

PadicElement FieldContext::generator() const
{
    if (h_ == 1)
        return zero();
    Digits d{};
    d[1] = 1;
    return PadicElement(this, 0, precision_, d);
}

PadicElement FieldContext::from_digits(std::int64_t v, std::span<const std::uint64_t> digits, int rel) const
{
    rel = std::clamp(rel, 0, precision_);
    Digits d{};
    for (std::size_t i = 0; i < digits.size() && i < static_cast<std::size_t>(h_); ++i)
        d[i] = digits[i] % modulus();
    d = ring_reduce(d, rel);
    const int t = ring_valuation(d, rel);
    if (t >= rel)
        return zero(static_cast<int>(v + rel));
    const u64 pt = pow_p_[t];
    for (int i = 0; i < h_; ++i)
        d[i] /= pt;
    return PadicElement(this, v + t, rel - t, ring_reduce(d, rel - t));
}

// ---------------------------------------------------------------------------

PadicElement PadicElement::operator-() const
{
    if (is_zero())
        return *this;
    Digits z{};
    return PadicElement(ctx_, val_, rel_, ctx_->ring_reduce(ctx_->ring_sub(z, unit_), rel_));
}

PadicElement operator+(const PadicElement &x, const PadicElement &y)
{
    const FieldContext *ctx = x.ctx_ ? x.ctx_ : y.ctx_;
    if (x.ctx_ && y.ctx_ && x.ctx_ != y.ctx_)
        throw std::invalid_argument("padic: context mismatch");
    if (x.is_zero() && y.is_zero())
        return PadicElement(ctx, std::min(x.val_, y.val_), 0, Digits{});
    if (x.is_zero() || y.is_zero()) {
        const PadicElement &z = x.is_zero() ? x : y;
        const PadicElement &n = x.is_zero() ? y : x;
        if (n.val_ >= z.val_)
            return PadicElement(ctx, z.val_, 0, Digits{});
        const int rel = static_cast<int>(std::min<std::int64_t>(n.rel_, z.val_ - n.val_));
        return PadicElement(ctx, n.val_, rel, ctx->ring_reduce(n.unit_, rel));
    }
    const PadicElement &a = x.val_ <= y.val_ ? x : y;
    const PadicElement &b = x.val_ <= y.val_ ? y : x;
    const std::int64_t d = b.val_ - a.val_;
    const std::int64_t abs = std::min(a.absolute_precision(), b.absolute_precision());
    const int rel = static_cast<int>(abs - a.val_);
    if (d >= rel)
        return PadicElement(ctx, a.val_, rel, ctx->ring_reduce(a.unit_, rel));
    Digits bracket = ctx->ring_add(a.unit_, ctx->ring_scale(b.unit_, ctx->pow_p(static_cast<int>(d))));
    bracket = ctx->ring_reduce(bracket, rel);
    const int t = ctx->ring_valuation(bracket, rel);
    if (t >= rel)
        return PadicElement(ctx, abs, 0, Digits{});
    const std::uint64_t pt = ctx->pow_p(t);
    for (int i = 0; i < ctx->h(); ++i)
        bracket[i] /= pt;
    return PadicElement(ctx, a.val_ + t, rel - t, ctx->ring_reduce(bracket, rel - t));
}

PadicElement operator-(const PadicElement &x, const PadicElement &y) { return x + (-y); }

PadicElement operator*(const PadicElement &x, const PadicElement &y)
{
    const FieldContext *ctx = x.ctx_ ? x.ctx_ : y.ctx_;
    if (x.ctx_ && y.ctx_ && x.ctx_ != y.ctx_)
        throw std::invalid_argument("padic: context mismatch");
    if (x.is_zero() && y.is_zero())
        return PadicElement(ctx, x.val_ + y.val_, 0, Digits{});
    if (x.is_zero())
        return PadicElement(ctx, x.val_ + y.val_, 0, Digits{});
    if (y.is_zero())
        return PadicElement(ctx, y.val_ + x.val_, 0, Digits{});
    const int rel = std::min(x.rel_, y.rel_);
    return PadicElement(ctx, x.val_ + y.val_, rel, ctx->ring_reduce(ctx->ring_mul(x.unit_, y.unit_), rel));
}

PadicElement PadicElement::inverse() const
{
    if (is_zero())
        throw PrecisionError("padic: inverse of O(p^" + std::to_string(val_) + ")");
    return PadicElement(ctx_, -val_, rel_, ctx_->ring_reduce(ctx_->ring_unit_inverse(unit_), rel_));
}

PadicElement operator/(const PadicElement &x, const PadicElement &y)
{
    if (y.is_zero())
        throw PrecisionError("padic: division by O(p^" + std::to_string(y.val_) + ")");
    return x * y.inverse();
}

PadicElement PadicElement::pow(std::int64_t n) const
{
    if (n < 0)
        return inverse().pow(-n);
    PadicElement result = ctx_->one();
    PadicElement base = *this;
    while (n > 0) {
        if (n & 1)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

PadicElement PadicElement::frobenius(std::int64_t k) const
{
    if (is_zero())
        return *this;
    const int h = ctx_->h();
    k = ((k % h) + h) % h;
    Digits u = unit_;
    for (std::int64_t i = 0; i < k; ++i)
        u = ctx_->ring_sigma(u);
    return PadicElement(ctx_, val_, rel_, ctx_->ring_reduce(u, rel_));
}

PadicElement PadicElement::norm() const
{
    if (is_zero())
        throw std::domain_error("padic: norm of zero");
    PadicElement result = *this;
    for (int k = 1; k < ctx_->h(); ++k)
        result = result * frobenius(k);
    return result;
}

PadicElement PadicElement::shift(std::int64_t k) const
{
    PadicElement r = *this;
    r.val_ += k;
    return r;
}

PadicElement PadicElement::with_relative_precision(int rel) const
{
    if (is_zero() || rel >= rel_)
        return *this;
    if (rel <= 0)
        return PadicElement(ctx_, val_ + std::max(rel, 0), 0, Digits{});
    return PadicElement(ctx_, val_, rel, ctx_->ring_reduce(unit_, rel));
}

bool PadicElement::in_qp() const
{
    if (is_zero())
        return true;
    for (int i = 1; i < ctx_->h(); ++i)
        if (unit_[i] != 0)
            return false;
    return true;
}

std::string PadicElement::str() const
{
    std::ostringstream os;
    if (!ctx_)
        return "<unset>";
    if (is_zero()) {
        os << "O(" << ctx_->p() << "^" << val_ << ")";
        return os.str();
    }
    os << ctx_->p() << "^" << val_ << "*[";
    for (int i = 0; i < ctx_->h(); ++i)
        os << (i ? "," : "") << unit_[i];
    os << "]+O(" << ctx_->p() << "^" << absolute_precision() << ")";
    return os.str();
}

bool agree_to(const PadicElement &x, const PadicElement &y, std::int64_t target)
{
    const PadicElement d = x - y;
    if (!d.is_zero())
        return d.valuation() >= target;
    if (d.valuation() >= target)
        return true;
    throw PrecisionError("padic: difference only known to O(p^" + std::to_string(d.valuation()) + "), need " +
                         std::to_string(target));
}

bool operator==(const PadicElement &x, const PadicElement &y)
{
    return x.ctx_ == y.ctx_ && x.val_ == y.val_ && x.rel_ == y.rel_ && x.unit_ == y.unit_;
}

Rational valuation_of(const PadicElement &x)
{
    if (x.is_zero())
        throw std::domain_error("valuation of zero is +infinity");
    return Rational(x.valuation());
}

} // namespace lt
