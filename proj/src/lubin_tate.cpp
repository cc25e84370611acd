#include "lt/lubin_tate.hpp"

#include <cmath>
#include <mutex>

namespace lt {

namespace {

Exponent e1(int k)
{
    Exponent m{};
    m[0] = k;
    return m;
}

int ceil_log(int p, int x)
{
    int k = 0;
    std::int64_t v = 1;
    while (v < x) {
        v *= p;
        ++k;
    }
    return k;
}

} // namespace

void audit_integral(const TruncatedSeries &f, std::int64_t target, const std::string &what)
{
    for (const auto &[m, c] : f.terms()) {
        if (c.valuation() < 0 || c.absolute_precision() < target) {
            std::string deg;
            for (int j = 0; j < f.ring()->nvars(); ++j)
                deg += (j ? "," : "") + std::to_string(m[j]);
            throw PrecisionError(what + ": coefficient at degree (" + deg + ") is " + c.str() +
                                 ", not integral to O(p^" + std::to_string(target) + ")");
        }
    }
    if (f.floor() < target)
        throw PrecisionError(what + ": vanishing coefficients only known to O(p^" + std::to_string(f.floor()) + ")");
}

int FormalGroupTable::guard_digits(int p, int h, int W)
{
    if (!is_prime(p))
        throw InputError("p = " + std::to_string(p) + " is not prime");
    if (h < 1 || h > kMaxDegree)
        throw InputError("h must lie in [1, " + std::to_string(kMaxDegree) + "]");
    std::int64_t q = 1;
    for (int i = 0; i < h; ++i)
        q *= p;
    return static_cast<int>((W + q - 2) / (q - 1)) + 2;
}

std::shared_ptr<const FormalGroupTable> FormalGroupTable::make(int p, int h, int target, int W)
{
    return make(FieldContext::make(p, h, target + guard_digits(p, h, W)), target, W);
}

std::shared_ptr<const FormalGroupTable> FormalGroupTable::make(FieldPtr field, int target, int W)
{
    if (W < 1)
        throw InputError("degree bound W must be >= 1");
    if (target < 1)
        throw InputError("target precision must be >= 1");
    std::shared_ptr<FormalGroupTable> t(new FormalGroupTable());
    t->field_ = std::move(field);
    t->target_ = target;
    t->W_ = W;
    t->build();
    return t;
}

void FormalGroupTable::build()
{
    const FieldContext &F = *field_;
    uni_ = SeriesRing::univariate(field_);
    bi_ = SeriesRing::uniform(field_, 2);

    mult_p_ = TruncatedSeries(uni_, kExact);
    mult_p_.set(e1(1), F.from_int(F.p()));
    mult_p_.add_to(e1(static_cast<int>(F.q())), F.one());

    // log = T * prod_{k>=1} Q_k/p. The factors tend to 1 p-adically (not
    // T-adically), so the product stops once Q_k/p - 1 is below every digit
    // that can still influence a coefficient mod T^{W+1}.
    const TruncatedSeries T = TruncatedSeries::variable(uni_, 0, kExact);
    const PadicElement inv_p = F.from_int(F.p()).inverse();
    const std::int64_t cutoff = F.precision() + ceil_log(F.p(), W_ + 1) + 2;
    const TruncatedSeries one = TruncatedSeries::one(uni_, W_ - 1);
    const TruncatedSeries pT = mult_p_.truncated(W_);
    TruncatedSeries prod = one;
    TruncatedSeries Qk = q_polynomial(1).truncated(W_ - 1);
    int k = 1;
    for (;; ++k) {
        const TruncatedSeries delta = Qk.scaled(inv_p) - one;
        const auto v = delta.min_valuation();
        if (!v || *v >= cutoff)
            break;
        prod = multiply(prod, one + delta, W_ - 1);
        Qk = compose(Qk, {pT}, W_ - 1);
        if (k > 64 * (F.precision() + W_))
            throw PrecisionError("log_LT: product over Q_k/p does not settle");
    }
    log_factors_ = k - 1;
    log_ = multiply(T, as_polynomial(prod), W_);

    exp_ = reversion(log_);
    // v_p(e_k) >= -k/(q-1)
    for (const auto &[m, c] : exp_.terms())
        if (c.valuation() * (F.q() - 1) < -m[0])
            throw PrecisionError("exp_LT: coefficient e_" + std::to_string(m[0]) + " = " + c.str() +
                                 " violates v_p(e_k) >= -k/(q-1)");

    const TruncatedSeries lt = embed(log_, bi_, 0);
    const TruncatedSeries lu = embed(log_, bi_, 1);
    add_ = compose(exp_, {lt + lu}, W_);
    audit_integral(add_, target_, "S(T,U)");

    const TruncatedSeries dU = drop_variable(partial_derivative(add_, 1), 1);
    dS_ = compose(dU, {TruncatedSeries::variable(uni_, 0, kExact), TruncatedSeries::zero(uni_, kExact)});
}

TruncatedSeries FormalGroupTable::q_polynomial(int k) const
{
    if (k < 0)
        throw InputError("Q_k needs k >= 0");
    const FieldContext &F = *field_;
    if (k == 0)
        return TruncatedSeries::variable(uni_, 0, kExact);
    TruncatedSeries Q(uni_, kExact);
    Q.set(Exponent{}, F.from_int(F.p()));
    Q.add_to(e1(static_cast<int>(F.q() - 1)), F.one());
    for (int i = 1; i < k; ++i) {
        const double deg = std::pow(static_cast<double>(F.q()), i) * static_cast<double>(F.q() - 1);
        if (deg > 2.0e6)
            throw InputError("Q_" + std::to_string(k) + " is too large to expand exactly");
        Q = compose(Q, {mult_p_});
    }
    return Q;
}

TruncatedSeries FormalGroupTable::q_polynomial_truncated(int k) const
{
    if (k <= 1)
        return q_polynomial(k).truncated(W_);
    TruncatedSeries Q = q_polynomial(1).truncated(W_);
    const TruncatedSeries pT = mult_p_.truncated(W_);
    for (int i = 1; i < k; ++i)
        Q = compose(Q, {pT}, W_);
    return Q;
}

TruncatedSeries FormalGroupTable::mult_by(const PadicElement &a) const
{
    if (!a.is_zero() && a.valuation() < 0)
        throw InputError("[a](T) needs a in O_F, got " + a.str());
    const std::string key = a.str();
    {
        std::shared_lock lock(cache_mutex_);
        auto it = endo_cache_.find(key);
        if (it != endo_cache_.end())
            return it->second;
    }
    TruncatedSeries r = compose(exp_, {log_.scaled(a)}, W_);
    audit_integral(r, target_, "[" + key + "](T)");
    std::unique_lock lock(cache_mutex_);
    endo_cache_.emplace(key, r);
    return r;
}

} // namespace lt
