#include "lt/operators.hpp"

namespace lt {

namespace {

// f(T)/T for a series without constant term.
TruncatedSeries divide_by_variable(const TruncatedSeries &f)
{
    TruncatedSeries out(f.ring(), f.is_exact() ? kExact : std::max<std::int64_t>(f.wmax() - 1, 0));
    out.lower_floor(f.global_floor());
    for (const auto &[m, c] : f.entries()) {
        if (m[0] == 0) {
            if (!c.is_zero())
                throw std::invalid_argument("divide_by_variable: constant term present");
            continue;
        }
        Exponent e = m;
        e[0] -= 1;
        out.set(e, c);
    }
    return out;
}

} // namespace

std::shared_ptr<const OperatorContext> OperatorContext::make(int p, int h, int target, std::int64_t W)
{
    return make(FormalGroupTable::make(p, h, target, static_cast<int>(W + 1)), W);
}

std::shared_ptr<const OperatorContext> OperatorContext::make(FglPtr fg, std::int64_t W)
{
    if (W < 1)
        throw InputError("operator truncation must be >= 1");
    std::shared_ptr<OperatorContext> o(new OperatorContext());
    o->fg_ = std::move(fg);
    o->W_ = W;
    o->ring_ = SeriesRing::multivariable(o->fg_->field());
    const int h = o->ctx().h();
    const TruncatedSeries lam = divide_by_variable(o->fg_->log());
    for (int j = 0; j < h; ++j) {
        o->t_.push_back(embed(o->fg_->log(), o->ring_, j).truncated(W));
        o->lambda_.push_back(embed(lam, o->ring_, j).truncated(W));
        o->dS_.push_back(embed(o->fg_->addition_derivative(), o->ring_, j).truncated(W));
    }
    o->lambda_all_ = TruncatedSeries::one(o->ring_, W);
    o->t_all_ = TruncatedSeries::one(o->ring_, W);
    for (int j = 0; j < h; ++j) {
        o->lambda_all_ = multiply(o->lambda_all_, o->lambda_[j], W);
        o->t_all_ = multiply(o->t_all_, o->t_[j], W);
    }
    for (int j = 0; j < h; ++j) {
        TruncatedSeries fj = TruncatedSeries::one(o->ring_, W);
        for (int i = 0; i < h; ++i)
            if (i != j)
                fj = multiply(fj, o->lambda_[i], W);
        o->f_.push_back(fj);
    }
    return o;
}

TruncatedSeries OperatorContext::q_poly(int k, int j) const
{
    return compose(fg_->q_polynomial(k), {variable(j)});
}

TruncatedSeries OperatorContext::q1_over_p(int j) const
{
    return q_poly(1, j).scaled(ctx().from_int(ctx().p()).inverse());
}

TruncatedSeries OperatorContext::phi(const TruncatedSeries &f, std::int64_t cap) const
{
    const int h = this->h();
    std::vector<TruncatedSeries> G;
    for (int j = 0; j + 1 < h; ++j)
        G.push_back(variable(j + 1));
    G.push_back(compose(fg_->mult_p(), {variable(0)}));
    return compose(f.frobenius(1), G, cap);
}

TruncatedSeries OperatorContext::phi_q(const TruncatedSeries &f, std::int64_t cap) const
{
    std::vector<TruncatedSeries> G;
    for (int j = 0; j < h(); ++j)
        G.push_back(compose(fg_->mult_p(), {variable(j)}));
    return compose(f, G, cap);
}

LambdaFraction OperatorContext::phi_q(const LambdaFraction &x, std::int64_t cap) const
{
    TruncatedSeries num = phi_q(x.numerator, cap);
    for (int j = 0; j < h(); ++j)
        if (x.poles.at(j) > 0)
            num = multiply(num, power(q1_over_p(j), x.poles[j]), cap);
    return {num, x.poles};
}

TruncatedSeries OperatorContext::gamma(const PadicElement &a, const TruncatedSeries &f) const
{
    if (a.is_zero() || a.valuation() != 0)
        throw InputError("gamma: " + a.str() + " is not a unit of O_F");
    std::vector<TruncatedSeries> G;
    for (int j = 0; j < h(); ++j)
        G.push_back(embed(fg_->mult_by(a.frobenius(j)), ring_, j));
    return compose(f, G);
}

TruncatedSeries OperatorContext::nabla(int j, const TruncatedSeries &f) const
{
    const TruncatedSeries df = partial_derivative(f, j);
    const TruncatedSeries td = multiply(t_.at(j), dS_.at(j));
    // t_j has order p^j, so the unknown tail of df only reaches weight > wmax(f).
    const std::int64_t reach = df.is_exact() ? kExact : df.wmax() + ring_->weight(j);
    return multiply(as_polynomial(df), td, std::min(reach, td.wmax()));
}

FiniteDifferenceReport OperatorContext::finite_difference_check(const TruncatedSeries &f, const PadicElement &a,
                                                                int c_tol) const
{
    if (a.is_zero() || a.valuation() < 1)
        throw InputError("finite difference: a must be p^M times a unit with M >= 1");
    FiniteDifferenceReport r;
    r.M = static_cast<int>(a.valuation());
    r.threshold = 2 * r.M - c_tol;
    TruncatedSeries delta = gamma(ctx().one() + a, f) - f;
    for (int j = 0; j < h(); ++j)
        delta = delta - nabla(j, f).scaled(a.frobenius(j));
    r.wmax = delta.wmax();
    if (r.wmax < 1)
        throw InputError("finite difference: truncation too small to see any monomial");
    const auto v = delta.min_valuation();
    const std::int64_t floor = delta.floor();
    if (v && *v < r.threshold) {
        r.min_valuation = *v;
        r.pass = false;
    } else if (floor < r.threshold) {
        r.min_valuation = v ? std::min(*v, floor) : floor;
        r.certified = false;
        r.pass = false;
    } else {
        r.min_valuation = v ? *v : floor;
        r.pass = true;
    }
    return r;
}

} // namespace lt
