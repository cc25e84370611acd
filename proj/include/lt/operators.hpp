#pragma once

// phi, phi_q, Gamma_F and nabla_j on series in Y_0..Y_{h-1}, and the special
// elements t_j = log_LT(Y_j), lambda_j = t_j / Y_j, lambda, f_j, t.

#include <memory>
#include <vector>

#include "lt/lubin_tate.hpp"

namespace lt {

struct FiniteDifferenceReport {
    int M = 0;
    std::int64_t wmax = 0;          // truncation of the defect
    std::int64_t min_valuation = 0; // over coefficients of the defect
    std::int64_t threshold = 0;     // 2M - c_tol
    bool certified = true;          // defect digits known down to the threshold
    bool pass = false;
};

class OperatorContext {
public:
    // Builds its own formal group table of degree W + 1 at certified precision
    // `target`.
    static std::shared_ptr<const OperatorContext> make(int p, int h, int target, std::int64_t W);
    static std::shared_ptr<const OperatorContext> make(FglPtr fg, std::int64_t W);

    const FglPtr &fgl() const { return fg_; }
    const FieldContext &ctx() const { return fg_->ctx(); }
    const RingPtr &ring() const { return ring_; }
    std::int64_t wmax() const { return W_; }
    int h() const { return ctx().h(); }

    const TruncatedSeries &t(int j) const { return t_.at(j); }
    const TruncatedSeries &lambda(int j) const { return lambda_.at(j); }
    const TruncatedSeries &lambda_product() const { return lambda_all_; }
    // f_j = lambda / lambda_j
    const TruncatedSeries &f(int j) const { return f_.at(j); }
    // t = prod_j t_j (no Q_p-rescaling).
    const TruncatedSeries &t_product() const { return t_all_; }
    // Q_1(Y_j)/p as an exact polynomial in the ring.
    TruncatedSeries q1_over_p(int j) const;
    // Q_k(Y_j) as an exact polynomial in the ring.
    TruncatedSeries q_poly(int k, int j) const;

    TruncatedSeries variable(int j) const { return TruncatedSeries::variable(ring_, j, kExact); }

    // sigma on coefficients, Y_j -> Y_{j+1}, Y_{h-1} -> [p](Y_0).
    TruncatedSeries phi(const TruncatedSeries &f, std::int64_t cap = kExact) const;
    // Y_j -> [p](Y_j), F-linear.
    TruncatedSeries phi_q(const TruncatedSeries &f, std::int64_t cap = kExact) const;
    // phi_q(lambda_j) = p lambda_j / Q_1(Y_j): poles kept, numerator times
    // prod_j (Q_1(Y_j)/p)^{b_j}.
    LambdaFraction phi_q(const LambdaFraction &x, std::int64_t cap = kExact) const;
    // Y_j -> [sigma^j(a)](Y_j) for a in O_F^x.
    TruncatedSeries gamma(const PadicElement &a, const TruncatedSeries &f) const;
    // t_j * (dS/dU)(Y_j, 0) * df/dY_j
    TruncatedSeries nabla(int j, const TruncatedSeries &f) const;

    // Defect gamma_{1+a}(f) - f - sum_j sigma^j(a) nabla_j(f) for a = p^M * unit.
    FiniteDifferenceReport finite_difference_check(const TruncatedSeries &f, const PadicElement &a, int c_tol) const;

private:
    OperatorContext() = default;

    FglPtr fg_;
    RingPtr ring_;
    std::int64_t W_ = 0;
    std::vector<TruncatedSeries> t_, lambda_, f_, dS_;
    TruncatedSeries lambda_all_, t_all_;
};

using OpsPtr = std::shared_ptr<const OperatorContext>;

} // namespace lt
