#pragma once

// Lubin-Tate formal module with [p](T) = pT + T^q over O_F.

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>

#include "lt/series.hpp"

namespace lt {

class FormalGroupTable {
public:
    // Scalar precision requested on top of the certified precision so that
    // exp_LT (denominators down to p^{-k/(q-1)}) and [a](T) stay decidable.
    static int guard_digits(int p, int h, int W);

    // Builds the table at certified precision `target` and degree bound W.
    // The field context is created with target + guard_digits digits.
    static std::shared_ptr<const FormalGroupTable> make(int p, int h, int target, int W);
    // Uses an existing context; `target` must leave room for the guard.
    static std::shared_ptr<const FormalGroupTable> make(FieldPtr field, int target, int W);

    const FieldPtr &field() const { return field_; }
    const FieldContext &ctx() const { return *field_; }
    int target_precision() const { return target_; }
    int degree_bound() const { return W_; }
    const RingPtr &univariate_ring() const { return uni_; }
    const RingPtr &bivariate_ring() const { return bi_; }

    // pT + T^q as an exact polynomial.
    const TruncatedSeries &mult_p() const { return mult_p_; }
    // Q_k as an exact polynomial (degree q^{k-1}(q-1) for k >= 1).
    TruncatedSeries q_polynomial(int k) const;
    // Q_k modulo T^{W+1}.
    TruncatedSeries q_polynomial_truncated(int k) const;
    // Number of factors Q_k/p used in the logarithm product.
    int log_factor_count() const { return log_factors_; }

    const TruncatedSeries &log() const { return log_; }
    const TruncatedSeries &exp() const { return exp_; }
    // S(T,U) truncated at total degree W.
    const TruncatedSeries &addition() const { return add_; }
    // (dS/dU)(T, 0), univariate, known to degree W-1.
    const TruncatedSeries &addition_derivative() const { return dS_; }

    // [a](T) = exp(a log T) for a in O_F, audited for integrality.
    TruncatedSeries mult_by(const PadicElement &a) const;

private:
    FormalGroupTable() = default;
    void build();

    FieldPtr field_;
    int target_ = 0;
    int W_ = 0;
    RingPtr uni_, bi_;
    TruncatedSeries mult_p_, log_, exp_, add_, dS_;
    int log_factors_ = 0;

    mutable std::shared_mutex cache_mutex_;
    mutable std::map<std::string, TruncatedSeries> endo_cache_;
};

using FglPtr = std::shared_ptr<const FormalGroupTable>;

// Throws PrecisionError naming the first coefficient that is not integral or
// not known to absolute precision `target`.
void audit_integral(const TruncatedSeries &f, std::int64_t target, const std::string &what);

} // namespace lt
