#pragma once

// Division by a monic polynomial P(Y_i) in one designated variable, on the
// disk and on an annulus (bounded Laurent tail in Y_i), and divisor
// valuations along Q_k(Y_i).

#include <vector>

#include "lt/lubin_tate.hpp"

namespace lt {

struct DivisionResult {
    // f_0..f_{d-1}, free of Y_i.
    std::vector<TruncatedSeries> remainder;
    TruncatedSeries quotient;
    // f = sum_k f_k Y_i^k + quotient * P(Y_i) holds coefficient-exactly up to
    // this weighted degree.
    std::int64_t certified_degree = 0;
};

// f with finitely many negative powers of Y_i: nonneg + sum_e neg[e-1] Y_i^{-e}
// where each neg[e-1] is free of Y_i.
struct LaurentSeries {
    int var = 0;
    TruncatedSeries nonneg;
    std::vector<TruncatedSeries> neg;
};

struct AnnulusDivisionResult {
    std::vector<TruncatedSeries> remainder;
    LaurentSeries quotient;
    std::int64_t certified_degree = 0;
};

// P is an exact univariate polynomial (ring of the formal group or any
// univariate ring over the same field). Requires P monic with nonleading
// coefficients divisible by p.
DivisionResult divide_disk(const TruncatedSeries &f, const TruncatedSeries &P, int i);

// Splits f = f+ + f-, divides f+ on the disk and f- by the reflected
// polynomial T^d P(1/T) / P(0) in T = 1/Y_i, then reduces the leftover
// negative powers with Y_i^{-1} = -(P(Y_i) - P(0)) / (P(0) Y_i) mod P.
// s labels the annulus and must be positive. Requires P monic and P(0)
// invertible at working precision.
AnnulusDivisionResult divide_annulus(const LaurentSeries &f, const TruncatedSeries &P, int i, const Rational &s);

// sum_k f_k Y_i^k + quotient * P, used to check division identities.
TruncatedSeries reconstruct(const DivisionResult &r, const TruncatedSeries &P, int i);
LaurentSeries reconstruct(const AnnulusDivisionResult &r, const TruncatedSeries &P, int i);
// Multiplies a Laurent series by an exact polynomial in its variable.
LaurentSeries multiply(const LaurentSeries &f, const TruncatedSeries &P);
LaurentSeries operator-(const LaurentSeries &f, const LaurentSeries &g);
// True when every coefficient is >= target and known to that precision.
Comparison compare_to_zero(const LaurentSeries &f, std::int64_t target);

struct DivisorValuation {
    int value = 0;         // ord_{Q_k(Y_i)}(numerator) - b_i (k >= 1)
    bool certified = true; // false: only a lower bound within truncation/precision reach
    // Smallest remainder valuation at the first non-divisible step.
    std::int64_t margin = 0;
};

// Repeated disk division by Q_k(Y_i). A stored nonzero remainder digit stops
// the division; a remainder made of tracked zeros counts as zero, certified
// when they are known to absolute precision n_cert. Throws InputError when the
// numerator vanishes at n_cert.
DivisorValuation divisor_valuation(const LambdaFraction &x, int k, int i, const FormalGroupTable &fg,
                                   std::int64_t n_cert);
DivisorValuation divisor_valuation(const LambdaFraction &x, int k, int i, const FormalGroupTable &fg);
// Absolute precision of f rescaled to Gauss valuation 0 (kExact for zero or
// fully exact data): the digits a divisor valuation of f can rely on.
std::int64_t normalized_precision(const TruncatedSeries &f);

} // namespace lt
