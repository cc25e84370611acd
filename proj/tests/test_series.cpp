#include <doctest.h>

#include "lt/random.hpp"
#include "lt/series.hpp"

using namespace lt;

namespace {

Exponent ex(int a, int b = 0, int c = 0)
{
    Exponent e{};
    e[0] = a;
    e[1] = b;
    e[2] = c;
    return e;
}

bool same(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t target)
{
    const Comparison c = compare(f, g, target);
    return c.certified && c.equal;
}

} // namespace

TEST_CASE("weights of the multivariable ring")
{
    const auto F = FieldContext::make(3, 3, 8);
    const auto R = SeriesRing::multivariable(F);
    CHECK(R->nvars() == 3);
    CHECK(R->weight(0) == 1);
    CHECK(R->weight(1) == 3);
    CHECK(R->weight(2) == 9);
    CHECK(R->weight(ex(1, 2, 1)) == 1 + 6 + 9);
    const auto U = SeriesRing::uniform(F, 2);
    CHECK(U->weight(ex(2, 3)) == 5);
}

TEST_CASE("truncation bookkeeping")
{
    const auto F = FieldContext::make(2, 1, 10);
    const auto R = SeriesRing::univariate(F);
    const TruncatedSeries T = TruncatedSeries::variable(R, 0, kExact);
    const TruncatedSeries f = (TruncatedSeries::one(R, kExact) + T).truncated(5);
    CHECK(f.wmax() == 5);
    const TruncatedSeries g = power(f, 7);
    CHECK(g.wmax() == 5);
    // (1+T)^7 mod T^6: binomials 1 7 21 35 35 21
    const int binom[] = {1, 7, 21, 35, 35, 21};
    for (int k = 0; k <= 5; ++k)
        CHECK(agree_to(g.coeff(ex(k)), F->from_int(binom[k]), 10));
    CHECK(g.coeff(ex(6)).is_zero());
    CHECK(multiply(T, T, 1).is_zero());
    CHECK(multiply(T, T, 1).wmax() == 1);
    CHECK(power(T, 3).is_exact());
}

TEST_CASE("commutative ring axioms (property)")
{
    Rng rng(99);
    for (auto [p, h] : {std::pair{2, 1}, {3, 2}, {2, 3}}) {
        const auto F = FieldContext::make(p, h, 10);
        const auto R = SeriesRing::multivariable(F);
        for (int s = 0; s < 15; ++s) {
            const std::int64_t W = 10;
            const TruncatedSeries a = random_polynomial(R, W, rng), b = random_polynomial(R, W, rng),
                                  c = random_polynomial(R, W, rng);
            CHECK(same(a * b, b * a, 10));
            CHECK(same(multiply(a * b, c, W), multiply(a, b * c, W), 10));
            CHECK(same(multiply(a, b + c, W), multiply(a, b, W) + multiply(a, c, W), 10));
            CHECK(same(a - a, TruncatedSeries::zero(R, kExact), 10));
            CHECK(same(a.frobenius(h), a, 10));
            CHECK(same((a * b).frobenius(), a.frobenius() * b.frobenius(), 10));
        }
    }
}

TEST_CASE("compare distinguishes certified, equal and undecidable")
{
    const auto F = FieldContext::make(3, 1, 10);
    const auto R = SeriesRing::univariate(F);
    const TruncatedSeries T = TruncatedSeries::variable(R, 0, kExact);
    const TruncatedSeries a = T + TruncatedSeries::constant(R, F->from_int(27), kExact);
    Comparison c = compare(a, T, 10);
    CHECK(c.certified);
    CHECK_FALSE(c.equal);
    CHECK(c.margin == 3);
    c = compare(a, T, 3);
    CHECK(c.certified);
    CHECK(c.equal);
    // A coefficient known only to O(3^2) cannot be compared at 5.
    TruncatedSeries b = T;
    b.set(ex(2), F->zero(2));
    c = compare(b, T, 5);
    CHECK_FALSE(c.certified);
    // Comparison stops at the smaller truncation.
    CHECK(same(T.truncated(1), T + power(T, 2), 10));
}

TEST_CASE("inverse and reversion (property)")
{
    Rng rng(5);
    for (int p : {2, 3, 5}) {
        const auto F = FieldContext::make(p, 1, 12);
        const auto R = SeriesRing::univariate(F);
        const TruncatedSeries T = TruncatedSeries::variable(R, 0, kExact);
        for (int s = 0; s < 10; ++s) {
            const std::int64_t W = 12;
            TruncatedSeries u = random_polynomial(R, W, rng, 0.6, 1).truncated(W);
            u = u + TruncatedSeries::constant(R, random_unit(*F, rng), kExact);
            const TruncatedSeries ui = inverse(u);
            CHECK(same(u * ui, TruncatedSeries::one(R, kExact), 12));

            TruncatedSeries f = random_polynomial(R, W, rng, 0.6, 2).truncated(W);
            f = f + T.scaled(random_unit(*F, rng));
            const TruncatedSeries g = reversion(f);
            CHECK(same(compose(f, {g}), T, 12));
            CHECK(same(compose(g, {f}), T, 12));
        }
    }
}

TEST_CASE("composition is associative and respects weights (property)")
{
    Rng rng(31);
    const auto F = FieldContext::make(2, 1, 12);
    const auto R = SeriesRing::univariate(F);
    for (int s = 0; s < 10; ++s) {
        const TruncatedSeries f = random_polynomial(R, 8, rng, 0.6, 1);
        const TruncatedSeries g = random_polynomial(R, 8, rng, 0.6, 1);
        const TruncatedSeries k = random_polynomial(R, 8, rng, 0.6, 1);
        const TruncatedSeries lhs = compose(compose(f, {g}), {k}, 8);
        const TruncatedSeries rhs = compose(f, {compose(g, {k}, 8)}, 8);
        CHECK(same(lhs, rhs, 12));
    }
    // Y_0 -> Y_1, Y_1 -> Y_1^2 in weights (1, 2): every weight doubles, so a
    // weight-5 truncation becomes known to weight 11.
    const auto F2 = FieldContext::make(2, 2, 10);
    const auto M = SeriesRing::multivariable(F2);
    const TruncatedSeries y0 = TruncatedSeries::variable(M, 0, 5);
    const TruncatedSeries y1 = TruncatedSeries::variable(M, 1, kExact);
    const TruncatedSeries sub = compose(y0, {y1, y1 * y1});
    CHECK(sub.wmax() == 11);
}

TEST_CASE("Gauss valuation")
{
    const auto F = FieldContext::make(3, 1, 10);
    const auto R = SeriesRing::univariate(F);
    TruncatedSeries f(R, kExact);
    f.set(ex(0), F->from_int(9));
    f.set(ex(2), F->from_int(3));
    f.set(ex(5), F->one());
    // terms: 2 + 0, 1 + 2/r, 0 + 5/r
    CHECK(gauss_valuation(f, Rational(1)) == Rational(2));
    CHECK(gauss_valuation(f, Rational(2)) == Rational(2));
    CHECK(gauss_valuation(f, Rational(5)) == Rational(1));
    CHECK(gauss_valuation(f, Rational(10)) == Rational(1, 2));
    CHECK_THROWS_AS(gauss_valuation(TruncatedSeries::zero(R, kExact), Rational(1)), std::domain_error);
}

TEST_CASE("partial derivative and variable bookkeeping")
{
    const auto F = FieldContext::make(3, 2, 10);
    const auto R = SeriesRing::multivariable(F);
    TruncatedSeries f(R, kExact);
    f.set(ex(2, 1), F->from_int(5));
    f.set(ex(0, 3), F->one());
    const TruncatedSeries d0 = partial_derivative(f, 0);
    CHECK(agree_to(d0.coeff(ex(1, 1)), F->from_int(10), 10));
    CHECK(d0.size() == 1);
    CHECK(f.degree_in(1) == 3);
    CHECK(drop_variable(f, 0).size() == 1);
    CHECK(f.order() == 5);
}
