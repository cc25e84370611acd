#include <doctest.h>

#include <map>

#include "lt/random.hpp"
#include "lt/weierstrass.hpp"
#include "oracles.hpp"

using namespace lt;

namespace {

Exponent ex(int a, int b = 0)
{
    Exponent e{};
    e[0] = a;
    e[1] = b;
    return e;
}

bool same(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t target)
{
    const Comparison c = compare(f, g, target);
    return c.certified && c.equal;
}

// Order along Q(Y_0) of f(Y_0, Y_1, ...): the minimum over the Y_0-polynomial
// coefficients of each monomial in the other variables.
int oracle_order(const TruncatedSeries &f, const TruncatedSeries &Q)
{
    std::map<Exponent, std::vector<PadicElement>> parts;
    const FieldContext &F = f.ctx();
    for (const auto &[m, c] : f.terms()) {
        Exponent rest = m;
        rest[0] = 0;
        auto &v = parts[rest];
        if (v.size() <= static_cast<std::size_t>(m[0]))
            v.resize(m[0] + 1, F.zero());
        v[m[0]] = c;
    }
    const std::vector<PadicElement> q = oracle::coefficients(Q);
    int best = 1 << 20;
    for (auto &[rest, v] : parts)
        best = std::min(best, oracle::divisibility_order(v, q, F));
    return best;
}

} // namespace

TEST_CASE("disk division by hand: T^3 = T (T^2 + 3) - 3T")
{
    const auto Fp = FieldContext::make(3, 1, 10);
    const FieldContext &F = *Fp;
    const auto R = SeriesRing::univariate(Fp);
    TruncatedSeries P(R, kExact);
    P.set(ex(0), F.from_int(3));
    P.set(ex(2), F.one());
    const TruncatedSeries f = TruncatedSeries::monomial(R, ex(3), F.one(), kExact);
    const DivisionResult r = divide_disk(f, P, 0);
    REQUIRE(r.remainder.size() == 2);
    CHECK(r.remainder[0].is_zero());
    CHECK(same(r.remainder[1], TruncatedSeries::constant(R, F.from_int(-3), kExact), 10));
    CHECK(same(r.quotient, TruncatedSeries::variable(R, 0, kExact), 10));
    // Non-distinguished divisors are rejected.
    TruncatedSeries bad = P;
    bad.set(ex(0), F.one());
    CHECK_THROWS(divide_disk(f, bad, 0));
}

TEST_CASE("annulus division by hand: 1/Y = -Y/3 mod Y^2 + 3")
{
    const auto Fp = FieldContext::make(3, 1, 10);
    const FieldContext &F = *Fp;
    const auto R = SeriesRing::univariate(Fp);
    TruncatedSeries P(R, kExact);
    P.set(ex(0), F.from_int(3));
    P.set(ex(2), F.one());
    LaurentSeries f;
    f.var = 0;
    f.nonneg = TruncatedSeries::zero(R, kExact);
    f.neg = {TruncatedSeries::one(R, kExact)};
    const AnnulusDivisionResult r = divide_annulus(f, P, 0, Rational(1, 2));
    REQUIRE(r.remainder.size() == 2);
    CHECK(r.remainder[0].is_zero());
    CHECK(same(r.remainder[1], TruncatedSeries::constant(R, F.from_rational(-1, 3), kExact), 8));
    CHECK(compare_to_zero(reconstruct(r, P, 0) - f, 8).equal);
}

TEST_CASE("disk division reconstructs and is unique (property)")
{
    Rng rng(41);
    for (auto [p, h] : {std::pair{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        CAPTURE(p);
        CAPTURE(h);
        const int N = 10;
        const auto fg = FormalGroupTable::make(p, h, N, 2);
        const auto R = SeriesRing::multivariable(fg->field());
        for (int k : {1, 2}) {
            const TruncatedSeries P = fg->q_polynomial(k);
            const int deg = P.degree_in(0);
            for (int i = 0; i < h; ++i) {
                for (int s = 0; s < 3; ++s) {
                    const TruncatedSeries f = random_polynomial(R, deg * R->weight(i) + 4, rng, 0.4);
                    const DivisionResult r = divide_disk(f, P, i);
                    CHECK(static_cast<int>(r.remainder.size()) == deg);
                    for (const auto &fk : r.remainder)
                        CHECK_FALSE(fk.depends_on(i));
                    CHECK(same(reconstruct(r, P, i), f, N));
                    // Dividing the remainder polynomial again gives quotient 0.
                    const DivisionResult r2 = divide_disk(as_polynomial(reconstruct(
                                                              DivisionResult{r.remainder, TruncatedSeries::zero(R, kExact), kExact}, P, i)),
                                                          P, i);
                    CHECK(r2.quotient.is_zero());
                }
            }
        }
    }
}

TEST_CASE("divisor valuation matches the Toeplitz oracle (property)")
{
    Rng rng(77);
    for (auto [p, h] : {std::pair{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
        CAPTURE(p);
        CAPTURE(h);
        const int N = 12;
        const auto fg = FormalGroupTable::make(p, h, N, 2);
        const auto R = SeriesRing::multivariable(fg->field());
        for (int k : {1, 2}) {
            const TruncatedSeries Q = fg->q_polynomial(k);
            const TruncatedSeries Qm = embed(Q, R, 0);
            for (int s = 0; s < 4; ++s) {
                const int m = static_cast<int>(rng() % 3);
                TruncatedSeries f = random_polynomial(R, 3, rng, 0.6);
                if (f.is_zero())
                    f = TruncatedSeries::one(R, kExact);
                f = f * power(Qm, m);
                const int b = static_cast<int>(rng() % 3);
                std::vector<int> poles(h, 0);
                poles[0] = b;
                const DivisorValuation dv = divisor_valuation(LambdaFraction(f, poles), k, 0, *fg);
                CAPTURE(k);
                CAPTURE(m);
                CHECK(dv.certified);
                const int want = oracle_order(f, Q);
                CHECK(want >= m);
                CHECK(dv.value == want - b);
            }
        }
    }
}
