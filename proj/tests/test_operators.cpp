#include <doctest.h>

#include "lt/operators.hpp"
#include "lt/random.hpp"

using namespace lt;

namespace {

bool same(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t target)
{
    const Comparison c = compare(f, g, target);
    return c.certified && c.equal && std::min(f.wmax(), g.wmax()) >= 1;
}

const std::pair<int, int> kCases[] = {{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}};

} // namespace

TEST_CASE("phi on variables and scalars")
{
    for (auto [p, h] : kCases) {
        CAPTURE(p);
        CAPTURE(h);
        const auto ops = OperatorContext::make(p, h, 10, 8);
        const FieldContext &F = ops->ctx();
        for (int j = 0; j + 1 < h; ++j)
            CHECK(same(ops->phi(ops->variable(j)), ops->variable(j + 1), 10));
        const TruncatedSeries last = ops->phi(ops->variable(h - 1));
        CHECK(same(last, embed(ops->fgl()->mult_p(), ops->ring(), 0), 10));
        // sigma-semilinear
        const PadicElement a = F.generator() + F.from_int(3);
        const TruncatedSeries c = TruncatedSeries::constant(ops->ring(), a, kExact);
        CHECK(same(ops->phi(c * ops->variable(0)), ops->phi(ops->variable(0)).scaled(a.frobenius()), 10));
    }
}

TEST_CASE("phi^h = phi_q, phi and gamma commute, gamma is a group action (property)")
{
    Rng rng(3);
    for (auto [p, h] : kCases) {
        CAPTURE(p);
        CAPTURE(h);
        const int N = 10;
        const auto ops = OperatorContext::make(p, h, N, 10);
        const FieldContext &F = ops->ctx();
        for (int s = 0; s < 3; ++s) {
            const TruncatedSeries f = random_polynomial(ops->ring(), h == 3 ? 5 : 4, rng, 0.4);
            TruncatedSeries g = f;
            for (int k = 0; k < h; ++k)
                g = ops->phi(g, kExact);
            CHECK(same(g, ops->phi_q(f, kExact), N));

            const PadicElement a = random_unit(F, rng), b = random_unit(F, rng);
            const TruncatedSeries fw = f.truncated(ops->wmax());
            CHECK(same(ops->gamma(a, ops->gamma(b, fw)), ops->gamma(a * b, fw), N - 2));
            CHECK(same(ops->phi(ops->gamma(a, fw)), ops->gamma(a, ops->phi(fw)), N - 2));
            CHECK(same(ops->gamma(F.one(), fw), fw, N));
        }
    }
}

TEST_CASE("t_j: gamma and phi_q eigenvectors, nabla dual basis")
{
    Rng rng(8);
    for (auto [p, h] : kCases) {
        CAPTURE(p);
        CAPTURE(h);
        const int N = 10;
        const auto ops = OperatorContext::make(p, h, N, 8);
        const FieldContext &F = ops->ctx();
        const PadicElement a = random_unit(F, rng);
        for (int j = 0; j < h; ++j) {
            const TruncatedSeries &tj = ops->t(j);
            CHECK(same(ops->gamma(a, tj), tj.scaled(a.frobenius(j)), N - 2));
            CHECK(same(ops->phi_q(tj), tj.scaled(F.from_int(p)), N - 2));
            for (int k = 0; k < h; ++k) {
                const TruncatedSeries d = ops->nabla(k, tj);
                if (k == j)
                    CHECK(same(d, tj, N - 2));
                else
                    CHECK(d.is_zero());
            }
            // lambda_j = t_j / Y_j
            CHECK(same(ops->lambda(j) * ops->variable(j), tj, N - 2));
        }
        CHECK(same(ops->phi_q(ops->t_product()), ops->t_product().scaled(F.from_int(p).pow(h)), N - 2 * h));
    }
}

TEST_CASE("phi_q on lambda fractions keeps poles")
{
    const auto ops = OperatorContext::make(3, 2, 10, 8);
    const LambdaFraction x({ops->variable(0), {2, 1}});
    const LambdaFraction y = ops->phi_q(x);
    CHECK(y.poles == std::vector<int>{2, 1});
    // numerator [p](Y_0) (Q_1(Y_0)/p)^2 (Q_1(Y_1)/p)
    const TruncatedSeries want = ops->phi_q(ops->variable(0)) * power(ops->q1_over_p(0), 2) * ops->q1_over_p(1);
    CHECK(same(y.numerator, want, 10));
}

TEST_CASE("finite differences approximate nabla")
{
    for (auto [p, h] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        CAPTURE(p);
        CAPTURE(h);
        for (int M : {4, 6}) {
            const auto ops = OperatorContext::make(p, h, 2 * M + 6, 6);
            const FieldContext &F = ops->ctx();
            const PadicElement a = F.from_int(p).pow(M);
            for (int j = 0; j < h; ++j) {
                const FiniteDifferenceReport r = ops->finite_difference_check(ops->variable(j), a, 4);
                CHECK(r.certified);
                CHECK(r.pass);
                CHECK(r.threshold == 2 * M - 4);
                CHECK(r.min_valuation >= r.threshold);
            }
        }
    }
}
