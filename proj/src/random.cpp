#include "lt/random.hpp"

namespace lt {

namespace {

void enumerate(const SeriesRing &ring, int j, std::int64_t budget, Exponent &m, std::vector<Exponent> &out)
{
    if (j == ring.nvars()) {
        out.push_back(m);
        return;
    }
    const std::int64_t w = ring.weight(j);
    for (int e = 0; e * w <= budget; ++e) {
        m[j] = e;
        enumerate(ring, j + 1, budget - e * w, m, out);
    }
    m[j] = 0;
}

} // namespace

PadicElement random_integer(const FieldContext &F, Rng &rng)
{
    std::uniform_int_distribution<std::uint64_t> dist(0, F.modulus() - 1);
    Digits d{};
    for (int i = 0; i < F.h(); ++i)
        d[i] = dist(rng);
    return F.from_digits(0, std::span<const std::uint64_t>(d.data(), F.h()), F.precision());
}

PadicElement random_unit(const FieldContext &F, Rng &rng)
{
    for (;;) {
        PadicElement x = random_integer(F, rng);
        if (!x.is_zero() && x.valuation() == 0)
            return x;
    }
}

PadicElement random_nonzero(const FieldContext &F, Rng &rng, int max_val)
{
    std::uniform_int_distribution<int> dist(0, max_val);
    return random_unit(F, rng).shift(dist(rng));
}

TruncatedSeries random_polynomial(const RingPtr &ring, std::int64_t W, Rng &rng, double density, std::int64_t lo)
{
    std::vector<Exponent> monos;
    Exponent m{};
    enumerate(*ring, 0, W, m, monos);
    std::bernoulli_distribution keep(density);
    TruncatedSeries f(ring, kExact);
    for (const auto &e : monos)
        if (ring->weight(e) >= lo && keep(rng))
            f.add_to(e, random_integer(ring->ctx(), rng));
    return f;
}

Matrix random_invertible(const FieldContext &F, int d, Rng &rng)
{
    for (;;) {
        Matrix m(F, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                m(i, j) = random_integer(F, rng);
        if (m.rank() == d)
            return m;
    }
}

Matrix random_unimodular(const FieldContext &F, int d, Rng &rng)
{
    for (;;) {
        Matrix m(F, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                m(i, j) = random_integer(F, rng);
        const PadicElement det = m.determinant();
        if (!det.is_zero() && det.valuation() == 0)
            return m;
    }
}

FilteredPhiModule random_split_module(const FieldPtr &field, int d, int max_jump, Rng &rng)
{
    const FieldContext &F = *field;
    const Matrix B = random_unimodular(F, d, rng);
    Matrix diag(F, d, d);
    for (int s = 0; s < d; ++s)
        diag(s, s) = random_nonzero(F, rng, 2);
    const Matrix A = B * diag * B.inverse();
    std::uniform_int_distribution<int> jd(0, max_jump);
    std::vector<Filtration> fils;
    for (int j = 0; j < F.h(); ++j) {
        std::vector<int> jumps;
        for (int s = 0; s < d; ++s)
            jumps.push_back(jd(rng));
        fils.push_back({B, jumps});
    }
    return FilteredPhiModule(field, A, fils);
}

FilteredPhiModule random_module(const FieldPtr &field, int d, int max_jump, Rng &rng)
{
    const FieldContext &F = *field;
    Matrix diag(F, d, d);
    for (int s = 0; s < d; ++s)
        diag(s, s) = random_nonzero(F, rng, 2);
    const Matrix A = random_unimodular(F, d, rng) * diag * random_unimodular(F, d, rng);
    std::uniform_int_distribution<int> jd(0, max_jump);
    std::vector<Filtration> fils;
    for (int j = 0; j < F.h(); ++j) {
        std::vector<int> jumps;
        for (int s = 0; s < d; ++s)
            jumps.push_back(jd(rng));
        fils.push_back({random_unimodular(F, d, rng), jumps});
    }
    return FilteredPhiModule(field, A, fils);
}

} // namespace lt
