#include "oracles.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace oracle {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t M)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % M);
}

void trim(IntPoly &f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

} // namespace

IntPoly mul(const IntPoly &a, const IntPoly &b, std::uint64_t M)
{
    if (a.empty() || b.empty())
        return {};
    IntPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j], M)) % M;
    trim(c);
    return c;
}

IntPoly add(const IntPoly &a, const IntPoly &b, std::uint64_t M)
{
    IntPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = ((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0)) % M;
    trim(c);
    return c;
}

IntPoly compose(const IntPoly &f, const IntPoly &g, std::uint64_t M)
{
    IntPoly r;
    for (std::size_t k = f.size(); k-- > 0;)
        r = add(mul(r, g, M), IntPoly{f[k]}, M);
    return r;
}

IntPoly mult_p(std::uint64_t p, std::uint64_t q, std::uint64_t M)
{
    IntPoly f(q + 1, 0);
    f[1] = p % M;
    f[q] = 1;
    return f;
}

IntPoly mult_p_power(std::uint64_t p, std::uint64_t q, int k, std::uint64_t M)
{
    IntPoly r{0, 1};
    const IntPoly f = mult_p(p, q, M);
    for (int i = 0; i < k; ++i)
        r = compose(f, r, M);
    return r;
}

IntPoly torsion_q(std::uint64_t p, std::uint64_t q, int k, std::uint64_t M)
{
    if (k == 0)
        return {0, 1};
    IntPoly q1(q, 0);
    q1[0] = p % M;
    q1[q - 1] = 1;
    return compose(q1, mult_p_power(p, q, k - 1, M), M);
}

IntPoly truncate(IntPoly f, std::size_t max_degree)
{
    if (f.size() > max_degree + 1)
        f.resize(max_degree + 1);
    trim(f);
    return f;
}

IntPoly from_series(const lt::TruncatedSeries &f, std::uint64_t M)
{
    IntPoly out;
    for (const auto &[m, c] : f.terms()) {
        if (!c.in_qp())
            throw std::runtime_error("coefficient outside Q_p: " + c.str());
        if (c.valuation() < 0)
            throw std::runtime_error("non-integral coefficient: " + c.str());
        const std::size_t e = static_cast<std::size_t>(m[0]);
        if (out.size() <= e)
            out.resize(e + 1, 0);
        std::uint64_t pv = 1;
        for (std::int64_t i = 0; i < c.valuation() && pv != 0; ++i)
            pv = pv * static_cast<std::uint64_t>(c.context()->p()) % M;
        out[e] = mulmod(pv, c.unit()[0] % M, M);
    }
    trim(out);
    return out;
}

lt::TruncatedSeries to_series(const IntPoly &f, const lt::RingPtr &ring, std::int64_t wmax)
{
    lt::TruncatedSeries s(ring, wmax);
    const lt::FieldContext &F = ring->ctx();
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] == 0 || static_cast<std::int64_t>(k) > wmax)
            continue;
        lt::Exponent e{};
        e[0] = static_cast<int>(k);
        s.set(e, F.from_int(static_cast<std::int64_t>(f[k])));
    }
    return s;
}

std::vector<Rat> log_one_plus(int W)
{
    std::vector<Rat> c(W + 1, {0, 1});
    for (int k = 1; k <= W; ++k)
        c[k] = {k % 2 ? 1 : -1, k};
    return c;
}

std::vector<Rat> exp_minus_one(int W)
{
    std::vector<Rat> c(W + 1, {0, 1});
    std::int64_t f = 1;
    for (int k = 1; k <= W; ++k) {
        f *= k; // W <= 20 keeps k! in range
        c[k] = {1, f};
    }
    return c;
}

lt::TruncatedSeries rational_series(const std::vector<Rat> &c, const lt::RingPtr &ring, std::int64_t wmax)
{
    lt::TruncatedSeries s(ring, wmax);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].num == 0)
            continue;
        lt::Exponent e{};
        e[0] = static_cast<int>(k);
        s.set(e, ring->ctx().from_rational(c[k].num, c[k].den));
    }
    return s;
}

std::vector<lt::PadicElement> coefficients(const lt::TruncatedSeries &f)
{
    const lt::FieldContext &F = f.ctx();
    std::vector<lt::PadicElement> out;
    for (const auto &[m, c] : f.terms()) {
        const std::size_t e = static_cast<std::size_t>(m[0]);
        if (out.size() <= e)
            out.resize(e + 1, F.zero());
        out[e] = c;
    }
    return out;
}

int divisibility_order(const std::vector<lt::PadicElement> &f, const std::vector<lt::PadicElement> &Q,
                       const lt::FieldContext &F)
{
    const int df = static_cast<int>(f.size()) - 1;
    std::vector<lt::PadicElement> Qm{F.one()};
    for (int m = 1;; ++m) {
        std::vector<lt::PadicElement> next(Qm.size() + Q.size() - 1, F.zero());
        for (std::size_t a = 0; a < Qm.size(); ++a)
            for (std::size_t b = 0; b < Q.size(); ++b)
                next[a + b] += Qm[a] * Q[b];
        Qm = std::move(next);
        const int dq = static_cast<int>(Qm.size()) - 1;
        if (dq > df)
            return m - 1;
        // Columns T^j Q^m, j = 0..df-dq, then f.
        const int cols = df - dq + 1;
        lt::Matrix A(F, df + 1, cols), Af(F, df + 1, cols + 1);
        for (int r = 0; r <= df; ++r) {
            for (int j = 0; j < cols; ++j) {
                const int idx = r - j;
                A(r, j) = idx >= 0 && idx <= dq ? Qm[idx] : F.zero();
                Af(r, j) = A(r, j);
            }
            Af(r, cols) = f[r];
        }
        if (Af.rank() > A.rank())
            return m - 1;
    }
}

std::vector<lt::Generator> split_lattice(const lt::FilteredPhiModule &D, const lt::FormalGroupTable &fg)
{
    const int h = D.h();
    std::vector<lt::Generator> out;
    for (int s = 0; s < D.d(); ++s) {
        lt::Generator g;
        g.v = D.fil(0).basis.column(s);
        for (int i = 0; i < h; ++i) {
            const int jump = D.fil(lt::slot_of(i, h)).jumps.at(s);
            if (jump < 0)
                throw std::invalid_argument("split_lattice: negative jump");
            g.poles.push_back(jump);
            g.factors.push_back(lt::TruncatedSeries::one(fg.univariate_ring(), lt::kExact));
        }
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace oracle

namespace oracle {

namespace {

// Order along Q(Y_i) of a polynomial in several variables: minimum over the
// Y_i-polynomial coefficients of each monomial in the remaining variables.
int order_along(const lt::TruncatedSeries &f, int i, const std::vector<lt::PadicElement> &Q)
{
    std::map<lt::Exponent, std::vector<lt::PadicElement>> parts;
    const lt::FieldContext &F = f.ctx();
    for (const auto &[m, c] : f.terms()) {
        lt::Exponent rest = m;
        rest[i] = 0;
        auto &v = parts[rest];
        if (v.size() <= static_cast<std::size_t>(m[i]))
            v.resize(m[i] + 1, F.zero());
        v[m[i]] = c;
    }
    int best = std::numeric_limits<int>::max();
    for (auto &[rest, v] : parts)
        best = std::min(best, divisibility_order(v, Q, F));
    return best;
}

} // namespace

std::vector<std::optional<int>> membership_margins(const lt::ModuleElement &y, const lt::Condition &c,
                                                   const lt::FilteredPhiModule &D, const lt::FormalGroupTable &fg)
{
    const lt::FieldContext &F = D.ctx();
    const lt::Filtration &fil = D.fil(c.j);
    const lt::Matrix frame = (D.phi_q().pow(c.k) * fil.basis).inverse();
    const std::vector<lt::PadicElement> Q = coefficients(fg.q_polynomial(c.k));
    std::vector<std::optional<int>> out;
    for (int s = 0; s < D.d(); ++s) {
        lt::TruncatedSeries z(y.numerators.at(0).ring(), lt::kExact);
        for (int t = 0; t < D.d(); ++t)
            if (!frame(s, t).is_zero())
                z += y.numerators[t].scaled(frame(s, t));
        if (z.is_zero()) {
            out.push_back(std::nullopt);
            continue;
        }
        const int ord = c.k == 0 ? 0 : order_along(z, c.i, Q);
        out.push_back(ord - y.poles.at(c.i) + fil.jumps.at(s));
    }
    (void)F;
    return out;
}

} // namespace oracle
