// One-variable lattices by successive elementary modifications, and the
// factorization of Gamma-stable principal ideals.

#include <algorithm>
#include <numeric>

#include "lt/lattice.hpp"

namespace lt {

namespace {

TruncatedSeries q_over_p(const FormalGroupTable &fg, int k)
{
    const TruncatedSeries Q = fg.q_polynomial(k);
    return k == 0 ? Q : Q.scaled(fg.ctx().one().shift(-1));
}

TruncatedSeries determinant(const std::vector<std::vector<TruncatedSeries>> &m, const RingPtr &ring)
{
    const int d = static_cast<int>(m.size());
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    TruncatedSeries det(ring, kExact);
    do {
        int inversions = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                inversions += perm[a] > perm[b];
        TruncatedSeries term = TruncatedSeries::one(ring, kExact);
        for (int r = 0; r < d; ++r)
            term = multiply(term, m[r][perm[r]]);
        det = inversions % 2 ? det - term : det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace

OneVariableBasis build_one_variable(const FilteredPhiModule &D, int j, int m, const FormalGroupTable &fg)
{
    const int d = D.d(), h = D.h();
    if (j < 0 || j >= h)
        throw InputError("slot index out of range");
    if (m < 1)
        throw InputError("need at least one condition");
    if (d > 6)
        throw InputError("one-variable build supports d <= 6");
    const RingPtr ring = fg.univariate_ring();
    const Filtration &fil = D.fil(j);
    // Work with the nonnegative jumps h_s - lo (a twist), undone at the end.
    const int lo = std::min(0, fil.min_jump());
    const int H = fil.max_jump() - lo;
    const int E = std::max(1, H);

    // Lambda = prod_{k<=m} Q_k/p stands in for lambda on the level disk.
    std::vector<TruncatedSeries> qk;
    TruncatedSeries Lambda = TruncatedSeries::one(ring, kExact);
    for (int k = 1; k <= m; ++k) {
        qk.push_back(q_over_p(fg, k));
        Lambda = multiply(Lambda, qk.back());
    }
    const TruncatedSeries Y = TruncatedSeries::variable(ring, 0, kExact);

    // Columns of the current basis: numerators[t][r], shared poles.
    std::vector<std::vector<TruncatedSeries>> cols(d, std::vector<TruncatedSeries>(d, TruncatedSeries(ring, kExact)));
    for (int t = 0; t < d; ++t)
        cols[t][t] = TruncatedSeries::one(ring, kExact);
    int poles = 0;

    std::vector<int> levels;
    for (int s = 0; s < d; ++s)
        levels.push_back(fil.jumps[s] - lo);
    const bool scalar = std::all_of(levels.begin(), levels.end(), [&](int x) { return x == levels[0]; });

    for (int k = 1; k <= m; ++k) {
        // g_s = 1 + R / pi_k^{h_s} with R = Y^E prod_{k' != k} Q_k'^E: order
        // -h_s along Q_k and g_s = 1 mod Q_k'^E and mod Y^E, so the step
        // leaves the lattices already imposed at the other divisors alone
        // (the jump spread is at most E).
        TruncatedSeries rest = TruncatedSeries::one(ring, kExact);
        TruncatedSeries R = power(Y, E);
        for (int k2 = 1; k2 <= m; ++k2)
            if (k2 != k) {
                rest = multiply(rest, qk[k2 - 1]);
                R = multiply(R, power(qk[k2 - 1], E));
            }
        // Lambda^H g_s as a polynomial: (pi_k^h + R) (Lambda/pi_k)^h Lambda^{H-h}.
        auto lifted = [&](int hs) {
            if (hs == 0)
                return power(Lambda, H);
            return multiply(multiply(power(qk[k - 1], hs) + R, power(rest, hs)), power(Lambda, H - hs));
        };
        std::vector<std::vector<TruncatedSeries>> T(d, std::vector<TruncatedSeries>(d, TruncatedSeries(ring, kExact)));
        if (scalar) {
            const TruncatedSeries g = lifted(levels[0]);
            for (int r = 0; r < d; ++r)
                T[r][r] = g;
        } else {
            // T = Lambda^H I + sum_s Lambda^H (g_s - 1) P e_s e_s^T P^{-1}. The
            // identity part is exact, so rounding in P^{-1} only touches terms
            // divisible by R and cannot move the other local lattices.
            const Matrix P = D.phi_q().pow(k) * fil.basis;
            const Matrix Pinv = P.inverse();
            const TruncatedSeries base = power(Lambda, H);
            std::vector<TruncatedSeries> diff;
            for (int s = 0; s < d; ++s)
                diff.push_back(lifted(levels[s]) - base);
            for (int r = 0; r < d; ++r) {
                T[r][r] = base;
                for (int t = 0; t < d; ++t)
                    for (int s = 0; s < d; ++s) {
                        const PadicElement c = P(r, s) * Pinv(s, t);
                        if (!c.is_zero() && !diff[s].is_zero())
                            T[r][t] += diff[s].scaled(c);
                    }
            }
        }
        for (auto &col : cols) {
            std::vector<TruncatedSeries> next(d, TruncatedSeries(ring, kExact));
            for (int r = 0; r < d; ++r)
                for (int t = 0; t < d; ++t)
                    next[r] += multiply(T[r][t], col[t]);
            col = std::move(next);
        }
        poles += H;
    }
    // Undo the twist: M(D) = lambda^{-lo} M(D(-lo)).
    poles += lo;
    if (poles < 0) {
        for (auto &col : cols)
            for (auto &x : col)
                x = multiply(x, power(Lambda, -poles));
        poles = 0;
    }

    OneVariableBasis out;
    out.j = j;
    out.m = m;
    for (auto &col : cols)
        out.basis.push_back({{poles}, col});

    // Transport by phi_q^k and its inverse costs digits when phi_q has
    // non-unit eigenvalues; decide orders at the precision actually held.
    for (const auto &col : cols)
        for (const auto &f : col)
            out.certainty = std::min(out.certainty, normalized_precision(f));
    const std::int64_t n_cert = std::min<std::int64_t>(fg.target_precision(), out.certainty);
    if (2 * n_cert < fg.target_precision() + 1)
        out.certified = false;

    for (const auto &y : out.basis)
        for (int k = 1; k <= m; ++k) {
            const Condition c{h * k + j, k, 0, j};
            const ConditionResult r = check_membership(y, c, D, fg, n_cert);
            out.certified = out.certified && r.pass && r.certified;
        }
    std::vector<std::vector<TruncatedSeries>> mat(d, std::vector<TruncatedSeries>(d, TruncatedSeries(ring, kExact)));
    for (int r = 0; r < d; ++r)
        for (int t = 0; t < d; ++t)
            mat[r][t] = cols[t][r];
    const TruncatedSeries det = determinant(mat, ring);
    const int sum_h = std::accumulate(fil.jumps.begin(), fil.jumps.end(), 0);
    const std::int64_t n_det = std::min(n_cert, normalized_precision(det));
    if (2 * n_det < fg.target_precision() + 1)
        out.certified = false;
    for (int k = 1; k <= m; ++k) {
        const DivisorValuation dv = divisor_valuation({det, {d * poles}}, k, 0, fg, n_det);
        out.determinant_orders.push_back(dv.value);
        out.certified = out.certified && dv.certified && dv.value == -sum_h;
    }
    return out;
}

// ---------------------------------------------------------------------------

GammaFactorization gamma_stable_factor(const TruncatedSeries &f, int j, const FormalGroupTable &fg, int W)
{
    const FieldContext &F = fg.ctx();
    if (f.ring()->nvars() != 1 || !f.is_exact())
        throw InputError("gamma_stable_factor needs an exact univariate polynomial");
    if (&f.ctx() != &F)
        throw InputError("polynomial and formal group live over different field contexts");
    const auto v0 = f.min_valuation();
    if (!v0)
        throw InputError("gamma_stable_factor: f is zero");
    W = std::min<int>(W, static_cast<int>(fg.degree_bound()));
    const std::int64_t n_cert = fg.target_precision();
    TruncatedSeries g = f.scaled(F.one().shift(-*v0));

    GammaFactorization out;
    out.stable = true;

    // Order at Y = 0.
    int m0 = 0;
    while (m0 <= g.degree_in(0)) {
        const PadicElement c = g.coeff(Exponent{m0});
        if (!c.is_zero() && c.valuation() < n_cert)
            break;
        if (!c.is_zero())
            throw PrecisionError("gamma_stable_factor: coefficient " + c.str() + " of degree " + std::to_string(m0) +
                                 " is nonzero but below the certified precision");
        ++m0;
    }
    TruncatedSeries tail(fg.univariate_ring(), kExact);
    for (const auto &[m, c] : g.terms())
        if (m[0] >= m0)
            tail.set(Exponent{m[0] - m0}, c);
    const TruncatedSeries tail_inv = inverse(tail.truncated(W));

    // gamma_a(f)/f must be integral for a Gamma-stable principal ideal.
    std::vector<PadicElement> units{F.one() + F.from_int(F.p()), -F.one(), F.one() + F.generator().shift(1)};
    for (const auto &a : units) {
        const TruncatedSeries ga = compose(g, {fg.mult_by(a.frobenius(j))}, W);
        TruncatedSeries shifted(fg.univariate_ring(), ga.wmax() - m0);
        for (const auto &[m, c] : ga.entries()) {
            if (m[0] < m0) {
                if (!c.is_zero() && c.valuation() < n_cert) {
                    out.stable = false;
                    out.obstruction = "gamma_a(f) does not vanish to order " + std::to_string(m0) + " at Y = 0";
                }
                continue;
            }
            shifted.set(Exponent{m[0] - m0}, c);
        }
        if (!out.stable)
            break;
        const TruncatedSeries r = multiply(shifted, tail_inv, std::min(shifted.wmax(), tail_inv.wmax()));
        for (const auto &[m, c] : r.terms())
            if (c.valuation() < 0) {
                out.stable = false;
                out.obstruction = "gamma_a(f)/f has coefficient " + c.str() + " at degree " + std::to_string(m[0]) +
                                  " for a = " + a.str();
                break;
            }
        if (r.floor() < 0)
            throw PrecisionError("gamma_a(f)/f: coefficients only known to O(p^" + std::to_string(r.floor()) + ")");
        if (!out.stable)
            break;
    }
    if (!out.stable)
        return out;

    // Greedy extraction, Q_0 first.
    out.exponents.push_back(m0);
    g = tail;
    std::int64_t scale = *v0;
    for (int n = 1;; ++n) {
        const TruncatedSeries Q = fg.q_polynomial(n);
        if (Q.degree_in(0) > g.degree_in(0))
            break;
        int e = 0;
        for (;;) {
            if (Q.degree_in(0) > g.degree_in(0))
                break;
            const DivisionResult dr = divide_disk(g, Q, 0);
            bool zero = true, exact_zero = true;
            for (const auto &rem : dr.remainder)
                for (const auto &[m, c] : rem.terms()) {
                    zero = zero && c.valuation() >= n_cert;
                    exact_zero = exact_zero && c.is_zero();
                }
            if (!zero)
                break;
            // Exact input: a remainder that is small but nonzero cannot be
            // told apart from divisibility at this precision.
            if (!exact_zero)
                throw PrecisionError("gamma_stable_factor: remainder mod Q_" + std::to_string(n) +
                                     " vanishes only below the certified precision");
            ++e;
            ++scale; // Q_n = p * (Q_n/p)
            g = dr.quotient;
        }
        out.exponents.push_back(e);
    }
    while (out.exponents.size() > 1 && out.exponents.back() == 0)
        out.exponents.pop_back();
    out.residual = g.scaled(F.one().shift(scale));

    // A polynomial is a unit of R+ when it has no zero in the open disk:
    // v(u_0) <= v(u_k) for all k.
    const PadicElement u0 = out.residual.coeff(Exponent{});
    out.factored = !u0.is_zero();
    for (const auto &[m, c] : out.residual.terms())
        if (m[0] > 0 && out.factored && c.valuation() < u0.valuation()) {
            out.factored = false;
            out.obstruction = "residual has a zero in the open unit disk (coefficient at degree " +
                              std::to_string(m[0]) + ")";
        }
    if (u0.is_zero())
        out.obstruction = "residual vanishes at Y = 0";
    return out;
}

} // namespace lt
