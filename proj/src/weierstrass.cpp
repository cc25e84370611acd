#include "lt/weierstrass.hpp"

#include <algorithm>

namespace lt {

namespace {

Exponent unit_exponent(int j, int e)
{
    Exponent m{};
    m[j] = e;
    return m;
}

// Scalar coefficients p_0..p_d of a univariate exact polynomial.
std::vector<PadicElement> coefficients(const TruncatedSeries &P)
{
    if (P.ring()->nvars() != 1)
        throw InputError("divisor polynomial must be univariate");
    if (!P.is_exact())
        throw InputError("divisor polynomial must be exact");
    const int d = P.degree_in(0);
    std::vector<PadicElement> c;
    for (int k = 0; k <= d; ++k)
        c.push_back(P.coeff(unit_exponent(0, k)));
    return c;
}

void require_monic(const std::vector<PadicElement> &c)
{
    const PadicElement &lead = c.back();
    const FieldContext &F = *lead.context();
    const PadicElement diff = lead - F.one();
    if (c.size() < 2 || !(diff.is_zero() || diff.valuation() >= F.precision()))
        throw InputError("divisor polynomial is not monic of positive degree");
}

using Rows = std::map<int, TruncatedSeries>;

// Splits f by powers of Y_i into exact Y_i-free rows.
Rows split_rows(const TruncatedSeries &f, int i)
{
    Rows rows;
    for (const auto &[m, c] : f.entries()) {
        Exponent r = m;
        r[i] = 0;
        auto it = rows.find(m[i]);
        if (it == rows.end())
            it = rows.emplace(m[i], TruncatedSeries(f.ring(), kExact)).first;
        it->second.add_to(r, c);
    }
    return rows;
}

TruncatedSeries shift_var(const TruncatedSeries &row, int i, int e)
{
    TruncatedSeries out(row.ring(), row.wmax());
    out.lower_floor(row.global_floor());
    for (const auto &[m, c] : row.entries()) {
        Exponent x = m;
        x[i] += e;
        out.set(x, c);
    }
    return out;
}

// Long division of the rows (in place) by a monic polynomial with
// coefficients c (c.back() == 1). Returns quotient rows.
Rows long_divide(Rows &rows, const std::vector<PadicElement> &c)
{
    const int d = static_cast<int>(c.size()) - 1;
    Rows quot;
    while (!rows.empty()) {
        auto top = std::prev(rows.end());
        const int e = top->first;
        if (e < d)
            break;
        TruncatedSeries R = top->second;
        rows.erase(top);
        if (R.is_zero() && R.vanished().empty())
            continue;
        quot.emplace(e - d, R);
        for (int k = 0; k < d; ++k) {
            if (c[k].is_zero() && c[k].valuation() >= c[k].context()->precision() * 2)
                continue;
            auto it = rows.find(e - d + k);
            if (it == rows.end())
                it = rows.emplace(e - d + k, TruncatedSeries(R.ring(), kExact)).first;
            it->second = it->second - R.scaled(c[k]);
        }
    }
    return quot;
}

TruncatedSeries assemble(const Rows &rows, const RingPtr &ring, int i, std::int64_t wmax)
{
    TruncatedSeries out(ring, kExact);
    for (const auto &[e, row] : rows)
        out += shift_var(row, i, e);
    return wmax == kExact ? out : out.truncated(wmax);
}

std::vector<TruncatedSeries> remainder_list(const Rows &rows, const RingPtr &ring, int d, std::int64_t W,
                                            std::int64_t wi)
{
    std::vector<TruncatedSeries> out;
    for (int k = 0; k < d; ++k) {
        auto it = rows.find(k);
        TruncatedSeries r = it == rows.end() ? TruncatedSeries(ring, kExact) : it->second;
        if (W != kExact)
            r = r.truncated(std::max<std::int64_t>(W - k * wi, 0));
        out.push_back(r);
    }
    return out;
}

void check_same_field(const TruncatedSeries &f, const TruncatedSeries &P)
{
    if (&f.ctx() != &P.ctx())
        throw std::invalid_argument("division: field mismatch");
}

} // namespace

DivisionResult divide_disk(const TruncatedSeries &f, const TruncatedSeries &P, int i)
{
    check_same_field(f, P);
    const auto c = coefficients(P);
    require_monic(c);
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        if (!c[k].is_zero() && c[k].valuation() < 1)
            throw InputError("divide_disk: nonleading coefficient of P is not divisible by p");
    const int d = static_cast<int>(c.size()) - 1;

    Rows rows = split_rows(f, i);
    const Rows quot = long_divide(rows, c);
    DivisionResult r;
    r.certified_degree = f.wmax();
    r.quotient = assemble(quot, f.ring(), i, f.wmax());
    r.remainder = remainder_list(rows, f.ring(), d, f.wmax(), f.ring()->weight(i));
    return r;
}

TruncatedSeries reconstruct(const DivisionResult &r, const TruncatedSeries &P, int i)
{
    const RingPtr ring = r.quotient.ring();
    TruncatedSeries out = multiply(r.quotient, embed(P, ring, i));
    for (std::size_t k = 0; k < r.remainder.size(); ++k)
        out += shift_var(r.remainder[k], i, static_cast<int>(k)).truncated(r.certified_degree);
    return out.truncated(r.certified_degree);
}

// ---------------------------------------------------------------------------

LaurentSeries multiply(const LaurentSeries &f, const TruncatedSeries &P)
{
    const auto c = coefficients(P);
    const RingPtr ring = f.nonneg.ring();
    LaurentSeries out{f.var, multiply(f.nonneg, embed(P, ring, f.var)), {}};
    for (std::size_t e1 = 0; e1 < f.neg.size(); ++e1) {
        const int e = static_cast<int>(e1) + 1;
        for (int k = 0; k < static_cast<int>(c.size()); ++k) {
            if (c[k].is_zero())
                continue;
            const TruncatedSeries term = f.neg[e1].scaled(c[k]);
            const int s = k - e;
            if (s >= 0) {
                out.nonneg += shift_var(term, f.var, s);
            } else {
                if (static_cast<int>(out.neg.size()) < -s)
                    out.neg.resize(-s, TruncatedSeries(ring, kExact));
                out.neg[-s - 1] += term;
            }
        }
    }
    return out;
}

LaurentSeries operator-(const LaurentSeries &f, const LaurentSeries &g)
{
    LaurentSeries out{f.var, f.nonneg - g.nonneg, {}};
    const std::size_t n = std::max(f.neg.size(), g.neg.size());
    const RingPtr ring = f.nonneg.ring();
    for (std::size_t e = 0; e < n; ++e) {
        const TruncatedSeries a = e < f.neg.size() ? f.neg[e] : TruncatedSeries(ring, kExact);
        const TruncatedSeries b = e < g.neg.size() ? g.neg[e] : TruncatedSeries(ring, kExact);
        out.neg.push_back(a - b);
    }
    return out;
}

Comparison compare_to_zero(const LaurentSeries &f, std::int64_t target)
{
    const TruncatedSeries zero(f.nonneg.ring(), kExact);
    Comparison r = compare(f.nonneg, zero, target);
    for (const auto &n : f.neg) {
        const Comparison c = compare(n, zero, target);
        r.margin = std::min(r.margin, c.margin);
        r.equal = r.equal && c.equal;
        r.certified = r.certified && c.certified;
    }
    return r;
}

AnnulusDivisionResult divide_annulus(const LaurentSeries &f, const TruncatedSeries &P, int i, const Rational &s)
{
    if (s <= Rational(0))
        throw InputError("divide_annulus: annulus parameter s must be positive");
    check_same_field(f.nonneg, P);
    if (f.var != i)
        throw InputError("divide_annulus: Laurent variable differs from the division variable");
    const auto c = coefficients(P);
    require_monic(c);
    const int d = static_cast<int>(c.size()) - 1;
    const PadicElement p0 = c[0];
    if (p0.is_zero())
        throw InputError("divide_annulus: P(0) is not invertible at working precision");
    const PadicElement p0inv = p0.inverse();
    const RingPtr ring = f.nonneg.ring();
    const FieldContext &F = f.nonneg.ctx();
    for (const auto &n : f.neg)
        if (n.depends_on(i))
            throw InputError("divide_annulus: tail coefficients must be free of the Laurent variable");

    // f+ by plain long division.
    Rows rows = split_rows(f.nonneg, i);
    const Rows quot = long_divide(rows, c);
    AnnulusDivisionResult r;
    r.certified_degree = f.nonneg.wmax();
    r.quotient.var = i;
    r.quotient.nonneg = assemble(quot, ring, i, kExact);
    std::vector<TruncatedSeries> rem(d, TruncatedSeries(ring, kExact));
    for (const auto &[e, row] : rows)
        rem[e] += row;

    // f- in T = 1/Y_i, divided by Q(T) = sum_k (p_{d-k}/p_0) T^k.
    std::vector<PadicElement> qc;
    for (int k = 0; k <= d; ++k)
        qc.push_back(c[d - k] * p0inv);
    Rows trows;
    for (std::size_t e = 0; e < f.neg.size(); ++e)
        trows.emplace(static_cast<int>(e) + 1, f.neg[e]);
    const Rows tquot = long_divide(trows, qc);
    // q(T) Q(T) = sum_e q_e Y^{-e-d} P(Y) / p_0
    for (const auto &[e, row] : tquot) {
        const int neg = e + d;
        if (static_cast<int>(r.quotient.neg.size()) < neg)
            r.quotient.neg.resize(neg, TruncatedSeries(ring, kExact));
        r.quotient.neg[neg - 1] += row.scaled(p0inv);
    }

    // Leftover r_k Y^{-k}, k < d: Y^{-k} = A_k(Y) + P(Y) B_k(Y^{-1}).
    std::vector<PadicElement> u(d, F.zero());
    for (int j = 1; j <= d; ++j)
        u[j - 1] = -(c[j] * p0inv);
    std::vector<PadicElement> A(d, F.zero());
    A[0] = F.one();
    std::map<int, PadicElement> B; // exponent e >= 1 -> coefficient of Y^{-e}
    int kmax = trows.empty() ? 0 : trows.rbegin()->first;
    for (int k = 1; k <= kmax; ++k) {
        const PadicElement a0 = A[0];
        std::vector<PadicElement> next(d, F.zero());
        for (int j = 0; j + 1 < d; ++j)
            next[j] = A[j + 1];
        for (int j = 0; j < d; ++j)
            next[j] = next[j] + a0 * u[j];
        std::map<int, PadicElement> nb;
        for (const auto &[e, v] : B)
            nb[e + 1] = v;
        auto it = nb.find(1);
        const PadicElement add = a0 * p0inv;
        if (it == nb.end())
            nb.emplace(1, add);
        else
            it->second = it->second + add;
        A = std::move(next);
        B = std::move(nb);
        auto row = trows.find(k);
        if (row == trows.end())
            continue;
        for (int j = 0; j < d; ++j)
            rem[j] += row->second.scaled(A[j]);
        for (const auto &[e, v] : B) {
            if (static_cast<int>(r.quotient.neg.size()) < e)
                r.quotient.neg.resize(e, TruncatedSeries(ring, kExact));
            r.quotient.neg[e - 1] += row->second.scaled(v);
        }
    }
    if (auto row0 = trows.find(0); row0 != trows.end())
        rem[0] += row0->second;

    const std::int64_t W = f.nonneg.wmax();
    for (int k = 0; k < d; ++k)
        r.remainder.push_back(W == kExact ? rem[k] : rem[k].truncated(std::max<std::int64_t>(W - k * ring->weight(i), 0)));
    if (W != kExact)
        r.quotient.nonneg = r.quotient.nonneg.truncated(W);
    return r;
}

LaurentSeries reconstruct(const AnnulusDivisionResult &r, const TruncatedSeries &P, int i)
{
    LaurentSeries out = multiply(r.quotient, P);
    for (std::size_t k = 0; k < r.remainder.size(); ++k)
        out.nonneg += shift_var(r.remainder[k], i, static_cast<int>(k));
    if (r.certified_degree != kExact)
        out.nonneg = out.nonneg.truncated(r.certified_degree);
    return out;
}

// ---------------------------------------------------------------------------

DivisorValuation divisor_valuation(const LambdaFraction &x, int k, int i, const FormalGroupTable &fg,
                                   std::int64_t n_cert)
{
    const TruncatedSeries P = fg.q_polynomial(k);
    const bool exact = x.numerator.is_exact();
    TruncatedSeries g = x.numerator;
    // Orders are insensitive to scalars; work at Gauss valuation 0.
    if (const auto v = g.min_valuation(); v && *v != 0)
        g = g.scaled(fg.ctx().one().shift(-*v));
    DivisorValuation out;
    out.certified = exact;
    int e = 0;
    for (;;) {
        // Stored digits are known digits: only tracked zeros may hide a
        // nonzero value, and they are trusted up to their absolute precision.
        bool vanishes = true;
        for (const auto &[m, c] : g.terms())
            if (!c.is_zero())
                vanishes = false;
        if (vanishes) {
            bool known = g.floor() >= n_cert;
            for (const auto &[m, c] : g.terms())
                known = known && c.valuation() >= n_cert;
            if (known)
                throw InputError("divisor_valuation: numerator vanishes at certified precision");
            out.certified = false;
            break;
        }
        const DivisionResult r = divide_disk(g, P, i);
        std::optional<std::int64_t> low;
        bool uncertain = false;
        for (const auto &f : r.remainder) {
            for (const auto &[m, c] : f.terms()) {
                if (!c.is_zero())
                    low = low ? std::min(*low, c.valuation()) : c.valuation();
                else if (c.valuation() < n_cert)
                    uncertain = true;
            }
            if (f.floor() < n_cert)
                uncertain = true;
        }
        if (low) {
            out.margin = *low - n_cert;
            break;
        }
        if (uncertain) {
            out.certified = false;
            break;
        }
        ++e;
        g = r.quotient;
        if (const auto v = g.min_valuation(); v && *v != 0)
            g = g.scaled(fg.ctx().one().shift(-*v));
        // A truncated quotient known below degree deg(P) cannot be divided again.
        if (!g.is_exact() && g.wmax() < P.degree_in(0) * g.ring()->weight(i)) {
            out.certified = false;
            break;
        }
    }
    out.value = e - ((k >= 1) ? x.poles.at(i) : 0);
    return out;
}

DivisorValuation divisor_valuation(const LambdaFraction &x, int k, int i, const FormalGroupTable &fg)
{
    return divisor_valuation(x, k, i, fg, fg.target_precision());
}

std::int64_t normalized_precision(const TruncatedSeries &f)
{
    const auto v = f.min_valuation();
    if (!v)
        return kExact;
    std::int64_t out = kExact;
    for (const auto &[m, c] : f.terms())
        out = std::min(out, c.absolute_precision() - *v);
    if (f.floor() != kExact)
        out = std::min(out, f.floor() - *v);
    return out;
}

} // namespace lt
