#include "lt/series.hpp"

#include <algorithm>
#include <sstream>

namespace lt {

namespace {

struct WeightedTerm {
    std::int64_t w;
    Exponent m;
    PadicElement c;
};

std::vector<WeightedTerm> by_weight(const TruncatedSeries &f)
{
    std::vector<WeightedTerm> out;
    out.reserve(f.size() + f.vanished().size());
    for (const auto &[m, c] : f.entries())
        out.push_back({f.ring()->weight(m), m, c});
    std::stable_sort(out.begin(), out.end(), [](const WeightedTerm &a, const WeightedTerm &b) { return a.w < b.w; });
    return out;
}

void require_same_ring(const TruncatedSeries &f, const TruncatedSeries &g)
{
    if (!f.ring() || !g.ring() || !f.ring()->same(*g.ring()))
        throw std::invalid_argument("series: ring mismatch");
}

} // namespace

std::shared_ptr<const SeriesRing> SeriesRing::multivariable(FieldPtr field)
{
    std::vector<std::int64_t> w;
    std::int64_t pw = 1;
    for (int j = 0; j < field->h(); ++j) {
        w.push_back(pw);
        pw *= field->p();
    }
    return std::shared_ptr<const SeriesRing>(new SeriesRing(std::move(field), std::move(w)));
}

std::shared_ptr<const SeriesRing> SeriesRing::univariate(FieldPtr field)
{
    return std::shared_ptr<const SeriesRing>(new SeriesRing(std::move(field), {1}));
}

std::shared_ptr<const SeriesRing> SeriesRing::uniform(FieldPtr field, int nvars)
{
    if (nvars < 1 || nvars > kMaxVars)
        throw std::invalid_argument("series: unsupported variable count");
    return std::shared_ptr<const SeriesRing>(new SeriesRing(std::move(field), std::vector<std::int64_t>(nvars, 1)));
}

std::int64_t SeriesRing::weight(const Exponent &m) const
{
    std::int64_t w = 0;
    for (int j = 0; j < nvars(); ++j)
        w += m[j] * weights_[j];
    return w;
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(RingPtr ring, std::int64_t wmax) : ring_(std::move(ring)), wmax_(wmax)
{
    if (wmax_ < 0)
        throw std::invalid_argument("series: negative truncation");
}

TruncatedSeries TruncatedSeries::constant(RingPtr ring, const PadicElement &c, std::int64_t wmax)
{
    TruncatedSeries s(std::move(ring), wmax);
    s.set(Exponent{}, c);
    return s;
}

TruncatedSeries TruncatedSeries::one(RingPtr ring, std::int64_t wmax)
{
    const PadicElement c = ring->ctx().one();
    return constant(std::move(ring), c, wmax);
}

TruncatedSeries TruncatedSeries::variable(RingPtr ring, int j, std::int64_t wmax)
{
    Exponent m{};
    m.at(j) = 1;
    const PadicElement c = ring->ctx().one();
    return monomial(std::move(ring), m, c, wmax);
}

TruncatedSeries TruncatedSeries::monomial(RingPtr ring, const Exponent &m, const PadicElement &c, std::int64_t wmax)
{
    TruncatedSeries s(std::move(ring), wmax);
    s.set(m, c);
    return s;
}

std::int64_t TruncatedSeries::floor() const
{
    std::int64_t f = floor_;
    for (const auto &[m, a] : zeros_)
        f = std::min(f, a);
    return f;
}

std::vector<std::pair<Exponent, PadicElement>> TruncatedSeries::entries() const
{
    std::vector<std::pair<Exponent, PadicElement>> out(terms_.begin(), terms_.end());
    for (const auto &[m, a] : zeros_)
        out.emplace_back(m, ctx().zero(static_cast<int>(a)));
    return out;
}

PadicElement TruncatedSeries::coeff(const Exponent &m) const
{
    auto it = terms_.find(m);
    if (it != terms_.end())
        return it->second;
    std::int64_t a = std::min<std::int64_t>(floor_, 1L << 40);
    auto z = zeros_.find(m);
    if (z != zeros_.end())
        a = std::min(a, z->second);
    return ctx().zero(static_cast<int>(std::min<std::int64_t>(a, 1L << 30)));
}

void TruncatedSeries::set(const Exponent &m, const PadicElement &c)
{
    if (ring_->weight(m) > wmax_)
        return;
    terms_.erase(m);
    zeros_.erase(m);
    if (c.is_zero())
        zeros_[m] = c.valuation();
    else
        terms_[m] = c;
}

void TruncatedSeries::add_to(const Exponent &m, const PadicElement &c)
{
    if (ring_->weight(m) > wmax_)
        return;
    auto it = terms_.find(m);
    if (it != terms_.end()) {
        const PadicElement sum = it->second + c;
        if (sum.is_zero()) {
            terms_.erase(it);
            zeros_[m] = sum.valuation();
        } else {
            it->second = sum;
        }
        return;
    }
    auto z = zeros_.find(m);
    if (z != zeros_.end()) {
        const PadicElement sum = ctx().zero(static_cast<int>(z->second)) + c;
        zeros_.erase(z);
        set(m, sum);
        return;
    }
    set(m, c);
}

TruncatedSeries TruncatedSeries::truncated(std::int64_t w) const
{
    if (w >= wmax_)
        return *this;
    TruncatedSeries out(ring_, w);
    out.floor_ = floor_;
    for (const auto &[m, c] : terms_)
        if (ring_->weight(m) <= w)
            out.terms_.emplace(m, c);
    for (const auto &[m, a] : zeros_)
        if (ring_->weight(m) <= w)
            out.zeros_.emplace(m, a);
    return out;
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries out = *this;
    for (auto &[m, c] : out.terms_)
        c = -c;
    return out;
}

TruncatedSeries TruncatedSeries::map_coefficients(const std::function<PadicElement(const PadicElement &)> &fn) const
{
    TruncatedSeries out(ring_, wmax_);
    out.floor_ = floor_;
    for (const auto &[m, c] : entries())
        out.set(m, fn(c));
    return out;
}

TruncatedSeries TruncatedSeries::scaled(const PadicElement &s) const
{
    TruncatedSeries out = map_coefficients([&](const PadicElement &c) { return c * s; });
    if (floor_ != kExact)
        out.floor_ = floor_ + s.valuation();
    return out;
}

TruncatedSeries TruncatedSeries::frobenius(std::int64_t k) const
{
    return map_coefficients([k](const PadicElement &c) { return c.frobenius(k); });
}

std::optional<std::int64_t> TruncatedSeries::min_valuation() const
{
    std::optional<std::int64_t> best;
    for (const auto &[m, c] : terms_)
        if (!best || c.valuation() < *best)
            best = c.valuation();
    return best;
}

std::optional<std::int64_t> TruncatedSeries::order() const
{
    std::optional<std::int64_t> best;
    for (const auto &[m, c] : terms_) {
        const std::int64_t w = ring_->weight(m);
        if (!best || w < *best)
            best = w;
    }
    return best;
}

int TruncatedSeries::degree_in(int j) const
{
    int d = 0;
    for (const auto &[m, c] : terms_)
        d = std::max(d, m[j]);
    return d;
}

TruncatedSeries operator+(const TruncatedSeries &f, const TruncatedSeries &g)
{
    require_same_ring(f, g);
    TruncatedSeries out(f.ring(), std::min(f.wmax(), g.wmax()));
    out.lower_floor(std::min(f.global_floor(), g.global_floor()));
    for (const auto &[m, c] : f.entries())
        out.add_to(m, c);
    for (const auto &[m, c] : g.entries())
        out.add_to(m, c);
    return out;
}

TruncatedSeries operator-(const TruncatedSeries &f, const TruncatedSeries &g) { return f + (-g); }

TruncatedSeries operator*(const TruncatedSeries &f, const TruncatedSeries &g) { return multiply(f, g); }

TruncatedSeries multiply(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t cap)
{
    require_same_ring(f, g);
    const std::int64_t W = std::min({f.wmax(), g.wmax(), cap});
    TruncatedSeries out(f.ring(), W);

    const auto vf = f.min_valuation();
    const auto vg = g.min_valuation();
    if (f.global_floor() != kExact)
        out.lower_floor(vg ? f.global_floor() + std::min<std::int64_t>(*vg, 0) : f.global_floor());
    if (g.global_floor() != kExact)
        out.lower_floor(vf ? g.global_floor() + std::min<std::int64_t>(*vf, 0) : g.global_floor());

    const auto tf = by_weight(f);
    const auto tg = by_weight(g);
    const int n = f.ring()->nvars();
    for (const auto &a : tf) {
        if (!tg.empty() && a.w + tg.front().w > W)
            break;
        for (const auto &b : tg) {
            if (a.w + b.w > W)
                break;
            Exponent m{};
            for (int j = 0; j < n; ++j)
                m[j] = a.m[j] + b.m[j];
            out.add_to(m, a.c * b.c);
        }
    }
    return out;
}

TruncatedSeries power(const TruncatedSeries &f, int e, std::int64_t cap)
{
    if (e < 0)
        throw std::invalid_argument("series: negative power");
    TruncatedSeries result = TruncatedSeries::one(f.ring(), std::min(f.wmax(), cap));
    TruncatedSeries base = f.truncated(std::min(f.wmax(), cap));
    while (e > 0) {
        if (e & 1)
            result = multiply(result, base, cap);
        e >>= 1;
        if (e > 0)
            base = multiply(base, base, cap);
    }
    return result;
}

Comparison compare(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t target)
{
    require_same_ring(f, g);
    const std::int64_t W = std::min(f.wmax(), g.wmax());
    const TruncatedSeries d = (f.truncated(W) - g.truncated(W));
    Comparison r;
    r.margin = target;
    for (const auto &[m, c] : d.terms()) {
        if (c.valuation() < target) {
            r.equal = false;
            r.margin = std::min(r.margin, c.valuation());
        }
    }
    if (r.equal && d.floor() < target) {
        r.certified = false;
        r.margin = d.floor();
    }
    return r;
}

Rational gauss_valuation(const TruncatedSeries &f, const Rational &r)
{
    if (f.is_zero())
        throw std::domain_error("gauss_valuation: zero series has valuation +infinity");
    if (r <= Rational(0))
        throw std::invalid_argument("gauss_valuation: r must be positive");
    std::optional<Rational> best;
    for (const auto &[m, c] : f.terms()) {
        const Rational v = Rational(c.valuation()) + Rational(f.ring()->weight(m) * r.den(), r.num());
        if (!best || v < *best)
            best = v;
    }
    return *best;
}

// ---------------------------------------------------------------------------

namespace {

using TermList = std::vector<std::pair<Exponent, PadicElement>>;

struct Composer {
    const std::vector<TruncatedSeries> &G;
    RingPtr target;
    std::int64_t W;
    std::vector<std::vector<TruncatedSeries>> powers;

    const TruncatedSeries &pow(int j, int e)
    {
        auto &pw = powers[j];
        if (pw.empty())
            pw.push_back(TruncatedSeries::one(target, W));
        while (static_cast<int>(pw.size()) <= e)
            pw.push_back(multiply(pw.back(), G[j], W));
        return pw[e];
    }

    // Evaluates sum over terms of c * prod_{j <= v} G_j^{m_j}.
    TruncatedSeries eval(const TermList &terms, int v)
    {
        if (v < 0) {
            TruncatedSeries s(target, W);
            for (const auto &[m, c] : terms)
                s.add_to(Exponent{}, c);
            return s;
        }
        std::map<int, TermList> groups;
        for (const auto &[m, c] : terms)
            groups[m[v]].emplace_back(m, c);
        TruncatedSeries acc(target, W);
        for (auto &[e, group] : groups) {
            TruncatedSeries inner = eval(group, v - 1);
            acc += (e == 0) ? inner : multiply(inner, pow(v, e), W);
        }
        return acc;
    }
};

} // namespace

TruncatedSeries compose(const TruncatedSeries &f, const std::vector<TruncatedSeries> &G, std::int64_t cap)
{
    const int n = f.ring()->nvars();
    if (static_cast<int>(G.size()) != n)
        throw std::invalid_argument("compose: wrong number of substitutions");
    const RingPtr target = G.at(0).ring();
    for (const auto &g : G) {
        if (!g.ring()->same(*target))
            throw std::invalid_argument("compose: substitutions live in different rings");
        if (g.terms().count(Exponent{}))
            throw InputError("compose: substituted series has a nonzero constant term");
        if (&g.ctx() != &f.ctx())
            throw std::invalid_argument("compose: field mismatch");
    }

    std::int64_t W = kExact;
    if (!f.is_exact()) {
        for (int j = 0; j < n; ++j) {
            const auto ord = G[j].order();
            std::int64_t mu = kExact;
            if (ord)
                mu = *ord;
            else if (!G[j].is_exact())
                mu = G[j].wmax() + 1;
            if (mu == kExact)
                continue;
            const __int128 num = static_cast<__int128>(mu) * (f.wmax() + 1);
            const std::int64_t wj = f.ring()->weight(j);
            const __int128 bound = (num + wj - 1) / wj - 1;
            if (bound < W)
                W = static_cast<std::int64_t>(bound);
        }
    }
    for (int j = 0; j < n; ++j)
        if (f.depends_on(j))
            W = std::min(W, G[j].wmax());
    W = std::min(W, cap);

    Composer comp{G, target, W, std::vector<std::vector<TruncatedSeries>>(n)};
    TermList terms = f.entries();
    TruncatedSeries out = comp.eval(terms, n - 1);

    out.lower_floor(f.global_floor());
    return out;
}

TruncatedSeries substitute(const TruncatedSeries &f, int j, const TruncatedSeries &g)
{
    require_same_ring(f, g);
    std::vector<TruncatedSeries> G;
    for (int i = 0; i < f.ring()->nvars(); ++i)
        G.push_back(i == j ? g : TruncatedSeries::variable(f.ring(), i, kExact));
    return compose(f, G);
}

TruncatedSeries drop_variable(const TruncatedSeries &f, int j)
{
    TruncatedSeries out(f.ring(), f.wmax());
    out.lower_floor(f.global_floor());
    for (const auto &[m, c] : f.entries())
        if (m[j] == 0)
            out.set(m, c);
    return out;
}

TruncatedSeries embed(const TruncatedSeries &f, const RingPtr &target, int j)
{
    if (f.ring()->nvars() != 1)
        throw std::invalid_argument("embed: source must be univariate");
    return compose(f, {TruncatedSeries::variable(target, j, kExact)});
}

TruncatedSeries as_polynomial(const TruncatedSeries &f)
{
    TruncatedSeries out(f.ring(), kExact);
    out.lower_floor(f.global_floor());
    for (const auto &[m, c] : f.entries())
        out.set(m, c);
    return out;
}

TruncatedSeries partial_derivative(const TruncatedSeries &f, int j)
{
    const std::int64_t wj = f.ring()->weight(j);
    const std::int64_t W = f.is_exact() ? kExact : std::max<std::int64_t>(f.wmax() - wj, 0);
    TruncatedSeries out(f.ring(), W);
    out.lower_floor(f.global_floor());
    if (!f.is_exact() && f.wmax() < wj)
        return out;
    for (const auto &[m, c] : f.entries()) {
        if (m[j] == 0)
            continue;
        Exponent e = m;
        e[j] -= 1;
        out.add_to(e, c * f.ctx().from_int(m[j]));
    }
    return out;
}

TruncatedSeries inverse(const TruncatedSeries &u)
{
    const PadicElement c = u.coeff(Exponent{});
    if (c.is_zero())
        throw PrecisionError("series inverse: constant term is not known to be invertible");
    const PadicElement ci = c.inverse();
    TruncatedSeries x(u.ring(), u.wmax());
    x.lower_floor(u.global_floor());
    for (const auto &[m, cc] : u.entries())
        if (m != Exponent{})
            x.set(m, cc * ci);
    if (!x.is_zero() && u.is_exact())
        throw InputError("series inverse: exact polynomial with infinite inverse needs a truncation");
    TruncatedSeries negx = -x;
    TruncatedSeries sum = TruncatedSeries::one(u.ring(), u.wmax());
    TruncatedSeries term = sum;
    while (true) {
        term = multiply(term, negx, u.wmax());
        if (term.is_zero())
            break;
        sum += term;
    }
    return sum.scaled(ci);
}

TruncatedSeries reversion(const TruncatedSeries &f)
{
    if (f.ring()->nvars() != 1)
        throw std::invalid_argument("reversion: series must be univariate");
    if (f.is_exact())
        throw InputError("reversion: needs a truncation bound");
    Exponent e1{};
    e1[0] = 1;
    const PadicElement c1 = f.coeff(e1);
    if (c1.is_zero())
        throw PrecisionError("reversion: linear coefficient is zero or unknown");
    if (f.terms().count(Exponent{}))
        throw InputError("reversion: series has a constant term");
    const RingPtr R = f.ring();
    const std::int64_t W = f.wmax();
    const TruncatedSeries T = TruncatedSeries::variable(R, 0, kExact);
    const TruncatedSeries df = partial_derivative(f, 0);

    TruncatedSeries g = TruncatedSeries::monomial(R, e1, c1.inverse(), kExact);
    std::int64_t prec = 1;
    while (prec < W) {
        prec = std::min(2 * prec, W);
        const TruncatedSeries fg = compose(f.truncated(prec), {g});
        const TruncatedSeries dfg = compose(df.truncated(prec - 1), {g}, prec - 1);
        const TruncatedSeries step = multiply(fg - T, as_polynomial(inverse(dfg)), prec);
        g = as_polynomial(g - step);
    }
    return g.truncated(W);
}

std::string TruncatedSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        os << (first ? "" : " + ") << c.str();
        for (int j = 0; j < ring_->nvars(); ++j)
            if (m[j])
                os << "*Y" << j << "^" << m[j];
        first = false;
    }
    if (first)
        os << "0";
    if (!is_exact())
        os << " + O(w>" << wmax_ << ")";
    return os.str();
}

} // namespace lt
