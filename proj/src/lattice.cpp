#include "lt/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace lt {

namespace {

bool is_zero_vector(const Vector &v)
{
    return std::all_of(v.begin(), v.end(), [](const PadicElement &x) { return x.is_zero(); });
}

bool is_zero_series(const TruncatedSeries &f)
{
    for (const auto &[m, c] : f.terms())
        if (!c.is_zero())
            return false;
    return true;
}

void require_square(const Matrix &m, int d, const char *what)
{
    if (m.rows() != d || m.cols() != d)
        throw InputError(std::string(what) + ": expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
}

// Runs body(0..n-1) on up to `jobs` threads; rethrows the first exception.
void parallel_for(int n, int jobs, const std::function<void(int)> &body)
{
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int t = 0; t < n; ++t)
            body(t);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (int t = next++; t < n; t = next++) {
                try {
                    body(t);
                } catch (...) {
                    std::lock_guard lock(err_mutex);
                    if (!err)
                        err = std::current_exception();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

// Q_k(Y)/p in the univariate ring.
TruncatedSeries q_over_p(const FormalGroupTable &fg, int k)
{
    const TruncatedSeries Q = fg.q_polynomial(k);
    return k == 0 ? Q : Q.scaled(fg.ctx().one().shift(-1));
}

std::set<int> level_ks(const LatticeLevel &level, int i)
{
    std::set<int> ks;
    for (const auto &c : membership_conditions(level.h, level.n))
        if (c.i == i)
            ks.insert(c.k);
    return ks;
}

} // namespace

// ---------------------------------------------------------------------------

Subspace Filtration::step(int m) const
{
    std::vector<Vector> cols;
    for (int s = 0; s < basis.cols(); ++s)
        if (jumps[s] >= m)
            cols.push_back(basis.column(s));
    return Subspace(basis.ctx(), basis.rows(), cols);
}

int Filtration::min_jump() const { return *std::min_element(jumps.begin(), jumps.end()); }
int Filtration::max_jump() const { return *std::max_element(jumps.begin(), jumps.end()); }

FilteredPhiModule::FilteredPhiModule(FieldPtr field, Matrix phi_q, std::vector<Filtration> fils)
    : field_(std::move(field)), phi_(std::move(phi_q)), fils_(std::move(fils))
{
    const int d = phi_.rows();
    if (d < 1)
        throw InputError("module dimension must be >= 1");
    require_square(phi_, d, "phi_q");
    if (&phi_.ctx() != field_.get())
        throw InputError("phi_q lives over a different field context");
    if (static_cast<int>(fils_.size()) != field_->h())
        throw InputError("expected " + std::to_string(field_->h()) + " filtrations, got " +
                         std::to_string(fils_.size()));
    try {
        phi_inv_ = phi_.inverse();
    } catch (const InputError &) {
        throw InputError("phi_q is not invertible at working precision");
    }
    for (std::size_t j = 0; j < fils_.size(); ++j) {
        require_square(fils_[j].basis, d, "adapted basis");
        if (static_cast<int>(fils_[j].jumps.size()) != d)
            throw InputError("filtration " + std::to_string(j) + ": need one jump per basis vector");
        if (fils_[j].basis.rank() != d)
            throw InputError("filtration " + std::to_string(j) + ": adapted basis is not invertible");
    }
}

FilteredPhiModule FilteredPhiModule::from_chains(
    FieldPtr field, Matrix phi_q, const std::vector<std::vector<std::pair<int, std::vector<Vector>>>> &chains)
{
    const FieldContext &F = *field;
    const int d = phi_q.rows();
    std::vector<Filtration> fils;
    for (std::size_t j = 0; j < chains.size(); ++j) {
        auto chain = chains[j];
        std::sort(chain.begin(), chain.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<std::pair<int, Subspace>> steps;
        for (const auto &[m, span] : chain) {
            Subspace s(F, d, span);
            if (!steps.empty() && !steps.back().second.contains(s))
                throw InputError("filtration " + std::to_string(j) + ": Fil^" + std::to_string(m) +
                                 " is not contained in the previous step");
            steps.emplace_back(m, s);
        }
        Filtration fil{Matrix(F, d, 0), {}};
        std::vector<Vector> cols;
        Subspace acc = Subspace::zero(F, d);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            for (const auto &v : it->second.complement_of(acc)) {
                cols.push_back(v);
                fil.jumps.push_back(it->first);
                acc = acc + Subspace(F, d, {v});
            }
        const int bottom = steps.empty() ? 0 : steps.front().first - 1;
        for (const auto &v : Subspace::full(F, d).complement_of(acc)) {
            cols.push_back(v);
            fil.jumps.push_back(bottom);
        }
        fil.basis = Matrix::from_columns(F, d, cols);
        fils.push_back(std::move(fil));
    }
    return FilteredPhiModule(std::move(field), std::move(phi_q), std::move(fils));
}

bool FilteredPhiModule::is_effective() const
{
    return std::all_of(fils_.begin(), fils_.end(), [](const Filtration &f) { return f.min_jump() >= 0; });
}

std::vector<int> FilteredPhiModule::jump_multiset(int j) const
{
    auto v = fils_.at(j).jumps;
    std::sort(v.begin(), v.end());
    return v;
}

bool FilteredPhiModule::is_split() const
{
    const Matrix &B = fils_[0].basis;
    const Matrix conj = B.inverse() * phi_ * B;
    for (int r = 0; r < d(); ++r)
        for (int c = 0; c < d(); ++c)
            if (r != c && !conj(r, c).is_zero())
                return false;
    const auto cols = B.columns();
    for (const auto &fil : fils_)
        for (int m = fil.min_jump(); m <= fil.max_jump(); ++m) {
            const Subspace s = fil.step(m);
            std::vector<Vector> inside;
            for (const auto &c : cols)
                if (s.contains(c))
                    inside.push_back(c);
            if (Subspace(ctx(), d(), inside).dim() != s.dim())
                return false;
        }
    return true;
}

FilteredPhiModule twist(const FilteredPhiModule &D, int l)
{
    std::vector<Filtration> fils;
    for (int j = 0; j < D.h(); ++j) {
        Filtration f = D.fil(j);
        for (int &x : f.jumps)
            x += l;
        fils.push_back(std::move(f));
    }
    return FilteredPhiModule(D.field(), D.phi_q(), std::move(fils));
}

// ---------------------------------------------------------------------------

std::vector<Condition> membership_conditions(int h, int n)
{
    if (h < 1 || n < h)
        throw InputError("conditions need n >= h >= 1");
    std::vector<Condition> out;
    for (int np = h; np <= n; ++np)
        out.push_back({np, np / h, np % h, slot_of(np, h)});
    return out;
}

int LatticeLevel::max_k() const { return n / h; }

LatticeLevel LatticeLevel::make(int p, int h, int n, int precision)
{
    if (n < h)
        throw InputError("level n must be >= h");
    if (precision < 1)
        throw InputError("precision must be >= 1");
    LatticeLevel L;
    L.n = n;
    L.h = h;
    L.precision = precision;
    long double s = 1;
    for (int i = 0; i < h; ++i)
        s *= p;
    s -= 1;
    for (int i = 0; i < n - h; ++i)
        s *= p;
    L.s_n = s > 4.0e18L ? -1 : static_cast<std::int64_t>(s);
    return L;
}

// ---------------------------------------------------------------------------

ModuleElement Generator::materialize(const RingPtr &ring) const
{
    TruncatedSeries scalar = TruncatedSeries::one(ring, kExact);
    for (std::size_t i = 0; i < factors.size(); ++i)
        scalar = multiply(scalar, embed(factors[i], ring, static_cast<int>(i)));
    ModuleElement y;
    y.poles = poles;
    for (const auto &c : v)
        y.numerators.push_back(scalar.scaled(c));
    return y;
}

Generator Generator::twisted(int l) const
{
    Generator g = *this;
    for (int &b : g.poles)
        b += l;
    for (auto &[key, a] : g.exponents)
        a += l;
    return g;
}

DivisorValuation generator_order(const Generator &g, int k, int i, const FormalGroupTable &fg)
{
    const LambdaFraction x{g.factors.at(i), {g.poles.at(i)}};
    return divisor_valuation(x, k, 0, fg);
}

namespace {

ConditionResult compare_orders(const Condition &c, const std::vector<std::optional<int>> &ords,
                               const std::vector<int> &jumps, bool certified)
{
    ConditionResult r;
    r.condition = c;
    r.certified = certified;
    for (std::size_t s = 0; s < ords.size(); ++s) {
        if (!ords[s]) {
            r.margins.push_back(std::nullopt);
            continue;
        }
        const int margin = *ords[s] + jumps[s];
        r.margins.push_back(margin);
        if (margin < 0 && r.pass) {
            r.pass = false;
            r.failed_coordinate = static_cast<int>(s);
        }
    }
    return r;
}

Matrix condition_transform(const FilteredPhiModule &D, const Condition &c)
{
    return D.fil(c.j).basis.inverse() * D.phi_q_inverse().pow(c.k);
}

} // namespace

ConditionResult check_membership(const ModuleElement &y, const Condition &c, const FilteredPhiModule &D,
                                 const FormalGroupTable &fg, std::int64_t n_cert)
{
    if (n_cert <= 0)
        n_cert = fg.target_precision();
    const int d = D.d();
    if (static_cast<int>(y.numerators.size()) != d)
        throw InputError("module element has the wrong number of coordinates");
    for (const auto &n : y.numerators)
        if (!n.is_exact())
            throw InputError("membership needs exact polynomial numerators");
    const Matrix T = condition_transform(D, c);
    const RingPtr ring = y.numerators[0].ring();
    std::vector<std::optional<int>> ords;
    bool certified = true;
    for (int s = 0; s < d; ++s) {
        TruncatedSeries z(ring, kExact);
        for (int t = 0; t < d; ++t)
            if (!T(s, t).is_zero())
                z += y.numerators[t].scaled(T(s, t));
        if (is_zero_series(z)) {
            ords.push_back(std::nullopt);
            continue;
        }
        // The frame change can cost digits; decide at what z holds, but
        // never below half the table target.
        const std::int64_t nz = std::min(n_cert, normalized_precision(z));
        const DivisorValuation dv = divisor_valuation({z, y.poles}, c.k, c.i, fg, nz);
        certified = certified && dv.certified && 2 * nz >= fg.target_precision() + 1;
        ords.push_back(dv.value);
    }
    return compare_orders(c, ords, D.fil(c.j).jumps, certified);
}

ConditionResult check_membership(const Generator &g, const Condition &c, const FilteredPhiModule &D,
                                 const FormalGroupTable &fg)
{
    const Vector z = condition_transform(D, c) * g.v;
    const DivisorValuation dv = generator_order(g, c.k, c.i, fg);
    std::vector<std::optional<int>> ords;
    for (const auto &x : z)
        ords.push_back(x.is_zero() ? std::nullopt : std::optional<int>(dv.value));
    return compare_orders(c, ords, D.fil(c.j).jumps, dv.certified);
}

// ---------------------------------------------------------------------------

LocalLattice LocalLattice::from_filtration(const Filtration &fil, const Matrix &P)
{
    LocalLattice L(P.ctx(), P.rows());
    for (int s = 0; s < fil.basis.cols(); ++s)
        L.add(P * fil.basis.column(s), -fil.jumps[s]);
    return L;
}

LocalLattice LocalLattice::standard(const FieldContext &F, int d)
{
    LocalLattice L(F, d);
    for (const auto &c : Matrix::identity(F, d).columns())
        L.add(c, 0);
    return L;
}

Subspace LocalLattice::level(int e) const
{
    std::vector<Vector> vs;
    for (const auto &[o, v] : gens_)
        if (o <= e)
            vs.push_back(v);
    return Subspace(*F_, d_, vs);
}

std::vector<int> LocalLattice::breakpoints() const
{
    std::set<int> s;
    for (const auto &[o, v] : gens_)
        s.insert(o);
    return {s.begin(), s.end()};
}

bool LocalLattice::is_full_rank() const
{
    const auto bp = breakpoints();
    return !bp.empty() && level(bp.back()).dim() == d_;
}

bool LocalLattice::contains(const LocalLattice &other) const
{
    auto bp = breakpoints();
    const auto ob = other.breakpoints();
    bp.insert(bp.end(), ob.begin(), ob.end());
    for (int e : bp)
        if (!level(e).contains(other.level(e)))
            return false;
    return true;
}

std::optional<int> LocalLattice::index_into(const LocalLattice &other) const
{
    if (!other.is_full_rank())
        return std::nullopt;
    const auto bp = breakpoints();
    const auto ob = other.breakpoints();
    if (bp.empty())
        return 0;
    const int top = std::max(ob.back() - bp.front(), 0);
    for (int a = 0; a <= top; ++a) {
        bool ok = true;
        for (int e : bp)
            ok = ok && other.level(e + a).contains(level(e));
        if (ok)
            return a;
    }
    return std::nullopt;
}

std::vector<Divisor> level_divisors(const LatticeLevel &level)
{
    std::set<Divisor> s;
    for (int i = 0; i < level.h; ++i)
        s.insert({0, i});
    for (const auto &c : membership_conditions(level.h, level.n))
        s.insert({c.k, c.i});
    return {s.begin(), s.end()};
}

LocalLattice expected_local_lattice(const FilteredPhiModule &D, const Divisor &div)
{
    if (div.k == 0)
        return LocalLattice::standard(D.ctx(), D.d());
    return LocalLattice::from_filtration(D.fil(slot_of(div.i, D.h())), D.phi_q().pow(div.k));
}

LocalLattice local_lattice(const std::vector<Generator> &gens, const Divisor &div, const FormalGroupTable &fg)
{
    if (gens.empty())
        throw InputError("local lattice of an empty generator list");
    LocalLattice L(fg.ctx(), static_cast<int>(gens[0].v.size()));
    for (const auto &g : gens) {
        if (is_zero_vector(g.v))
            continue;
        const DivisorValuation dv = generator_order(g, div.k, div.i, fg);
        if (!dv.certified)
            throw PrecisionError("divisor valuation along Q_" + std::to_string(div.k) + "(Y_" + std::to_string(div.i) +
                                 ") is not certified");
        L.add(g.v, dv.value);
    }
    return L;
}

// ---------------------------------------------------------------------------

LatticeBasis build_finite_level(const FilteredPhiModule &D, const LatticeLevel &level, const FormalGroupTable &fg,
                                int jobs)
{
    const FieldContext &F = D.ctx();
    const int d = D.d(), h = D.h();
    if (level.h != h || F.h() != h)
        throw InputError("level and module disagree on h");
    if (&fg.ctx() != &F)
        throw InputError("formal group and module live over different field contexts");
    // Below this the rank decisions cannot be told apart from rounding.
    constexpr int kMinLatticePrecision = 6;
    if (level.precision < kMinLatticePrecision)
        throw PrecisionError("level precision " + std::to_string(level.precision) + " is below " +
                             std::to_string(kMinLatticePrecision) + ", too low to decide filtration intersections");

    // Condition divisors and their local filtrations phi_q^k Fil_{slot(i)}.
    std::vector<Divisor> divs;
    for (const auto &dv : level_divisors(level))
        if (dv.k >= 1)
            divs.push_back(dv);
    const int nd = static_cast<int>(divs.size());
    std::vector<int> lo(nd), hi(nd);
    std::vector<Matrix> Ak(nd);
    for (int t = 0; t < nd; ++t) {
        const Filtration &fil = D.fil(slot_of(divs[t].i, h));
        lo[t] = fil.min_jump();
        hi[t] = fil.max_jump();
        Ak[t] = D.phi_q().pow(divs[t].k);
    }
    auto local_step = [&](int t, int m) {
        const Filtration &fil = D.fil(slot_of(divs[t].i, h));
        if (m <= lo[t])
            return Subspace::full(F, d);
        if (m > hi[t])
            return Subspace::zero(F, d);
        return fil.step(m).image(Ak[t]);
    };
    std::map<std::vector<int>, Subspace> cache;
    auto V = [&](const std::vector<int> &a) {
        auto it = cache.find(a);
        if (it != cache.end())
            return it->second;
        Subspace s = Subspace::full(F, d);
        for (int t = 0; t < nd && s.dim() > 0; ++t)
            s = s.intersect(local_step(t, a[t]));
        cache.emplace(a, s);
        return s;
    };

    std::vector<int> pole(h, 0);
    for (int i = 0; i < h; ++i)
        pole[i] = std::max(0, D.fil(slot_of(i, h)).max_jump());

    std::map<std::pair<int, int>, TruncatedSeries> qpow;
    auto factor_power = [&](int k, int e) {
        auto key = std::pair(k, e);
        auto it = qpow.find(key);
        if (it == qpow.end())
            it = qpow.emplace(key, power(q_over_p(fg, k), e)).first;
        return it->second;
    };

    LatticeBasis out;
    out.level = level;
    std::vector<int> a(lo);
    for (;;) {
        const Subspace Va = V(a);
        out.certainty = std::min(out.certainty, Va.certainty());
        if (Va.dim() > 0) {
            Subspace covers = Subspace::zero(F, d);
            for (int t = 0; t < nd; ++t) {
                if (a[t] + 1 > hi[t])
                    continue;
                auto b = a;
                ++b[t];
                covers = covers + V(b);
            }
            out.certainty = std::min(out.certainty, covers.certainty());
            for (const auto &v : Va.complement_of(covers)) {
                Generator g;
                g.v = v;
                g.poles = pole;
                for (int i = 0; i < h; ++i)
                    g.factors.push_back(TruncatedSeries::one(fg.univariate_ring(), kExact));
                for (int t = 0; t < nd; ++t) {
                    const int e = pole[divs[t].i] - a[t];
                    g.factors[divs[t].i] = multiply(g.factors[divs[t].i], factor_power(divs[t].k, e));
                    g.exponents[{divs[t].k, divs[t].i}] = a[t];
                }
                out.generators.push_back(std::move(g));
            }
        }
        int t = 0;
        while (t < nd && a[t] == hi[t]) {
            a[t] = lo[t];
            ++t;
        }
        if (t == nd)
            break;
        ++a[t];
    }
    // Rank decisions must hold to at least half the level precision.
    if (out.certainty < (level.precision + 1) / 2)
        throw PrecisionError("filtration intersections decided only modulo p^" + std::to_string(out.certainty) +
                             " (level precision " + std::to_string(level.precision) + ")");
    // Canonical order: total numerator degree, then exponents.
    std::stable_sort(out.generators.begin(), out.generators.end(), [](const Generator &x, const Generator &y) {
        int dx = 0, dy = 0;
        for (const auto &f : x.factors)
            dx += f.degree_in(0);
        for (const auto &f : y.factors)
            dy += f.degree_in(0);
        if (dx != dy)
            return dx < dy;
        return x.exponents < y.exponents;
    });

    const auto conds = membership_conditions(h, level.n);
    const int ng = static_cast<int>(out.generators.size());
    out.certificates.assign(ng, {});
    parallel_for(ng, jobs, [&](int g) {
        for (const auto &c : conds)
            out.certificates[g].push_back(check_membership(out.generators[g], c, D, fg));
    });
    bool all_pass = true;
    for (const auto &cs : out.certificates)
        for (const auto &r : cs)
            all_pass = all_pass && r.pass && r.certified;
    if (!all_pass)
        throw PrecisionError("a constructed generator failed its own membership certificate");

    out.complete = true;
    for (const auto &dv : level_divisors(level)) {
        if (local_lattice(out.generators, dv, fg) == expected_local_lattice(D, dv))
            out.spanning_certified.push_back(dv);
        else
            out.complete = false;
    }
    return out;
}

std::vector<Generator> split_oracle(const FilteredPhiModule &D, const LatticeLevel &level, const FormalGroupTable &fg)
{
    if (!D.is_split())
        throw InputError("split oracle needs phi_q diagonal in a common adapted basis");
    const int h = D.h();
    const Matrix &B = D.fil(0).basis;
    std::vector<Generator> out;
    for (int s = 0; s < D.d(); ++s) {
        const Vector v = B.column(s);
        Generator g;
        g.v = v;
        for (int i = 0; i < h; ++i) {
            const Filtration &fil = D.fil(slot_of(i, h));
            int jump = fil.min_jump();
            while (jump < fil.max_jump() && fil.step(jump + 1).contains(v))
                ++jump;
            TruncatedSeries u = TruncatedSeries::one(fg.univariate_ring(), kExact);
            if (jump >= 0) {
                g.poles.push_back(jump);
            } else {
                g.poles.push_back(0);
                for (int k : level_ks(level, i))
                    u = multiply(u, power(q_over_p(fg, k), -jump));
            }
            g.factors.push_back(u);
        }
        out.push_back(std::move(g));
    }
    return out;
}

OracleComparison compare_spans(const std::vector<Generator> &a, const std::vector<Generator> &b,
                               const LatticeLevel &level, const FormalGroupTable &fg)
{
    OracleComparison r;
    for (const auto &dv : level_divisors(level))
        if (!(local_lattice(a, dv, fg) == local_lattice(b, dv, fg))) {
            r.equal = false;
            r.mismatches.push_back(dv);
        }
    return r;
}

// ---------------------------------------------------------------------------

Generator phi_q(const Generator &g, const FilteredPhiModule &D, const FormalGroupTable &fg)
{
    Generator out;
    out.v = D.phi_q() * g.v;
    out.poles = g.poles;
    const TruncatedSeries q1 = q_over_p(fg, 1);
    for (std::size_t i = 0; i < g.factors.size(); ++i) {
        if (g.poles[i] < 0)
            throw InputError("phi_q of a generator with lambda in the numerator is not polynomial");
        TruncatedSeries u = compose(g.factors[i], {fg.mult_p()});
        out.factors.push_back(multiply(u, power(q1, g.poles[i])));
    }
    return out;
}

StabilityReport frobenius_stability(const LatticeBasis &M, const FilteredPhiModule &D, const FormalGroupTable &fg,
                                    int jobs)
{
    if (!D.is_effective())
        throw InputError("Frobenius stability needs an effective module");
    const int h = D.h();
    StabilityReport r;
    const int ng = static_cast<int>(M.generators.size());
    std::vector<Generator> images(ng);
    parallel_for(ng, jobs, [&](int g) { images[g] = phi_q(M.generators[g], D, fg); });

    const auto conds = membership_conditions(h, M.level.n);
    std::vector<std::vector<ConditionResult>> res(ng);
    parallel_for(ng, jobs, [&](int g) {
        for (const auto &c : conds)
            res[g].push_back(check_membership(images[g], c, D, fg));
    });
    for (const auto &rs : res)
        for (const auto &c : rs)
            if (!c.pass || !c.certified) {
                r.stable = false;
                r.failures.push_back(c.condition);
            }

    r.annihilator.assign(h, 0);
    r.bound.assign(h, 0);
    for (int i = 0; i < h; ++i)
        r.bound[i] = std::max(0, D.fil(slot_of(i, h)).max_jump());
    for (const auto &dv : level_divisors(M.level)) {
        const LocalLattice L = local_lattice(M.generators, dv, fg);
        const LocalLattice Lphi = local_lattice(images, dv, fg);
        const auto a = L.index_into(Lphi);
        if (!a) {
            r.exact_elsewhere = false;
            continue;
        }
        if (dv.k == 1)
            r.annihilator[dv.i] = *a;
        else if (*a != 0 || !L.contains(Lphi))
            r.exact_elsewhere = false;
    }
    for (int i = 0; i < h; ++i)
        r.within_bound = r.within_bound && r.annihilator[i] <= r.bound[i];
    return r;
}

RecoveredFiltration recover_filtration(const LatticeBasis &M, const FilteredPhiModule &D, const FormalGroupTable &fg)
{
    const int h = D.h(), d = D.d();
    const auto divs = level_divisors(M.level);
    RecoveredFiltration out;
    const Matrix Ainv = D.phi_q_inverse();
    for (int j = 0; j < h; ++j) {
        int i = -1;
        for (const auto &dv : divs)
            if (dv.k == 1 && slot_of(dv.i, h) == j)
                i = dv.i;
        if (i < 0)
            throw InputError("level too low: no condition along Q_1(Y_i) for slot " + std::to_string(j));
        const LocalLattice L = local_lattice(M.generators, {1, i}, fg);
        if (!L.is_full_rank())
            throw InputError("lattice does not have full rank along Q_1(Y_" + std::to_string(i) + ")");
        const auto bp = L.breakpoints();
        // Fil^m = phi_q^{-1} U(-m)
        const int mlo = -bp.back(), mhi = -bp.front();
        std::map<int, Subspace> steps;
        for (int m = mlo; m <= mhi + 1; ++m)
            steps.emplace(m, L.level(-m).image(Ainv));
        std::vector<int> jumps;
        for (int m = mlo; m <= mhi; ++m)
            for (int c = steps.at(m).dim() - steps.at(m + 1).dim(); c > 0; --c)
                jumps.push_back(m);
        if (static_cast<int>(jumps.size()) != d)
            throw InputError("recovered filtration is not exhaustive");
        out.jumps.push_back(jumps);
        out.steps.push_back(std::move(steps));
    }
    return out;
}

} // namespace lt
