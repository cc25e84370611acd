#include "lt/io.hpp"

#include <algorithm>

namespace lt {

namespace {

std::int64_t get_int(const json &j, const std::string &key, const std::string &where)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(where + ": missing field \"" + key + "\"");
    if (!j.at(key).is_number_integer())
        throw InputError(where + "." + key + ": expected an integer");
    return j.at(key).get<std::int64_t>();
}

const json &get_array(const json &j, const std::string &key, const std::string &where)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(where + ": missing field \"" + key + "\"");
    if (!j.at(key).is_array())
        throw InputError(where + "." + key + ": expected an array");
    return j.at(key);
}

Vector vector_from_json(const FieldContext &F, const json &j, int d, const std::string &where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        throw InputError(where + ": expected an array of " + std::to_string(d) + " scalars");
    Vector v;
    for (int s = 0; s < d; ++s)
        v.push_back(scalar_from_json(F, j[s], where + "[" + std::to_string(s) + "]"));
    return v;
}

json vector_to_json(const Vector &v)
{
    json a = json::array();
    for (const auto &x : v)
        a.push_back(to_json(x));
    return a;
}

} // namespace

json to_json(const PadicElement &x)
{
    const FieldContext &F = *x.context();
    json coeffs = json::array();
    for (int i = 0; i < F.h(); ++i)
        coeffs.push_back(x.is_zero() ? 0 : x.unit()[i] % F.pow_p(x.relative_precision()));
    return {{"v", x.valuation()}, {"coeffs", coeffs}, {"prec", x.relative_precision()}};
}

PadicElement scalar_from_json(const FieldContext &F, const json &j, const std::string &where)
{
    if (j.is_number_integer())
        return F.from_int(j.get<std::int64_t>());
    if (!j.is_object())
        throw InputError(where + ": expected an integer or {\"v\", \"coeffs\", \"prec\"}");
    const std::int64_t v = get_int(j, "v", where);
    const json &cs = get_array(j, "coeffs", where);
    if (static_cast<int>(cs.size()) > F.h())
        throw InputError(where + ".coeffs: at most " + std::to_string(F.h()) + " entries");
    const std::int64_t prec = j.contains("prec") ? get_int(j, "prec", where) : F.precision();
    if (prec < 0 || prec > F.precision())
        throw InputError(where + ".prec: must lie in [0, " + std::to_string(F.precision()) + "]");
    if (prec == 0)
        return F.zero(static_cast<int>(v));
    const auto mod = static_cast<std::int64_t>(F.pow_p(static_cast<int>(prec)));
    Digits dg{};
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].is_number_integer())
            throw InputError(where + ".coeffs[" + std::to_string(i) + "]: expected an integer");
        const std::int64_t c = cs[i].get<std::int64_t>();
        dg[i] = static_cast<std::uint64_t>(((c % mod) + mod) % mod);
    }
    return F.from_digits(v, std::span<const std::uint64_t>(dg.data(), F.h()), static_cast<int>(prec));
}

json to_json(const TruncatedSeries &f)
{
    std::vector<std::pair<std::pair<std::int64_t, Exponent>, PadicElement>> terms;
    for (const auto &[m, c] : f.terms())
        terms.push_back({{f.ring()->weight(m), m}, c});
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    json out;
    out["wmax"] = f.is_exact() ? std::int64_t{-1} : f.wmax();
    json ts = json::array();
    for (const auto &[key, c] : terms) {
        json m = json::array();
        for (int j = 0; j < f.ring()->nvars(); ++j)
            m.push_back(key.second[j]);
        ts.push_back({{"m", m}, {"c", to_json(c)}});
    }
    out["terms"] = ts;
    return out;
}

TruncatedSeries series_from_json(const RingPtr &ring, const json &j, const std::string &where)
{
    const std::int64_t w = get_int(j, "wmax", where);
    TruncatedSeries f(ring, w < 0 ? kExact : w);
    const json &ts = get_array(j, "terms", where);
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const std::string at = where + ".terms[" + std::to_string(t) + "]";
        const json &m = get_array(ts[t], "m", at);
        if (static_cast<int>(m.size()) != ring->nvars())
            throw InputError(at + ".m: expected " + std::to_string(ring->nvars()) + " exponents");
        Exponent e{};
        for (int k = 0; k < ring->nvars(); ++k) {
            if (!m[k].is_number_integer() || m[k].get<int>() < 0)
                throw InputError(at + ".m: exponents must be non-negative integers");
            e[k] = m[k].get<int>();
        }
        if (!ts[t].contains("c"))
            throw InputError(at + ": missing field \"c\"");
        f.add_to(e, scalar_from_json(ring->ctx(), ts[t]["c"], at + ".c"));
    }
    return f;
}

json to_json(const Matrix &m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j)
            r.push_back(to_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

Matrix matrix_from_json(const FieldContext &F, const json &j, int rows, int cols, const std::string &where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw InputError(where + ": expected " + std::to_string(rows) + " rows");
    Matrix m(F, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw InputError(at + ": expected " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k)
            m(i, k) = scalar_from_json(F, j[i][k], at + "[" + std::to_string(k) + "]");
    }
    return m;
}

json to_json(const FormalGroupTable &fg)
{
    const FieldContext &F = fg.ctx();
    json out;
    out["p"] = F.p();
    out["h"] = F.h();
    out["prec"] = fg.target_precision();
    out["working_prec"] = F.precision();
    out["wmax"] = fg.degree_bound();
    out["log_factors"] = fg.log_factor_count();
    json poly = json::array();
    for (auto c : F.defining_polynomial())
        poly.push_back(c);
    out["defining_polynomial"] = poly;
    out["S"] = to_json(fg.addition());
    out["log"] = to_json(fg.log());
    out["exp"] = to_json(fg.exp());
    json qs = json::array();
    for (int k = 0; k <= 2; ++k)
        qs.push_back(to_json(fg.q_polynomial_truncated(k)));
    out["Q"] = qs;
    json endo = json::array();
    endo.push_back({{"a", to_json(F.from_int(F.p()))}, {"series", to_json(fg.mult_p())}});
    const PadicElement a = F.one() + F.from_int(F.p());
    endo.push_back({{"a", to_json(a)}, {"series", to_json(fg.mult_by(a))}});
    out["endomorphisms"] = endo;
    return out;
}

ModuleHeader module_header(const json &j)
{
    if (!j.is_object())
        throw InputError("module spec: expected a JSON object");
    ModuleHeader hd;
    hd.p = static_cast<int>(get_int(j, "p", "module"));
    hd.h = static_cast<int>(get_int(j, "h", "module"));
    hd.prec = static_cast<int>(get_int(j, "prec", "module"));
    hd.dim = static_cast<int>(get_int(j, "dim", "module"));
    if (hd.dim < 1 || hd.dim > 6)
        throw InputError("module.dim: must lie in [1, 6]");
    if (hd.h < 1 || hd.h > kMaxDegree)
        throw InputError("module.h: must lie in [1, " + std::to_string(kMaxDegree) + "]");
    if (hd.prec < 1)
        throw InputError("module.prec: must be positive");
    if (!is_prime(hd.p))
        throw InputError("module.p: " + std::to_string(hd.p) + " is not prime");
    return hd;
}

FilteredPhiModule module_from_json(const json &j, const FieldPtr &field)
{
    const ModuleHeader hd = module_header(j);
    const FieldContext &F = *field;
    if (F.p() != hd.p || F.h() != hd.h)
        throw InputError("module: field context does not match p, h");
    const int d = hd.dim;
    if (!j.contains("phi_q"))
        throw InputError("module: missing field \"phi_q\"");
    Matrix phi = matrix_from_json(F, j["phi_q"], d, d, "module.phi_q");
    const json &fj = get_array(j, "filtrations", "module");
    if (static_cast<int>(fj.size()) != hd.h)
        throw InputError("module.filtrations: expected " + std::to_string(hd.h) + " entries (one per slot)");
    bool any_chain = false, any_basis = false;
    for (const auto &f : fj) {
        any_chain = any_chain || (f.is_object() && f.contains("chain"));
        any_basis = any_basis || (f.is_object() && f.contains("basis"));
    }
    if (any_chain && !any_basis) {
        std::vector<std::vector<std::pair<int, std::vector<Vector>>>> chains;
        for (std::size_t s = 0; s < fj.size(); ++s) {
            const std::string at = "module.filtrations[" + std::to_string(s) + "]";
            const json &ch = get_array(fj[s], "chain", at);
            std::vector<std::pair<int, std::vector<Vector>>> chain;
            for (std::size_t t = 0; t < ch.size(); ++t) {
                const std::string st = at + ".chain[" + std::to_string(t) + "]";
                const int m = static_cast<int>(get_int(ch[t], "m", st));
                std::vector<Vector> span;
                const json &sp = get_array(ch[t], "span", st);
                for (std::size_t u = 0; u < sp.size(); ++u)
                    span.push_back(vector_from_json(F, sp[u], d, st + ".span[" + std::to_string(u) + "]"));
                chain.emplace_back(m, span);
            }
            chains.push_back(chain);
        }
        return FilteredPhiModule::from_chains(field, phi, chains);
    }
    std::vector<Filtration> fils;
    for (std::size_t s = 0; s < fj.size(); ++s) {
        const std::string at = "module.filtrations[" + std::to_string(s) + "]";
        const json &bj = get_array(fj[s], "basis", at);
        if (static_cast<int>(bj.size()) != d)
            throw InputError(at + ".basis: expected " + std::to_string(d) + " vectors");
        std::vector<Vector> cols;
        for (int t = 0; t < d; ++t)
            cols.push_back(vector_from_json(F, bj[t], d, at + ".basis[" + std::to_string(t) + "]"));
        const json &jj = get_array(fj[s], "jumps", at);
        if (static_cast<int>(jj.size()) != d)
            throw InputError(at + ".jumps: expected " + std::to_string(d) + " integers");
        std::vector<int> jumps;
        for (const auto &x : jj) {
            if (!x.is_number_integer())
                throw InputError(at + ".jumps: expected integers");
            jumps.push_back(x.get<int>());
        }
        fils.push_back({Matrix::from_columns(F, d, cols), jumps});
    }
    return FilteredPhiModule(field, phi, fils);
}

json to_json(const FilteredPhiModule &D)
{
    const FieldContext &F = D.ctx();
    json out;
    out["p"] = F.p();
    out["h"] = F.h();
    out["prec"] = F.precision();
    out["dim"] = D.d();
    out["phi_q"] = to_json(D.phi_q());
    json fils = json::array();
    for (int j = 0; j < D.h(); ++j) {
        json basis = json::array();
        for (const auto &c : D.fil(j).basis.columns())
            basis.push_back(vector_to_json(c));
        fils.push_back({{"basis", basis}, {"jumps", D.fil(j).jumps}});
    }
    out["filtrations"] = fils;
    return out;
}

json to_json(const Condition &c)
{
    return {{"n_prime", c.n_prime}, {"k", c.k}, {"i", c.i}, {"j", c.j}};
}

json to_json(const ConditionResult &r)
{
    json margins = json::array();
    for (const auto &m : r.margins)
        margins.push_back(m ? json(*m) : json(nullptr));
    json out = to_json(r.condition);
    out["pass"] = r.pass;
    out["certified"] = r.certified;
    out["margins"] = margins;
    if (r.failed_coordinate >= 0)
        out["failed_coordinate"] = r.failed_coordinate;
    return out;
}

json to_json(const Generator &g)
{
    json out;
    out["v"] = vector_to_json(g.v);
    out["poles"] = g.poles;
    json fs = json::array();
    for (const auto &f : g.factors)
        fs.push_back(to_json(f));
    out["factors"] = fs;
    json ex = json::array();
    for (const auto &[key, a] : g.exponents)
        ex.push_back({{"k", key.first}, {"i", key.second}, {"a", a}});
    out["exponents"] = ex;
    return out;
}

json to_json(const LatticeBasis &M)
{
    json out;
    out["level"] = {{"n", M.level.n}, {"h", M.level.h}, {"s_n", M.level.s_n}, {"prec", M.level.precision}};
    json gens = json::array();
    for (std::size_t g = 0; g < M.generators.size(); ++g) {
        json e = to_json(M.generators[g]);
        json cs = json::array();
        if (g < M.certificates.size())
            for (const auto &r : M.certificates[g])
                cs.push_back(to_json(r));
        e["certificates"] = cs;
        gens.push_back(e);
    }
    out["generators"] = gens;
    json sc = json::array();
    for (const auto &d : M.spanning_certified)
        sc.push_back({{"k", d.k}, {"i", d.i}});
    out["spanning_certified"] = sc;
    out["complete"] = M.complete;
    return out;
}

json to_json(const StabilityReport &r)
{
    json f = json::array();
    for (const auto &c : r.failures)
        f.push_back(to_json(c));
    return {{"stable", r.stable},
            {"annihilator", r.annihilator},
            {"bound", r.bound},
            {"exact_elsewhere", r.exact_elsewhere},
            {"within_bound", r.within_bound},
            {"failures", f}};
}

json to_json(const RecoveredFiltration &r)
{
    json slots = json::array();
    for (std::size_t j = 0; j < r.jumps.size(); ++j) {
        json steps = json::array();
        for (const auto &[m, s] : r.steps[j]) {
            json basis = json::array();
            for (const auto &v : s.basis())
                basis.push_back(vector_to_json(v));
            steps.push_back({{"m", m}, {"dim", s.dim()}, {"basis", basis}});
        }
        slots.push_back({{"jumps", r.jumps[j]}, {"steps", steps}});
    }
    return {{"slots", slots}};
}

} // namespace lt
