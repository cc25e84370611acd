#pragma once

// Filtered phi_q-modules D with one filtration per variable slot, and the
// lattice M(D) cut out by divisor-valuation conditions along Q_k(Y_i).
//
// At a finite level the only divisors that carry conditions are Q_k(Y_i)
// with 1 <= k <= K; M(D) is determined by its localizations there (plus
// integrality along Y_i = 0). Along Q_k(Y_i) the local lattice is
//     sum_m Q_k(Y_i)^{-m} * phi_q^k Fil^m_{slot(i)},  slot(i) = (-i) mod h.
// Such a local lattice is described exactly by the increasing chain of
// F-subspaces U(e) = span{v : v * (function of order e) belongs to it}.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lt/lubin_tate.hpp"
#include "lt/matrix.hpp"
#include "lt/weierstrass.hpp"

namespace lt {

// Adapted basis (columns) and the jump of each column: column s lies in
// Fil^{jumps[s]} but not in Fil^{jumps[s]+1}.
struct Filtration {
    Matrix basis;
    std::vector<int> jumps;

    // Fil^m = span{basis_s : jumps[s] >= m}
    Subspace step(int m) const;
    int min_jump() const;
    int max_jump() const;
};

class FilteredPhiModule {
public:
    // phi_q is the matrix of phi_q in the standard basis; one filtration per
    // slot j = 0..h-1. Throws InputError for a non-invertible phi_q or basis.
    FilteredPhiModule(FieldPtr field, Matrix phi_q, std::vector<Filtration> fils);
    // Filtration slots given by decreasing chains: for each slot, pairs
    // (m, spanning set of Fil^m); Fil^m for m below the first listed index
    // is D and above the last listed index is 0.
    static FilteredPhiModule from_chains(FieldPtr field, Matrix phi_q,
                                         const std::vector<std::vector<std::pair<int, std::vector<Vector>>>> &chains);

    const FieldPtr &field() const { return field_; }
    const FieldContext &ctx() const { return *field_; }
    int d() const { return phi_.rows(); }
    int h() const { return static_cast<int>(fils_.size()); }
    const Matrix &phi_q() const { return phi_; }
    const Matrix &phi_q_inverse() const { return phi_inv_; }
    const Filtration &fil(int j) const { return fils_.at(j); }
    bool is_effective() const;
    // Sorted jump multiset of slot j.
    std::vector<int> jump_multiset(int j) const;
    // True when all adapted bases coincide and phi_q is diagonal in that basis.
    bool is_split() const;

private:
    FieldPtr field_;
    Matrix phi_, phi_inv_;
    std::vector<Filtration> fils_;
};

// Fil^k_j(D(l)) = Fil^{k-l}_j(D): every jump shifted by l, phi_q unchanged.
FilteredPhiModule twist(const FilteredPhiModule &D, int l);

inline int slot_of(int i, int h) { return ((-i) % h + h) % h; }

struct Condition {
    int n_prime = 0; // n' = h k + i
    int k = 0;
    int i = 0;
    int j = 0; // filtration slot (-n') mod h
};

// Conditions for h <= n' <= n.
std::vector<Condition> membership_conditions(int h, int n);

struct LatticeLevel {
    int n = 0;
    int h = 0;
    std::int64_t s_n = 0; // p^{n-h}(q-1), for reports (-1 when it overflows)
    int precision = 0;    // certified p-adic precision of divisor valuations
    int max_k() const;    // largest k among the conditions
    static LatticeLevel make(int p, int h, int n, int precision);
};

// Element of R+(Y)[1/lambda] (x) D: coordinates numerators[s] / prod_i lambda_i^{poles[i]}
// in the standard basis, numerators exact polynomials in Y_0..Y_{h-1}.
struct ModuleElement {
    std::vector<int> poles;
    std::vector<TruncatedSeries> numerators;

    LambdaFraction coordinate(int s) const { return {numerators.at(s), poles}; }
};

// Rank-one element v * prod_i u_i(Y_i) / prod_i lambda_i^{poles[i]} with u_i
// exact univariate polynomials (in the formal group's univariate ring).
struct Generator {
    Vector v;
    std::vector<TruncatedSeries> factors;
    std::vector<int> poles;
    // Exponents a_{k,i} this generator was built for (empty for imported ones).
    std::map<std::pair<int, int>, int> exponents;

    ModuleElement materialize(const RingPtr &ring) const;
    // lambda^{-l} * this
    Generator twisted(int l) const;
};

struct ConditionResult {
    Condition condition;
    bool pass = true;
    bool certified = true;
    // Per coordinate: actual - required divisor valuation (nullopt: coordinate is 0).
    std::vector<std::optional<int>> margins;
    int failed_coordinate = -1;
};

// Divisor valuation of the scalar part of g along Q_k(Y_i) (k = 0: along Y_i).
DivisorValuation generator_order(const Generator &g, int k, int i, const FormalGroupTable &fg);

// Change coordinates by B_j^{-1} phi_q^{-k} and compare divisor valuations
// along Q_k(Y_i) with -jumps. InputError when numerators are truncated.
// n_cert: precision at which remainders count as zero (0: the table target).
ConditionResult check_membership(const ModuleElement &y, const Condition &c, const FilteredPhiModule &D,
                                 const FormalGroupTable &fg, std::int64_t n_cert = 0);
ConditionResult check_membership(const Generator &g, const Condition &c, const FilteredPhiModule &D,
                                 const FormalGroupTable &fg);

// Local lattice along one divisor: vectors with their scalar orders.
class LocalLattice {
public:
    LocalLattice(const FieldContext &F, int d) : F_(&F), d_(d) {}
    void add(const Vector &v, int order) { gens_.emplace_back(order, v); }
    // Lattice sum_m pi^{-m} * (P Fil^m) for a filtration and a change of basis P.
    static LocalLattice from_filtration(const Filtration &fil, const Matrix &P);
    static LocalLattice standard(const FieldContext &F, int d);

    // span{v : order(v) <= e}
    Subspace level(int e) const;
    // Orders at which level() changes, plus the bounds.
    std::vector<int> breakpoints() const;
    bool is_full_rank() const;
    bool contains(const LocalLattice &other) const;
    friend bool operator==(const LocalLattice &a, const LocalLattice &b) { return a.contains(b) && b.contains(a); }
    // Minimal a >= 0 with pi^a * this contained in other (nullopt if none up to
    // the order span).
    std::optional<int> index_into(const LocalLattice &other) const;

private:
    const FieldContext *F_;
    int d_;
    std::vector<std::pair<int, Vector>> gens_;
};

struct Divisor {
    int k = 0;
    int i = 0;
    friend bool operator<(const Divisor &a, const Divisor &b) { return std::pair(a.k, a.i) < std::pair(b.k, b.i); }
};

struct LatticeBasis {
    LatticeLevel level;
    std::vector<Generator> generators;
    // certificates[g] lists every level condition checked for generator g.
    std::vector<std::vector<ConditionResult>> certificates;
    // Divisors where the generators were shown to span the expected local lattice.
    std::vector<Divisor> spanning_certified;
    bool complete = false; // spans M(D) locally at every level divisor
    // Absolute precision to which the rank decisions of the construction are
    // known; below the level precision the build throws PrecisionError.
    std::int64_t certainty = std::numeric_limits<std::int64_t>::max();
};

// Level divisors Q_k(Y_i) from the conditions together with Y_i = 0.
std::vector<Divisor> level_divisors(const LatticeLevel &level);
// Expected local lattice of M(D) along a divisor.
LocalLattice expected_local_lattice(const FilteredPhiModule &D, const Divisor &div);
LocalLattice local_lattice(const std::vector<Generator> &gens, const Divisor &div, const FormalGroupTable &fg);

// Generating set of M(D) at the given level; every generator is checked
// against every level condition (parallel over `jobs` threads).
LatticeBasis build_finite_level(const FilteredPhiModule &D, const LatticeLevel &level, const FormalGroupTable &fg,
                                int jobs = 1);

// Closed-form generators prod_i lambda_i^{-h_{s,slot(i)}} e_s of a split D.
std::vector<Generator> split_oracle(const FilteredPhiModule &D, const LatticeLevel &level,
                                     const FormalGroupTable &fg);

struct OracleComparison {
    bool equal = true;
    std::vector<Divisor> mismatches;
};
// Mutual expressibility: equal local lattices along every level divisor.
OracleComparison compare_spans(const std::vector<Generator> &a, const std::vector<Generator> &b,
                               const LatticeLevel &level, const FormalGroupTable &fg);

// One-variable module in Y_j with conditions along Q_k(Y_j), 1 <= k <= m,
// using Fil_j only. Returns a free basis (d elements with univariate
// numerators in the formal group's univariate ring).
struct OneVariableBasis {
    int j = 0;
    int m = 0;
    std::vector<ModuleElement> basis;
    // Divisor valuation of the determinant along Q_k(Y_j), k = 1..m.
    std::vector<int> determinant_orders;
    bool certified = true;
    // Absolute precision of the numerators at Gauss valuation 0; membership
    // and determinant orders are decided there. Below half the table target
    // the basis is reported uncertified.
    std::int64_t certainty = std::numeric_limits<std::int64_t>::max();
};
OneVariableBasis build_one_variable(const FilteredPhiModule &D, int j, int m, const FormalGroupTable &fg);

// phi_q of a generator: v -> phi_q v, u_i(Y_i) -> u_i([p](Y_i)) (Q_1(Y_i)/p)^{poles_i}.
Generator phi_q(const Generator &g, const FilteredPhiModule &D, const FormalGroupTable &fg);

struct StabilityReport {
    bool stable = true;             // phi_q of every generator passes every level condition
    std::vector<int> annihilator;   // exponent of Q_1(Y_i), per variable i
    std::vector<int> bound;         // max jump of slot(i), per variable i
    bool exact_elsewhere = true;    // R+ phi_q(M) = M locally at the other level divisors
    bool within_bound = true;
    std::vector<Condition> failures;
};
StabilityReport frobenius_stability(const LatticeBasis &M, const FilteredPhiModule &D, const FormalGroupTable &fg,
                                    int jobs = 1);

struct RecoveredFiltration {
    // Per slot: jump multiset and Fil^m for m in [min, max + 1].
    std::vector<std::vector<int>> jumps;
    std::vector<std::map<int, Subspace>> steps;
};
// Reads Fil_j off the local lattice along Q_1(Y_i), slot(i) = j.
RecoveredFiltration recover_filtration(const LatticeBasis &M, const FilteredPhiModule &D, const FormalGroupTable &fg);

struct GammaFactorization {
    bool stable = false;      // stability certificate for the test units
    bool factored = false;    // residual is a unit of R+
    std::vector<int> exponents; // exponents of Q_0, Q_1, ... (Q_n / p for n >= 1)
    TruncatedSeries residual;
    std::string obstruction;
};
// f = u * prod_n (Q_n(Y_j)/p)^{a_n} (Q_0 = Y_j) for a polynomial f in the
// formal group's univariate ring (read as a polynomial in Y_j). Stability is
// certified on the test units {1 + p, Teichmueller generator} up to degree W.
GammaFactorization gamma_stable_factor(const TruncatedSeries &f, int j, const FormalGroupTable &fg, int W);

} // namespace lt
