#pragma once

// Sparse truncated power series over F in a fixed set of weighted variables.
//
// A series is known up to (and including) weighted degree wmax(); kExact
// marks an exact polynomial. Coefficients that cancel to tracked zeros
// O(p^a) are not stored as terms; their monomial and absolute precision are
// kept in a side table so products and equality checks stay honest.

#include <array>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lt/padic.hpp"

namespace lt {

inline constexpr int kMaxVars = 8;
inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

using Exponent = std::array<int, kMaxVars>;

class SeriesRing {
public:
    // Y_0..Y_{h-1} with weights 1, p, ..., p^{h-1}.
    static std::shared_ptr<const SeriesRing> multivariable(FieldPtr field);
    // Single variable T of weight 1.
    static std::shared_ptr<const SeriesRing> univariate(FieldPtr field);
    // n variables of weight 1 (total degree), used for S(T,U).
    static std::shared_ptr<const SeriesRing> uniform(FieldPtr field, int nvars);

    const FieldPtr &field() const { return field_; }
    const FieldContext &ctx() const { return *field_; }
    int nvars() const { return static_cast<int>(weights_.size()); }
    std::int64_t weight(int j) const { return weights_.at(j); }
    std::int64_t weight(const Exponent &m) const;
    bool same(const SeriesRing &o) const { return field_ == o.field_ && weights_ == o.weights_; }

private:
    SeriesRing(FieldPtr field, std::vector<std::int64_t> weights) : field_(std::move(field)), weights_(std::move(weights)) {}
    FieldPtr field_;
    std::vector<std::int64_t> weights_;
};

using RingPtr = std::shared_ptr<const SeriesRing>;

// Three-way verdict of a precision-aware comparison.
struct Comparison {
    bool certified = true; // false when some difference digit is below the known precision
    bool equal = true;     // meaningful only if certified
    // Minimal valuation of the difference (capped by the target when equal).
    std::int64_t margin = 0;
};

class TruncatedSeries {
public:
    using TermMap = std::map<Exponent, PadicElement>;

    TruncatedSeries() = default;
    TruncatedSeries(RingPtr ring, std::int64_t wmax);

    static TruncatedSeries zero(RingPtr ring, std::int64_t wmax) { return {std::move(ring), wmax}; }
    static TruncatedSeries constant(RingPtr ring, const PadicElement &c, std::int64_t wmax);
    static TruncatedSeries one(RingPtr ring, std::int64_t wmax);
    static TruncatedSeries variable(RingPtr ring, int j, std::int64_t wmax);
    static TruncatedSeries monomial(RingPtr ring, const Exponent &m, const PadicElement &c, std::int64_t wmax);

    const RingPtr &ring() const { return ring_; }
    const FieldContext &ctx() const { return ring_->ctx(); }
    std::int64_t wmax() const { return wmax_; }
    bool is_exact() const { return wmax_ == kExact; }
    // Smallest absolute precision among vanished coefficients.
    std::int64_t floor() const;
    // Precision bound for vanished coefficients whose monomial is not recorded.
    std::int64_t global_floor() const { return floor_; }
    const TermMap &terms() const { return terms_; }
    const std::map<Exponent, std::int64_t> &vanished() const { return zeros_; }
    // Terms followed by vanished coefficients as tracked zeros.
    std::vector<std::pair<Exponent, PadicElement>> entries() const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    PadicElement coeff(const Exponent &m) const;
    // Stores c at m (dropping it, with floor bookkeeping, when c is a tracked zero).
    void set(const Exponent &m, const PadicElement &c);
    void add_to(const Exponent &m, const PadicElement &c);
    void lower_floor(std::int64_t f)
    {
        if (f < floor_)
            floor_ = f;
    }

    TruncatedSeries truncated(std::int64_t w) const;
    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const PadicElement &c) const;
    // Applies sigma^k to every coefficient.
    TruncatedSeries frobenius(std::int64_t k = 1) const;
    TruncatedSeries map_coefficients(const std::function<PadicElement(const PadicElement &)> &fn) const;

    // Minimal coefficient valuation among stored terms (nullopt for zero).
    std::optional<std::int64_t> min_valuation() const;
    // Lowest weighted degree of a stored term.
    std::optional<std::int64_t> order() const;
    // Highest exponent of variable j among stored terms.
    int degree_in(int j) const;
    bool depends_on(int j) const { return degree_in(j) > 0; }

    friend TruncatedSeries operator+(const TruncatedSeries &f, const TruncatedSeries &g);
    friend TruncatedSeries operator-(const TruncatedSeries &f, const TruncatedSeries &g);
    friend TruncatedSeries operator*(const TruncatedSeries &f, const TruncatedSeries &g);
    TruncatedSeries &operator+=(const TruncatedSeries &g) { return *this = *this + g; }
    TruncatedSeries &operator*=(const TruncatedSeries &g) { return *this = *this * g; }

    std::string str() const;

private:
    RingPtr ring_;
    std::int64_t wmax_ = 0;
    std::int64_t floor_ = kExact; // precision of unlocated vanished coefficients
    TermMap terms_;
    std::map<Exponent, std::int64_t> zeros_;
};

// Product truncated at min(f.wmax, g.wmax, cap).
TruncatedSeries multiply(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t cap = kExact);
TruncatedSeries power(const TruncatedSeries &f, int e, std::int64_t cap = kExact);

// Compares f and g up to weighted degree min(f.wmax, g.wmax) and absolute
// precision target.
Comparison compare(const TruncatedSeries &f, const TruncatedSeries &g, std::int64_t target);

// min over stored monomials of val_p(a_m) + w(m)/r. Throws std::domain_error
// on the zero series (valuation +infinity).
Rational gauss_valuation(const TruncatedSeries &f, const Rational &r);

// Simultaneous substitution Y_j := G[j]. The G[j] live in a common target ring
// and must have no constant term. The result is known up to weight
// ceil(rho*(W+1))-1, rho = min_j (lowest weight of G[j]) / weight(Y_j), further
// capped by the truncation of each G[j] that is actually used and by cap.
TruncatedSeries compose(const TruncatedSeries &f, const std::vector<TruncatedSeries> &G, std::int64_t cap = kExact);
// Y_j := g, other variables fixed.
TruncatedSeries substitute(const TruncatedSeries &f, int j, const TruncatedSeries &g);
// Drops every term involving Y_j (substitution Y_j := 0).
TruncatedSeries drop_variable(const TruncatedSeries &f, int j);
// Places a univariate series at variable j of the target ring.
TruncatedSeries embed(const TruncatedSeries &f, const RingPtr &target, int j);

// Same terms, truncation forgotten: the caller asserts the stored terms are
// the intended polynomial.
TruncatedSeries as_polynomial(const TruncatedSeries &f);

TruncatedSeries partial_derivative(const TruncatedSeries &f, int j);
// Multiplicative inverse of a series whose constant term is invertible.
TruncatedSeries inverse(const TruncatedSeries &u);
// Compositional inverse of f = c_1 T + O(T^2), Newton iteration.
TruncatedSeries reversion(const TruncatedSeries &f);

// Element of R(Y)[1/lambda]: numerator / prod_j lambda_j^{poles[j]}. The
// meaning of lambda_j is fixed by the consumer (true series in `operators`,
// the level-n polynomial surrogate in `lattice`); ord computations only use
// that lambda_j has a simple zero along each Q_k(Y_j), k >= 1.
struct LambdaFraction {
    TruncatedSeries numerator;
    std::vector<int> poles;

    LambdaFraction() = default;
    LambdaFraction(TruncatedSeries num, std::vector<int> b) : numerator(std::move(num)), poles(std::move(b)) {}
    static LambdaFraction polynomial(TruncatedSeries num)
    {
        const int n = num.ring()->nvars();
        return {std::move(num), std::vector<int>(n, 0)};
    }
};

} // namespace lt
