#pragma once

// Test-side oracles. None of them goes through the formal-group, division or
// lattice code of the library; scalars and dense rank are the only shared
// pieces.

#include <cstdint>
#include <optional>
#include <vector>

#include "lt/lattice.hpp"

namespace oracle {

// Polynomials with integer coefficients reduced mod M = p^N (M < 2^62).
using IntPoly = std::vector<std::uint64_t>;

IntPoly mul(const IntPoly &a, const IntPoly &b, std::uint64_t M);
IntPoly add(const IntPoly &a, const IntPoly &b, std::uint64_t M);
// f(g(T)) by Horner.
IntPoly compose(const IntPoly &f, const IntPoly &g, std::uint64_t M);
// pT + T^q
IntPoly mult_p(std::uint64_t p, std::uint64_t q, std::uint64_t M);
// [p^k](T): k-fold composition of pT + T^q.
IntPoly mult_p_power(std::uint64_t p, std::uint64_t q, int k, std::uint64_t M);
// Q_0 = T, Q_1 = p + T^{q-1}, Q_k = Q_1([p^{k-1}](T)).
IntPoly torsion_q(std::uint64_t p, std::uint64_t q, int k, std::uint64_t M);
IntPoly truncate(IntPoly f, std::size_t max_degree);

// Coefficients of a univariate series with integral coefficients in Z_p,
// reduced mod M. Throws if a coefficient is not in Z_p or not integral.
IntPoly from_series(const lt::TruncatedSeries &f, std::uint64_t M);
lt::TruncatedSeries to_series(const IntPoly &f, const lt::RingPtr &ring, std::int64_t wmax);

// Multiplicative formal group 1 + S = (1+T)(1+U), exact rational forms.
struct Rat {
    std::int64_t num, den;
};
std::vector<Rat> log_one_plus(int W); // (-1)^{k+1}/k
std::vector<Rat> exp_minus_one(int W); // 1/k!
lt::TruncatedSeries rational_series(const std::vector<Rat> &c, const lt::RingPtr &ring, std::int64_t wmax);

// Largest m with Q^m | f in F[T] (f nonzero, Q monic), by solving the
// Toeplitz system f = Q^m g with dense rank computations.
int divisibility_order(const std::vector<lt::PadicElement> &f, const std::vector<lt::PadicElement> &Q,
                       const lt::FieldContext &F);
std::vector<lt::PadicElement> coefficients(const lt::TruncatedSeries &f);

// M(D) of a split module written down directly: one generator per adapted
// basis vector b_s with pole h_{s,slot(i)} in lambda_i. Nonnegative jumps.
std::vector<lt::Generator> split_lattice(const lt::FilteredPhiModule &D, const lt::FormalGroupTable &fg);

} // namespace oracle

namespace oracle {

// Brute-force membership along Q_k(Y_i): coordinates in the frame
// (phi_q^k B_j)^{-1}, then the order of every Y_i-slice of each coordinate by
// Toeplitz rank, minus the pole. Returns actual - required per coordinate
// (nullopt for a zero coordinate).
std::vector<std::optional<int>> membership_margins(const lt::ModuleElement &y, const lt::Condition &c,
                                                   const lt::FilteredPhiModule &D, const lt::FormalGroupTable &fg);

} // namespace oracle
