#pragma once

// Seeded generators for property checks: scalars of O_F, exact random
// polynomials and random filtered phi_q-modules.

#include <random>

#include "lt/lattice.hpp"

namespace lt {

using Rng = std::mt19937_64;

// Uniform element of O_F / p^N (may be zero or divisible by p).
PadicElement random_integer(const FieldContext &F, Rng &rng);
// Uniform unit of O_F / p^N.
PadicElement random_unit(const FieldContext &F, Rng &rng);
// p^v * unit with v uniform in [0, max_val].
PadicElement random_nonzero(const FieldContext &F, Rng &rng, int max_val);

// Exact polynomial with integral coefficients on a random subset of the
// monomials of weighted degree in [lo, W] (each kept with probability density).
TruncatedSeries random_polynomial(const RingPtr &ring, std::int64_t W, Rng &rng, double density = 0.5,
                                  std::int64_t lo = 0);

// Invertible d x d matrix with integral entries.
Matrix random_invertible(const FieldContext &F, int d, Rng &rng);

// Integral matrix with unit determinant.
Matrix random_unimodular(const FieldContext &F, int d, Rng &rng);

// phi_q diagonal in a common adapted basis (unit determinant; every split
// module is isomorphic to such a one), eigenvalues p^v u with v <= 2, jumps
// uniform in [0, max_jump].
FilteredPhiModule random_split_module(const FieldPtr &field, int d, int max_jump, Rng &rng);
// phi_q = U diag(p^v u) V with U, V unimodular and v <= 2; independent
// unimodular adapted bases per slot.
FilteredPhiModule random_module(const FieldPtr &field, int d, int max_jump, Rng &rng);

} // namespace lt
