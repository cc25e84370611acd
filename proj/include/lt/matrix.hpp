#pragma once

#include <limits>

// Small dense linear algebra over F: matrices, Gaussian elimination with
// minimal-valuation pivots, and subspaces of F^d given by spanning columns.
// An entry counts as zero only when it is a tracked zero.

#include <vector>

#include "lt/padic.hpp"

namespace lt {

using Vector = std::vector<PadicElement>;

class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldContext &F, int rows, int cols);
    static Matrix identity(const FieldContext &F, int n);
    // Columns given as vectors of equal length.
    static Matrix from_columns(const FieldContext &F, int rows, const std::vector<Vector> &cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldContext &ctx() const { return *ctx_; }
    PadicElement &operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const PadicElement &operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    Vector column(int j) const;
    std::vector<Vector> columns() const;

    friend Matrix operator*(const Matrix &a, const Matrix &b);
    friend Vector operator*(const Matrix &a, const Vector &v);
    Matrix pow(int k) const; // k may be negative
    Matrix inverse() const;  // InputError when singular at working precision
    PadicElement determinant() const;
    int rank() const;
    // Basis of {x : A x = 0} as columns.
    // certainty (if given) is lowered to the precision of the rank decision.
    std::vector<Vector> nullspace(std::int64_t *certainty = nullptr) const;

private:
    const FieldContext *ctx_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<PadicElement> a_;
};

// Subspace of F^d. The basis is saturated: integral vectors, each with a unit
// pivot at a coordinate where the other basis vectors vanish.
class Subspace {
public:
    Subspace() = default;
    Subspace(const FieldContext &F, int d, const std::vector<Vector> &spanning);
    static Subspace zero(const FieldContext &F, int d) { return Subspace(F, d, {}); }
    static Subspace full(const FieldContext &F, int d);

    int ambient() const { return d_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vector> &basis() const { return basis_; }
    bool contains(const Vector &v) const;
    bool contains(const Subspace &u) const;
    friend bool operator==(const Subspace &a, const Subspace &b) { return a.contains(b) && b.contains(a); }
    Subspace operator+(const Subspace &u) const;
    Subspace intersect(const Subspace &u) const;
    Subspace image(const Matrix &m) const;
    // Basis vectors of a complement of u inside this space (u need not be a
    // subspace; the complement is taken to this ∩ u).
    std::vector<Vector> complement_of(const Subspace &u) const;
    // Least absolute precision at which some rank decision behind this
    // subspace declared a vector zero (its dimension is certain only that far).
    std::int64_t certainty() const { return certainty_; }

private:
    const FieldContext *ctx_ = nullptr;
    int d_ = 0;
    std::int64_t certainty_ = std::numeric_limits<std::int64_t>::max();
    std::vector<Vector> basis_;
};

} // namespace lt
