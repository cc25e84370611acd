#include "lt/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace lt {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> row_reduce(Matrix &m)
{
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int best = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero() && (best < 0 || m(i, c).valuation() < m(best, c).valuation()))
                best = i;
        if (best < 0)
            continue;
        for (int j = 0; j < m.cols(); ++j)
            std::swap(m(r, j), m(best, j));
        const PadicElement inv = m(r, c).inverse();
        for (int j = 0; j < m.cols(); ++j)
            m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const PadicElement f = m(i, c);
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Full pivoting: each remaining row is rescaled to valuation 0, so the pivot
// is a unit and all entries stay integral; the pivot column is cleared in
// every other row. Returns the pivot column of each leading row. Avoids the
// denominators leftmost-pivot echelon forms pick up on ill-conditioned minors.
// *certainty: least absolute precision among the rows declared zero, i.e. how
// far the rank decision is known (unchanged when no row was dropped).
std::vector<int> saturate(Matrix &m, std::int64_t *certainty = nullptr)
{
    std::vector<int> pivots;
    for (int r = 0; r < m.rows(); ++r) {
        int bi = -1, bc = -1;
        for (int i = r; i < m.rows(); ++i) {
            int c = -1;
            for (int j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero() && (c < 0 || m(i, j).valuation() < m(i, c).valuation()))
                    c = j;
            if (c < 0)
                continue;
            const std::int64_t v = m(i, c).valuation();
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = m(i, j).shift(-v);
            if (bi < 0)
                bi = i, bc = c;
        }
        if (bi < 0)
            break;
        for (int j = 0; j < m.cols(); ++j)
            std::swap(m(r, j), m(bi, j));
        const PadicElement inv = m(r, bc).inverse();
        for (int j = 0; j < m.cols(); ++j)
            m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, bc).is_zero())
                continue;
            const PadicElement f = m(i, bc);
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(bc);
    }
    if (certainty)
        for (int i = static_cast<int>(pivots.size()); i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                *certainty = std::min(*certainty, m(i, j).absolute_precision());
    return pivots;
}

Matrix rows_of(const FieldContext &F, int d, const std::vector<Vector> &vs)
{
    Matrix m(F, static_cast<int>(vs.size()), d);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(vs[i].size()) != d)
            throw std::invalid_argument("vector length differs from ambient dimension");
        for (int j = 0; j < d; ++j)
            m(i, j) = vs[i][j];
    }
    return m;
}

} // namespace

Matrix::Matrix(const FieldContext &F, int rows, int cols)
    : ctx_(&F), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, F.zero())
{
}

Matrix Matrix::identity(const FieldContext &F, int n)
{
    Matrix m(F, n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = F.one();
    return m;
}

Matrix Matrix::from_columns(const FieldContext &F, int rows, const std::vector<Vector> &cols)
{
    Matrix m(F, rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows)
            throw std::invalid_argument("column length mismatch");
        for (int i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

Vector Matrix::column(int j) const
{
    Vector v;
    for (int i = 0; i < rows_; ++i)
        v.push_back((*this)(i, j));
    return v;
}

std::vector<Vector> Matrix::columns() const
{
    std::vector<Vector> out;
    for (int j = 0; j < cols_; ++j)
        out.push_back(column(j));
    return out;
}

Matrix operator*(const Matrix &a, const Matrix &b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product: shape mismatch");
    Matrix m(*a.ctx_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            PadicElement s = a.ctx_->zero();
            for (int k = 0; k < a.cols_; ++k)
                s += a(i, k) * b(k, j);
            m(i, j) = s;
        }
    return m;
}

Vector operator*(const Matrix &a, const Vector &v)
{
    if (static_cast<int>(v.size()) != a.cols_)
        throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vector out;
    for (int i = 0; i < a.rows_; ++i) {
        PadicElement s = a.ctx_->zero();
        for (int k = 0; k < a.cols_; ++k)
            s += a(i, k) * v[k];
        out.push_back(s);
    }
    return out;
}

Matrix Matrix::pow(int k) const
{
    if (rows_ != cols_)
        throw std::invalid_argument("matrix power of a non-square matrix");
    Matrix base = k < 0 ? inverse() : *this;
    Matrix r = identity(*ctx_, rows_);
    for (int e = k < 0 ? -k : k; e > 0; --e)
        r = r * base;
    return r;
}

Matrix Matrix::inverse() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("inverse of a non-square matrix");
    const int n = rows_;
    Matrix aug(*ctx_, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, n + i) = ctx_->one();
    }
    const auto piv = row_reduce(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1)
        throw InputError("matrix is not invertible at working precision");
    Matrix inv(*ctx_, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

PadicElement Matrix::determinant() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m = *this;
    PadicElement det = ctx_->one();
    for (int c = 0; c < cols_; ++c) {
        int best = -1;
        for (int i = c; i < rows_; ++i)
            if (!m(i, c).is_zero() && (best < 0 || m(i, c).valuation() < m(best, c).valuation()))
                best = i;
        if (best < 0)
            return ctx_->zero();
        if (best != c) {
            for (int j = 0; j < cols_; ++j)
                std::swap(m(c, j), m(best, j));
            det = -det;
        }
        det *= m(c, c);
        const PadicElement inv = m(c, c).inverse();
        for (int i = c + 1; i < rows_; ++i) {
            if (m(i, c).is_zero())
                continue;
            const PadicElement f = m(i, c) * inv;
            for (int j = c; j < cols_; ++j)
                m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return det;
}

int Matrix::rank() const
{
    Matrix m = *this;
    return static_cast<int>(saturate(m).size());
}

std::vector<Vector> Matrix::nullspace(std::int64_t *certainty) const
{
    Matrix m = *this;
    const auto piv = saturate(m, certainty);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : piv)
        is_pivot[c] = true;
    std::vector<Vector> out;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f])
            continue;
        Vector v(cols_, ctx_->zero());
        v[f] = ctx_->one();
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -m(static_cast<int>(r), f);
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(const FieldContext &F, int d, const std::vector<Vector> &spanning) : ctx_(&F), d_(d)
{
    if (spanning.empty())
        return;
    Matrix m = rows_of(F, d, spanning);
    const auto piv = saturate(m, &certainty_);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        Vector v;
        for (int j = 0; j < d; ++j)
            v.push_back(m(static_cast<int>(r), j));
        basis_.push_back(v);
    }
}

Subspace Subspace::full(const FieldContext &F, int d)
{
    return Subspace(F, d, Matrix::identity(F, d).columns());
}

bool Subspace::contains(const Vector &v) const
{
    if (static_cast<int>(v.size()) != d_)
        throw std::invalid_argument("subspace membership: dimension mismatch");
    bool zero = true;
    for (const auto &x : v)
        zero = zero && x.is_zero();
    if (zero)
        return true;
    if (basis_.empty())
        return false;
    auto vs = basis_;
    vs.push_back(v);
    return rows_of(*ctx_, d_, vs).rank() == dim();
}

bool Subspace::contains(const Subspace &u) const
{
    for (const auto &v : u.basis_)
        if (!contains(v))
            return false;
    return true;
}

Subspace Subspace::operator+(const Subspace &u) const
{
    const FieldContext &F = ctx_ ? *ctx_ : *u.ctx_;
    auto vs = basis_;
    vs.insert(vs.end(), u.basis_.begin(), u.basis_.end());
    Subspace out(F, d_, vs);
    out.certainty_ = std::min({out.certainty_, certainty_, u.certainty_});
    return out;
}

Subspace Subspace::intersect(const Subspace &u) const
{
    const FieldContext &F = ctx_ ? *ctx_ : *u.ctx_;
    if (basis_.empty() || u.basis_.empty()) {
        Subspace out = zero(F, d_);
        out.certainty_ = std::min(certainty_, u.certainty_);
        return out;
    }
    // Solve sum a_k b_k = sum c_l u_l.
    const int k = dim(), l = u.dim();
    Matrix m(F, d_, k + l);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < d_; ++i)
            m(i, j) = basis_[j][i];
    for (int j = 0; j < l; ++j)
        for (int i = 0; i < d_; ++i)
            m(i, k + j) = -u.basis_[j][i];
    std::vector<Vector> vs;
    std::int64_t cert = std::min(certainty_, u.certainty_);
    for (const auto &x : m.nullspace(&cert)) {
        Vector v(d_, F.zero());
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < d_; ++i)
                v[i] = v[i] + x[j] * basis_[j][i];
        vs.push_back(v);
    }
    Subspace out(F, d_, vs);
    out.certainty_ = std::min(out.certainty_, cert);
    return out;
}

Subspace Subspace::image(const Matrix &m) const
{
    std::vector<Vector> vs;
    for (const auto &v : basis_)
        vs.push_back(m * v);
    Subspace out(m.ctx(), m.rows(), vs);
    out.certainty_ = std::min(out.certainty_, certainty_);
    return out;
}

std::vector<Vector> Subspace::complement_of(const Subspace &u) const
{
    Subspace acc = intersect(u);
    std::vector<Vector> out;
    for (const auto &v : basis_) {
        if (acc.contains(v))
            continue;
        out.push_back(v);
        acc = acc + Subspace(*ctx_, d_, {v});
    }
    return out;
}

} // namespace lt
