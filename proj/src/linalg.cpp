#include "eet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace eet {

Vec& Vec::operator+=(const Vec& rhs) {
    if (dim() != rhs.dim()) throw DimensionMismatch("Vec +=: dimension mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& rhs) {
    if (dim() != rhs.dim()) throw DimensionMismatch("Vec -=: dimension mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= rhs.e_[i];
    return *this;
}

Vec& Vec::operator*=(cplx s) {
    for (auto& x : e_) x *= s;
    return *this;
}

double Vec::norm() const {
    double s = 0.0;
    for (const auto& x : e_) s += std::norm(x);
    return std::sqrt(s);
}

cplx inner(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

Vec tensor(const Vec& x, const Vec& y) {
    Vec out(x.dim() * y.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) out[i * y.dim() + j] = x[i] * y[j];
    return out;
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows_ * cols_ != e_.size())
        throw DimensionMismatch("Mat: entry count does not match rows*cols");
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

Mat Mat::outer(const Vec& x, const Vec& y) {
    Mat m(x.dim(), y.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

Mat& Mat::operator+=(const Mat& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("Mat +=: shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("Mat -=: shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= rhs.e_[i];
    return *this;
}

Mat& Mat::operator*=(cplx s) {
    for (auto& x : e_) x *= s;
    return *this;
}

Mat Mat::adjoint() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Vec Mat::apply(const Vec& x) const {
    if (cols_ != x.dim()) throw DimensionMismatch("Mat::apply: dimension mismatch");
    Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double Mat::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : e_) s += std::norm(x);
    return std::sqrt(s);
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("Mat *: inner dimensions differ");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t l = 0; l < a.cols_; ++l) {
            const cplx ail = a(i, l);
            if (ail == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

bool Mat::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    return (adjoint() * (*this) - identity(rows_)).frobenius_norm() <= tol;
}

bool Mat::is_projection(double tol) const {
    if (rows_ != cols_) return false;
    return ((*this) * (*this) - (*this)).frobenius_norm() <= tol &&
           (adjoint() - (*this)).frobenius_norm() <= tol;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return c;
}

Mat projector_from_vectors(std::span<const Vec> basis, std::size_t dim) {
    if (basis.empty()) return Mat::zero(dim, dim);
    const std::size_t n = basis[0].dim();
    for (const auto& v : basis)
        if (v.dim() != n) throw DimensionMismatch("projector_from_vectors: mixed dimensions");
    // Gram matrix must be close to the identity.
    double dev = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const cplx g = inner(basis[i], basis[j]) - (i == j ? cplx(1.0) : cplx(0.0));
            dev += std::norm(g);
        }
    if (std::sqrt(dev) > 1e-8)
        throw NonOrthonormalInput("projector_from_vectors: Gram matrix deviates from I");
    Mat p = Mat::zero(n, n);
    for (const auto& v : basis) p += Mat::outer(v, v);
    return p;
}

Mat chain_product(std::span<const Mat> factors) {
    if (factors.empty()) throw DimensionMismatch("chain_product: empty factor list");
    Mat acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
    return acc;
}

double operator_norm_estimate(const Mat& a, double tol, int max_iter) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const Mat h = a.adjoint() * a;
    Vec v(a.cols());
    // Deterministic pseudo-random start to dodge orthogonality to the top eigenvector.
    for (std::size_t i = 0; i < v.dim(); ++i)
        v[i] = cplx(std::cos(1.7 * double(i) + 0.3), std::sin(2.3 * double(i) + 0.7));
    double nv = v.norm();
    if (nv == 0.0) return 0.0;
    v *= cplx(1.0 / nv);
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = h.apply(v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        w *= cplx(1.0 / nw);
        const double next = std::real(inner(h.apply(w), w));
        if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
        v = std::move(w);
    }
    return std::sqrt(std::max(lambda, 0.0));
}

double hermitian_min_eigenvalue(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("hermitian_min_eigenvalue: not square");
    const std::size_t n = a.rows();
    if (n == 0) return 0.0;
    Mat m = a;
    // Cyclic Jacobi with complex rotations.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
        if (std::sqrt(off) < 1e-14 * std::max(1.0, m.frobenius_norm())) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = std::real(m(p, p));
                const double aqq = std::real(m(q, q));
                // Unitary 2x2 rotation diagonalizing [[app, apq], [conj(apq), aqq]].
                const cplx phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * phase;
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx mip = m(i, p), miq = m(i, q);
                    m(i, p) = c * mip + std::conj(s) * miq;
                    m(i, q) = -s * mip + c * miq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx mpj = m(p, j), mqj = m(q, j);
                    m(p, j) = c * mpj + s * mqj;
                    m(q, j) = -std::conj(s) * mpj + c * mqj;
                }
            }
    }
    double mn = std::real(m(0, 0));
    for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, std::real(m(i, i)));
    return mn;
}

} // namespace eet
