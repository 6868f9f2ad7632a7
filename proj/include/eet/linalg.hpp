#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "eet/errors.hpp"

namespace eet {

using cplx = std::complex<double>;

/// Dense complex vector with value semantics.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t dim) : e_(dim) {}
    Vec(std::initializer_list<cplx> init) : e_(init) {}
    explicit Vec(std::vector<cplx> entries) : e_(std::move(entries)) {}

    std::size_t dim() const { return e_.size(); }
    cplx& operator[](std::size_t i) { return e_[i]; }
    const cplx& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<cplx>& entries() const { return e_; }

    Vec& operator+=(const Vec& rhs);
    Vec& operator-=(const Vec& rhs);
    Vec& operator*=(cplx s);

    double norm() const;

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(cplx s, Vec a) { return a *= s; }

private:
    std::vector<cplx> e_;
};

/// <a, b> = sum a_i conj(b_i), linear in the first argument.
cplx inner(const Vec& a, const Vec& b);

/// Tensor product, (x (x) y)_{i*dim(y)+j} = x_i y_j.
Vec tensor(const Vec& x, const Vec& y);

/// Dense row-major complex matrix.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t rows, std::size_t cols);
    /// |x><y|
    static Mat outer(const Vec& x, const Vec& y);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Mat& operator+=(const Mat& rhs);
    Mat& operator-=(const Mat& rhs);
    Mat& operator*=(cplx s);

    Mat adjoint() const;
    Vec apply(const Vec& x) const;
    double frobenius_norm() const;

    bool is_unitary(double tol = 1e-10) const;
    bool is_projection(double tol = 1e-10) const;

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(cplx s, Mat a) { return a *= s; }
    friend Mat operator*(const Mat& a, const Mat& b);

private:
    std::size_t rows_, cols_;
    std::vector<cplx> e_;
};

/// Kronecker product: (a (x) b)(x (x) y) = (ax) (x) (by).
Mat kron(const Mat& a, const Mat& b);

/// P = sum_i v_i v_i* over an orthonormal family. Empty input gives the
/// zero matrix of the given ambient dimension (0 means "unknown", yields 0x0).
Mat projector_from_vectors(std::span<const Vec> basis, std::size_t dim = 0);

/// Left-to-right product of a nonempty factor list.
Mat chain_product(std::span<const Mat> factors);

/// Largest singular value, estimated by power iteration on A*A.
double operator_norm_estimate(const Mat& a, double tol = 1e-6, int max_iter = 10000);

/// Smallest eigenvalue of a Hermitian matrix (cyclic Jacobi; small dims only).
double hermitian_min_eigenvalue(const Mat& a);

} // namespace eet
