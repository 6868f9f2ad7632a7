#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "eet/linalg.hpp"
#include "eet/spectral.hpp"

namespace eet {

/// The rotation on l^2(Z_m): U = cyclic shift, eigenphases j/m with Fourier
/// eigenvectors, Omega the uniform vector. The algebra M is the (maximal
/// abelian) span of the diagonal character unitaries V_j; M' = M.
/// Ad_U(V_j) = conj(omega^j) V_j, so V_j Omega spans the eigenspace of
/// phase -j/m: each eigenspace is one-dimensional and unitary-generated.
class CyclicRotationSystem {
public:
    explicit CyclicRotationSystem(int m);

    int m() const { return m_; }
    const SpectralUnitary& u() const { return u_; }
    const Vec& omega() const { return omega_; }

    /// V_j = diag(omega^{j t}), the j-th character as a multiplication operator.
    Mat character(int j) const;
    /// The unitary of M_z for eigenphase z = j/m turns, i.e. character(-j).
    Mat generator_for_phase(int j) const;
    /// Fourier eigenvector of eigenphase j/m.
    Vec fourier_vector(int j) const;

private:
    int m_;
    SpectralUnitary u_;
    Vec omega_;
};

/// An orthonormal basis word of the Bernoulli scheme on q symbols: a finite
/// map site -> nonzero character index in {1..q-1}. The empty word is Omega.
using CylinderWord = std::map<std::int64_t, int>;

/// Finitely supported vector in the cylinder basis.
using CylVec = std::map<CylinderWord, cplx>;

/// A cylinder operator: finite sum of character monomials. Each monomial
/// multiplies pointwise, adding its indices sitewise mod q.
struct CylTerm {
    CylinderWord chars;
    cplx coeff;
};
using CylOp = std::vector<CylTerm>;

/// The Bernoulli shift over Z_q with uniform measure, in its GNS
/// representation: exact sparse arithmetic on cylinder words. sigma_pp(U) =
/// {1} (weak mixing), Omega the only invariant unit vector.
class BernoulliShiftSystem {
public:
    explicit BernoulliShiftSystem(int q);

    int q() const { return q_; }
    CylVec omega() const { return {{CylinderWord{}, cplx(1.0)}}; }

    /// U^n: translate every site by n. Exact.
    CylVec apply_shift(const CylVec& v, std::int64_t n) const;
    /// Apply a cylinder operator (character addition mod q, sitewise).
    CylVec apply_op(const CylOp& op, const CylVec& v) const;
    /// Single character multiplier chi_{index@site}.
    CylOp character(std::int64_t site, int index) const;

    static cplx inner(const CylVec& a, const CylVec& b);
    static double norm(const CylVec& a);
    /// <A Omega, Omega> for a cylinder operator: the empty-word coefficient mass.
    cplx state(const CylOp& a) const;

    /// Extent of the site support of an operator (max site - min site + 1 over
    /// all monomials; 0 for site-free operators).
    static std::int64_t support_width(const CylOp& op);
    static std::int64_t support_width(const CylVec& v);

private:
    int q_;
};

CylVec operator*(cplx s, CylVec v);
CylVec operator+(CylVec a, const CylVec& b);
CylVec operator-(CylVec a, const CylVec& b);

/// (1/N) sum_{n<N} <A U^n B Omega, Omega>: the Cesaro orbit average of the
/// diagonal state on A (x) B, for both model flavors.
cplx generic_state_average(const CyclicRotationSystem& sys, const Mat& a, const Mat& b,
                           std::int64_t n);
cplx generic_state_average(const BernoulliShiftSystem& sys, const CylOp& a, const CylOp& b,
                           std::int64_t n);

} // namespace eet
