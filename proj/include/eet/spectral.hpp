#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eet/linalg.hpp"

namespace eet {

/// A point on the unit circle, stored as a fraction of a full turn.
/// Either an exact rational p/q (meaning e^{2*pi*i*p/q}) or a float in [0,1).
/// Rational arithmetic stays exact; anything touching a float phase degrades
/// to float.
class Phase {
public:
    static Phase rational(std::int64_t p, std::int64_t q);
    static Phase floating(double turns);

    bool is_rational() const { return rational_; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    /// Turn fraction in [0,1); exact value for rational phases.
    double turns() const;

    /// Phase sum (product of the circle points).
    Phase operator+(const Phase& rhs) const;
    /// Complex conjugate (negated turns).
    Phase conjugate() const;
    /// n-th power of the circle point; n may be negative.
    Phase times(std::int64_t n) const;

    cplx value() const;
    bool is_one() const;

    /// Distance on the circle, in turns.
    static double circle_distance(const Phase& a, const Phase& b);
    static bool approx_equal(const Phase& a, const Phase& b, double tol = 1e-12);

private:
    Phase() = default;
    bool rational_ = true;
    std::int64_t num_ = 0, den_ = 1; // reduced, 0 <= num < den
    double turns_ = 0.0;             // float variant only
};

/// c_N(w) = (1/N) sum_{j<N} w^j. Exact 1 at w = 1; exact 0 for a rational
/// phase of order dividing N (other than 1); geometric closed form otherwise.
cplx cesaro_kernel(const Phase& w, std::int64_t n);

/// A unitary given by its eigenphases and orthonormal eigenbases. The bases
/// must jointly span the space, so the operator is almost periodic by
/// construction.
class SpectralUnitary {
public:
    SpectralUnitary() = default;

    struct Eig {
        Phase phase;
        std::vector<Vec> basis;
        Mat projector; // sum_i |v_i><v_i|, cached
    };

    static SpectralUnitary from_eigensystem(
        std::vector<std::pair<Phase, std::vector<Vec>>> pairs);

    std::size_t dim() const { return dim_; }
    std::span<const Eig> eigs() const { return eigs_; }
    std::vector<Phase> phases() const;

    Mat to_matrix() const;
    /// U^n x = sum_z z^n E_z x.
    Vec power_apply(std::int64_t n, const Vec& x) const;
    /// E_z; the zero matrix when z is not an eigenphase.
    Mat eig_projection(const Phase& z) const;
    /// E_1, the mean ergodic limit of (1/N) sum U^n.
    Mat mean_ergodic_projection() const;
    /// Index of the eigenphase equal to z, or -1.
    int phase_index(const Phase& z) const;

private:
    std::size_t dim_ = 0;
    std::vector<Eig> eigs_;
};

/// sigma_pp^a(U): eigenphases whose conjugate is also an eigenphase.
std::vector<Phase> asymmetric_point_spectrum(const SpectralUnitary& u);

/// Minimum eigenvalue of (1/n) sum |A_k|^2 - |(1/n) sum A_k|^2.
/// The operator-convexity bound says this is >= 0.
double psd_average_bound_defect(std::span<const Mat> mats);

/// |(1/(MN)) sum_{n<N} sum_{m<M} a_{m+n} - (1/N) sum_{n<N} a_n|.
double double_average_defect(std::span<const cplx> seq, std::int64_t n, std::int64_t m);

/// The displayed bound (M-1)(M+2)/(MN) * sup for the double-average defect.
double double_average_bound(std::int64_t n, std::int64_t m, double sup);

} // namespace eet
