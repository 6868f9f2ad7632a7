#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eet/linalg.hpp"
#include "eet/models.hpp"
#include "eet/report.hpp"
#include "eet/spectral.hpp"

namespace eet {

/// The product dynamics U^{m1} (x) U^{m2} over the cyclic model, materialized
/// as a spectral unitary on C^{m^2}. Defaults to the diagonal-measure case
/// (m1, m2) = (1, 2).
class CyclicTensorDynamics {
public:
    CyclicTensorDynamics(CyclicRotationSystem base, int m1 = 1, int m2 = 2);

    const CyclicRotationSystem& base() const { return base_; }
    int m1() const { return m1_; }
    int m2() const { return m2_; }
    const SpectralUnitary& tensor_unitary() const { return tensor_u_; }

private:
    CyclicRotationSystem base_;
    int m1_, m2_;
    SpectralUnitary tensor_u_;
};

/// Same data over the Bernoulli model; the tensor space stays symbolic
/// (E_1 is rank one on Omega (x) Omega).
struct BernoulliTensorDynamics {
    BernoulliShiftSystem base;
    int m1 = 1;
    int m2 = 2;
};

/// An eigenphase pair (z, w) with z^{m1} w^{m2} = 1, plus the cyclic turn
/// numerators (z = j/m, w = l/m turns).
struct SigmaPair {
    Phase z, w;
    int j = 0, l = 0;
};

/// All solution pairs, in exact rational arithmetic. Bernoulli: {(1,1)} only.
std::vector<SigmaPair> sigma_pairs(const CyclicTensorDynamics& td);
std::vector<SigmaPair> sigma_pairs(const BernoulliTensorDynamics& td);

/// E_1 on H (x) H as the direct sum of E_z (x) E_w over the sigma pairs.
Mat invariant_projection_tensor(const CyclicTensorDynamics& td);

/// The partial isometry of the diagonal-measure theorem: maps the product
/// vector V_z Omega (x) W_w Omega to V_z W_w Omega for each sigma pair, zero
/// on the complement of E_1. V*V = E_1.
struct PartialIsometryV {
    Mat v;                        // m x m^2
    std::vector<Vec> domain_basis; // V_z Omega (x) W_w Omega per sigma pair
    std::vector<Vec> images;       // V_z W_w Omega per sigma pair
};

PartialIsometryV build_partial_isometry(const CyclicTensorDynamics& td);

/// V applied to a tensor-space vector (cyclic), or symbolically via the
/// rank-one E_1 (Bernoulli): V(x (x) y) = <x,Omega><y,Omega> Omega.
Vec apply_partial_isometry(const PartialIsometryV& v, const Vec& tensor_vec);
CylVec apply_partial_isometry_symbolic(const BernoulliShiftSystem& sys, const CylVec& x,
                                       const CylVec& y);

/// (1/N) sum U^{n m1} A U^{n (m2-m1)} B Omega — the diagonal Cesaro vector;
/// its limit is V(A Omega (x) B Omega). The (1,2) default gives
/// (1/N) sum U^n A U^n B Omega.
Vec diagonal_cesaro_vector(const CyclicTensorDynamics& td, const Mat& a, const Mat& b,
                           std::int64_t n);
CylVec diagonal_cesaro_vector(const BernoulliTensorDynamics& td, const CylOp& a,
                              const CylOp& b, std::int64_t n);

/// Strong-convergence diagnostics of (1/N) sum U^n A U^n toward V(A Omega (x) .)
/// on a probe panel.
ConvergenceReport diagonal_cesaro_operator(const CyclicTensorDynamics& td, const Mat& a,
                                           std::span<const std::int64_t> n_grid,
                                           std::span<const Vec> probes);
ConvergenceReport diagonal_cesaro_operator(const BernoulliTensorDynamics& td, const CylOp& a,
                                           std::span<const std::int64_t> n_grid,
                                           std::span<const CylVec> probes);

/// The closing identity for the almost periodic ergodic case:
/// V(A Omega (x) xi) = sum_w E_{w-bar} A E_w xi.
Vec closing_formula_apply(const CyclicRotationSystem& sys, const Mat& a, const Vec& xi);

/// Finite-N triple correlation (1/N) sum <U^n A1 U^n A2 Omega, A0* Omega>
/// and its limit <V(A1 Omega (x) A2 Omega), A0* Omega>.
struct ScalarAverage {
    cplx finite_n;
    cplx limit;
};

ScalarAverage triple_correlation(const CyclicTensorDynamics& td, const Mat& a0, const Mat& a1,
                                 const Mat& a2, std::int64_t n);
ScalarAverage triple_correlation(const BernoulliTensorDynamics& td, const CylOp& a0,
                                 const CylOp& a1, const CylOp& a2, std::int64_t n);

/// (1/N) sum <A U^{n(m2-m1)} B Omega, Omega> against the spectral limit
/// sum over {z in sigma_pp : z^{m2-m1} = 1} of <A E_z B Omega, Omega>.
/// In the weakly mixing model the limit collapses to <A Omega,Omega><B Omega,Omega>.
ScalarAverage general_exponent_average(const CyclicTensorDynamics& td, const Mat& a,
                                       const Mat& b, std::int64_t n);
ScalarAverage general_exponent_average(const BernoulliTensorDynamics& td, const CylOp& a,
                                       const CylOp& b, std::int64_t n);

/// || (1/N) sum U^{n m1} A U^{n m2} xi - <A Omega,Omega><xi,Omega> Omega ||:
/// the weak-mixing operator statement, probed on one vector.
double weak_mixing_probe_defect(const BernoulliTensorDynamics& td, const CylOp& a,
                                const CylVec& xi, std::int64_t n);

} // namespace eet
