#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eet/linalg.hpp"
#include "eet/partitions.hpp"
#include "eet/report.hpp"
#include "eet/spectral.hpp"

namespace eet {

/// The data (U, alpha, A_1..A_{2k-1}) of an entangled Cesaro mean. For k = 0
/// the operator list is empty and every average is the identity.
struct EntangledInstance {
    SpectralUnitary u;
    PairPartition partition;
    std::vector<Mat> ops;

    EntangledInstance(SpectralUnitary u_, PairPartition partition_, std::vector<Mat> ops_);
};

/// (1/N^k) sum over n_1..n_k < N of U^{n_a(1)} A_1 U^{n_a(2)} ... A U^{n_a(2k)},
/// evaluated literally with precomputed powers. Budget: k <= 3, N^k <= 1e7.
Mat average_time_domain(const EntangledInstance& inst, std::int64_t n);

/// The same average through the spectral expansion U^n = sum_z z^n E_z:
/// a sum over eigenphase tuples weighted by products of Cesaro kernels.
/// Exact kernel zeros make this attain the limit at finite N on rational
/// spectra. Budget: (#eigenphases)^(2k) <= 1e7.
Mat average_spectral(const EntangledInstance& inst, std::int64_t n);

/// The limit operator: sum over (z_1..z_k) in sigma_pp^a(U)^k of
/// E_{z#} A_1 E_{z#} ... A_{2k-1} E_{z#}, first occurrence of a class
/// carrying z_j and the second z_j-bar.
Mat entangled_limit(const EntangledInstance& inst);

/// Defect of the eigenvector reduction identity: beta_inst has k+1 classes and
/// 2k+1 operators, x is an eigenvector of u. Both sides are computed
/// independently (full limit vs. reduced limit with the fused projector).
double zaz_reduction_check(const EntangledInstance& beta_inst, const Vec& eigvec);

/// Deviation table of the finite-N spectral average from the limit, measured
/// on a probe panel; deviation(N) = max_x ||avg_N x - S_alpha x||.
ConvergenceReport convergence_report(const EntangledInstance& inst,
                                     std::span<const std::int64_t> n_grid,
                                     std::span<const Vec> probes);

} // namespace eet
