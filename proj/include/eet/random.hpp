#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eet/linalg.hpp"
#include "eet/partitions.hpp"
#include "eet/spectral.hpp"

namespace eet {

/// Deterministic generators used by experiments and test sweeps. Everything
/// funnels through one mt19937_64 so a single seed pins a whole run.
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx random_entry(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

inline Vec random_vector(Rng& rng, std::size_t dim) {
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = random_entry(rng);
    return v;
}

inline Vec random_unit_vector(Rng& rng, std::size_t dim) {
    Vec v = random_vector(rng, dim);
    const double n = v.norm();
    v *= cplx(1.0 / n);
    return v;
}

inline Mat random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_entry(rng);
    return m;
}

/// Gram-Schmidt on Gaussian vectors: a Haar-ish orthonormal basis.
inline std::vector<Vec> random_orthonormal_basis(Rng& rng, std::size_t dim) {
    std::vector<Vec> basis;
    basis.reserve(dim);
    while (basis.size() < dim) {
        Vec v = random_vector(rng, dim);
        for (const auto& b : basis) v -= inner(v, b) * b;
        const double n = v.norm();
        if (n < 1e-6) continue; // nearly dependent draw, retry
        v *= cplx(1.0 / n);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Random unitary with n_eigs distinct rational eigenphases (denominators up
/// to max_den) and a random joint eigenbasis; eigenspace dimensions are dealt
/// round-robin so every phase is populated.
inline SpectralUnitary random_rational_unitary(Rng& rng, std::size_t dim, std::size_t n_eigs,
                                               std::int64_t max_den = 12) {
    std::vector<Phase> phases;
    while (phases.size() < n_eigs) {
        const std::int64_t q =
            std::uniform_int_distribution<std::int64_t>(1, max_den)(rng);
        const std::int64_t p = std::uniform_int_distribution<std::int64_t>(0, q - 1)(rng);
        Phase cand = Phase::rational(p, q);
        bool dup = false;
        for (const auto& ph : phases) dup = dup || Phase::approx_equal(ph, cand);
        if (!dup) phases.push_back(cand);
    }
    auto basis = random_orthonormal_basis(rng, dim);
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
    pairs.reserve(n_eigs);
    for (std::size_t i = 0; i < n_eigs; ++i) pairs.emplace_back(phases[i], std::vector<Vec>{});
    for (std::size_t i = 0; i < dim; ++i)
        pairs[i % n_eigs].second.push_back(std::move(basis[i]));
    return SpectralUnitary::from_eigensystem(std::move(pairs));
}

inline PairPartition random_pair_partition(Rng& rng, int k) {
    auto all = PairPartition::enumerate(k);
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

} // namespace eet
