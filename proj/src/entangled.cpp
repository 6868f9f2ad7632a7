#include "eet/entangled.hpp"

#include <algorithm>
#include <cmath>

namespace eet {

namespace {

// Positions of each class: classes[j-1] = (first, second), 1-based positions.
std::vector<std::pair<std::size_t, std::size_t>> class_positions(const PairPartition& p) {
    std::vector<std::pair<std::size_t, std::size_t>> out(std::size_t(p.k()), {0, 0});
    for (std::size_t i = 1; i <= p.positions(); ++i) {
        auto& slot = out[std::size_t(p.cls(i)) - 1];
        (slot.first == 0 ? slot.first : slot.second) = i;
    }
    return out;
}

} // namespace

EntangledInstance::EntangledInstance(SpectralUnitary u_, PairPartition partition_,
                                     std::vector<Mat> ops_)
    : u(std::move(u_)), partition(std::move(partition_)), ops(std::move(ops_)) {
    const int k = partition.k();
    const std::size_t want = k == 0 ? 0 : std::size_t(2 * k - 1);
    if (ops.size() != want)
        throw DimensionMismatch("EntangledInstance: need 2k-1 operators");
    for (const auto& a : ops)
        if (a.rows() != u.dim() || a.cols() != u.dim())
            throw DimensionMismatch("EntangledInstance: operator dimension mismatch");
}

Mat average_time_domain(const EntangledInstance& inst, std::int64_t n) {
    if (n < 1) throw Error("average_time_domain: N must be >= 1");
    const int k = inst.partition.k();
    const std::size_t dim = inst.u.dim();
    if (k == 0) return Mat::identity(dim);
    if (k > 3) throw BudgetExceeded("average_time_domain: k > 3");
    double tuples = 1.0;
    for (int i = 0; i < k; ++i) tuples *= double(n);
    if (tuples > 1e7 || double(n) * double(dim * dim) > 1e7)
        throw BudgetExceeded("average_time_domain: N^k over budget");

    std::vector<Mat> powers;
    powers.reserve(std::size_t(n));
    powers.push_back(Mat::identity(dim));
    const Mat u_mat = inst.u.to_matrix();
    for (std::int64_t i = 1; i < n; ++i) powers.push_back(powers.back() * u_mat);

    const std::size_t m = inst.partition.positions();
    Mat sum = Mat::zero(dim, dim);
    std::vector<std::int64_t> idx(std::size_t(k), 0);
    while (true) {
        Mat term = powers[std::size_t(idx[std::size_t(inst.partition.cls(1)) - 1])];
        for (std::size_t pos = 2; pos <= m; ++pos) {
            term = term * inst.ops[pos - 2];
            term = term * powers[std::size_t(idx[std::size_t(inst.partition.cls(pos)) - 1])];
        }
        sum += term;
        // odometer over (n_1..n_k)
        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    sum *= cplx(1.0 / tuples);
    return sum;
}

Mat average_spectral(const EntangledInstance& inst, std::int64_t n) {
    if (n < 1) throw Error("average_spectral: N must be >= 1");
    const int k = inst.partition.k();
    const std::size_t dim = inst.u.dim();
    if (k == 0) return Mat::identity(dim);

    const auto eigs = inst.u.eigs();
    const std::size_t ne = eigs.size();
    const std::size_t m = inst.partition.positions();
    double tuples = 1.0;
    for (std::size_t i = 0; i < m; ++i) tuples *= double(ne);
    if (tuples > 1e7) throw BudgetExceeded("average_spectral: eigenphase tuple count over budget");

    // Per-class kernel table: kernel[a*ne+b] = c_N(z_a * z_b).
    std::vector<cplx> kernel(ne * ne);
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < ne; ++b)
            kernel[a * ne + b] = cesaro_kernel(eigs[a].phase + eigs[b].phase, n);

    const auto cls_pos = class_positions(inst.partition);
    Mat sum = Mat::zero(dim, dim);
    std::vector<std::size_t> idx(m, 0); // eigenphase index per position
    while (true) {
        cplx weight = 1.0;
        for (int j = 0; j < k; ++j) {
            const auto [p1, p2] = cls_pos[std::size_t(j)];
            weight *= kernel[idx[p1 - 1] * ne + idx[p2 - 1]];
            if (weight == cplx(0.0)) break;
        }
        if (weight != cplx(0.0)) {
            Mat term = eigs[idx[0]].projector;
            for (std::size_t pos = 2; pos <= m; ++pos) {
                term = term * inst.ops[pos - 2];
                term = term * eigs[idx[pos - 1]].projector;
            }
            term *= weight;
            sum += term;
        }
        std::size_t d = 0;
        while (d < m && ++idx[d] == ne) idx[d++] = 0;
        if (d == m) break;
    }
    return sum;
}

Mat entangled_limit(const EntangledInstance& inst) {
    const int k = inst.partition.k();
    const std::size_t dim = inst.u.dim();
    if (k == 0) return Mat::identity(dim);

    const auto sigma = asymmetric_point_spectrum(inst.u);
    const std::size_t ns = sigma.size();
    const std::size_t m = inst.partition.positions();
    const auto signs = inst.partition.sign_assignment();

    // Projector lookup per sigma element: plain and conjugate.
    std::vector<Mat> proj(ns), proj_conj(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        proj[i] = inst.u.eig_projection(sigma[i]);
        proj_conj[i] = inst.u.eig_projection(sigma[i].conjugate());
    }

    Mat sum = Mat::zero(dim, dim);
    if (ns == 0) return sum;
    std::vector<std::size_t> idx(std::size_t(k), 0); // sigma index per class
    while (true) {
        auto slot = [&](std::size_t pos) -> const Mat& {
            const auto [c, conj] = signs[pos - 1];
            const std::size_t zi = idx[std::size_t(c) - 1];
            return conj ? proj_conj[zi] : proj[zi];
        };
        Mat term = slot(1);
        for (std::size_t pos = 2; pos <= m; ++pos) {
            term = term * inst.ops[pos - 2];
            term = term * slot(pos);
        }
        sum += term;
        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == ns) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    return sum;
}

double zaz_reduction_check(const EntangledInstance& beta_inst, const Vec& eigvec) {
    const auto& u = beta_inst.u;
    const std::size_t dim = u.dim();
    if (eigvec.dim() != dim) throw DimensionMismatch("zaz_reduction_check: vector dimension");
    const double xn = eigvec.norm();
    if (xn == 0.0) throw NotAnEigenvector("zaz_reduction_check: zero vector");

    // Identify the eigenphase of x.
    const Vec ux = u.power_apply(1, eigvec);
    int z0_idx = -1;
    for (std::size_t i = 0; i < u.eigs().size(); ++i) {
        const cplx z = u.eigs()[i].phase.value();
        if ((ux - z * eigvec).norm() <= 1e-10 * xn) {
            z0_idx = int(i);
            break;
        }
    }
    if (z0_idx < 0) throw NotAnEigenvector("zaz_reduction_check: not an eigenvector of U");
    const Phase z0 = u.eigs()[std::size_t(z0_idx)].phase;

    const Vec lhs = entangled_limit(beta_inst).apply(eigvec);

    // The identity pins the class containing the LAST position: its trailing
    // projector meets x directly, fixing that class's phase to z0-bar.
    const auto& word = beta_inst.partition.word();
    const int last_cls = word.back();
    const auto red = beta_inst.partition.reduce_class(last_cls);
    const std::size_t p = red.k_beta; // first position of the deleted pair
    const Mat e0 = u.eig_projection(z0.conjugate());

    // Split the chain over positions 1..2k+1 into connector matrices between
    // the surviving (variable) projector slots; slot p contributes E_{z0-bar}.
    const std::size_t m = beta_inst.partition.positions(); // 2k+2
    std::vector<Mat> connectors;
    Mat cur = Mat::identity(dim);
    for (std::size_t i = 1; i + 1 <= m; ++i) { // slots 1..2k+1
        if (i == p) {
            cur = cur * e0;
        } else {
            connectors.push_back(cur);
            cur = Mat::identity(dim);
        }
        cur = cur * beta_inst.ops[i - 1];
    }

    Vec rhs(dim);
    if (connectors.empty()) {
        rhs = cur.apply(eigvec); // k = 0: E_{z0-bar} A_1 x
    } else {
        std::vector<Mat> interior(connectors.begin() + 1, connectors.end());
        EntangledInstance reduced(u, red.alpha_beta, std::move(interior));
        rhs = connectors.front().apply(entangled_limit(reduced).apply(cur.apply(eigvec)));
    }
    return (lhs - rhs).norm();
}

ConvergenceReport convergence_report(const EntangledInstance& inst,
                                     std::span<const std::int64_t> n_grid,
                                     std::span<const Vec> probes) {
    if (n_grid.empty()) throw Error("convergence_report: empty N grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw Error("convergence_report: N grid must be strictly increasing");

    const Mat limit = entangled_limit(inst);
    ConvergenceReport rep;
    rep.probe_count = int(probes.size());
    for (const auto n : n_grid) {
        const Mat diff = average_spectral(inst, n) - limit;
        double dev = 0.0;
        for (const auto& x : probes) dev = std::max(dev, diff.apply(x).norm());
        rep.rows.push_back({n, dev});
    }
    rep.fit_slope();
    return rep;
}

} // namespace eet
