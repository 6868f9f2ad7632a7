#include "eet/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace eet {

CyclicTensorDynamics::CyclicTensorDynamics(CyclicRotationSystem base, int m1, int m2)
    : base_(std::move(base)), m1_(m1), m2_(m2) {
    if (!(0 < m1 && m1 < m2))
        throw Error("CyclicTensorDynamics: need 0 < m1 < m2");
    const int m = base_.m();
    // Eigenvectors of U^{m1} (x) U^{m2} are the products of Fourier vectors;
    // group them by the combined phase (m1 j + m2 l)/m.
    std::map<int, std::vector<Vec>> by_phase;
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
            const int num = int((std::int64_t(m1) * j + std::int64_t(m2) * l) % m);
            by_phase[num].push_back(
                tensor(base_.fourier_vector(j), base_.fourier_vector(l)));
        }
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
    pairs.reserve(by_phase.size());
    for (auto& [num, basis] : by_phase)
        pairs.emplace_back(Phase::rational(num, m), std::move(basis));
    tensor_u_ = SpectralUnitary::from_eigensystem(std::move(pairs));
}

std::vector<SigmaPair> sigma_pairs(const CyclicTensorDynamics& td) {
    const int m = td.base().m();
    std::vector<SigmaPair> out;
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
            if ((std::int64_t(td.m1()) * j + std::int64_t(td.m2()) * l) % m == 0)
                out.push_back({Phase::rational(j, m), Phase::rational(l, m), j, l});
    return out;
}

std::vector<SigmaPair> sigma_pairs(const BernoulliTensorDynamics&) {
    return {{Phase::rational(0, 1), Phase::rational(0, 1), 0, 0}};
}

Mat invariant_projection_tensor(const CyclicTensorDynamics& td) {
    const int m = td.base().m();
    const auto& u = td.base().u();
    Mat e1 = Mat::zero(std::size_t(m) * std::size_t(m), std::size_t(m) * std::size_t(m));
    for (const auto& s : sigma_pairs(td))
        e1 += kron(u.eig_projection(s.z), u.eig_projection(s.w));
    return e1;
}

PartialIsometryV build_partial_isometry(const CyclicTensorDynamics& td) {
    const int m = td.base().m();
    const auto& sys = td.base();
    PartialIsometryV out;
    out.v = Mat::zero(std::size_t(m), std::size_t(m) * std::size_t(m));
    std::vector<int> image_chars;
    for (const auto& s : sigma_pairs(td)) {
        const Mat vz = sys.generator_for_phase(s.j);
        const Mat ww = sys.generator_for_phase(s.l);
        const int img_char = ((-(s.j + s.l)) % m + m) % m;
        if (std::find(image_chars.begin(), image_chars.end(), img_char) != image_chars.end())
            throw Error("build_partial_isometry: image vectors collide; the diagonal "
                        "state is not generic for these exponents");
        image_chars.push_back(img_char);
        Vec domain = tensor(vz.apply(sys.omega()), ww.apply(sys.omega()));
        Vec image = (vz * ww).apply(sys.omega());
        out.v += Mat::outer(image, domain);
        out.domain_basis.push_back(std::move(domain));
        out.images.push_back(std::move(image));
    }
    return out;
}

Vec apply_partial_isometry(const PartialIsometryV& v, const Vec& tensor_vec) {
    return v.v.apply(tensor_vec);
}

CylVec apply_partial_isometry_symbolic(const BernoulliShiftSystem& sys, const CylVec& x,
                                       const CylVec& y) {
    const CylVec om = sys.omega();
    const cplx c = BernoulliShiftSystem::inner(x, om) * BernoulliShiftSystem::inner(y, om);
    return c * sys.omega();
}

Vec diagonal_cesaro_vector(const CyclicTensorDynamics& td, const Mat& a, const Mat& b,
                           std::int64_t n) {
    if (n < 1) throw Error("diagonal_cesaro_vector: N must be >= 1");
    const auto& u = td.base().u();
    const Vec b_omega = b.apply(td.base().omega());
    Vec sum(u.dim());
    for (std::int64_t i = 0; i < n; ++i)
        sum += u.power_apply(i * td.m1(),
                             a.apply(u.power_apply(i * (td.m2() - td.m1()), b_omega)));
    sum *= cplx(1.0 / double(n));
    return sum;
}

CylVec diagonal_cesaro_vector(const BernoulliTensorDynamics& td, const CylOp& a,
                              const CylOp& b, std::int64_t n) {
    if (n < 1) throw Error("diagonal_cesaro_vector: N must be >= 1");
    const auto& sys = td.base;
    const CylVec b_omega = sys.apply_op(b, sys.omega());
    CylVec sum;
    for (std::int64_t i = 0; i < n; ++i) {
        CylVec term = sys.apply_shift(
            sys.apply_op(a, sys.apply_shift(b_omega, i * (td.m2 - td.m1))), i * td.m1);
        sum = std::move(sum) + term;
    }
    return cplx(1.0 / double(n)) * std::move(sum);
}

ConvergenceReport diagonal_cesaro_operator(const CyclicTensorDynamics& td, const Mat& a,
                                           std::span<const std::int64_t> n_grid,
                                           std::span<const Vec> probes) {
    const auto& u = td.base().u();
    const auto v = build_partial_isometry(td);
    const Vec a_omega = a.apply(td.base().omega());
    ConvergenceReport rep;
    rep.probe_count = int(probes.size());
    for (const auto n : n_grid) {
        double dev = 0.0;
        for (const auto& xi : probes) {
            Vec avg(u.dim());
            for (std::int64_t i = 0; i < n; ++i)
                avg += u.power_apply(i * td.m1(),
                                     a.apply(u.power_apply(i * (td.m2() - td.m1()), xi)));
            avg *= cplx(1.0 / double(n));
            dev = std::max(dev,
                           (avg - apply_partial_isometry(v, tensor(a_omega, xi))).norm());
        }
        rep.rows.push_back({n, dev});
    }
    rep.fit_slope();
    return rep;
}

ConvergenceReport diagonal_cesaro_operator(const BernoulliTensorDynamics& td, const CylOp& a,
                                           std::span<const std::int64_t> n_grid,
                                           std::span<const CylVec> probes) {
    const auto& sys = td.base;
    const CylVec a_omega = sys.apply_op(a, sys.omega());
    ConvergenceReport rep;
    rep.probe_count = int(probes.size());
    for (const auto n : n_grid) {
        double dev = 0.0;
        for (const auto& xi : probes) {
            CylVec avg;
            for (std::int64_t i = 0; i < n; ++i) {
                CylVec term = sys.apply_shift(
                    sys.apply_op(a, sys.apply_shift(xi, i * (td.m2 - td.m1))), i * td.m1);
                avg = std::move(avg) + term;
            }
            avg = cplx(1.0 / double(n)) * std::move(avg);
            const CylVec limit = apply_partial_isometry_symbolic(sys, a_omega, xi);
            dev = std::max(dev, BernoulliShiftSystem::norm(avg - limit));
        }
        rep.rows.push_back({n, dev});
    }
    rep.fit_slope();
    return rep;
}

Vec closing_formula_apply(const CyclicRotationSystem& sys, const Mat& a, const Vec& xi) {
    Vec out(sys.u().dim());
    for (const auto& e : sys.u().eigs()) {
        const Mat e_conj = sys.u().eig_projection(e.phase.conjugate());
        out += e_conj.apply(a.apply(e.projector.apply(xi)));
    }
    return out;
}

ScalarAverage triple_correlation(const CyclicTensorDynamics& td, const Mat& a0, const Mat& a1,
                                 const Mat& a2, std::int64_t n) {
    if (n < 1) throw Error("triple_correlation: N must be >= 1");
    const auto& sys = td.base();
    const auto& u = sys.u();
    const Vec a0_adj_omega = a0.adjoint().apply(sys.omega());
    const Vec a2_omega = a2.apply(sys.omega());
    cplx s = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        s += inner(u.power_apply(i * td.m1(),
                                 a1.apply(u.power_apply(i * (td.m2() - td.m1()), a2_omega))),
                   a0_adj_omega);
    const auto v = build_partial_isometry(td);
    const Vec limit_vec =
        apply_partial_isometry(v, tensor(a1.apply(sys.omega()), a2_omega));
    return {s / double(n), inner(limit_vec, a0_adj_omega)};
}

ScalarAverage triple_correlation(const BernoulliTensorDynamics& td, const CylOp& a0,
                                 const CylOp& a1, const CylOp& a2, std::int64_t n) {
    if (n < 1) throw Error("triple_correlation: N must be >= 1");
    const auto& sys = td.base;
    // <U^{n m1} A1 U^{n(m2-m1)} A2 Omega, A0* Omega>; A0* conjugates
    // coefficients and negates character indices.
    CylOp a0_adj;
    for (const auto& term : a0) {
        CylinderWord w;
        for (const auto& [site, idx] : term.chars) w.emplace(site, sys.q() - idx);
        a0_adj.push_back({std::move(w), std::conj(term.coeff)});
    }
    const CylVec a0_adj_omega = sys.apply_op(a0_adj, sys.omega());
    const CylVec a2_omega = sys.apply_op(a2, sys.omega());
    cplx s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        CylVec term = sys.apply_shift(
            sys.apply_op(a1, sys.apply_shift(a2_omega, i * (td.m2 - td.m1))), i * td.m1);
        s += BernoulliShiftSystem::inner(term, a0_adj_omega);
    }
    const cplx limit = sys.state(a1) * sys.state(a2) * sys.state(a0);
    return {s / double(n), limit};
}

ScalarAverage general_exponent_average(const CyclicTensorDynamics& td, const Mat& a,
                                       const Mat& b, std::int64_t n) {
    if (n < 1) throw Error("general_exponent_average: N must be >= 1");
    const auto& sys = td.base();
    const auto& u = sys.u();
    const int d = td.m2() - td.m1();
    const Vec b_omega = b.apply(sys.omega());
    cplx s = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        s += inner(a.apply(u.power_apply(i * d, b_omega)), sys.omega());
    cplx limit = 0.0;
    for (const auto& e : u.eigs())
        if (e.phase.times(d).is_one())
            limit += inner(a.apply(e.projector.apply(b_omega)), sys.omega());
    return {s / double(n), limit};
}

ScalarAverage general_exponent_average(const BernoulliTensorDynamics& td, const CylOp& a,
                                       const CylOp& b, std::int64_t n) {
    if (n < 1) throw Error("general_exponent_average: N must be >= 1");
    const auto& sys = td.base;
    const int d = td.m2 - td.m1;
    const CylVec b_omega = sys.apply_op(b, sys.omega());
    const CylVec om = sys.omega();
    cplx s = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        s += BernoulliShiftSystem::inner(sys.apply_op(a, sys.apply_shift(b_omega, i * d)), om);
    return {s / double(n), sys.state(a) * sys.state(b)};
}

double weak_mixing_probe_defect(const BernoulliTensorDynamics& td, const CylOp& a,
                                const CylVec& xi, std::int64_t n) {
    if (n < 1) throw Error("weak_mixing_probe_defect: N must be >= 1");
    const auto& sys = td.base;
    CylVec avg;
    for (std::int64_t i = 0; i < n; ++i) {
        CylVec term =
            sys.apply_shift(sys.apply_op(a, sys.apply_shift(xi, i * td.m2)), i * td.m1);
        avg = std::move(avg) + term;
    }
    avg = cplx(1.0 / double(n)) * std::move(avg);
    const CylVec om = sys.omega();
    const cplx c = BernoulliShiftSystem::inner(sys.apply_op(a, om), om) *
                   BernoulliShiftSystem::inner(xi, om);
    return BernoulliShiftSystem::norm(avg - c * sys.omega());
}

} // namespace eet
