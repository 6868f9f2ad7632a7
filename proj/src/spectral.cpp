#include "eet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace eet {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}
} // namespace

Phase Phase::rational(std::int64_t p, std::int64_t q) {
    if (q <= 0) throw Error("Phase::rational: denominator must be positive");
    p = mod_floor(p, q);
    const std::int64_t g = std::gcd(p, q);
    Phase ph;
    ph.rational_ = true;
    ph.num_ = p / g;
    ph.den_ = q / g;
    return ph;
}

Phase Phase::floating(double turns) {
    double t = turns - std::floor(turns);
    if (t >= 1.0) t = 0.0;
    Phase ph;
    ph.rational_ = false;
    ph.turns_ = t;
    return ph;
}

double Phase::turns() const {
    return rational_ ? double(num_) / double(den_) : turns_;
}

Phase Phase::operator+(const Phase& rhs) const {
    if (rational_ && rhs.rational_)
        return rational(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
    return floating(turns() + rhs.turns());
}

Phase Phase::conjugate() const {
    if (rational_) return rational(-num_, den_);
    return floating(-turns_);
}

Phase Phase::times(std::int64_t n) const {
    if (rational_) return rational(mod_floor(num_ * mod_floor(n, den_), den_), den_);
    return floating(turns_ * double(n));
}

cplx Phase::value() const {
    if (rational_) {
        if (num_ == 0) return 1.0;
        // A few phases that deserve exact entries.
        if (den_ == 2) return -1.0;
        if (den_ == 4) return num_ == 1 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    }
    const double t = two_pi * turns();
    return {std::cos(t), std::sin(t)};
}

bool Phase::is_one() const { return rational_ ? num_ == 0 : turns_ == 0.0; }

double Phase::circle_distance(const Phase& a, const Phase& b) {
    double d = std::abs(a.turns() - b.turns());
    return std::min(d, 1.0 - d);
}

bool Phase::approx_equal(const Phase& a, const Phase& b, double tol) {
    if (a.rational_ && b.rational_) return a.num_ == b.num_ && a.den_ == b.den_;
    return circle_distance(a, b) <= tol;
}

cplx cesaro_kernel(const Phase& w, std::int64_t n) {
    if (n < 1) throw Error("cesaro_kernel: n must be >= 1");
    if (w.is_one()) return 1.0;
    if (w.is_rational() && mod_floor(w.num() * mod_floor(n, w.den()), w.den()) == 0)
        return 0.0; // w^n = 1 exactly, w != 1
    const cplx wn = w.times(n).value();
    return (1.0 - wn) / (double(n) * (1.0 - w.value()));
}

SpectralUnitary SpectralUnitary::from_eigensystem(
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs) {
    SpectralUnitary u;
    std::size_t total = 0;
    for (const auto& [phase, basis] : pairs) total += basis.size();
    if (total == 0) throw IncompleteBasis("from_eigensystem: no eigenvectors");
    const std::size_t dim = pairs.front().second.empty()
                                ? 0
                                : pairs.front().second.front().dim();
    if (dim == 0 || total != dim)
        throw IncompleteBasis("from_eigensystem: eigenvectors do not span the space");

    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (Phase::approx_equal(pairs[i].first, pairs[j].first))
                throw DuplicatePhase("from_eigensystem: duplicate eigenphase");

    // Joint orthonormality across all eigenspaces.
    std::vector<Vec> all;
    all.reserve(total);
    for (const auto& [phase, basis] : pairs)
        for (const auto& v : basis) {
            if (v.dim() != dim)
                throw DimensionMismatch("from_eigensystem: mixed vector dimensions");
            all.push_back(v);
        }
    double dev = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            dev += std::norm(inner(all[i], all[j]) - (i == j ? cplx(1.0) : cplx(0.0)));
    if (std::sqrt(dev) > 1e-8)
        throw NonOrthonormalInput("from_eigensystem: joint basis not orthonormal");

    u.dim_ = dim;
    for (auto& [phase, basis] : pairs) {
        Mat proj = Mat::zero(dim, dim);
        for (const auto& v : basis) proj += Mat::outer(v, v);
        u.eigs_.push_back(Eig{phase, std::move(basis), std::move(proj)});
    }
    return u;
}

std::vector<Phase> SpectralUnitary::phases() const {
    std::vector<Phase> out;
    out.reserve(eigs_.size());
    for (const auto& e : eigs_) out.push_back(e.phase);
    return out;
}

Mat SpectralUnitary::to_matrix() const {
    Mat m = Mat::zero(dim_, dim_);
    for (const auto& e : eigs_) m += e.phase.value() * e.projector;
    return m;
}

Vec SpectralUnitary::power_apply(std::int64_t n, const Vec& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("power_apply: dimension mismatch");
    if (n == 0) return x;
    Vec y(dim_);
    for (const auto& e : eigs_) y += e.phase.times(n).value() * e.projector.apply(x);
    return y;
}

int SpectralUnitary::phase_index(const Phase& z) const {
    for (std::size_t i = 0; i < eigs_.size(); ++i)
        if (Phase::approx_equal(eigs_[i].phase, z)) return int(i);
    return -1;
}

Mat SpectralUnitary::eig_projection(const Phase& z) const {
    const int i = phase_index(z);
    return i < 0 ? Mat::zero(dim_, dim_) : eigs_[std::size_t(i)].projector;
}

Mat SpectralUnitary::mean_ergodic_projection() const {
    return eig_projection(Phase::rational(0, 1));
}

std::vector<Phase> asymmetric_point_spectrum(const SpectralUnitary& u) {
    std::vector<Phase> out;
    for (const auto& e : u.eigs())
        if (u.phase_index(e.phase.conjugate()) >= 0) out.push_back(e.phase);
    return out;
}

double psd_average_bound_defect(std::span<const Mat> mats) {
    if (mats.empty()) throw Error("psd_average_bound_defect: empty batch");
    const std::size_t n = mats[0].rows();
    for (const auto& a : mats)
        if (a.rows() != n || a.cols() != n)
            throw DimensionMismatch("psd_average_bound_defect: shapes differ");
    Mat sum_sq = Mat::zero(n, n);
    Mat sum = Mat::zero(n, n);
    for (const auto& a : mats) {
        sum_sq += a.adjoint() * a;
        sum += a;
    }
    const cplx inv(1.0 / double(mats.size()));
    sum *= inv;
    sum_sq *= inv;
    const Mat defect = sum_sq - sum.adjoint() * sum;
    return hermitian_min_eigenvalue(defect);
}

double double_average_defect(std::span<const cplx> seq, std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 1) throw Error("double_average_defect: N, M must be >= 1");
    if (std::int64_t(seq.size()) < n + m)
        throw InsufficientLength("double_average_defect: sequence shorter than N+M");
    cplx dbl = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < m; ++j) dbl += seq[std::size_t(i + j)];
    dbl /= double(n * m);
    cplx single = 0.0;
    for (std::int64_t i = 0; i < n; ++i) single += seq[std::size_t(i)];
    single /= double(n);
    return std::abs(dbl - single);
}

double double_average_bound(std::int64_t n, std::int64_t m, double sup) {
    return double(m - 1) * double(m + 2) / (double(m) * double(n)) * sup;
}

} // namespace eet
