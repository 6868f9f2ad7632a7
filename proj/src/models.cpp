#include "eet/models.hpp"

#include <cmath>
#include <numbers>

namespace eet {

CyclicRotationSystem::CyclicRotationSystem(int m) : m_(m) {
    if (m < 1) throw Error("CyclicRotationSystem: m must be >= 1");
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
    pairs.reserve(std::size_t(m));
    for (int j = 0; j < m; ++j)
        pairs.emplace_back(Phase::rational(j, m), std::vector<Vec>{fourier_vector(j)});
    u_ = SpectralUnitary::from_eigensystem(std::move(pairs));
    omega_ = Vec(std::size_t(m));
    const double a = 1.0 / std::sqrt(double(m));
    for (int t = 0; t < m; ++t) omega_[std::size_t(t)] = a;
}

Vec CyclicRotationSystem::fourier_vector(int j) const {
    // Shift e_t -> e_{t+1 mod m}; components exp(-2 pi i j t / m)/sqrt(m)
    // give the eigenvector of eigenvalue exp(2 pi i j / m).
    auto v = Vec(std::size_t(m_));
    const double a = 1.0 / std::sqrt(double(m_));
    for (int t = 0; t < m_; ++t) {
        const double ang = -2.0 * std::numbers::pi * double(j) * double(t) / double(m_);
        v[std::size_t(t)] = a * cplx(std::cos(ang), std::sin(ang));
    }
    return v;
}

Mat CyclicRotationSystem::character(int j) const {
    Mat v = Mat::zero(std::size_t(m_), std::size_t(m_));
    for (int t = 0; t < m_; ++t) {
        const double ang = 2.0 * std::numbers::pi * double(j) * double(t) / double(m_);
        v(std::size_t(t), std::size_t(t)) = cplx(std::cos(ang), std::sin(ang));
    }
    return v;
}

Mat CyclicRotationSystem::generator_for_phase(int j) const {
    return character(((-j) % m_ + m_) % m_);
}

CylVec operator*(cplx s, CylVec v) {
    for (auto& [w, c] : v) c *= s;
    return v;
}

CylVec operator+(CylVec a, const CylVec& b) {
    for (const auto& [w, c] : b) {
        auto [it, inserted] = a.try_emplace(w, c);
        if (!inserted) it->second += c;
    }
    return a;
}

CylVec operator-(CylVec a, const CylVec& b) {
    for (const auto& [w, c] : b) {
        auto [it, inserted] = a.try_emplace(w, -c);
        if (!inserted) it->second -= c;
    }
    return a;
}

BernoulliShiftSystem::BernoulliShiftSystem(int q) : q_(q) {
    if (q < 2) throw Error("BernoulliShiftSystem: alphabet size must be >= 2");
}

CylVec BernoulliShiftSystem::apply_shift(const CylVec& v, std::int64_t n) const {
    CylVec out;
    for (const auto& [word, c] : v) {
        CylinderWord shifted;
        for (const auto& [site, idx] : word) shifted.emplace(site + n, idx);
        out[shifted] += c;
    }
    return out;
}

CylVec BernoulliShiftSystem::apply_op(const CylOp& op, const CylVec& v) const {
    CylVec out;
    for (const auto& term : op)
        for (const auto& [word, c] : v) {
            CylinderWord prod = word;
            for (const auto& [site, idx] : term.chars) {
                auto it = prod.find(site);
                if (it == prod.end()) {
                    prod.emplace(site, idx);
                } else {
                    it->second = (it->second + idx) % q_;
                    if (it->second == 0) prod.erase(it); // constant character absorbed
                }
            }
            out[prod] += term.coeff * c;
        }
    return out;
}

CylOp BernoulliShiftSystem::character(std::int64_t site, int index) const {
    index = (index % q_ + q_) % q_;
    CylinderWord w;
    if (index != 0) w.emplace(site, index);
    return {CylTerm{std::move(w), cplx(1.0)}};
}

cplx BernoulliShiftSystem::inner(const CylVec& a, const CylVec& b) {
    // Words are orthonormal, so this is a sparse overlap.
    cplx s = 0.0;
    const CylVec& small = a.size() <= b.size() ? a : b;
    const CylVec& big = a.size() <= b.size() ? b : a;
    for (const auto& [w, c] : small) {
        auto it = big.find(w);
        if (it == big.end()) continue;
        s += (&small == &a) ? c * std::conj(it->second) : it->second * std::conj(c);
    }
    return s;
}

double BernoulliShiftSystem::norm(const CylVec& a) {
    double s = 0.0;
    for (const auto& [w, c] : a) s += std::norm(c);
    return std::sqrt(s);
}

cplx BernoulliShiftSystem::state(const CylOp& a) const {
    cplx s = 0.0;
    for (const auto& term : a)
        if (term.chars.empty()) s += term.coeff;
    return s;
}

std::int64_t BernoulliShiftSystem::support_width(const CylOp& op) {
    std::int64_t lo = 0, hi = -1;
    bool any = false;
    for (const auto& term : op)
        for (const auto& [site, idx] : term.chars) {
            if (!any) {
                lo = hi = site;
                any = true;
            } else {
                lo = std::min(lo, site);
                hi = std::max(hi, site);
            }
        }
    return any ? hi - lo + 1 : 0;
}

std::int64_t BernoulliShiftSystem::support_width(const CylVec& v) {
    std::int64_t lo = 0, hi = -1;
    bool any = false;
    for (const auto& [word, c] : v)
        for (const auto& [site, idx] : word) {
            if (!any) {
                lo = hi = site;
                any = true;
            } else {
                lo = std::min(lo, site);
                hi = std::max(hi, site);
            }
        }
    return any ? hi - lo + 1 : 0;
}

cplx generic_state_average(const CyclicRotationSystem& sys, const Mat& a, const Mat& b,
                           std::int64_t n) {
    if (n < 1) throw Error("generic_state_average: N must be >= 1");
    cplx s = 0.0;
    const Vec b_omega = b.apply(sys.omega());
    for (std::int64_t i = 0; i < n; ++i)
        s += inner(a.apply(sys.u().power_apply(i, b_omega)), sys.omega());
    return s / double(n);
}

cplx generic_state_average(const BernoulliShiftSystem& sys, const CylOp& a, const CylOp& b,
                           std::int64_t n) {
    if (n < 1) throw Error("generic_state_average: N must be >= 1");
    cplx s = 0.0;
    const CylVec b_omega = sys.apply_op(b, sys.omega());
    const CylVec om = sys.omega();
    for (std::int64_t i = 0; i < n; ++i)
        s += BernoulliShiftSystem::inner(sys.apply_op(a, sys.apply_shift(b_omega, i)), om);
    return s / double(n);
}

} // namespace eet
