#include "kicktop/classical.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kicktop {

namespace {

// x-rotation by alpha: (x, y, z) -> (x, y cos a - z sin a, y sin a + z cos a)
inline ClassicalState precess(const ClassicalState& s, double ca, double sa) {
    return {s.x(), s.y() * ca - s.z() * sa, s.y() * sa + s.z() * ca};
}

}  // namespace

ClassicalState classical_map(const ClassicalState& s, const SpinSystem& sys) {
    const ClassicalState t = precess(s, std::cos(sys.alpha), std::sin(sys.alpha));
    const double ang = sys.gamma * t.z();
    const double c = std::cos(ang), sn = std::sin(ang);
    ClassicalState out{t.x() * c - t.y() * sn, t.x() * sn + t.y() * c, t.z()};
    return out.normalized();
}

Eigen::Matrix3d jacobian(const ClassicalState& s, const SpinSystem& sys) {
    const double ca = std::cos(sys.alpha), sa = std::sin(sys.alpha);
    const ClassicalState t = precess(s, ca, sa);
    const double g = sys.gamma;
    const double ang = g * t.z();
    const double c = std::cos(ang), sn = std::sin(ang);

    Eigen::Matrix3d omega;
    omega << c, -sn, -g * t.x() * sn - g * t.y() * c,
             sn,  c,  g * t.x() * c - g * t.y() * sn,
             0.0, 0.0, 1.0;
    Eigen::Matrix3d r_alpha;
    r_alpha << 1.0, 0.0, 0.0,
               0.0, ca, -sa,
               0.0, sa, ca;
    return omega * r_alpha;
}

ClassicalState involution(const ClassicalState& s, Involution which, const SpinSystem& sys) {
    const double ca = std::cos(sys.alpha), sa = std::sin(sys.alpha);
    if (which == Involution::T1)
        return {s.x(), -s.y() * ca + s.z() * sa, s.y() * sa + s.z() * ca};
    return {s.x(), s.y() * ca - s.z() * sa, -s.y() * sa - s.z() * ca};
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> initial_tangent_pair(const ClassicalState& s) {
    int k = 0;
    s.cwiseAbs().minCoeff(&k);
    const Eigen::Vector3d axis = Eigen::Vector3d::Unit(k);
    const Eigen::Vector3d w1 = (axis - axis.dot(s) * s).normalized();
    const Eigen::Vector3d w2 = s.cross(w1).normalized();
    return {w1, w2};
}

std::vector<double> sali_trajectory(const ClassicalState& s0, const SpinSystem& sys,
                                    int n_kicks) {
    if (n_kicks < 1) throw std::invalid_argument("sali_trajectory: n_kicks must be >= 1");
    ClassicalState s = s0.normalized();
    auto [w1, w2] = initial_tangent_pair(s);
    std::vector<double> sali(n_kicks);
    for (int t = 0; t < n_kicks; ++t) {
        const Eigen::Matrix3d jac = jacobian(s, sys);
        s = classical_map(s, sys);
        for (Eigen::Vector3d* w : {&w1, &w2}) {
            *w = jac * (*w);
            *w -= w->dot(s) * s;  // back onto the tangent plane at the new point
            w->normalize();
        }
        const double v = std::min((w1 + w2).norm(), (w1 - w2).norm());
        sali[t] = std::max(v, kSaliFloor);
    }
    return sali;
}

ChaoticMask classify_phase_space(const SpinSystem& sys, const PhaseGrid& grid, int n_kicks,
                                 double threshold) {
    if (threshold <= 0.0 || threshold >= 1.0)
        throw std::invalid_argument("classify_phase_space: threshold outside (0,1)");
    ChaoticMask mask;
    mask.grid = grid;
    const long n = grid.cells();
    mask.chi.assign(n, 0);
    mask.sali_log10.assign(n, 0.0);
    const double log_thr = std::log10(threshold);
#pragma omp parallel for schedule(dynamic, 64)
    for (long c = 0; c < n; ++c) {
        const ClassicalState s = sphere_point(grid.theta_of(c), grid.phi_of(c));
        const std::vector<double> sali = sali_trajectory(s, sys, n_kicks);
        const double lg = std::log10(sali.back());
        mask.sali_log10[c] = lg;
        mask.chi[c] = (lg <= log_thr) ? 1 : 0;
    }
    return mask;
}

double chaotic_fraction(const ChaoticMask& mask) {
    double acc = 0.0;
    for (long c = 0; c < mask.grid.cells(); ++c)
        if (mask.chi[c]) acc += mask.grid.weight(c);
    return acc / (4.0 * M_PI);
}

}  // namespace kicktop
