#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "kicktop/phase_grid.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Point on the unit sphere; the classical limit of the rescaled spin J/j.
using ClassicalState = Eigen::Vector3d;

enum class Involution { T1, T2 };

/// One kick of the classical top: precession about x by alpha, then torsion
/// about z by gamma * z~. Renormalizes the output to the sphere.
ClassicalState classical_map(const ClassicalState& s, const SpinSystem& sys);

/// Tangent map Omega * R_alpha of the kick at s; det = 1 (symplectic).
Eigen::Matrix3d jacobian(const ClassicalState& s, const SpinSystem& sys);

/// Time-reversal involutions: T F T = F^{-1}, T^2 = id.
ClassicalState involution(const ClassicalState& s, Involution which, const SpinSystem& sys);

/// Deterministic orthonormal tangent pair at s (basis axis with the smallest
/// component projected to the tangent plane, completed by the cross product).
std::pair<Eigen::Vector3d, Eigen::Vector3d> initial_tangent_pair(const ClassicalState& s);

constexpr double kSaliFloor = 1e-16;

/// SALI(t) = min(|w1+w2|, |w1-w2|) of the normalized deviation vectors after
/// t kicks of the tangent map, for t = 1..n_kicks. Vectors are renormalized
/// and re-projected onto the tangent plane each kick; values clamp at 1e-16.
std::vector<double> sali_trajectory(const ClassicalState& s0, const SpinSystem& sys,
                                    int n_kicks);

struct ChaoticMask {
    PhaseGrid grid;
    std::vector<std::uint8_t> chi;   // 1 = chaotic cell
    std::vector<double> sali_log10;  // log10 SALI at the cutoff time
};

constexpr int kDefaultSaliKicks = 300;
constexpr double kDefaultSaliThreshold = 1e-8;

/// One orbit per cell center; chi = 1 where SALI(n_kicks) <= threshold.
ChaoticMask classify_phase_space(const SpinSystem& sys, const PhaseGrid& grid,
                                 int n_kicks = kDefaultSaliKicks,
                                 double threshold = kDefaultSaliThreshold);

/// mu_c = (1/4pi) sum chi * weight, in [0, 1].
double chaotic_fraction(const ChaoticMask& mask);

inline ClassicalState sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

}  // namespace kicktop
