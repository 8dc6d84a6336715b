#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "kicktop/floquet.hpp"
#include "kicktop/math_util.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Reference values from random-matrix statistics of spacing ratios and
/// entropies of random pure states.
namespace rmt {

constexpr double kMeanRatioPoisson = 0.38629436111989062;  // 2 ln 2 - 1
constexpr double kMeanRatioCoe = 0.5359633;                // Wigner-like surmise value
constexpr double kShannonOffsetCoe = 0.729637;             // <H> ~ ln N - this (COE)
constexpr double kWehrlOffsetCue = 0.422784;               // <S> ~ ln N - this (CUE)
constexpr double kElmCoe = 0.482;                          // e^{-0.7296}
constexpr double kElmCue = 0.655;                          // e^{-0.4228}

/// <H> of a COE/GOE random pure state at finite N: Psi(N/2+1) - Psi(3/2).
double shannon_entropy_coe(long n);
/// <S> (Shannon or Wehrl) of a CUE random pure state: Psi(N+1) - Psi(2).
double wehrl_entropy_cue(long n);

}  // namespace rmt

/// Circular spacing ratios r_n = min(s_n/s_{n-1}, s_{n-1}/s_n) from the
/// sorted quasienergies, including the wrap-around spacing; N ratios for N
/// levels. Degenerate spacings (below 1e-12) contribute a zero ratio and are
/// counted in *degenerate if given.
Eigen::VectorXd spacing_ratios(const FloquetSpectrum& spec, std::size_t* degenerate = nullptr);
Eigen::VectorXd spacing_ratios(const Eigen::VectorXd& sorted_phases,
                               std::size_t* degenerate = nullptr);

/// r_c = (<r> - <r>_Poisson) / (<r>_COE - <r>_Poisson), the ratios pooled
/// over both parity sectors.
double normalized_mean_ratio(const FloquetSpectrum& odd, const FloquetSpectrum& even);

/// H = -sum |v_m|^2 ln |v_m|^2 of a unit vector (0 ln 0 := 0).
/// Rejects inputs whose norm deviates from 1 by more than 1e-8.
double shannon_entropy(const Eigen::VectorXcd& v);

enum class EigvecBasis { jx_eigenbasis, parity_basis };

/// Shannon entropies of every eigenstate of a sector, expressed either in the
/// eigenbasis of the sector-restricted J_x or directly in the |j,m,+-> basis.
Eigen::VectorXd shannon_entropies_in_basis(const FloquetSpectrum& spec, const SpinSystem& sys,
                                           EigvecBasis basis);

/// Mean Shannon ELM <e^{H_n}>/dim of the sector in the requested basis.
double shannon_elm_in_basis(const FloquetSpectrum& spec, const SpinSystem& sys,
                            EigvecBasis basis);

/// Normalized histogram of ln x for positive component samples
/// x = |<probe|v>|^2; pair with chi2_ln_density for the analytic curves.
Histogram ln_component_histogram(std::span<const double> components, int nbins);

struct SymmetryLinePoint {
    double theta;
    double phi;
    int branch;  // 0: a = (1 - cos a)/sin a fixed set of T1; 1: the T2 circle
};

/// Points on the two great circles tan(theta) sin(phi) = a_+- with
/// a_+- = (-cos alpha +- 1)/sin alpha, n_points per circle, uniformly in phi.
std::vector<SymmetryLinePoint> symmetry_line_points(const SpinSystem& sys, int n_points);

/// Great-circle distances |unit . normal| to the two symmetry planes;
/// used to pick probe states well away from the lines.
double symmetry_line_distance(const SpinSystem& sys, double theta, double phi);

}  // namespace kicktop
