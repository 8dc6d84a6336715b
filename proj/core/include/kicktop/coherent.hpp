#pragma once

#include <Eigen/Dense>

#include "kicktop/krylov.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Spin coherent state |theta,phi> in the Dicke basis (m = j..-j).
struct CoherentState {
    double theta = 0.0;
    double phi = 0.0;
    Eigen::VectorXcd amplitudes;
};

constexpr double kDefaultKrylovTol = 1e-12;

/// |theta,phi> = exp(mu J_- - mu* J_+)|j,j>, mu = (theta/2) e^{i phi},
/// computed through the Krylov kernel. theta in [0,pi], phi in [-pi,pi).
CoherentState make_coherent_state(const SpinSystem& sys, double theta, double phi,
                                  double tol = kDefaultKrylovTol);

/// Closed-form coherent state amplitudes
///   (1+|xi|^2)^{-j} C(2j, j+m)^{1/2} xi^{j-m},  xi = tan(theta/2) e^{i phi},
/// evaluated in the log domain (log-gamma binomials, log powers of the half
/// angles), which keeps the formula usable up to j = 2^10. Larger j is
/// refused: this is the independent cross-check, not the production path.
CoherentState direct_scs_oracle(const SpinSystem& sys, double theta, double phi);

constexpr long kOracleMaxJ = 1L << 10;

/// Column d^j_{m j}(theta) of the Wigner d-matrix: the (real) amplitudes of
/// |theta,0>. Throws if the Krylov result has imaginary residue above 1e-10.
Eigen::VectorXd wigner_d_column(const SpinSystem& sys, double theta,
                                double tol = kDefaultKrylovTol);

/// Rotate a state's global phase so its largest-magnitude amplitude is
/// real-positive; used to compare states defined up to a phase.
Eigen::VectorXcd align_global_phase(const Eigen::VectorXcd& v);

}  // namespace kicktop
