#pragma once

#include <Eigen/Dense>
#include <complex>

#include "kicktop/spin_system.hpp"

namespace kicktop {

using Complex = std::complex<double>;

/// Banded (tridiagonal) operator in the Dicke basis |j,m>, m = j..-j.
/// Covers J_z, J_+/-, J_x, J_y and their complex linear combinations.
struct SparseSpinOp {
    Eigen::Index dim = 0;
    Eigen::VectorXcd diag;   // size dim
    Eigen::VectorXcd super;  // size dim-1, couples (row i, col i+1)
    Eigen::VectorXcd sub;    // size dim-1, couples (row i+1, col i)

    void resize(Eigen::Index n) {
        dim = n;
        diag = Eigen::VectorXcd::Zero(n);
        super = Eigen::VectorXcd::Zero(n - 1);
        sub = Eigen::VectorXcd::Zero(n - 1);
    }

    /// y = A x
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const;

    Eigen::MatrixXcd dense() const;

    /// max column absolute sum
    double norm1() const;

    /// max over bands of |A + A^dagger| entries; 0 for anti-Hermitian A
    double anti_hermitian_defect() const;

    bool all_finite() const;
};

struct SpinOperators {
    SparseSpinOp jx, jy, jz, jp, jm;
};

/// Angular momentum matrices in the Dicke ordering m = j..-j:
/// J_z diagonal with entries m; J_+/- strictly off-diagonal with
/// sqrt((j -/+ m)(j +/- m + 1)); J_x = (J_+ + J_-)/2, J_y = (J_+ - J_-)/(2i).
SpinOperators build_spin_operators(const SpinSystem& sys);

/// Rotation generator mu J_- - mu* J_+ with mu = (theta/2) e^{i phi};
/// anti-Hermitian, its exponential maps |j,j> to the coherent state.
SparseSpinOp scs_generator(const SpinSystem& sys, double theta, double phi);

}  // namespace kicktop
