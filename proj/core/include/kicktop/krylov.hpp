#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "kicktop/spin_ops.hpp"

namespace kicktop {

struct KrylovOptions {
    int subspace_dim = 30;
    int max_substeps = 1000000;
    int max_halvings = 60;
};

class KrylovError : public std::runtime_error {
public:
    KrylovError(const std::string& what, double residual)
        : std::runtime_error(what), residual_estimate(residual) {}
    double residual_estimate;
};

/// w ~= exp(A) v for anti-Hermitian banded A, to accuracy tol in 2-norm.
///
/// Lanczos on the Hermitian matrix iA (tridiagonal here, so the recurrence is
/// exact up to roundoff; a full reorthogonalization pass keeps the basis clean),
/// with adaptive time-substepping: the residual of the subspace approximation is
/// estimated from the last basis coefficient and the step is halved until the
/// per-unit-time error budget holds. exp of an anti-Hermitian matrix is unitary,
/// so |w| = 1 is checked on exit.
Eigen::VectorXcd krylov_expm_action(const SparseSpinOp& a, const Eigen::VectorXcd& v,
                                    double tol, const KrylovOptions& opts = {});

}  // namespace kicktop
