#pragma once

#include <Eigen/Dense>
#include <string>

#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Parity under the rotation by pi about x. The Floquet operator block-
/// diagonalizes in the combinations |j,m,+-> = (|j,m> +- |j,-m>)/sqrt(2):
/// odd spans m = 1..j (dim j), even spans m = 0..j (dim j+1) with the
/// m = 0 state entering with weight 1.
enum class Parity { odd, even };

inline const char* parity_name(Parity p) { return p == Parity::odd ? "odd" : "even"; }

struct ParitySector {
    Parity parity;
    long dim;
    Eigen::VectorXd m_values;  // descending, m = j..1 (odd) or j..0 (even)
};

ParitySector parity_sector(const SpinSystem& sys, Parity p);

/// Eigendecomposition of J_x restricted to a parity sector (real symmetric
/// tridiagonal in the sector basis, ordered by descending m).
struct SectorJx {
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;  // orthogonal; column k is the k-th eigenvector
};

SectorJx sector_jx_eigensystem(const SpinSystem& sys, Parity p);

/// Parity block of the Floquet operator
///   F = exp(-i gamma/(2j) J_z^2) exp(-i alpha J_x):
/// the torsion factor is diagonal in m; the rotation factor is the dense
/// exponential of the sector-restricted tridiagonal J_x.
Eigen::MatrixXcd build_floquet(const SpinSystem& sys, Parity p);
Eigen::MatrixXcd build_floquet(const SpinSystem& sys, Parity p, const SectorJx& jx);

struct FloquetSpectrum {
    Parity parity = Parity::odd;
    Eigen::VectorXd quasienergies;  // sorted ascending in (-pi, pi]
    Eigen::MatrixXcd eigenvectors;  // unitary; F v_n = e^{i v_n} v_n
};

/// Schur-based eigendecomposition of a unitary matrix (the Schur form of a
/// normal matrix is diagonal, so the Schur vectors are the eigenvectors).
/// Aborts if any eigenpair residual exceeds 1e-8 or the vectors fail a
/// unitarity check.
FloquetSpectrum diagonalize(const Eigen::MatrixXcd& f, Parity parity);

/// Embed sector eigenvectors into the full Dicke basis via
/// (|j,m> +- |j,-m>)/sqrt(2), with the even m = 0 component kept at weight 1.
Eigen::VectorXcd lift_vector(const SpinSystem& sys, Parity p, const Eigen::VectorXcd& v);
Eigen::MatrixXcd lift_to_full(const SpinSystem& sys, const FloquetSpectrum& spec);

/// Quasienergy argument mapped to (-pi, pi].
double principal_phase(std::complex<double> z);

}  // namespace kicktop
