#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace kicktop::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::VectorXcd random_unit_vector(long n, std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i) v[i] = std::complex<double>(g(gen), g(gen));
    v.normalize();
    return v;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
/// correction diag(r_ii/|r_ii|).
inline Eigen::MatrixXcd haar_unitary(long n, std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (long c = 0; c < n; ++c)
        for (long r = 0; r < n; ++r) z(r, c) = std::complex<double>(g(gen), g(gen));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long c = 0; c < n; ++c) {
        const std::complex<double> d = r(c, c);
        q.col(c) *= d / std::abs(d);
    }
    return q;
}

/// Circular orthogonal ensemble member: W W^T with W Haar.
inline Eigen::MatrixXcd coe_unitary(long n, std::mt19937_64& gen) {
    const Eigen::MatrixXcd w = haar_unitary(n, gen);
    return w * w.transpose();
}

}  // namespace kicktop::testing
