#include "kicktop/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#ifdef KICKTOP_HAVE_LAPACKE
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#else
#include <Eigen/Eigenvalues>
#endif

namespace kicktop {

double principal_phase(std::complex<double> z) {
    double v = std::arg(z);
    if (v <= -M_PI) v += 2.0 * M_PI;
    return v;
}

ParitySector parity_sector(const SpinSystem& sys, Parity p) {
    ParitySector sec;
    sec.parity = p;
    sec.dim = (p == Parity::odd) ? sys.dim_odd() : sys.dim_even();
    sec.m_values.resize(sec.dim);
    for (long a = 0; a < sec.dim; ++a) sec.m_values[a] = double(sys.j - a);
    return sec;
}

namespace {

// Off-diagonal of the sector-restricted J_x, index a couples m=j-a with m=j-a-1.
Eigen::VectorXd sector_jx_offdiag(const SpinSystem& sys, Parity p) {
    const long j = sys.j;
    const long dim = (p == Parity::odd) ? j : j + 1;
    Eigen::VectorXd off(dim - 1);
    for (long a = 0; a + 1 < dim; ++a) {
        const double m = double(j - a);
        if (p == Parity::even && j - a == 1) {
            off[a] = std::sqrt(double(j) * double(j + 1) / 2.0);  // m=1 <-> m=0
        } else {
            off[a] = 0.5 * std::sqrt((double(j) + m) * (double(j) - m + 1.0));
        }
    }
    return off;
}

}  // namespace

SectorJx sector_jx_eigensystem(const SpinSystem& sys, Parity p) {
    const Eigen::VectorXd off = sector_jx_offdiag(sys, p);
    const long dim = off.size() + 1;
    SectorJx out;
#ifdef KICKTOP_HAVE_LAPACKE
    out.evals = Eigen::VectorXd::Zero(dim);  // J_x has zero diagonal in this basis
    Eigen::VectorXd e = off;
    out.evecs.resize(dim, dim);
    const lapack_int info =
        LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', lapack_int(dim), out.evals.data(), e.data(),
                       out.evecs.data(), lapack_int(dim));
    if (info != 0) throw std::runtime_error("sector_jx_eigensystem: dstevd failed");
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(Eigen::VectorXd::Zero(dim), off);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("sector_jx_eigensystem: eigensolver failed");
    out.evals = es.eigenvalues();
    out.evecs = es.eigenvectors();
#endif
    return out;
}

Eigen::MatrixXcd build_floquet(const SpinSystem& sys, Parity p) {
    return build_floquet(sys, p, sector_jx_eigensystem(sys, p));
}

Eigen::MatrixXcd build_floquet(const SpinSystem& sys, Parity p, const SectorJx& jx) {
    const ParitySector sec = parity_sector(sys, p);
    const long dim = sec.dim;
    if (jx.evals.size() != dim)
        throw std::invalid_argument("build_floquet: sector/eigensystem mismatch");

    // exp(-i alpha Jx) = U diag(e^{-i alpha lambda}) U^T, assembled from two
    // real products to stay in dgemm.
    const Eigen::ArrayXd ang = sys.alpha * jx.evals.array();
    const Eigen::MatrixXd uc = jx.evecs * ang.cos().matrix().asDiagonal();
    const Eigen::MatrixXd us = jx.evecs * ang.sin().matrix().asDiagonal();
    Eigen::MatrixXcd f(dim, dim);
    f.real() = uc * jx.evecs.transpose();
    f.imag() = -(us * jx.evecs.transpose());

    // torsion factor: diagonal phases e^{-i gamma m^2 / (2j)} on the left
    const double scale = sys.gamma / (2.0 * double(sys.j));
    for (long r = 0; r < dim; ++r) {
        const double m = sec.m_values[r];
        f.row(r) *= std::polar(1.0, -scale * m * m);
    }

    const double unitarity =
        (f.adjoint() * f - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (unitarity > 1e-9)
        throw std::runtime_error("build_floquet: unitarity defect " + std::to_string(unitarity));
    return f;
}

namespace {

// Schur decomposition of a unitary matrix; returns eigenvalues and Schur
// vectors (= eigenvectors up to the discarded ~eps off-diagonal couplings).
void unitary_schur(const Eigen::MatrixXcd& f, Eigen::VectorXcd& evals, Eigen::MatrixXcd& vecs) {
    const long n = f.rows();
#ifdef KICKTOP_HAVE_LAPACKE
    Eigen::MatrixXcd a = f;
    evals.resize(n);
    vecs.resize(n, n);
    lapack_int sdim = 0;
    const lapack_int info =
        LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, lapack_int(n), a.data(),
                      lapack_int(n), &sdim, evals.data(), vecs.data(), lapack_int(n));
    if (info != 0) throw std::runtime_error("diagonalize: zgees failed");
#else
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(f, true);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: Schur iteration failed");
    evals = schur.matrixT().diagonal();
    vecs = schur.matrixU();
#endif
}

}  // namespace

FloquetSpectrum diagonalize(const Eigen::MatrixXcd& f, Parity parity) {
    const long n = f.rows();
    if (n != f.cols() || n < 1) throw std::invalid_argument("diagonalize: not square");

    Eigen::VectorXcd evals;
    Eigen::MatrixXcd vecs;
    unitary_schur(f, evals, vecs);

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    Eigen::VectorXd phases(n);
    for (long i = 0; i < n; ++i) phases[i] = principal_phase(evals[i]);
    std::sort(order.begin(), order.end(),
              [&](long a, long b) { return phases[a] < phases[b]; });

    FloquetSpectrum spec;
    spec.parity = parity;
    spec.quasienergies.resize(n);
    spec.eigenvectors.resize(n, n);
    for (long i = 0; i < n; ++i) {
        spec.quasienergies[i] = phases[order[i]];
        spec.eigenvectors.col(i) = vecs.col(order[i]);
    }

    // per-eigenpair residual ||F v - e^{iv} v||
    Eigen::MatrixXcd resid = f * spec.eigenvectors;
    for (long i = 0; i < n; ++i)
        resid.col(i) -= std::polar(1.0, spec.quasienergies[i]) * spec.eigenvectors.col(i);
    const double worst = resid.colwise().norm().maxCoeff();
    if (worst > 1e-8)
        throw std::runtime_error("diagonalize: eigenpair residual " + std::to_string(worst));

    // unitarity of the eigenvector matrix: full check when cheap, else sampled
    if (n <= 1024) {
        const double defect = (spec.eigenvectors.adjoint() * spec.eigenvectors -
                               Eigen::MatrixXcd::Identity(n, n))
                                  .cwiseAbs()
                                  .maxCoeff();
        if (defect > 1e-8)
            throw std::runtime_error("diagonalize: eigenvector unitarity defect");
    } else {
        Eigen::VectorXcd r = Eigen::VectorXcd::Random(n).normalized();
        const double defect = ((spec.eigenvectors.adjoint() * (spec.eigenvectors * r)) - r).norm();
        if (defect > 1e-8)
            throw std::runtime_error("diagonalize: eigenvector unitarity defect (sampled)");
    }
    return spec;
}

Eigen::VectorXcd lift_vector(const SpinSystem& sys, Parity p, const Eigen::VectorXcd& v) {
    const long j = sys.j;
    const long dim = (p == Parity::odd) ? j : j + 1;
    if (v.size() != dim) throw std::invalid_argument("lift_vector: sector size mismatch");
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(sys.dim());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (long a = 0; a < dim; ++a) {
        const long m = j - a;
        if (m == 0) {
            full[sys.index_of_m(0)] = v[a];  // |j,0,+> carries weight 1
        } else {
            full[sys.index_of_m(m)] = inv_sqrt2 * v[a];
            full[sys.index_of_m(-m)] =
                (p == Parity::odd) ? -inv_sqrt2 * v[a] : inv_sqrt2 * v[a];
        }
    }
    return full;
}

Eigen::MatrixXcd lift_to_full(const SpinSystem& sys, const FloquetSpectrum& spec) {
    const long dim = spec.eigenvectors.cols();
    Eigen::MatrixXcd full(sys.dim(), dim);
    for (long c = 0; c < dim; ++c)
        full.col(c) = lift_vector(sys, spec.parity, spec.eigenvectors.col(c));
    return full;
}

}  // namespace kicktop
