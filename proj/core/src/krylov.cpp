#include "kicktop/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kicktop {

namespace {

struct LanczosBasis {
    Eigen::MatrixXcd v;      // n x k orthonormal columns
    Eigen::VectorXd alpha;   // k diagonal entries of T
    Eigen::VectorXd beta;    // k-1 off-diagonal entries of T
    double beta_next = 0.0;  // |residual| of the last recurrence step
    int k = 0;
};

// Lanczos for H = iA acting via the banded A; full reorthogonalization.
LanczosBasis lanczos(const SparseSpinOp& a, const Eigen::VectorXcd& v0, int m) {
    const Eigen::Index n = a.dim;
    const int kmax = static_cast<int>(std::min<Eigen::Index>(m, n));
    LanczosBasis b;
    b.v.resize(n, kmax);
    b.alpha.resize(kmax);
    b.beta.resize(std::max(kmax - 1, 0));

    b.v.col(0) = v0;
    Eigen::VectorXcd w(n), tmp(n);
    const Complex iunit(0.0, 1.0);
    double scale = 1.0;
    for (int k = 0; k < kmax; ++k) {
        a.apply(b.v.col(k), tmp);
        w = iunit * tmp;  // H = iA
        const double ak = std::real(b.v.col(k).dot(w));
        b.alpha[k] = ak;
        w -= ak * b.v.col(k);
        if (k > 0) w -= b.beta[k - 1] * b.v.col(k - 1);
        // one classical Gram-Schmidt pass against the whole basis
        w -= b.v.leftCols(k + 1) * (b.v.leftCols(k + 1).adjoint() * w);
        const double bk = w.norm();
        scale = std::max({scale, std::abs(ak), bk});
        b.k = k + 1;
        if (bk <= 1e-13 * scale) {
            b.beta_next = 0.0;  // invariant subspace, exponential is exact here
            return b;
        }
        if (k + 1 < kmax) {
            b.beta[k] = bk;
            b.v.col(k + 1) = w / bk;
        } else {
            b.beta_next = bk;
        }
    }
    return b;
}

// y(h) = exp(-i h T) e_1 from the eigendecomposition of the small tridiagonal T.
struct SmallExp {
    Eigen::MatrixXd evecs;
    Eigen::VectorXd evals;

    explicit SmallExp(const LanczosBasis& b) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(b.alpha.head(b.k), b.beta.head(std::max(b.k - 1, 0)));
        evecs = es.eigenvectors();
        evals = es.eigenvalues();
    }

    Eigen::VectorXcd propagate(double h) const {
        const Eigen::VectorXd first_row = evecs.row(0);
        Eigen::VectorXcd phases(evals.size());
        for (Eigen::Index i = 0; i < evals.size(); ++i)
            phases[i] = std::polar(first_row[i], -h * evals[i]);
        return evecs * phases;
    }
};

}  // namespace

Eigen::VectorXcd krylov_expm_action(const SparseSpinOp& a, const Eigen::VectorXcd& v,
                                    double tol, const KrylovOptions& opts) {
    if (!a.all_finite() || !v.allFinite())
        throw std::invalid_argument("krylov_expm_action: NaN/Inf in input");
    if (v.size() != a.dim) throw std::invalid_argument("krylov_expm_action: size mismatch");
    const double anorm = a.norm1();
    if (a.anti_hermitian_defect() > 1e-12 * std::max(anorm, 1.0))
        throw std::invalid_argument("krylov_expm_action: matrix is not anti-Hermitian");
    tol = std::max(tol, 1e-15);

    const double vnorm = v.norm();
    if (vnorm == 0.0) throw std::invalid_argument("krylov_expm_action: zero vector");
    Eigen::VectorXcd w = v / vnorm;

    double remaining = 1.0;
    double h = (anorm > 0.0) ? std::min(1.0, 0.5 * opts.subspace_dim / anorm) : 1.0;
    int substeps = 0;
    while (remaining > 0.0) {
        if (++substeps > opts.max_substeps)
            throw KrylovError("krylov_expm_action: substep budget exhausted", remaining);
        h = std::min(h, remaining);

        const LanczosBasis basis = lanczos(a, w, opts.subspace_dim);
        const SmallExp small(basis);

        if (basis.beta_next == 0.0) {
            w = basis.v.leftCols(basis.k) * small.propagate(remaining);
            remaining = 0.0;
            break;
        }

        int halvings = 0;
        for (;;) {
            const Eigen::VectorXcd y = small.propagate(h);
            const Eigen::VectorXcd y_half = small.propagate(0.5 * h);
            const double tail =
                std::max(std::abs(y[basis.k - 1]), std::abs(y_half[basis.k - 1]));
            const double err = basis.beta_next * tail * h;
            const double budget = tol * h;
            // a tail at the roundoff floor means the estimator has saturated:
            // the true local error is below what finite precision can resolve
            const bool saturated = tail <= 32.0 * std::numeric_limits<double>::epsilon();
            if (err <= budget || saturated) {
                w = basis.v.leftCols(basis.k) * y;
                remaining -= h;
                if (err < 0.1 * budget) h *= 1.4;
                break;
            }
            if (++halvings > opts.max_halvings)
                throw KrylovError("krylov_expm_action: step halving budget exhausted", err);
            h *= 0.5;
        }
    }

    const double drift = std::abs(w.norm() - 1.0);
    if (drift > 10.0 * std::max(tol, 1e-13))
        throw KrylovError("krylov_expm_action: unitarity drift exceeds tolerance", drift);
    return vnorm * w;
}

}  // namespace kicktop
