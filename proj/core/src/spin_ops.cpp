#include "kicktop/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace kicktop {

void SparseSpinOp::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    y.resize(dim);
    y.array() = diag.array() * x.array();
    y.head(dim - 1).array() += super.array() * x.tail(dim - 1).array();
    y.tail(dim - 1).array() += sub.array() * x.head(dim - 1).array();
}

Eigen::VectorXcd SparseSpinOp::operator*(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y;
    apply(x, y);
    return y;
}

Eigen::MatrixXcd SparseSpinOp::dense() const {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    a.diagonal() = diag;
    a.diagonal(1) = super;
    a.diagonal(-1) = sub;
    return a;
}

double SparseSpinOp::norm1() const {
    double best = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c) {
        double s = std::abs(diag[c]);
        if (c > 0) s += std::abs(super[c - 1]);
        if (c < dim - 1) s += std::abs(sub[c]);
        best = std::max(best, s);
    }
    return best;
}

double SparseSpinOp::anti_hermitian_defect() const {
    double d = diag.real().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < dim - 1; ++i)
        d = std::max(d, std::abs(super[i] + std::conj(sub[i])));
    return d;
}

bool SparseSpinOp::all_finite() const {
    return diag.allFinite() && super.allFinite() && sub.allFinite();
}

SpinOperators build_spin_operators(const SpinSystem& sys) {
    const long j = sys.j;
    const Eigen::Index n = sys.dim();
    SpinOperators ops;
    ops.jz.resize(n);
    ops.jp.resize(n);
    ops.jm.resize(n);
    ops.jx.resize(n);
    ops.jy.resize(n);

    for (Eigen::Index i = 0; i < n; ++i) ops.jz.diag[i] = Complex(double(j - i), 0.0);

    // J_+|j,m> = c_+(m)|j,m+1> lands on row i-1; J_-|j,m> = c_-(m)|j,m-1> on row i+1.
    for (Eigen::Index i = 0; i < n - 1; ++i) {
        const double m_col_p = double(j - (i + 1));  // column of the superdiagonal entry
        const double cp = std::sqrt((double(j) - m_col_p) * (double(j) + m_col_p + 1.0));
        ops.jp.super[i] = Complex(cp, 0.0);

        const double m_col_m = double(j - i);  // column of the subdiagonal entry
        const double cm = std::sqrt((double(j) + m_col_m) * (double(j) - m_col_m + 1.0));
        ops.jm.sub[i] = Complex(cm, 0.0);
    }

    ops.jx.super = 0.5 * ops.jp.super;
    ops.jx.sub = 0.5 * ops.jm.sub;
    const Complex half_over_i(0.0, -0.5);  // 1/(2i)
    ops.jy.super = half_over_i * ops.jp.super;
    ops.jy.sub = -half_over_i * ops.jm.sub;
    return ops;
}

SparseSpinOp scs_generator(const SpinSystem& sys, double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("scs_generator: non-finite angle");
    const long j = sys.j;
    const Eigen::Index n = sys.dim();
    const Complex mu = 0.5 * theta * std::polar(1.0, phi);
    SparseSpinOp a;
    a.resize(n);
    for (Eigen::Index i = 0; i < n - 1; ++i) {
        const double m = double(j - i);  // m of the column below the superdiagonal
        const double c = std::sqrt((double(j) + m) * (double(j) - m + 1.0));
        a.sub[i] = mu * c;                   // mu J_-
        a.super[i] = -std::conj(mu) * c;     // -mu* J_+, same coupling strength
    }
    return a;
}

}  // namespace kicktop
