#include "kicktop/coherent.hpp"

#include <cmath>
#include <stdexcept>

#include "kicktop/math_util.hpp"

namespace kicktop {

CoherentState make_coherent_state(const SpinSystem& sys, double theta, double phi,
                                  double tol) {
    if (theta < 0.0 || theta > M_PI)
        throw std::invalid_argument("make_coherent_state: theta outside [0, pi]");
    CoherentState scs;
    scs.theta = theta;
    scs.phi = phi;
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(sys.dim());
    e1[0] = 1.0;
    if (theta == 0.0) {
        scs.amplitudes = std::move(e1);
        return scs;
    }
    scs.amplitudes = krylov_expm_action(scs_generator(sys, theta, phi), e1, tol);
    scs.amplitudes /= scs.amplitudes.norm();
    return scs;
}

CoherentState direct_scs_oracle(const SpinSystem& sys, double theta, double phi) {
    if (sys.j > kOracleMaxJ)
        throw std::invalid_argument("direct_scs_oracle: j exceeds the validated cap 2^10");
    if (theta < 0.0 || theta > M_PI)
        throw std::invalid_argument("direct_scs_oracle: theta outside [0, pi]");
    const long j = sys.j;
    const Eigen::Index n = sys.dim();
    const double lc = std::log(std::cos(0.5 * theta));  // -inf at theta = pi
    const double ls = std::log(std::sin(0.5 * theta));  // -inf at theta = 0

    CoherentState scs;
    scs.theta = theta;
    scs.phi = phi;
    scs.amplitudes.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const long m = j - i;
        const long p = j - m;  // power of sin(theta/2), = row index
        // |c_m| = C(2j, j+m)^{1/2} cos^{j+m}(theta/2) sin^{j-m}(theta/2)
        double ln_mag = 0.5 * log_binomial(double(2 * j), double(j + m));
        if (j + m > 0) ln_mag += double(j + m) * lc;  // guards 0 * log(0) at the poles
        if (p > 0) ln_mag += double(p) * ls;
        const double mag = (std::isfinite(ln_mag)) ? std::exp(ln_mag) : 0.0;
        scs.amplitudes[i] = std::polar(mag, double(p) * phi);
    }
    const double norm = scs.amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::runtime_error("direct_scs_oracle: normalization defect above 1e-9");
    scs.amplitudes /= norm;
    return scs;
}

Eigen::VectorXd wigner_d_column(const SpinSystem& sys, double theta, double tol) {
    const CoherentState scs = make_coherent_state(sys, theta, 0.0, tol);
    const double residue = scs.amplitudes.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-10)
        throw std::runtime_error("wigner_d_column: imaginary residue above 1e-10");
    return scs.amplitudes.real();
}

Eigen::VectorXcd align_global_phase(const Eigen::VectorXcd& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex z = v[imax];
    if (std::abs(z) == 0.0) return v;
    return v * (std::conj(z) / std::abs(z));
}

}  // namespace kicktop
