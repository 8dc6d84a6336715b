#include "kicktop/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kicktop {

namespace rmt {

double shannon_entropy_coe(long n) { return digamma(0.5 * n + 1.0) - digamma(1.5); }
double wehrl_entropy_cue(long n) { return digamma(double(n) + 1.0) - digamma(2.0); }

}  // namespace rmt

Eigen::VectorXd spacing_ratios(const Eigen::VectorXd& v, std::size_t* degenerate) {
    const long n = v.size();
    if (n < 3) throw std::invalid_argument("spacing_ratios: need >= 3 levels");
    Eigen::VectorXd s(n);
    for (long i = 0; i + 1 < n; ++i) s[i] = v[i + 1] - v[i];
    s[n - 1] = v[0] + 2.0 * M_PI - v[n - 1];  // wrap-around spacing
    if (s.minCoeff() < 0.0) throw std::invalid_argument("spacing_ratios: unsorted phases");

    std::size_t zeros = 0;
    Eigen::VectorXd r(n);
    for (long i = 0; i < n; ++i) {
        const double a = s[i];
        const double b = s[(i + 1) % n];
        if (a < 1e-12 || b < 1e-12) {
            r[i] = 0.0;
            ++zeros;
            continue;
        }
        r[i] = std::min(a / b, b / a);
    }
    if (degenerate) *degenerate = zeros;
    return r;
}

Eigen::VectorXd spacing_ratios(const FloquetSpectrum& spec, std::size_t* degenerate) {
    return spacing_ratios(spec.quasienergies, degenerate);
}

double normalized_mean_ratio(const FloquetSpectrum& odd, const FloquetSpectrum& even) {
    const Eigen::VectorXd ro = spacing_ratios(odd);
    const Eigen::VectorXd re = spacing_ratios(even);
    const double mean = (ro.sum() + re.sum()) / double(ro.size() + re.size());
    return (mean - rmt::kMeanRatioPoisson) / (rmt::kMeanRatioCoe - rmt::kMeanRatioPoisson);
}

double shannon_entropy(const Eigen::VectorXcd& v) {
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-8)
        throw std::invalid_argument("shannon_entropy: vector is not normalized");
    double h = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double p = std::norm(v[i]);
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

Eigen::VectorXd shannon_entropies_in_basis(const FloquetSpectrum& spec, const SpinSystem& sys,
                                           EigvecBasis basis) {
    Eigen::MatrixXcd w;
    if (basis == EigvecBasis::parity_basis) {
        w = spec.eigenvectors;
    } else {
        const SectorJx jx = sector_jx_eigensystem(sys, spec.parity);
        const long dim = jx.evecs.rows();
        const double defect =
            (jx.evecs.transpose() * jx.evecs - Eigen::MatrixXd::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff();
        if (defect > 1e-8)
            throw std::runtime_error("shannon_entropies_in_basis: basis not unitary");
        w = jx.evecs.transpose() * spec.eigenvectors;
    }
    Eigen::VectorXd h(w.cols());
    for (long c = 0; c < w.cols(); ++c) h[c] = shannon_entropy(w.col(c));
    return h;
}

double shannon_elm_in_basis(const FloquetSpectrum& spec, const SpinSystem& sys,
                            EigvecBasis basis) {
    const Eigen::VectorXd h = shannon_entropies_in_basis(spec, sys, basis);
    return h.array().exp().mean() / double(h.size());
}

Histogram ln_component_histogram(std::span<const double> components, int nbins) {
    std::vector<double> lns;
    lns.reserve(components.size());
    for (double x : components)
        if (x > 0.0) lns.push_back(std::log(x));
    if (lns.empty())
        throw std::invalid_argument("ln_component_histogram: no positive components");
    const auto [lo, hi] = std::minmax_element(lns.begin(), lns.end());
    const double pad = 1e-9 * (1.0 + std::abs(*hi));
    return make_histogram(lns, nbins, *lo, *hi + pad);
}

std::vector<SymmetryLinePoint> symmetry_line_points(const SpinSystem& sys, int n_points) {
    const double sa = std::sin(sys.alpha);
    if (std::abs(sa) < 1e-12)
        throw std::invalid_argument("symmetry_line_points: alpha is a multiple of pi");
    std::vector<SymmetryLinePoint> pts;
    pts.reserve(2 * n_points);
    for (int branch = 0; branch < 2; ++branch) {
        const double a_s = (-std::cos(sys.alpha) + (branch == 0 ? 1.0 : -1.0)) / sa;
        for (int i = 0; i < n_points; ++i) {
            // offset keeps sin(phi) away from 0 where tan(theta) diverges
            const double phi = -M_PI + (i + 0.5) * 2.0 * M_PI / n_points;
            double theta = std::atan(a_s / std::sin(phi));
            if (theta < 0.0) theta += M_PI;
            pts.push_back({theta, phi, branch});
        }
    }
    return pts;
}

double symmetry_line_distance(const SpinSystem& sys, double theta, double phi) {
    const double sa = std::sin(sys.alpha), ca = std::cos(sys.alpha);
    const Eigen::Vector3d u(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                            std::cos(theta));
    const Eigen::Vector3d n1 = Eigen::Vector3d(0.0, sa, ca - 1.0).normalized();
    const Eigen::Vector3d n2 = Eigen::Vector3d(0.0, sa, ca + 1.0).normalized();
    return std::min(std::abs(u.dot(n1)), std::abs(u.dot(n2)));
}

}  // namespace kicktop
