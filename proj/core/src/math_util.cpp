#include "kicktop/math_util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kicktop {

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: x must be > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli series through x^{-10}; |error| < 1e-13 for x >= 10.
    double s = std::log(x) - 0.5 * inv;
    s -= inv2 * (1.0 / 12.0 -
                 inv2 * (1.0 / 120.0 -
                         inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    return s + acc;
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double chi2_ln_density(int nu, double u, double mean) {
    if (mean <= 0.0) throw std::invalid_argument("chi2_ln_density: mean must be > 0");
    const double x = std::exp(u);
    const double a = 0.5 * nu / mean;
    const double half_nu = 0.5 * nu;
    // (a)^{nu/2} / Gamma(nu/2) * x^{nu/2} * exp(-a x)
    const double ln_p = half_nu * std::log(a) - std::lgamma(half_nu) + half_nu * u - a * x;
    return std::exp(ln_p);
}

double chi2_component_cdf(int nu, double x, double mean) {
    if (x <= 0.0) return 0.0;
    const double z = 0.5 * nu * x / mean;
    switch (nu) {
        case 1: return std::erf(std::sqrt(z));
        case 2: return -std::expm1(-z);
        case 4: return 1.0 - std::exp(-z) * (1.0 + z);
        default: throw std::invalid_argument("chi2_component_cdf: nu must be 1, 2 or 4");
    }
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matched points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

Histogram make_histogram(std::span<const double> samples, int nbins, double lo, double hi) {
    if (nbins < 1 || !(hi > lo)) throw std::invalid_argument("make_histogram: bad bins");
    Histogram h;
    h.edges.resize(nbins + 1);
    const double w = (hi - lo) / nbins;
    for (int b = 0; b <= nbins; ++b) h.edges[b] = lo + b * w;
    h.counts.assign(nbins, 0);
    std::size_t inside = 0;
    for (double s : samples) {
        if (s < lo || s >= hi) continue;
        int b = static_cast<int>((s - lo) / w);
        b = std::clamp(b, 0, nbins - 1);
        ++h.counts[b];
        ++inside;
    }
    h.n_samples = samples.size();
    h.density.assign(nbins, 0.0);
    if (inside > 0) {
        for (int b = 0; b < nbins; ++b)
            h.density[b] = static_cast<double>(h.counts[b]) / (static_cast<double>(inside) * w);
    }
    return h;
}

}  // namespace kicktop
