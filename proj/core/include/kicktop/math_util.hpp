#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kicktop {

/// Digamma function for x > 0 (recurrence into the asymptotic regime).
double digamma(double x);

/// ln C(n, k) via lgamma; valid for n up to ~1e15.
double log_binomial(double n, double k);

/// Probability density of u = ln x when x follows a chi-squared law with
/// nu degrees of freedom rescaled to the given mean:  P(u) = x P_nu(x).
double chi2_ln_density(int nu, double u, double mean);

/// CDF of the same component law evaluated at x (not ln x).
/// Closed forms for nu in {1, 2, 4}.
double chi2_component_cdf(int nu, double x, double mean);

/// Kolmogorov-Smirnov distance between a sample and an analytic CDF.
/// Sorts a copy of the sample.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x with R^2.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct Histogram {
    std::vector<double> edges;    // nbins + 1
    std::vector<double> density;  // normalized: sum(density * width) = 1
    std::vector<std::size_t> counts;
    std::size_t n_samples = 0;
};

Histogram make_histogram(std::span<const double> samples, int nbins, double lo, double hi);

}  // namespace kicktop
