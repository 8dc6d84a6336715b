#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kicktop/classical.hpp"
#include "kicktop/records.hpp"
#include "kicktop/spectral_stats.hpp"
#include "test_util.hpp"

using namespace kicktop;

namespace {
const double kAlpha = 11.0 * M_PI / 19.0;

std::vector<EigenstateRecord> synthetic_records(const std::vector<double>& overlaps) {
    std::vector<EigenstateRecord> recs(overlaps.size());
    for (std::size_t i = 0; i < overlaps.size(); ++i) recs[i].overlap = overlaps[i];
    return recs;
}
}  // namespace

TEST_CASE("mixed_fraction: full window, empty window, boundary inclusion") {
    const auto recs = synthetic_records({-1.0, -0.5, 0.0, 0.5, 1.0});
    CHECK(mixed_fraction(recs, -1.0, 1.0) == 1.0);
    CHECK(mixed_fraction(recs, 0.1, 0.2) == 0.0);
    CHECK(mixed_fraction(recs, -0.5, 0.5) == doctest::Approx(0.6));  // closed interval
    CHECK_THROWS_AS(mixed_fraction(recs, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("fit_power_law: exact power law is recovered to machine precision") {
    std::vector<std::pair<long, double>> pts;
    for (long j : {128L, 256L, 512L, 1024L, 2048L}) pts.emplace_back(j, 3.0 * std::pow(j, -0.3));
    const PowerLawFit fit = fit_power_law(pts, -0.9, 0.5);
    CHECK(std::abs(fit.zeta - 0.3) < 1e-12);
    CHECK(std::abs(fit.r_squared - 1.0) < 1e-12);
    CHECK(fit.valid);
    CHECK(fit.j_values.size() == 5);
}

TEST_CASE("fit_power_law under 5% multiplicative noise: zeta = 0.3 +- 0.03") {
    auto gen = testing::rng(77);
    std::normal_distribution<double> noise(0.0, 0.05);
    double sum = 0.0, sum2 = 0.0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<std::pair<long, double>> pts;
        for (long j : {128L, 256L, 512L, 1024L, 2048L, 4096L})
            pts.emplace_back(j, 3.0 * std::pow(j, -0.3) * (1.0 + noise(gen)));
        const PowerLawFit fit = fit_power_law(pts, -0.9, 0.5);
        sum += fit.zeta;
        sum2 += fit.zeta * fit.zeta;
    }
    const double mean = sum / reps;
    const double spread = std::sqrt(sum2 / reps - mean * mean);
    CHECK(std::abs(mean - 0.3) < 0.01);  // unbiased over noise seeds
    CHECK(spread < 0.03);                // per-seed scatter within the band
}

TEST_CASE("fit_power_law rejects underdetermined input") {
    std::vector<std::pair<long, double>> pts{{128, 0.5}, {256, 0.4}, {512, 0.0}, {1024, 0.0}};
    CHECK_THROWS_AS(fit_power_law(pts, -0.9, 0.5), std::invalid_argument);
}

TEST_CASE("sliding windows: all-regular population flags empty windows invalid") {
    std::map<long, std::vector<EigenstateRecord>> by_j;
    for (long j : {128L, 256L, 512L, 1024L}) {
        std::vector<double> overlaps(std::size_t(16), -1.0);
        by_j[j] = synthetic_records(overlaps);
    }
    const auto fits = sliding_window_exponents(by_j, 0.3, 11);
    CHECK(fits.size() == 11);
    for (const auto& f : fits) {
        if (f.window_m0 > -1.0 + 1e-9) CHECK_FALSE(f.valid);
    }
}

TEST_CASE("sliding windows: delta_m = 2 degenerates to the full-range fit") {
    std::map<long, std::vector<EigenstateRecord>> by_j;
    auto gen = testing::rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (long j : {128L, 256L, 512L, 1024L}) {
        std::vector<double> overlaps(std::size_t(64));
        for (double& m : overlaps) m = u(gen);
        by_j[j] = synthetic_records(overlaps);
    }
    const auto fits = sliding_window_exponents(by_j, 2.0, 15);
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].valid);
    // chi_M = 1 for every j in the full window: slope 0
    CHECK(std::abs(fits[0].zeta) < 1e-12);
}

TEST_CASE("select_box picks the requested corner of the (M, ELM) plane") {
    std::vector<EigenstateRecord> recs(4);
    recs[0].overlap = 0.995;
    recs[0].wehrl_elm = 0.61;
    recs[1].overlap = 0.995;
    recs[1].wehrl_elm = 0.2;
    recs[2].overlap = -0.8;
    recs[2].wehrl_elm = 0.62;
    recs[3].overlap = 0.2;
    recs[3].wehrl_elm = 0.3;
    const auto ids = select_box(recs, 0.99, 1.0, 0.5, 1.2);
    REQUIRE(ids.size() == 1);
    CHECK(ids[0] == 0);
}

TEST_CASE("eigenstate records at j = 24: counts, pooling and cross-checks") {
    const SpinSystem sys(24, kAlpha, 2.6);
    const PhaseGrid grid(40, 80);
    const CoherentFrame frame(sys, grid);
    const ChaoticMask mask = classify_phase_space(sys, grid, 300, 1e-8);
    const FloquetSpectrum odd = diagonalize(build_floquet(sys, Parity::odd), Parity::odd);
    const FloquetSpectrum even = diagonalize(build_floquet(sys, Parity::even), Parity::even);

    const auto records = compute_eigenstate_records(sys, odd, even, frame, &mask);
    CHECK(records.size() == std::size_t(sys.dim()));  // 2j + 1 pooled rows
    CHECK(records[0].parity == Parity::odd);
    CHECK(records.back().parity == Parity::even);

    // spot-check one state against the single-state path
    const std::size_t pick = 7;
    const Eigen::VectorXcd full = lift_vector(sys, Parity::odd, odd.eigenvectors.col(pick));
    const HusimiField field = husimi(full, frame);
    CHECK(std::abs(records[pick].wehrl_entropy - wehrl_entropy(field, sys)) < 1e-9);
    CHECK(std::abs(records[pick].overlap - overlap_index(field, mask, sys)) < 1e-9);
    CHECK(records[pick].quasienergy == odd.quasienergies[pick]);

    double min_s = records[0].wehrl_entropy;
    for (const auto& r : records) {
        CHECK(r.overlap >= -1.0);
        CHECK(r.overlap <= 1.0);
        CHECK(r.wehrl_elm > 0.0);
        CHECK(r.wehrl_elm <= 1.2);
        CHECK(r.wehrl_entropy > 0.0);
        CHECK(r.wehrl_entropy <= std::log(double(sys.dim())) + 1e-3);
        min_s = std::min(min_s, r.wehrl_entropy);
    }
    // coherent states minimize the Wehrl entropy
    const HusimiStats coherent = husimi_batch_stats(frame, frame.state_at(0), {});
    CHECK(coherent.entropy[0] <= min_s + 1e-6);
}

TEST_CASE("grid convergence audit flags a degenerate grid") {
    const SpinSystem sys(32, kAlpha, 8.0);
    const GridConvergenceAudit audit = grid_convergence_audit(sys, {8.0}, {2, 40, 50});
    REQUIRE(audit.rows.size() == 3);
    CHECK_FALSE(audit.converged.at(8.0));  // the 2x4 grid is far from converged

    const GridConvergenceAudit fine = grid_convergence_audit(sys, {8.0}, {40, 50});
    CHECK(fine.converged.at(8.0));
}
