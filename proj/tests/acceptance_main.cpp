// Acceptance suite: end-to-end reproduction checks at desk scale, one
// pass/fail line per criterion. Heavy artifacts (spectra, masks, record
// tables) live in ./acceptance_cache so reruns are cheap.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "kicktop/husimi.hpp"
#include "kicktop/io.hpp"
#include "kicktop/records.hpp"
#include "kicktop/spectral_stats.hpp"
#include "pipeline.hpp"

using namespace kicktop;
using pipeline::RunConfig;

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

RunConfig base_config() {
    RunConfig config;
    config.cache_dir = "acceptance_cache/cache";
    config.out_dir = "acceptance_cache/out";
    config.n_theta = 200;
    config.n_phi = 400;
    config.sali_kicks = 300;
    config.sali_threshold = 1e-8;
    config.krylov_tol = 1e-12;
    config.use_cache = true;
    return config;
}

struct SectorPair {
    FloquetSpectrum odd, even;
};

SectorPair spectra(const RunConfig& config, long j, double gamma) {
    const SpinSystem sys(j, config.alpha, gamma);
    return {load_or_diagonalize(sys, Parity::odd, config.cache_dir),
            load_or_diagonalize(sys, Parity::even, config.cache_dir)};
}

double mean_wehrl_entropy(const std::vector<EigenstateRecord>& records) {
    double s = 0.0;
    for (const auto& r : records) s += r.wehrl_entropy;
    return s / double(records.size());
}

double mean_wehrl_elm(const std::vector<EigenstateRecord>& records) {
    double s = 0.0;
    for (const auto& r : records) s += r.wehrl_elm;
    return s / double(records.size());
}

// ---------------------------------------------------------------- criteria

void criterion_1_oracle(const RunConfig& config) {
    std::mt19937_64 gen(config.seed);
    std::uniform_real_distribution<double> uth(0.0, M_PI), uph(-M_PI, M_PI);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (long j : {8L, 64L, 512L}) {
        const SpinSystem sys(j, config.alpha, 0.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double theta = uth(gen), phi = uph(gen);
            const Eigen::VectorXcd a =
                align_global_phase(make_coherent_state(sys, theta, phi).amplitudes);
            const Eigen::VectorXcd b =
                align_global_phase(direct_scs_oracle(sys, theta, phi).amplitudes);
            worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, worst <= 1e-9 && secs < 60.0, "Krylov coherent states match the log-gamma formula",
           fmt("max dev %.2e <= 1e-9, %.1f s", worst, secs));
}

void criterion_2_dicke_wehrl(const RunConfig& config) {
    double worst = 0.0;
    for (long j : {16L, 64L, 256L}) {
        const SpinSystem sys(j, config.alpha, 0.0);
        const CoherentFrame& frame =
            pipeline::shared_frame(j, config.n_theta, config.n_phi, config.krylov_tol);
        const Eigen::MatrixXcd dicke = Eigen::MatrixXcd::Identity(sys.dim(), sys.dim());
        const HusimiStats stats = husimi_batch_stats(frame, dicke, {});
        for (long i = 0; i < sys.dim(); ++i)
            worst = std::max(
                std::abs(stats.entropy[i] - dicke_wehrl_entropy(j, sys.m_of_index(i))), worst);
    }
    report(2, worst <= 1e-3, "Dicke-state Wehrl entropies match the closed form",
           fmt("max |S - closed form| = %.2e <= 1e-3", worst));
}

void criterion_3_chaotic_fraction(const RunConfig& config) {
    const std::vector<double> scan{1.0, 2.0, 2.3, 2.6, 3.0, 4.0, 4.4, 6.0};
    std::vector<double> mu;
    for (double gamma : scan) mu.push_back(chaotic_fraction(pipeline::obtain_mask(config, gamma)));
    bool monotone = true;
    for (std::size_t k = 0; k + 1 < mu.size(); ++k)
        monotone = monotone && (mu[k + 1] >= mu[k] - 0.01);
    const bool pass = mu.front() <= 0.02 && mu.back() >= 0.99 && monotone;
    report(3, pass, "chaotic fraction: ~0 at gamma=1, ~1 at gamma=6, nondecreasing",
           fmt("mu(1)=%.3f, mu(6)=%.4f, monotone=%d", mu.front(), mu.back(), int(monotone)));
}

void criterion_4_spectral_indicator(const RunConfig& config) {
    const SectorPair chaotic = spectra(config, 1024, 8.0);
    const SectorPair regularish = spectra(config, 1024, 1.0);
    const double rc_chaotic = normalized_mean_ratio(chaotic.odd, chaotic.even);
    const double rc_regular = normalized_mean_ratio(regularish.odd, regularish.even);
    const bool pass = std::abs(rc_chaotic - 1.0) <= 0.05 && std::abs(rc_regular) <= 0.1;
    report(4, pass, "normalized mean spacing ratio at j=2^10",
           fmt("r_c(8)=%.3f in 1+-0.05, r_c(1)=%.3f in +-0.1", rc_chaotic, rc_regular));
}

void criterion_5_rmt_offsets(const RunConfig& config) {
    const long j = 1024;
    const auto records = pipeline::obtain_records(config, j, 8.0);
    const auto records_half = pipeline::obtain_records(config, 512, 8.0);

    double mean_h = 0.0, mean_l = 0.0;
    long n_odd = 0;
    for (const auto& r : records) {
        if (r.parity != Parity::odd) continue;
        mean_h += r.shannon_entropy;
        mean_l += std::exp(r.shannon_entropy) / double(j);
        ++n_odd;
    }
    mean_h /= double(n_odd);
    mean_l /= double(n_odd);
    const double h_off = mean_h - std::log(double(j));
    const double s_off = mean_wehrl_entropy(records) - std::log(double(2 * j + 1));
    const double elm = mean_wehrl_elm(records);
    const double elm_half = mean_wehrl_elm(records_half);

    const bool pass = (h_off >= -0.76 && h_off <= -0.70) && (s_off >= -0.50 && s_off <= -0.42) &&
                      std::abs(mean_l - 0.482) <= 0.02 && (elm >= 0.60 && elm <= 0.66) &&
                      elm > elm_half;
    report(5, pass, "random-matrix entropy offsets at j=2^10, gamma=8",
           fmt("<H>-lnN=%.4f, <S>-lnN=%.4f, <L>=%.3f, <ELM>=%.3f (j/2: %.3f)", h_off, s_off,
               mean_l, elm, elm_half));
}

void criterion_6_integrable_scaling(const RunConfig& config) {
    std::vector<double> ln_n, mean_s, ln_elm;
    for (long j : {128L, 256L, 512L, 1024L, 2048L}) {
        const auto records = pipeline::obtain_records(config, j, 1.0);
        ln_n.push_back(std::log(double(2 * j + 1)));
        mean_s.push_back(mean_wehrl_entropy(records));
        ln_elm.push_back(std::log(mean_wehrl_elm(records)));
    }
    const LinearFit s_fit = fit_line(ln_n, mean_s);
    const LinearFit elm_fit = fit_line(ln_n, ln_elm);
    const bool pass = std::abs(s_fit.slope - 0.5) <= 0.05;
    report(6, pass, "integrable regime: <S> grows as (1/2) ln N at gamma=1",
           fmt("S-slope=%.3f in 0.5+-0.05 (ELM log-log slope %.3f)", s_fit.slope,
               elm_fit.slope));
}

void criterion_7_component_statistics(const RunConfig& config) {
    const long j = 1024;
    const SpinSystem sys(j, config.alpha, 8.0);
    const SectorPair pair = spectra(config, j, 8.0);
    Eigen::MatrixXcd pooled(sys.dim(), sys.dim());
    pooled.leftCols(sys.dim_odd()) = lift_to_full(sys, pair.odd);
    pooled.rightCols(sys.dim_even()) = lift_to_full(sys, pair.even);
    const double mean_x = 1.0 / double(sys.dim());
    const auto cdf1 = [&](double x) { return chi2_component_cdf(1, x, mean_x); };
    const auto cdf2 = [&](double x) { return chi2_component_cdf(2, x, mean_x); };

    // coherent probes away from the symmetry lines: chi^2 with nu = 2
    const PhaseGrid grid(config.n_theta, config.n_phi);
    std::vector<std::pair<double, double>> off_probes;
    for (long c = 0; c < grid.cells() && off_probes.size() < 400; c += 211) {
        const double theta = grid.theta_of(c), phi = grid.phi_of(c);
        if (symmetry_line_distance(sys, theta, phi) > 0.1) off_probes.emplace_back(theta, phi);
    }
    const double ks_off = ks_distance(scs_components(sys, off_probes, pooled), cdf2);

    // 300 probes on the two time-reversal circles: chi^2 with nu = 1
    std::vector<std::pair<double, double>> on_probes;
    for (const auto& p : symmetry_line_points(sys, 150)) on_probes.emplace_back(p.theta, p.phi);
    const double ks_on = ks_distance(scs_components(sys, on_probes, pooled), cdf1);

    // Dicke-basis components: Porter-Thomas (nu = 1)
    std::vector<double> dicke;
    dicke.reserve(std::size_t(sys.dim()) * std::size_t(sys.dim()));
    for (long c = 0; c < pooled.cols(); ++c)
        for (long r = 0; r < pooled.rows(); ++r) dicke.push_back(std::norm(pooled(r, c)));
    const double ks_dicke = ks_distance(std::move(dicke), cdf1);

    const bool pass = ks_off <= 0.02 && ks_on <= 0.03 && ks_dicke <= 0.02;
    report(7, pass, "chi-squared component laws at j=2^10, gamma=8",
           fmt("KS off-line=%.4f (<=0.02), on-line=%.4f (<=0.03), Dicke=%.4f (<=0.02)", ks_off,
               ks_on, ks_dicke));
}

void criterion_8_parity_identities(const RunConfig& config) {
    const long j = 128;
    const SpinSystem sys(j, config.alpha, 4.0);
    const SectorPair pair = spectra(config, j, 4.0);

    double worst_h = 0.0, worst_elm = 0.0;
    for (long n = 0; n < pair.odd.quasienergies.size(); ++n) {
        const Eigen::VectorXcd sector_vec = pair.odd.eigenvectors.col(n);
        const Eigen::VectorXcd full_vec = lift_vector(sys, Parity::odd, sector_vec);
        const double h = shannon_entropy(sector_vec);
        const double h_bar = shannon_entropy(full_vec);
        worst_h = std::max(worst_h, std::abs(h_bar - h - std::log(2.0)));
        const double elm = std::exp(h) / double(sys.dim_odd());
        const double elm_bar = std::exp(h_bar) / double(sys.dim());
        worst_elm =
            std::max(worst_elm, std::abs(elm_bar - elm * double(j) / (double(j) + 0.5)));
    }

    const CoherentFrame& frame =
        pipeline::shared_frame(j, config.n_theta, config.n_phi, config.krylov_tol);
    double worst_q = 0.0;
    for (Parity p : {Parity::odd, Parity::even}) {
        const FloquetSpectrum& spec = (p == Parity::odd) ? pair.odd : pair.even;
        for (long n : {0L, spec.quasienergies.size() / 2}) {
            const HusimiField field = husimi(lift_vector(sys, p, spec.eigenvectors.col(n)), frame);
            for (long c = 0; c < field.grid.cells(); ++c)
                worst_q = std::max(worst_q, std::abs(field.values[c] -
                                                     field.values[field.grid.parity_partner(c)]));
        }
    }
    const bool pass = worst_h <= 1e-10 && worst_elm <= 1e-12 && worst_q <= 1e-9;
    report(8, pass, "parity identities: entropy shift ln 2, ELM ratio, Husimi symmetry",
           fmt("|Hbar-H-ln2|=%.1e, ELM defect=%.1e, Q asymmetry=%.1e", worst_h, worst_elm,
               worst_q));
}

void criterion_9_power_law(const RunConfig& config) {
    // synthetic exact power law first
    std::vector<std::pair<long, double>> synth;
    for (long j : {128L, 256L, 512L, 1024L, 2048L}) synth.emplace_back(j, 3.0 * std::pow(j, -0.3));
    const PowerLawFit exact = fit_power_law(synth, -0.9, 0.5);
    const bool synth_ok = std::abs(exact.zeta - 0.3) <= 1e-12;

    bool fits_ok = true;
    std::string detail = fmt("synthetic zeta err %.1e; ", std::abs(exact.zeta - 0.3));
    for (double gamma : {2.3, 2.6, 3.0}) {
        std::vector<std::pair<long, double>> pts;
        for (long j : {128L, 256L, 512L, 1024L, 2048L})
            pts.emplace_back(j, mixed_fraction(pipeline::obtain_records(config, j, gamma), -0.9, 0.5));
        const PowerLawFit fit = fit_power_law(pts, -0.9, 0.5);
        fits_ok = fits_ok && fit.zeta > 0.15 && fit.zeta < 0.5 && fit.r_squared >= 0.85;
        detail += fmt("g=%.1f: zeta=%.3f R2=%.3f; ", gamma, fit.zeta, fit.r_squared);
    }
    report(9, synth_ok && fits_ok, "mixed-state fraction decays as a power law in j", detail);
}

void criterion_10_grid_convergence(const RunConfig& config) {
    bool pass = true;
    std::string detail;
    const long j = 1024;
    for (double gamma : {1.0, 8.0}) {
        const SpinSystem sys(j, config.alpha, gamma);
        const SectorPair pair = spectra(config, j, gamma);
        Eigen::MatrixXcd pooled(sys.dim(), sys.dim());
        pooled.leftCols(sys.dim_odd()) = lift_to_full(sys, pair.odd);
        pooled.rightCols(sys.dim_even()) = lift_to_full(sys, pair.even);
        double elm[2];
        int k = 0;
        for (int nt : {150, 250}) {
            const CoherentFrame& frame =
                pipeline::shared_frame(j, nt, 2 * nt, config.krylov_tol);
            elm[k++] = husimi_batch_stats(frame, pooled, {}).elm.mean();
        }
        const double diff = std::abs(elm[0] - elm[1]);
        pass = pass && diff < 1e-3;
        detail += fmt("g=%g: |ELM(150x300)-ELM(250x500)|=%.2e; ", gamma, diff);
    }
    report(10, pass, "mean Wehrl ELM converged in the grid size at j=2^10", detail);
}

void criterion_11_determinism(const RunConfig& base) {
    bool pass = true;
    std::string detail = "outputs byte-identical";
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
        RunConfig config = base;
        config.n_theta = 40;
        config.n_phi = 80;
        config.j_list = {64};
        config.gamma_list = {2.6};
        config.cache_dir = fs::path("acceptance_cache") / ("det_cache_" + std::to_string(run));
        config.out_dir = fs::path("acceptance_cache") / ("det_out_" + std::to_string(run));
        fs::remove_all(config.cache_dir);
        fs::remove_all(config.out_dir);
        config.use_cache = false;
        if (!pipeline::cmd_classical(config) || !pipeline::cmd_spectral(config) ||
            !pipeline::cmd_husimi(config)) {
            pass = false;
            detail = "pipeline command failed";
        }
        dirs.push_back(config.out_dir);
    }
    if (pass) {
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            const fs::path other = dirs[1] / entry.path().filename();
            std::ifstream a(entry.path(), std::ios::binary), b(other, std::ios::binary);
            std::string sa((std::istreambuf_iterator<char>(a)), {});
            std::string sb((std::istreambuf_iterator<char>(b)), {});
            if (sa != sb || sa.empty()) {
                pass = false;
                detail = "mismatch in " + entry.path().filename().string();
                break;
            }
        }
    }
    report(11, pass, "identical configs produce identical output files", detail);
}

}  // namespace

int main() {
    const RunConfig config = base_config();
    fs::create_directories(config.cache_dir);
    fs::create_directories(config.out_dir);

    criterion_1_oracle(config);
    criterion_2_dicke_wehrl(config);
    criterion_3_chaotic_fraction(config);
    criterion_4_spectral_indicator(config);
    criterion_5_rmt_offsets(config);
    criterion_6_integrable_scaling(config);
    criterion_7_component_statistics(config);
    criterion_8_parity_identities(config);
    criterion_9_power_law(config);
    criterion_10_grid_convergence(config);
    criterion_11_determinism(config);

    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
