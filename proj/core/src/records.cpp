#include "kicktop/records.hpp"

#include <cmath>
#include <stdexcept>

#include "kicktop/spectral_stats.hpp"

namespace kicktop {

std::vector<EigenstateRecord> compute_eigenstate_records(const SpinSystem& sys,
                                                         const FloquetSpectrum& odd,
                                                         const FloquetSpectrum& even,
                                                         const CoherentFrame& frame,
                                                         const ChaoticMask* mask) {
    const long n_odd = odd.eigenvectors.cols();
    const long n_even = even.eigenvectors.cols();
    if (n_odd != sys.dim_odd() || n_even != sys.dim_even())
        throw std::invalid_argument("compute_eigenstate_records: sector dimensions mismatch");

    Eigen::MatrixXcd pooled(sys.dim(), sys.dim());
    pooled.leftCols(n_odd) = lift_to_full(sys, odd);
    pooled.rightCols(n_even) = lift_to_full(sys, even);

    HusimiStatsOptions opts;
    opts.want_entropy = true;
    opts.mask = mask;
    const HusimiStats stats = husimi_batch_stats(frame, pooled, opts);

    const Eigen::VectorXd h_odd = shannon_entropies_in_basis(odd, sys, EigvecBasis::jx_eigenbasis);
    const Eigen::VectorXd h_even =
        shannon_entropies_in_basis(even, sys, EigvecBasis::jx_eigenbasis);

    std::vector<EigenstateRecord> records(sys.dim());
    for (long s = 0; s < sys.dim(); ++s) {
        EigenstateRecord& r = records[s];
        const bool is_odd = s < n_odd;
        const long k = is_odd ? s : s - n_odd;
        r.index = k;
        r.parity = is_odd ? Parity::odd : Parity::even;
        r.quasienergy = is_odd ? odd.quasienergies[k] : even.quasienergies[k];
        r.wehrl_entropy = stats.entropy[s];
        r.wehrl_elm = stats.elm[s];
        r.shannon_entropy = is_odd ? h_odd[k] : h_even[k];
        r.overlap = mask ? stats.overlap[s] : 0.0;
    }
    return records;
}

std::vector<std::size_t> select_box(const std::vector<EigenstateRecord>& records, double m_lo,
                                    double m_hi, double elm_lo, double elm_hi) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.overlap >= m_lo && r.overlap <= m_hi && r.wehrl_elm >= elm_lo &&
            r.wehrl_elm <= elm_hi)
            ids.push_back(i);
    }
    return ids;
}

double mixed_fraction(const std::vector<EigenstateRecord>& records, double m0, double m1) {
    if (!(m0 < m1)) throw std::invalid_argument("mixed_fraction: need m0 < m1");
    if (records.empty()) return 0.0;
    std::size_t count = 0;
    for (const auto& r : records)
        if (r.overlap >= m0 && r.overlap <= m1) ++count;
    return double(count) / double(records.size());
}

PowerLawFit fit_power_law(const std::vector<std::pair<long, double>>& points, double m0,
                          double m1) {
    std::vector<double> lx, ly;
    std::vector<long> js;
    for (const auto& [j, chi] : points) {
        if (chi > 0.0) {
            lx.push_back(std::log(double(j)));
            ly.push_back(std::log(chi));
            js.push_back(j);
        }
    }
    if (lx.size() < 4) throw std::invalid_argument("fit_power_law: fewer than 4 usable points");
    const LinearFit line = fit_line(lx, ly);
    PowerLawFit fit;
    fit.zeta = -line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.window_m0 = m0;
    fit.window_m1 = m1;
    fit.j_values = std::move(js);
    fit.valid = true;
    return fit;
}

std::vector<PowerLawFit> sliding_window_exponents(
    const std::map<long, std::vector<EigenstateRecord>>& records_by_j, double delta_m,
    int n_centers) {
    if (delta_m <= 0.0) throw std::invalid_argument("sliding_window_exponents: delta_m <= 0");
    std::vector<PowerLawFit> fits;
    const double c_lo = -1.0 + 0.5 * delta_m;
    const double c_hi = 1.0 - 0.5 * delta_m;
    if (!(c_hi > c_lo)) {
        // delta_m >= 2 degenerates to the single full window
        std::vector<std::pair<long, double>> pts;
        for (const auto& [j, recs] : records_by_j)
            pts.emplace_back(j, mixed_fraction(recs, -1.0, 1.0));
        fits.push_back(fit_power_law(pts, -1.0, 1.0));
        return fits;
    }
    for (int c = 0; c < n_centers; ++c) {
        const double center = c_lo + (c_hi - c_lo) * (n_centers == 1 ? 0.5 : double(c) / (n_centers - 1));
        const double m0 = center - 0.5 * delta_m;
        const double m1 = center + 0.5 * delta_m;
        std::vector<std::pair<long, double>> pts;
        for (const auto& [j, recs] : records_by_j) pts.emplace_back(j, mixed_fraction(recs, m0, m1));
        PowerLawFit fit;
        try {
            fit = fit_power_law(pts, m0, m1);
        } catch (const std::invalid_argument&) {
            fit.window_m0 = m0;
            fit.window_m1 = m1;
            fit.valid = false;
        }
        fits.push_back(std::move(fit));
    }
    return fits;
}

GridConvergenceAudit grid_convergence_audit(const SpinSystem& sys_base,
                                            const std::vector<double>& gammas,
                                            const std::vector<int>& n_theta_sizes,
                                            double krylov_tol) {
    GridConvergenceAudit audit;
    for (double g : gammas) {
        const SpinSystem sys(sys_base.j, sys_base.alpha, g);
        const FloquetSpectrum odd = diagonalize(build_floquet(sys, Parity::odd), Parity::odd);
        const FloquetSpectrum even = diagonalize(build_floquet(sys, Parity::even), Parity::even);
        Eigen::MatrixXcd pooled(sys.dim(), sys.dim());
        pooled.leftCols(sys.dim_odd()) = lift_to_full(sys, odd);
        pooled.rightCols(sys.dim_even()) = lift_to_full(sys, even);

        double prev = 0.0;
        bool have_prev = false;
        bool ok = true;
        for (int nt : n_theta_sizes) {
            const PhaseGrid grid(nt, 2 * nt);
            const CoherentFrame frame(sys, grid, krylov_tol);
            const HusimiStats stats = husimi_batch_stats(frame, pooled, {});
            const double mean_elm = stats.elm.mean();
            audit.rows.push_back({g, nt, 2 * nt, mean_elm});
            if (have_prev && std::abs(mean_elm - prev) > 1e-3) ok = false;
            prev = mean_elm;
            have_prev = true;
        }
        audit.converged[g] = ok;
    }
    return audit;
}

}  // namespace kicktop
