#pragma once

#include <map>
#include <vector>

#include "kicktop/floquet.hpp"
#include "kicktop/husimi.hpp"
#include "kicktop/math_util.hpp"

namespace kicktop {

/// Per-eigenstate statistics row: Wehrl entropy S and ELM, Shannon entropy H
/// (sector eigenvectors in the eigenbasis of the sector-restricted J_x), and
/// the overlap index M against the classical mask.
struct EigenstateRecord {
    long index = 0;  // within the parity sector, by ascending quasienergy
    Parity parity = Parity::odd;
    double quasienergy = 0.0;
    double wehrl_entropy = 0.0;
    double wehrl_elm = 0.0;
    double shannon_entropy = 0.0;
    double overlap = 0.0;
};

/// Records for all eigenstates of both parity sectors, pooled (odd block
/// first). The mask may be null when the overlap index is not wanted.
std::vector<EigenstateRecord> compute_eigenstate_records(const SpinSystem& sys,
                                                         const FloquetSpectrum& odd,
                                                         const FloquetSpectrum& even,
                                                         const CoherentFrame& frame,
                                                         const ChaoticMask* mask);

/// Ids (positions in the record list) inside a rectangular (M, ELM) box.
std::vector<std::size_t> select_box(const std::vector<EigenstateRecord>& records, double m_lo,
                                    double m_hi, double elm_lo, double elm_hi);

/// chi_M = fraction of records with M in the closed interval [m0, m1].
double mixed_fraction(const std::vector<EigenstateRecord>& records, double m0, double m1);

struct PowerLawFit {
    double zeta = 0.0;       // chi_M ~ j^{-zeta}
    double intercept = 0.0;  // of the ln-ln line
    double r_squared = 0.0;
    double window_m0 = 0.0;
    double window_m1 = 0.0;
    std::vector<long> j_values;
    bool valid = false;
};

/// Least squares on (ln j, ln chi) over the points with chi > 0.
/// Rejects fewer than 4 usable points.
PowerLawFit fit_power_law(const std::vector<std::pair<long, double>>& points, double m0,
                          double m1);

/// One fit per sliding window [c - dm/2, c + dm/2]; windows with fewer than
/// 4 usable (j, chi > 0) points come back flagged invalid, not dropped.
std::vector<PowerLawFit> sliding_window_exponents(
    const std::map<long, std::vector<EigenstateRecord>>& records_by_j, double delta_m,
    int n_centers = 40);

struct GridConvergenceRow {
    double gamma = 0.0;
    int n_theta = 0;
    int n_phi = 0;
    double mean_elm = 0.0;
};

struct GridConvergenceAudit {
    std::vector<GridConvergenceRow> rows;
    std::map<double, bool> converged;  // per gamma: successive grids differ < 1e-3
};

/// Mean Wehrl ELM over all eigenstates for each grid N1 x 2 N1 and kick
/// strength; flags non-convergence when successive grids differ by > 1e-3.
GridConvergenceAudit grid_convergence_audit(const SpinSystem& sys_base,
                                            const std::vector<double>& gammas,
                                            const std::vector<int>& n_theta_sizes,
                                            double krylov_tol = kDefaultKrylovTol);

}  // namespace kicktop
