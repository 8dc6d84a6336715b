#pragma once

#include <Eigen/Dense>
#include <optional>

#include "kicktop/classical.hpp"
#include "kicktop/coherent.hpp"
#include "kicktop/phase_grid.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop {

/// The set of spin coherent states on a phase-space grid.
///
/// Only the polar profiles are stored: the amplitudes at (theta_i, phi_k)
/// are the Krylov-generated Wigner-d column at theta_i times the exact
/// azimuthal phases e^{i(j-m)phi_k}, so a 200x400 frame at large j never
/// needs its ~10 GB dense form. Consumers stream over theta rows.
class CoherentFrame {
public:
    CoherentFrame(const SpinSystem& sys, const PhaseGrid& grid, double tol = kDefaultKrylovTol);

    const SpinSystem& system() const { return sys_; }
    const PhaseGrid& grid() const { return grid_; }

    /// N x n_theta real profiles; column i is the amplitude vector of
    /// |theta_i, 0>.
    const Eigen::MatrixXd& theta_columns() const { return cols_; }

    /// e^{i p pi (1 - 1/n_phi)} for p = j - m: with it, the conjugated cell
    /// phase factors as e^{-i p phi_k} = twiddle(p) e^{-2 pi i p k / n_phi},
    /// turning the phi sum into a DFT after folding p modulo n_phi.
    const Eigen::VectorXcd& fold_twiddle() const { return twiddle_; }

    /// Amplitudes of the coherent state at one grid cell.
    Eigen::VectorXcd state_at(long cell) const;

    /// Dense N x cells matrix of all frame states; refuses above the
    /// memory guard (use the streaming interfaces instead).
    Eigen::MatrixXcd dense_states(std::size_t max_bytes = std::size_t(2) << 30) const;

    /// Largest |norm - 1| over the stored profiles.
    double max_norm_defect() const;

private:
    SpinSystem sys_;
    PhaseGrid grid_;
    Eigen::MatrixXd cols_;
    Eigen::VectorXcd twiddle_;
};

inline CoherentFrame build_frame(const SpinSystem& sys, const PhaseGrid& grid,
                                 double tol = kDefaultKrylovTol) {
    return CoherentFrame(sys, grid, tol);
}

/// Husimi function Q(theta_i, phi_k) = |<theta,phi|v>|^2 of one state,
/// stored theta-major and normalized so that
/// (2j+1)/(4pi) sum_cells w Q = 1.
struct HusimiField {
    PhaseGrid grid;
    Eigen::VectorXd values;
};

HusimiField husimi(const Eigen::VectorXcd& state, const CoherentFrame& frame);

/// Wehrl entropy -(2j+1)/(4pi) sum w Q ln Q of a normalized field.
double wehrl_entropy(const HusimiField& field, const SpinSystem& sys);

inline double wehrl_elm(double entropy, const SpinSystem& sys) {
    return std::exp(entropy) / double(sys.dim());
}

/// Signed overlap of a Husimi field with the chaotic mask:
/// M = (2j+1)/(4pi) sum w f(chi) Q with f = +1 on chaotic cells, -1 on
/// regular ones; clamped to [-1, 1]. Grids must match.
double overlap_index(const HusimiField& field, const ChaoticMask& mask, const SpinSystem& sys);

struct HusimiStatsOptions {
    bool want_entropy = true;
    const ChaoticMask* mask = nullptr;  // enables the overlap index
};

/// Per-state Husimi statistics of a batch of states (columns, full Dicke
/// basis), streamed over theta rows with the azimuthal FFT.
struct HusimiStats {
    Eigen::VectorXd entropy;      // S_n (empty if !want_entropy)
    Eigen::VectorXd elm;          // e^{S_n}/N
    Eigen::VectorXd overlap;      // M_n (empty without mask)
    Eigen::VectorXd norm_defect;  // |discretized integral - 1| before renormalization
};

HusimiStats husimi_batch_stats(const CoherentFrame& frame, const Eigen::MatrixXcd& states,
                               const HusimiStatsOptions& opts = {});

/// Husimi amplitudes <theta_i, phi_k | v_n> for one theta row, all states:
/// out is (n_states x n_phi). Exposed for component-statistics studies.
void husimi_row_amplitudes(const CoherentFrame& frame, int i_theta,
                           const Eigen::MatrixXcd& states_transposed, Eigen::MatrixXcd& out);

/// Lee's closed form for the Wehrl entropy of the Dicke state |j,m>:
///   2j/(2j+1) - ln C(2j, j-m) + 2j Psi(2j+1)
///   - (j+m) Psi(j+m+1) - (j-m) Psi(j-m+1).
double dicke_wehrl_entropy(long j, long m);

/// Components x = |<theta,phi|v_n>|^2 for every probe angle and every state
/// column; probe order is the outer loop. Feeds the chi-squared component
/// statistics on and off the symmetry lines.
std::vector<double> scs_components(const SpinSystem& sys,
                                   const std::vector<std::pair<double, double>>& probes,
                                   const Eigen::MatrixXcd& states,
                                   double tol = kDefaultKrylovTol);

}  // namespace kicktop
