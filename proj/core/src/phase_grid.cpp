#include "kicktop/phase_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace kicktop {

PhaseGrid::PhaseGrid(int nt, int np) : n_theta(nt), n_phi(np) {
    if (nt < 1 || np < 1) throw std::invalid_argument("PhaseGrid: sizes must be positive");
    thetas.resize(nt);
    phis.resize(np);
    row_weight.resize(nt);
    const double dt = M_PI / nt;
    const double dp = 2.0 * M_PI / np;
    for (int i = 0; i < nt; ++i) {
        thetas[i] = (i + 0.5) * dt;
        row_weight[i] = dp * (std::cos(i * dt) - std::cos((i + 1) * dt));
    }
    for (int k = 0; k < np; ++k) phis[k] = -M_PI + (k + 0.5) * dp;
}

long PhaseGrid::parity_partner(long cell) const {
    const long i = cell / n_phi;
    const long k = cell % n_phi;
    return (n_theta - 1 - i) * static_cast<long>(n_phi) + (n_phi - 1 - k);
}

}  // namespace kicktop
