#pragma once

#include <Eigen/Dense>
#include <vector>

namespace kicktop {

/// Regular n_theta x n_phi grid of cell centers on [0,pi] x [-pi,pi).
/// The quadrature weight of a cell is its exact spherical area
/// dphi * (cos(theta-) - cos(theta+)), the midpoint form of
/// sin(theta) dtheta dphi; the weights sum to 4*pi exactly.
struct PhaseGrid {
    int n_theta = 0;
    int n_phi = 0;
    Eigen::VectorXd thetas;      // size n_theta, centers
    Eigen::VectorXd phis;        // size n_phi, centers
    Eigen::VectorXd row_weight;  // size n_theta, weight of each cell in row i

    PhaseGrid() = default;
    PhaseGrid(int n_theta, int n_phi);

    long cells() const { return static_cast<long>(n_theta) * n_phi; }
    long cell_index(int i_theta, int i_phi) const {
        return static_cast<long>(i_theta) * n_phi + i_phi;  // theta-major
    }
    double weight(long cell) const { return row_weight[cell / n_phi]; }
    double theta_of(long cell) const { return thetas[cell / n_phi]; }
    double phi_of(long cell) const { return phis[cell % n_phi]; }

    /// cell of the point (pi - theta_i, -phi_k); the grid is symmetric under it
    long parity_partner(long cell) const;

    bool same_shape(const PhaseGrid& other) const {
        return n_theta == other.n_theta && n_phi == other.n_phi;
    }
};

}  // namespace kicktop
