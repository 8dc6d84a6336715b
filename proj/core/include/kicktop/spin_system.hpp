#pragma once

#include <cmath>
#include <stdexcept>

namespace kicktop {

/// Model parameters of the kicked top: spin size j (integer), precession
/// angle alpha about x, and kick (torsion) strength gamma about z.
/// Single source of truth for the derived Hilbert-space dimensions.
struct SpinSystem {
    long j;
    double alpha;
    double gamma;

    SpinSystem(long j_, double alpha_, double gamma_) : j(j_), alpha(alpha_), gamma(gamma_) {
        if (j < 1) throw std::invalid_argument("SpinSystem: j must be >= 1");
        if (!std::isfinite(alpha) || !std::isfinite(gamma))
            throw std::invalid_argument("SpinSystem: alpha/gamma must be finite");
    }

    long dim() const { return 2 * j + 1; }   // full Hilbert space, N = 2j+1
    long dim_odd() const { return j; }       // odd-parity sector
    long dim_even() const { return j + 1; }  // even-parity sector

    /// Dicke index of |j,m>, ordering m = j, j-1, ..., -j (so |j,j> = e_1).
    long index_of_m(long m) const { return j - m; }
    long m_of_index(long i) const { return j - i; }
};

}  // namespace kicktop
