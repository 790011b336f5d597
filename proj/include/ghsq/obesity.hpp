#pragma once

#include <cmath>

#include "ghsq/density.hpp"

namespace ghsq {

inline constexpr double x_sparsity_tol = 1e-12;

/// True when only the diagonal and anti-diagonal of a 4x4 state are occupied.
inline bool is_x_state(const DensityMatrix& rho, double tolerance = x_sparsity_tol) {
    require_two_qubit(rho);
    static constexpr int outside[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (const auto& [i, j] : outside)
        if (std::abs(rho(i, j)) > tolerance || std::abs(rho(j, i)) > tolerance) return false;
    return true;
}

inline void require_x_state(const DensityMatrix& rho) {
    if (!is_x_state(rho))
        throw NotXStateError("state has weight outside the diagonal and anti-diagonal; not an X state");
}

/// Quantum obesity |det R|^(1/4) from the full Fano correlation matrix.
inline double obesity(const DensityMatrix& rho) {
    const FanoForm f = bloch_decompose(rho);
    return std::pow(std::abs(f.r_full.determinant()), 0.25);
}

/// Closed form of the obesity for X states.
inline double obesity_x(const DensityMatrix& rho) {
    require_x_state(rho);
    const double coh = std::norm(rho(1, 2)) - std::norm(rho(0, 3));
    const double pop = rho(1, 1).real() * rho(2, 2).real() - rho(0, 0).real() * rho(3, 3).real();
    return 2.0 * std::pow(std::abs(coh * pop), 0.25);
}

} // namespace ghsq
