#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "ghsq/density.hpp"
#include "ghsq/obesity.hpp"

namespace ghsq {

/// Which marginal entropy enters O_k. The measurement is always on the
/// second qubit; `measured_b` uses S(rho_B) and is the default everywhere.
enum class EntropyMarginal { measured_b, unmeasured_a };

struct DiscordBreakdown {
    double s_b = 0.0;  ///< marginal entropy used in O_k (bits)
    double s_ab = 0.0; ///< joint entropy (bits)
    double h1 = 0.0;
    double h2 = 0.0;
    double o1 = 0.0;
    double o2 = 0.0;
    double discord = 0.0;
    double iota = 0.0;     ///< rho11 + rho33
    double beta = 0.0;     ///< |rho11 - rho33| / iota
    double eps_pop = 0.0;  ///< rho22 + rho44
    double tau = 0.0;      ///< |rho22 - rho44| / eps_pop
    double varsigma = 0.0; ///< length of the equatorial conditional Bloch vector
};

namespace detail {

// sum_{i=1,2} x_i log2 x_i with x_i = (1 + (-1)^i r) / 2.
inline double binary_plogp(double r) {
    double acc = 0.0;
    for (double p : {0.5 * (1.0 - r), 0.5 * (1.0 + r)})
        if (p > 0.0) acc += p * std::log2(p);
    return acc;
}

} // namespace detail

/// Analytic discord of an X state, measurement on the second qubit.
inline DiscordBreakdown discord_x(const DensityMatrix& rho,
                                  EntropyMarginal marginal = EntropyMarginal::measured_b) {
    require_x_state(rho);
    const double r11 = rho(0, 0).real();
    const double r22 = rho(1, 1).real();
    const double r33 = rho(2, 2).real();
    const double r44 = rho(3, 3).real();

    DiscordBreakdown d;
    d.iota = r11 + r33;
    d.eps_pop = r22 + r44;
    d.beta = d.iota > 0.0 ? std::abs(r11 - r33) / d.iota : 0.0;
    d.tau = d.eps_pop > 0.0 ? std::abs(r22 - r44) / d.eps_pop : 0.0;
    const double pol = r11 + r22 - r33 - r44;
    const double coh = std::abs(rho(0, 3)) + std::abs(rho(1, 2));
    d.varsigma = std::sqrt(pol * pol + 4.0 * coh * coh);

    d.h1 = (d.iota > 0.0 ? d.iota * detail::binary_plogp(d.beta) : 0.0) +
           (d.eps_pop > 0.0 ? d.eps_pop * detail::binary_plogp(d.tau) : 0.0);
    d.h2 = detail::binary_plogp(std::min(d.varsigma, 1.0));

    const int keep = marginal == EntropyMarginal::measured_b ? 1 : 0;
    d.s_b = von_neumann_entropy(partial_trace(rho, {keep}));
    d.s_ab = von_neumann_entropy(rho);
    d.o1 = d.s_b - d.s_ab - d.h1;
    d.o2 = d.s_b - d.s_ab - d.h2;
    d.discord = std::min(d.o1, d.o2);
    return d;
}

struct DiscordSearch {
    double discord = 0.0;
    double theta = 0.0; ///< polar angle of the optimal measurement axis
    double phi = 0.0;   ///< azimuth of the optimal measurement axis
    double conditional_entropy = 0.0;
};

namespace detail {

// sum_k p_k S(rho_A|k) for the projective measurement (1 +- n.sigma)/2 on B.
inline double conditional_entropy(const Eigen::Matrix4cd& m, double theta, double phi) {
    const Eigen::Vector3d n{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    const auto& s = pauli_basis();
    const Eigen::Matrix2cd ns = n.x() * s[1] + n.y() * s[2] + n.z() * s[3];

    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
        const Eigen::Matrix2cd proj = 0.5 * (s[0] + sign * ns);
        // unnormalised conditional state: tr_B[(1 (x) P) rho]
        Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap)
                for (int b = 0; b < 2; ++b)
                    for (int bp = 0; bp < 2; ++bp) cond(a, ap) += proj(bp, b) * m(2 * a + b, 2 * ap + bp);
        const double p = cond.trace().real();
        if (p <= 1e-15) continue;
        const double half = 0.5 * p;
        const double gap = std::sqrt(0.25 * std::norm(cond(0, 0) - cond(1, 1)) + std::norm(cond(0, 1)));
        const std::array<double, 2> lam{std::max(0.0, (half - gap) / p), std::min(1.0, (half + gap) / p)};
        total += p * shannon_bits(lam);
    }
    return total;
}

} // namespace detail

/// Discord by direct minimisation over projective measurements on qubit B.
///
/// Coarse grid of grid_steps x grid_steps over theta in [0, pi/2] (endpoints
/// included) and phi in [0, 2pi), then one pass over a window ten times
/// narrower in both angles centred on the coarse optimum. Serial and
/// deterministic.
inline DiscordSearch discord_numeric_search(const DensityMatrix& rho, int grid_steps = 64) {
    require_two_qubit(rho);
    if (grid_steps < 32) throw ArgumentError("grid_steps must be at least 32");
    const Eigen::Matrix4cd m = rho.entries();
    constexpr double pi = std::numbers::pi;

    DiscordSearch best;
    best.conditional_entropy = std::numeric_limits<double>::infinity();
    auto scan = [&](double t0, double t_step, double p0, double p_step) {
        for (int i = 0; i < grid_steps; ++i) {
            const double t = t0 + i * t_step;
            for (int j = 0; j < grid_steps; ++j) {
                const double p = p0 + j * p_step;
                const double c = detail::conditional_entropy(m, t, p);
                if (c < best.conditional_entropy) {
                    best.conditional_entropy = c;
                    best.theta = t;
                    best.phi = p;
                }
            }
        }
    };

    const double t_span = pi / 2.0;
    const double p_span = 2.0 * pi;
    scan(0.0, t_span / (grid_steps - 1), 0.0, p_span / grid_steps);

    const double ft = t_span / 10.0;
    const double fp = p_span / 10.0;
    scan(best.theta - ft / 2.0, ft / (grid_steps - 1), best.phi - fp / 2.0, fp / (grid_steps - 1));

    const double s_b = von_neumann_entropy(partial_trace(rho, {1}));
    const double s_ab = von_neumann_entropy(rho);
    best.discord = s_b - s_ab + best.conditional_entropy;
    return best;
}

inline double discord_numeric(const DensityMatrix& rho, int grid_steps = 64) {
    return discord_numeric_search(rho, grid_steps).discord;
}

} // namespace ghsq
