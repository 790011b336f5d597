#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "ghsq/density.hpp"

namespace ghsq {

/// Black-hole side of the model: mass M, dilation D, Dirac frequency omega,
/// and the derived Lambda = M - D, Bogoliubov amplitudes and temperature.
struct GhsParams {
    double mass = 1.0;
    double dilation = 0.0;
    double omega = 1.0;
    double lambda = 1.0;
    double eps1 = 1.0;
    double eps2 = 0.0;
    double temperature = 0.0; // +inf when lambda == 0

    double charge() const { return std::sqrt(2.0 * mass * dilation); }
};

inline GhsParams ghs_params(double mass, double dilation, double omega) {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    if (!(dilation >= 0.0)) throw DomainError("dilation must be non-negative");
    if (dilation > mass) throw DomainError("dilation must not exceed the mass (Lambda = M - D < 0)");

    GhsParams p;
    p.mass = mass;
    p.dilation = dilation;
    p.omega = omega;
    p.lambda = mass - dilation;
    const double x = 8.0 * p.lambda * std::numbers::pi * omega;
    p.eps1 = 1.0 / std::sqrt(1.0 + std::exp(-x));
    p.eps2 = 1.0 / std::sqrt(1.0 + std::exp(x));
    p.temperature = p.lambda > 0.0 ? 1.0 / (8.0 * std::numbers::pi * p.lambda)
                                    : std::numeric_limits<double>::infinity();
    return p;
}

/// Gisin state parameters: mixing weight g and Bell angle alpha.
struct GisinParams {
    double g = 1.0;
    double alpha = std::numbers::pi / 4.0;
};

inline void validate(const GisinParams& p) {
    if (!(p.g >= 0.0 && p.g <= 1.0)) throw DomainError("g must lie in [0, 1]");
    // small slack so pi/2 typed as a decimal still passes
    if (!(p.alpha >= 0.0 && p.alpha <= std::numbers::pi / 2.0 + 1e-12))
        throw DomainError("alpha must lie in [0, pi/2]");
}

/// g|xi_a><xi_a| + (1-g)/2 (|00><00| + |11><11|), |xi_a> = sin a|01> + cos a|10>.
inline DensityMatrix gisin_state(const GisinParams& p) {
    validate(p);
    const double s = std::sin(p.alpha);
    const double c = std::cos(p.alpha);
    const double mix = 0.5 * (1.0 - p.g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = mix;
    m(3, 3) = mix;
    m(1, 1) = p.g * s * s;
    m(2, 2) = p.g * c * c;
    m(1, 2) = m(2, 1) = p.g * s * c;
    return DensityMatrix(std::move(m), {"A", "B"});
}

/// Joint state of Alice, Bob's exterior mode and Bob's interior mode after
/// Bob's Kruskal modes are re-expanded in the GHS basis.
inline DensityMatrix evolve_tripartite(const GisinParams& p, const GhsParams& q) {
    validate(p);
    const double e1 = q.eps1;
    const double e2 = q.eps2;
    const double s = std::sin(p.alpha);
    const double c = std::cos(p.alpha);
    const double mix = 0.5 * (1.0 - p.g);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
    // |a b_I b_II> -> 4a + 2b_I + b_II
    auto add = [&m](int ket, int bra, double w) { m(ket, bra) += w; };
    auto add_sym = [&add](int i, int j, double w) {
        add(i, j, w);
        add(j, i, w);
    };
    constexpr int k000 = 0, k010 = 2, k011 = 3, k100 = 4, k110 = 6, k111 = 7;

    add(k000, k000, mix * e1 * e1);
    add_sym(k000, k011, mix * e1 * e2);
    add(k011, k011, mix * e2 * e2);
    add(k110, k110, mix);

    const double gc2 = p.g * c * c;
    add(k100, k100, gc2 * e1 * e1);
    add_sym(k100, k111, gc2 * e1 * e2);
    add(k111, k111, gc2 * e2 * e2);

    add(k010, k010, p.g * s * s);

    const double gsc = p.g * s * c;
    add_sym(k010, k100, gsc * e1);
    add_sym(k010, k111, gsc * e2);

    return DensityMatrix(std::move(m), {"A", "B_I", "B_II"});
}

/// Alice with Bob's exterior (accessible) mode.
inline DensityMatrix reduce_ab1(const GisinParams& p, const GhsParams& q) {
    validate(p);
    const double e1s = q.eps1 * q.eps1;
    const double e2s = q.eps2 * q.eps2;
    const double s = std::sin(p.alpha);
    const double c = std::cos(p.alpha);
    const double mix = 0.5 * (1.0 - p.g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = mix * e1s;
    m(1, 1) = mix * e2s + p.g * s * s;
    m(2, 2) = p.g * c * c * e1s;
    m(3, 3) = mix + p.g * c * c * e2s;
    m(1, 2) = m(2, 1) = p.g * s * c * q.eps1;
    return DensityMatrix(std::move(m), {"A", "B_I"});
}

/// Alice with Bob's interior (inaccessible) mode.
inline DensityMatrix reduce_ab2(const GisinParams& p, const GhsParams& q) {
    validate(p);
    const double e1s = q.eps1 * q.eps1;
    const double e2s = q.eps2 * q.eps2;
    const double s = std::sin(p.alpha);
    const double c = std::cos(p.alpha);
    const double mix = 0.5 * (1.0 - p.g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = mix * e1s + p.g * s * s;
    m(1, 1) = mix * e2s;
    m(2, 2) = mix + p.g * c * c * e1s;
    m(3, 3) = p.g * c * c * e2s;
    m(0, 3) = m(3, 0) = p.g * s * c * q.eps2;
    return DensityMatrix(std::move(m), {"A", "B_II"});
}

/// Bob's exterior and interior modes.
inline DensityMatrix reduce_b1b2(const GisinParams& p, const GhsParams& q) {
    validate(p);
    const double s = std::sin(p.alpha);
    const double c = std::cos(p.alpha);
    const double mix = 0.5 * (1.0 - p.g);
    const double a_plus = mix + p.g * c * c;
    const double a_minus = mix + p.g * s * s;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = a_plus * q.eps1 * q.eps1;
    m(0, 3) = m(3, 0) = a_plus * q.eps1 * q.eps2;
    m(2, 2) = a_minus;
    m(3, 3) = a_plus * q.eps2 * q.eps2;
    return DensityMatrix(std::move(m), {"B_I", "B_II"});
}

enum class Region { AB_I, AB_II, B_I_B_II };

inline std::string_view region_name(Region r) {
    switch (r) {
    case Region::AB_I: return "AB_I";
    case Region::AB_II: return "AB_II";
    case Region::B_I_B_II: return "B_I_B_II";
    }
    return "?";
}

inline Region parse_region(std::string_view s) {
    if (s == "AB_I" || s == "ab_i" || s == "ab1") return Region::AB_I;
    if (s == "AB_II" || s == "ab_ii" || s == "ab2") return Region::AB_II;
    if (s == "B_I_B_II" || s == "b_i_b_ii" || s == "b1b2") return Region::B_I_B_II;
    throw ParseError("unknown region '" + std::string(s) + "' (expected AB_I, AB_II or B_I_B_II)");
}

/// Qubit positions of the region's pair inside the tripartite state.
inline std::vector<int> region_qubits(Region r) {
    switch (r) {
    case Region::AB_I: return {0, 1};
    case Region::AB_II: return {0, 2};
    case Region::B_I_B_II: return {1, 2};
    }
    return {};
}

inline DensityMatrix reduced_state(Region r, const GisinParams& p, const GhsParams& q) {
    switch (r) {
    case Region::AB_I: return reduce_ab1(p, q);
    case Region::AB_II: return reduce_ab2(p, q);
    case Region::B_I_B_II: return reduce_b1b2(p, q);
    }
    throw ArgumentError("unknown region");
}

} // namespace ghsq
