#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

#include "ghsq/density.hpp"

namespace ghsq {

/// Alice's steering ellipsoid: the set of Bloch vectors Bob can steer her to.
struct SteeringEllipsoid {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    Eigen::Vector3d semi_axes = Eigen::Vector3d::Zero();     // descending
    Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();      // column k goes with semi_axes(k)
    Eigen::Vector3d q_eigenvalues = Eigen::Vector3d::Zero(); // same order as semi_axes
    double gamma_b = 1.0;

    double volume() const { return 4.0 * std::numbers::pi / 3.0 * semi_axes.prod(); }

    /// Point on the surface for a unit direction (x, y, z) in the axis frame.
    Eigen::Vector3d surface_point(const Eigen::Vector3d& unit) const {
        return center + axes * semi_axes.cwiseProduct(unit);
    }
};

inline constexpr double pure_marginal_margin = 1e-9;

inline SteeringEllipsoid steering_ellipsoid(const FanoForm& f) {
    const double wn = f.w.norm();
    if (wn >= 1.0 - pure_marginal_margin)
        throw PureMarginalError("steering ellipsoid undefined: |w| = " + std::to_string(wn) +
                                " (Bob's marginal is pure)");

    SteeringEllipsoid e;
    e.gamma_b = 1.0 / (1.0 - f.w.squaredNorm());
    e.center = e.gamma_b * (f.v - f.theta * f.w);

    const Eigen::Matrix3d left = f.theta - f.v * f.w.transpose();
    const Eigen::Matrix3d mid = Eigen::Matrix3d::Identity() + e.gamma_b * f.w * f.w.transpose();
    Eigen::Matrix3d q = e.gamma_b * left * mid * left.transpose();

    const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9) throw InternalError("steering matrix asymmetric by " + std::to_string(asym));
    q = 0.5 * (q + q.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(q);
    const Eigen::Vector3d ev = es.eigenvalues(); // ascending
    for (int k = 0; k < 3; ++k) {
        const int src = 2 - k;
        double qk = ev(src);
        if (qk < -tol::psd)
            throw InternalError("steering matrix eigenvalue " + std::to_string(qk) + " below tolerance");
        qk = std::max(qk, 0.0);
        e.q_eigenvalues(k) = qk;
        e.semi_axes(k) = std::sqrt(qk);
        e.axes.col(k) = es.eigenvectors().col(src);
    }
    return e;
}

inline SteeringEllipsoid steering_ellipsoid(const DensityMatrix& rho) {
    return steering_ellipsoid(bloch_decompose(rho));
}

// ---------------------------------------------------------------------------
// Mesh export

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces; // 0-based
};

/// Latitude/longitude triangulation of the ellipsoid surface, poles included.
inline TriangleMesh ellipsoid_mesh(const SteeringEllipsoid& e, int lat_steps, int lon_steps) {
    if (lat_steps < 4) throw ArgumentError("lat_steps must be at least 4");
    if (lon_steps < 8) throw ArgumentError("lon_steps must be at least 8");
    constexpr double pi = std::numbers::pi;

    TriangleMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>((lat_steps - 1) * lon_steps + 2));
    mesh.vertices.push_back(e.surface_point({0.0, 0.0, 1.0}));
    for (int i = 1; i < lat_steps; ++i) {
        const double th = pi * i / lat_steps;
        for (int j = 0; j < lon_steps; ++j) {
            const double ph = 2.0 * pi * j / lon_steps;
            mesh.vertices.push_back(
                e.surface_point({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
        }
    }
    mesh.vertices.push_back(e.surface_point({0.0, 0.0, -1.0}));

    const int south = static_cast<int>(mesh.vertices.size()) - 1;
    auto ring = [lon_steps](int i, int j) { return 1 + (i - 1) * lon_steps + (j % lon_steps); };
    for (int j = 0; j < lon_steps; ++j) mesh.faces.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i < lat_steps - 1; ++i) {
        for (int j = 0; j < lon_steps; ++j) {
            mesh.faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            mesh.faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
        }
    }
    for (int j = 0; j < lon_steps; ++j) mesh.faces.push_back({ring(lat_steps - 1, j), south, ring(lat_steps - 1, j + 1)});
    return mesh;
}

/// Wavefront subset: "v x y z" lines then 1-based "f i j k" lines.
inline void write_obj(std::ostream& os, const TriangleMesh& mesh) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v.x(), v.y(), v.z());
        os << buf;
    }
    for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

} // namespace ghsq
