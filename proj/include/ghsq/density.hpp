#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghsq/errors.hpp"

namespace ghsq {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double bloch_norm = 1e-10;
} // namespace tol

inline std::vector<std::string> default_labels(int num_qubits) {
    static const std::array<const char*, 3> names{"A", "B", "C"};
    std::vector<std::string> out;
    for (int q = 0; q < num_qubits; ++q)
        out.emplace_back(q < 3 ? names[static_cast<std::size_t>(q)] : "q" + std::to_string(q));
    return out;
}

/// Dense density matrix over 2 or 3 qubits.
///
/// Basis ordering is |q0 q1 ...> with q0 the most significant bit, so for two
/// qubits the rows run |00>, |01>, |10>, |11> and the left label is the first
/// subsystem. Construction does not check the physical invariants; use
/// validate_state() for that.
class DensityMatrix {
public:
    DensityMatrix() = default;

    explicit DensityMatrix(Eigen::MatrixXcd entries, std::vector<std::string> labels = {})
        : entries_(std::move(entries)), labels_(std::move(labels)) {
        if (labels_.empty() && entries_.rows() > 0) {
            int n = 0;
            while ((Eigen::Index{1} << n) < entries_.rows()) ++n;
            labels_ = default_labels(n);
        }
    }

    int dim() const { return static_cast<int>(entries_.rows()); }
    int num_qubits() const { return static_cast<int>(labels_.size()); }

    const Eigen::MatrixXcd& entries() const { return entries_; }
    Eigen::MatrixXcd& entries() { return entries_; }
    const std::vector<std::string>& labels() const { return labels_; }

    cplx operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    cplx trace() const { return entries_.trace(); }

private:
    Eigen::MatrixXcd entries_;
    std::vector<std::string> labels_;
};

inline void require_supported_shape(const DensityMatrix& rho) {
    const auto& m = rho.entries();
    if (m.rows() != m.cols())
        throw DimensionError("density matrix is not square (" + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ")");
    if (m.rows() != 4 && m.rows() != 8)
        throw DimensionError("unsupported density matrix dimension " + std::to_string(m.rows()) +
                             " (expected 4 or 8)");
    if ((Eigen::Index{1} << rho.num_qubits()) != m.rows())
        throw DimensionError("dimension " + std::to_string(m.rows()) + " does not match " +
                             std::to_string(rho.num_qubits()) + " qubit labels");
}

inline void require_two_qubit(const DensityMatrix& rho) {
    require_supported_shape(rho);
    if (rho.dim() != 4)
        throw DimensionError("operation needs a two-qubit (4x4) state, got dimension " +
                             std::to_string(rho.dim()));
}

struct InvariantCheck {
    std::string name;
    bool passed = false;
    double violation = 0.0; // measured magnitude; 0 when satisfied exactly
    double tolerance = 0.0;
};

struct ValidationReport {
    std::vector<InvariantCheck> checks;
    double min_eigenvalue = 0.0;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    }

    /// First failed invariant, formatted for diagnostics; empty if ok().
    std::string first_failure() const {
        for (const auto& c : checks) {
            if (!c.passed) {
                std::ostringstream os;
                os << c.name << " violated (magnitude " << c.violation << ", tolerance " << c.tolerance
                   << ")";
                return os.str();
            }
        }
        return {};
    }
};

inline double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// Checks Hermiticity, unit trace and positive semidefiniteness.
inline ValidationReport validate_state(const DensityMatrix& rho) {
    require_supported_shape(rho);
    const auto& m = rho.entries();

    ValidationReport rep;
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    rep.checks.push_back({"hermitian", herm <= tol::hermitian, herm, tol::hermitian});

    const double tr = std::abs(m.trace() - cplx{1.0, 0.0});
    rep.checks.push_back({"unit_trace", tr <= tol::trace, tr, tol::trace});

    rep.min_eigenvalue = min_hermitian_eigenvalue(m);
    const double neg = std::max(0.0, -rep.min_eigenvalue);
    rep.checks.push_back({"positive_semidefinite", rep.min_eigenvalue >= -tol::psd, neg, tol::psd});
    return rep;
}

inline void require_valid(const DensityMatrix& rho) {
    const auto rep = validate_state(rho);
    if (!rep.ok()) throw ValidationError("invalid density matrix: " + rep.first_failure());
}

// ---------------------------------------------------------------------------
// Pauli / Fano representation

/// Identity followed by sigma_x, sigma_y, sigma_z.
inline const std::array<Eigen::Matrix2cd, 4>& pauli_basis() {
    static const std::array<Eigen::Matrix2cd, 4> basis = [] {
        std::array<Eigen::Matrix2cd, 4> s;
        const cplx i{0.0, 1.0};
        s[0] << 1, 0, 0, 1;
        s[1] << 0, 1, 1, 0;
        s[2] << 0, -i, i, 0;
        s[3] << 1, 0, 0, -1;
        return s;
    }();
    return basis;
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

/// Local Bloch vectors and correlation block of a two-qubit state.
///
/// `theta(i, j) = tr(rho s_i (x) s_j)` with Alice's index first. `r_full`
/// carries v in row 0 and w in column 0; its lower block is theta transposed,
/// i.e. r_full(j, i) = tr(rho s_i (x) s_j) for all i, j in 0..3. That keeps
/// |det r_full| invariant under local unitaries.
struct FanoForm {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    Eigen::Vector3d w = Eigen::Vector3d::Zero();
    Eigen::Matrix3d theta = Eigen::Matrix3d::Zero();
    Eigen::Matrix4d r_full = Eigen::Matrix4d::Identity();
};

inline Eigen::Matrix4d assemble_r_full(const Eigen::Vector3d& v, const Eigen::Vector3d& w,
                                       const Eigen::Matrix3d& theta) {
    Eigen::Matrix4d r;
    r(0, 0) = 1.0;
    r.block<1, 3>(0, 1) = v.transpose();
    r.block<3, 1>(1, 0) = w;
    r.block<3, 3>(1, 1) = theta.transpose();
    return r;
}

inline FanoForm make_fano(const Eigen::Vector3d& v, const Eigen::Vector3d& w, const Eigen::Matrix3d& theta) {
    return FanoForm{v, w, theta, assemble_r_full(v, w, theta)};
}

inline FanoForm bloch_decompose(const DensityMatrix& rho) {
    require_two_qubit(rho);
    const auto& s = pauli_basis();
    const Eigen::Matrix4cd m = rho.entries();

    Eigen::Matrix4d corr; // corr(i, j) = tr(rho s_i (x) s_j)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) corr(i, j) = (m * kron(s[i], s[j])).trace().real();

    FanoForm f;
    f.v = corr.block<3, 1>(1, 0);
    f.w = corr.block<1, 3>(0, 1).transpose();
    f.theta = corr.block<3, 3>(1, 1);
    f.r_full = corr.transpose();
    f.r_full(0, 0) = 1.0;
    return f;
}

/// (1/4) sum_ij tr(rho s_i (x) s_j) s_i (x) s_j. Positivity is up to the caller.
inline DensityMatrix fano_compose(const FanoForm& f, std::vector<std::string> labels = {"A", "B"}) {
    const auto& s = pauli_basis();
    Eigen::Matrix4d corr;
    corr(0, 0) = 1.0;
    corr.block<3, 1>(1, 0) = f.v;
    corr.block<1, 3>(0, 1) = f.w.transpose();
    corr.block<3, 3>(1, 1) = f.theta;

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (corr(i, j) != 0.0) m += corr(i, j) * kron(s[i], s[j]);
    return DensityMatrix(Eigen::MatrixXcd(0.25 * m), std::move(labels));
}

// ---------------------------------------------------------------------------
// Partial trace and entropy

/// Reduced state over the qubits in `keep`, in the order given.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    require_supported_shape(rho);
    const int n = rho.num_qubits();
    if (keep.empty() || static_cast<int>(keep.size()) >= n)
        throw ArgumentError("keep must be a non-empty strict subset of the " + std::to_string(n) + " qubits");

    std::vector<bool> kept(static_cast<std::size_t>(n), false);
    for (int q : keep) {
        if (q < 0 || q >= n) throw ArgumentError("qubit index " + std::to_string(q) + " out of range");
        if (kept[static_cast<std::size_t>(q)]) throw ArgumentError("duplicate qubit index " + std::to_string(q));
        kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);

    const int k = static_cast<int>(keep.size());
    const int dk = 1 << k;
    const int dt = 1 << (n - k);

    // Scatter the bits of a kept-index and a traced-index into a full index.
    auto full_index = [&](int kept_bits, int traced_bits) {
        int idx = 0;
        for (int p = 0; p < k; ++p) {
            const int bit = (kept_bits >> (k - 1 - p)) & 1;
            idx |= bit << (n - 1 - keep[static_cast<std::size_t>(p)]);
        }
        for (int p = 0; p < n - k; ++p) {
            const int bit = (traced_bits >> (n - k - 1 - p)) & 1;
            idx |= bit << (n - 1 - traced[static_cast<std::size_t>(p)]);
        }
        return idx;
    };

    const auto& m = rho.entries();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (int r = 0; r < dk; ++r)
        for (int c = 0; c < dk; ++c)
            for (int t = 0; t < dt; ++t) out(r, c) += m(full_index(r, t), full_index(c, t));

    std::vector<std::string> labels;
    for (int q : keep) labels.push_back(rho.labels()[static_cast<std::size_t>(q)]);
    return DensityMatrix(std::move(out), std::move(labels));
}

/// -sum p log2 p over a probability list, with 0 log 0 = 0.
template <class Range>
double shannon_bits(const Range& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

/// Eigenvalues of a Hermitian matrix, clamped into [0, 1].
/// Throws PositivityError if one is below -tol::psd.
inline Eigen::VectorXd clamped_spectrum(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    for (auto& l : ev) {
        if (l < -tol::psd)
            throw PositivityError("negative eigenvalue " + std::to_string(l) + " in entropy evaluation");
        l = std::clamp(l, 0.0, 1.0);
    }
    return ev;
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    if (rho.entries().rows() != rho.entries().cols() || rho.dim() == 0)
        throw DimensionError("entropy needs a square, non-empty matrix");
    const Eigen::VectorXd ev = clamped_spectrum(rho.entries());
    return shannon_bits(ev);
}

} // namespace ghsq
