#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "ghsq/discord.hpp"
#include "ghsq/ghs_model.hpp"
#include "ghsq/obesity.hpp"
#include "support/oracles.hpp"
#include "support/random_states.hpp"

using namespace ghsq;
using namespace ghsq::testing;

constexpr double kPi = std::numbers::pi;

namespace {

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Bogoliubov amplitudes with eps1 = eps2 = 1/sqrt(2) exactly.
GhsParams symmetric_point() {
    return ghs_params(1.0, 1.0, 0.5);
}

} // namespace

// Reference numbers below come from a 40-digit mpmath evaluation of
// (1 + exp(-+8 Lambda pi omega))^(-1/2) and 1/(8 pi Lambda).
TEST(ghs_params, schwarzschild_like_point) {
    const auto p = ghs_params(1.0, 0.0, 0.5);
    EXPECT_EQ(p.lambda, 1.0);
    EXPECT_NEAR(p.eps1, 0.99999825633338247, 1e-15);
    EXPECT_NEAR(p.eps2, 0.0018674394755104374, 1e-16);
    EXPECT_NEAR(p.temperature, 0.039788735772973834, 1e-16);
    EXPECT_EQ(p.charge(), 0.0);
}

TEST(ghs_params, half_dilation_point) {
    const auto p = ghs_params(1.0, 0.5, 0.5);
    EXPECT_EQ(p.lambda, 0.5);
    EXPECT_NEAR(p.eps1, 0.99906758435572064, 1e-15);
    EXPECT_NEAR(p.eps2, 0.043173624930332499, 1e-15);
    EXPECT_NEAR(p.temperature, 0.079577471545947668, 1e-16);
    EXPECT_NEAR(p.charge(), 1.0, 1e-15);
}

TEST(ghs_params, lambda_zero_symmetry_point) {
    for (double w : {0.01, 0.5, 3.0}) {
        const auto p = ghs_params(1.0, 1.0, w);
        EXPECT_EQ(p.lambda, 0.0);
        EXPECT_NEAR(p.eps1, 1.0 / std::sqrt(2.0), 1e-15);
        EXPECT_NEAR(p.eps2, 1.0 / std::sqrt(2.0), 1e-15);
        EXPECT_TRUE(std::isinf(p.temperature));
        EXPECT_GT(p.temperature, 0.0);
    }
}

TEST(ghs_params, flat_limit_eps2_vanishes) {
    const auto p = ghs_params(1.0, 0.0, 5.0);
    EXPECT_LT(p.eps2, 1e-27);
    EXPECT_EQ(p.eps1, 1.0);
}

TEST(ghs_params, domain_errors) {
    EXPECT_THROW(ghs_params(1.0, 1.5, 0.5), DomainError);
    EXPECT_THROW(ghs_params(1.0, -0.1, 0.5), DomainError);
    EXPECT_THROW(ghs_params(0.0, 0.0, 0.5), DomainError);
    EXPECT_THROW(ghs_params(-1.0, 0.0, 0.5), DomainError);
    EXPECT_THROW(ghs_params(1.0, 0.5, 0.0), DomainError);
    EXPECT_THROW(ghs_params(1.0, 0.5, std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(ghs_params, bogoliubov_identity_grid) {
    for (int i = 0; i < 40; ++i) {
        for (int j = 0; j < 25; ++j) {
            const double d = 0.999 * i / 39.0;
            const double w = 0.01 + 2.0 * j / 24.0;
            const auto p = ghs_params(1.0, d, w);
            ASSERT_NEAR(p.eps1 * p.eps1 + p.eps2 * p.eps2, 1.0, 1e-14);
            ASSERT_EQ(p.lambda, 1.0 - d);
            ASSERT_GT(p.eps1, 0.0);
            ASSERT_LE(p.eps1, 1.0);
            ASSERT_GE(p.eps2, 0.0);
            ASSERT_LT(p.eps2, 1.0);
        }
    }
}

TEST(gisin_state, pure_bell_at_quarter_pi) {
    EXPECT_LT(max_abs_diff(gisin_state({1.0, kPi / 4.0}).entries(), bell_xi_plus().entries()), 1e-15);
}

TEST(gisin_state, fully_mixed_branch) {
    for (double a : {0.0, 0.3, kPi / 2.0})
        EXPECT_LT(max_abs_diff(gisin_state({0.0, a}).entries(), classical_mixture().entries()), 1e-15);
}

TEST(gisin_state, intermediate_point) {
    const auto rho = gisin_state({0.5, kPi / 6.0});
    EXPECT_NEAR(rho(0, 0).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 0.125, 1e-15);
    EXPECT_NEAR(rho(2, 2).real(), 0.375, 1e-15);
    EXPECT_NEAR(rho(3, 3).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(1, 2).real(), 0.21650635094610965, 1e-15);
    EXPECT_EQ(rho(1, 2), rho(2, 1));
    EXPECT_TRUE(validate_state(rho).ok());
}

TEST(gisin_state, domain_errors) {
    EXPECT_THROW(gisin_state({1.2, 0.1}), DomainError);
    EXPECT_THROW(gisin_state({0.5, -0.1}), DomainError);
    EXPECT_THROW(gisin_state({0.5, 2.0}), DomainError);
}

TEST(evolve_tripartite, flat_space_bell) {
    GhsParams q = ghs_params(1.0, 0.0, 5.0);
    const auto tri = evolve_tripartite({1.0, kPi / 4.0}, q);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(2) = psi(4) = 1.0 / std::sqrt(2.0); // (|010> + |100>)/sqrt 2
    EXPECT_LT(max_abs_diff(tri.entries(), psi * psi.adjoint()), 1e-15);
    EXPECT_EQ(tri.labels(), (std::vector<std::string>{"A", "B_I", "B_II"}));
}

TEST(evolve_tripartite, classical_branch_at_symmetric_point) {
    const auto tri = evolve_tripartite({0.0, 0.7}, symmetric_point());
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 8);
    expected(0, 0) = 0.25;
    expected(0, 3) = expected(3, 0) = 0.25;
    expected(3, 3) = 0.25;
    expected(6, 6) = 0.5;
    EXPECT_LT(max_abs_diff(tri.entries(), expected), 1e-15);
    EXPECT_NEAR(tri.trace().real(), 1.0, 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tri.entries());
    int rank = 0;
    for (double l : es.eigenvalues())
        if (l > 1e-12) ++rank;
    EXPECT_EQ(rank, 2);
}

TEST(evolve_tripartite, validity_and_purity) {
    for (double g : {0.0, 0.3, 1.0})
        for (double a : {0.0, 0.5, kPi / 4.0, kPi / 2.0})
            for (double d : {0.0, 0.5, 1.0}) {
                const auto tri = evolve_tripartite({g, a}, ghs_params(1.0, d, 0.3));
                ASSERT_TRUE(validate_state(tri).ok());
                ASSERT_NEAR(tri.trace().real(), 1.0, 1e-13);
                if (g == 1.0) {
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tri.entries(), Eigen::EigenvaluesOnly);
                    ASSERT_NEAR(es.eigenvalues().maxCoeff(), 1.0, 1e-10);
                }
            }
}

TEST(reductions, region_one_flat_limit_is_bell) {
    const auto rho = reduce_ab1({1.0, kPi / 4.0}, ghs_params(1.0, 0.0, 5.0));
    EXPECT_LT(max_abs_diff(rho.entries(), bell_xi_plus().entries()), 1e-9);
}

TEST(reductions, region_one_symmetric_point) {
    const auto rho = reduce_ab1({1.0, kPi / 4.0}, symmetric_point());
    EXPECT_NEAR(rho(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho(2, 2).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(3, 3).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(1, 2).real(), 1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
}

TEST(reductions, region_two_vanishes_without_eps2) {
    GhsParams q = ghs_params(1.0, 0.0, 0.5);
    q.eps1 = 1.0;
    q.eps2 = 0.0;
    const auto rho = reduce_ab2({0.7, 0.4}, q);
    EXPECT_EQ(rho(1, 1).real(), 0.0);
    EXPECT_EQ(rho(3, 3).real(), 0.0);
    EXPECT_EQ(obesity_x(rho), 0.0);
    EXPECT_NEAR(discord_x(rho).discord, 0.0, 1e-12);
}

TEST(reductions, spacetime_pair_without_eps2) {
    GhsParams q = ghs_params(1.0, 0.0, 0.5);
    q.eps1 = 1.0;
    q.eps2 = 0.0;
    const double g = 0.3, a = 0.6;
    const auto rho = reduce_b1b2({g, a}, q);
    const double a_plus = (1 - g) / 2 + g * std::cos(a) * std::cos(a);
    EXPECT_NEAR(rho(0, 0).real(), a_plus, 1e-15);
    EXPECT_NEAR(rho(2, 2).real(), 1.0 - a_plus, 1e-15);
    EXPECT_EQ(obesity_x(rho), 0.0);
}

TEST(reductions, spacetime_pair_independent_of_g_at_quarter_pi) {
    for (double d : {0.0, 0.37, 0.99}) {
        const auto q = ghs_params(1.0, d, 0.5);
        const auto ref = reduce_b1b2({1.0, kPi / 4.0}, q);
        for (double g : {0.1, 0.4}) EXPECT_LT(max_abs_diff(reduce_b1b2({g, kPi / 4.0}, q).entries(), ref.entries()), 1e-15);
    }
}

TEST(reductions, cross_path_grid) {
    // 5 x 5 x 5 x 3 grid over (g, alpha, D, omega)
    const std::vector<double> omegas{0.1, 0.5, 1.0};
    for (int ig = 0; ig < 5; ++ig)
        for (int ia = 0; ia < 5; ++ia)
            for (int id = 0; id < 5; ++id)
                for (double w : omegas) {
                    const GisinParams p{ig / 4.0, kPi / 2.0 * ia / 4.0};
                    const auto q = ghs_params(1.0, 0.99 * id / 4.0, w);
                    const auto tri = evolve_tripartite(p, q);
                    for (auto r : {Region::AB_I, Region::AB_II, Region::B_I_B_II}) {
                        const auto closed = reduced_state(r, p, q);
                        const auto qs = region_qubits(r);
                        ASSERT_LT(max_abs_diff(closed.entries(), partial_trace(tri, qs).entries()), 1e-12);
                        ASSERT_LT(max_abs_diff(closed.entries(), oracle_trace_pair(tri.entries(), qs[0], qs[1])), 1e-12);
                        ASSERT_TRUE(validate_state(closed).ok());
                        ASSERT_TRUE(is_x_state(closed));
                        ASSERT_NEAR(closed.trace().real(), 1.0, 1e-14);
                    }
                }
}

TEST(trends, region_one_decreases_region_two_increases) {
    const GisinParams p{1.0, kPi / 4.0};
    double prev_o1 = 2, prev_d1 = 2, prev_o2 = -1, prev_d2 = -1;
    for (int i = 0; i < 100; ++i) {
        const auto q = ghs_params(1.0, 0.99 * i / 99.0, 0.5);
        const auto r1 = reduce_ab1(p, q);
        const auto r2 = reduce_ab2(p, q);
        const double o1 = obesity(r1), d1 = discord_x(r1).discord;
        const double o2 = obesity(r2), d2 = discord_x(r2).discord;
        ASSERT_LE(o1, prev_o1 + 1e-9);
        ASSERT_LE(d1, prev_d1 + 1e-9);
        ASSERT_GE(o2, prev_o2 - 1e-9);
        ASSERT_GE(d2, prev_d2 - 1e-9);
        prev_o1 = o1;
        prev_d1 = d1;
        prev_o2 = o2;
        prev_d2 = d2;
    }
}

TEST(trends, region_two_starts_near_zero) {
    const auto rho = reduce_ab2({1.0, kPi / 4.0}, ghs_params(1.0, 0.0, 0.5));
    EXPECT_LE(obesity(rho), 1e-2);
    EXPECT_LE(discord_x(rho).discord, 1e-2);
}

TEST(region, names_round_trip) {
    for (auto r : {Region::AB_I, Region::AB_II, Region::B_I_B_II}) EXPECT_EQ(parse_region(region_name(r)), r);
    EXPECT_THROW(parse_region("AB_III"), ParseError);
}
