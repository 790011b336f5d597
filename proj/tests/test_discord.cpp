#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ghsq/discord.hpp"
#include "ghsq/ghs_model.hpp"
#include "support/oracles.hpp"
#include "support/random_states.hpp"

using namespace ghsq;
using namespace ghsq::testing;

constexpr double kPi = std::numbers::pi;

TEST(discord_x, bell_state) {
    const auto d = discord_x(bell_xi_plus());
    EXPECT_NEAR(d.s_b, 1.0, 1e-12);
    EXPECT_NEAR(d.s_ab, 0.0, 1e-12);
    EXPECT_NEAR(d.beta, 1.0, 1e-15);
    EXPECT_NEAR(d.tau, 1.0, 1e-15);
    EXPECT_NEAR(d.varsigma, 1.0, 1e-15);
    EXPECT_NEAR(d.h1, 0.0, 1e-15);
    EXPECT_NEAR(d.h2, 0.0, 1e-7);
    EXPECT_NEAR(d.discord, 1.0, 1e-7);
    EXPECT_EQ(d.discord, std::min(d.o1, d.o2));
}

TEST(discord_x, classical_mixture) {
    const auto d = discord_x(classical_mixture());
    EXPECT_NEAR(d.o1, 0.0, 1e-12);
    EXPECT_NEAR(d.o2, 1.0, 1e-12);
    EXPECT_NEAR(d.discord, 0.0, 1e-12);
    EXPECT_NEAR(d.h2, -1.0, 1e-15);
}

TEST(discord_x, maximally_mixed) {
    EXPECT_NEAR(discord_x(maximally_mixed()).discord, 0.0, 1e-12);
}

TEST(discord_x, lambda_zero_region_one) {
    // Reference values from an mpmath evaluation of the X-state formulas.
    const auto rho = reduce_ab1({1.0, kPi / 4.0}, ghs_params(1.0, 1.0, 0.5));
    const auto d = discord_x(rho);
    EXPECT_NEAR(d.o1, 0.68872187554086714, 1e-12);
    EXPECT_NEAR(d.o2, 0.6008760366928561, 1e-12);
    EXPECT_NEAR(d.discord, 0.6008760366928561, 1e-12);
    EXPECT_NEAR(d.iota + d.eps_pop, 1.0, 1e-12);
}

TEST(discord_x, degenerate_population_is_finite) {
    // AB_II with eps2 = 0 exactly leaves rho22 = rho44 = 0.
    GhsParams q = ghs_params(1.0, 0.0, 0.5);
    q.eps1 = 1.0;
    q.eps2 = 0.0;
    const auto d = discord_x(reduce_ab2({1.0, kPi / 4.0}, q));
    EXPECT_EQ(d.eps_pop, 0.0);
    EXPECT_EQ(d.tau, 0.0);
    EXPECT_TRUE(std::isfinite(d.discord));
    EXPECT_NEAR(d.discord, 0.0, 1e-12);
}

TEST(discord_x, breakdown_invariants_on_random_x_states) {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 300; ++n) {
        const auto d = discord_x(x_part(random_state(rng)));
        ASSERT_EQ(d.discord, std::min(d.o1, d.o2));
        ASSERT_NEAR(d.iota + d.eps_pop, 1.0, 1e-12);
        for (double x : {d.beta, d.tau, d.varsigma}) {
            ASSERT_GE(x, 0.0);
            ASSERT_LE(x, 1.0 + 1e-10);
        }
    }
}

TEST(discord_x, marginal_convention_option) {
    // Asymmetric marginals: S(rho_A) != S(rho_B) shifts both O_k equally.
    const auto rho = reduce_ab1({0.4, kPi / 8.0}, ghs_params(1.0, 0.5, 0.1));
    const auto b = discord_x(rho);
    const auto a = discord_x(rho, EntropyMarginal::unmeasured_a);
    const double shift = a.s_b - b.s_b;
    EXPECT_GT(std::abs(shift), 1e-3);
    EXPECT_NEAR(a.o1 - b.o1, shift, 1e-14);
    EXPECT_NEAR(a.o2 - b.o2, shift, 1e-14);
}

TEST(discord_x, rejects_non_x_states) {
    std::mt19937_64 rng(4);
    EXPECT_THROW(discord_x(random_state(rng)), NotXStateError);
}

TEST(discord_numeric, bell_state) {
    EXPECT_NEAR(discord_numeric(bell_xi_plus(), 64), 1.0, 1e-6);
}

TEST(discord_numeric, classical_mixture) {
    EXPECT_NEAR(discord_numeric(classical_mixture(), 64), 0.0, 1e-6);
}

TEST(discord_numeric, agrees_with_analytic_on_region_one) {
    const auto rho = reduce_ab1({1.0, kPi / 4.0}, ghs_params(1.0, 0.5, 0.5));
    EXPECT_NEAR(discord_numeric(rho, 64), discord_x(rho).discord, 2e-3);
}

TEST(discord_numeric, grid_too_coarse) {
    EXPECT_THROW(discord_numeric(bell_xi_plus(), 16), ArgumentError);
}

TEST(discord_numeric, deterministic) {
    std::mt19937_64 rng(12);
    const auto rho = random_state(rng);
    EXPECT_EQ(discord_numeric(rho, 40), discord_numeric(rho, 40));
}

TEST(discord_numeric, matches_fano_brute_force_on_random_states) {
    // Independent route: conditional Bloch vectors from (v, w, T), dense grid.
    std::mt19937_64 rng(2718);
    for (int n = 0; n < 8; ++n) {
        const auto rho = random_state(rng);
        const auto f = bloch_decompose(rho);
        const double s_b = von_neumann_entropy(partial_trace(rho, {1}));
        const double s_ab = von_neumann_entropy(rho);
        const double ref = oracle_fano_discord(f.v, f.w, f.theta, s_b, s_ab, 400);
        // Both are grid minima; their gap is bounded by the coarser angular resolution.
        ASSERT_NEAR(discord_numeric(rho, 64), ref, 1e-4) << "sample " << n;
    }
}

TEST(discord_numeric, analytic_agreement_on_model_states) {
    for (auto region : {Region::AB_I, Region::AB_II, Region::B_I_B_II}) {
        for (double dil : {0.0, 0.4, 0.9}) {
            const auto rho = reduced_state(region, {0.4, kPi / 8.0}, ghs_params(1.0, dil, 0.5));
            ASSERT_NEAR(discord_numeric(rho, 64), discord_x(rho).discord, 2e-3)
                << region_name(region) << " D=" << dil;
        }
    }
}
