#include "cifs/pressure.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cifs;

namespace {

// Generator sup norms from dense boundary sampling.
std::vector<double> sampled_sups(const IndexSet &set) {
    std::vector<double> out;
    for (const LatticeIndex idx : set.indices) {
        out.push_back(oracle::sampled_range({lattice_value(set.tau, idx)}, 4000).max);
    }
    return out;
}

} // namespace

TEST(Psi, LengthOneIsDirectSum) {
    const IndexSet set = enumerate_indices(TauParam(0.5, 1.5), 15.0);
    const auto     sup = sampled_sups(set);
    for (const double t : {1.0, 1.3, 2.0}) {
        double ref = 0.0;
        for (const double s : sup) {
            ref += std::pow(s, t);
        }
        EXPECT_NEAR(psi(set, t, 1).value, ref, 1e-6 * ref);
    }
    EXPECT_EQ(psi(set, 1.0, 1).words, static_cast<std::int64_t>(set.size()));
}

TEST(Psi, LengthTwoMatchesChainRuleSampling) {
    const IndexSet set = enumerate_indices(TauParam(0, 1), 4.0);
    double         ref = 0.0;
    for (const LatticeIndex a : set.indices) {
        for (const LatticeIndex b : set.indices) {
            ref += std::pow(oracle::sampled_range({lattice_value(set.tau, a), lattice_value(set.tau, b)}, 4000).max, 1.4);
        }
    }
    EXPECT_NEAR(psi(set, 1.4, 2).value, ref, 1e-6 * ref);
}

TEST(Psi, NonincreasingInT) {
    const IndexSet     set = smallest_indices(TauParam(0, 1), 300);
    const SupNormTable table(set, 2);
    double             prev = INFINITY;
    for (int i = 0; i < 20; ++i) {
        const double value = table.psi(1.0 + 0.05 * i);
        EXPECT_LE(value, prev);
        prev = value;
    }
    EXPECT_THROW(psi(set, -0.5, 1), DomainError);
}

TEST(Psi, CapIsEnforced) {
    const IndexSet set = smallest_indices(TauParam(0, 1), 400);
    EXPECT_THROW(psi(set, 1.5, 3, EnumerationCap{5000, 3, 1e6}), ResourceError);
    EXPECT_THROW(psi(set, 1.5, 1, EnumerationCap{100, 3, 1e6}), ResourceError);
}

TEST(Submultiplicativity, BothSidesHold) {
    for (const auto [u, v] : std::vector<std::pair<double, double>>{{0, 1}, {1, 1}}) {
        const TauParam tau(u, v);
        for (const double t : {1.2, 1.6}) {
            const auto r = submultiplicativity_audit(tau, t, 6.0, 1, 1);
            EXPECT_TRUE(r.upper_holds);
            EXPECT_TRUE(r.lower_holds);
            EXPECT_NEAR(r.product, r.psi_m * r.psi_n, 1e-15 * r.product);
            const auto r12 = submultiplicativity_audit(tau, t, 5.0, 1, 2);
            EXPECT_TRUE(r12.upper_holds);
            EXPECT_TRUE(r12.lower_holds);
        }
    }
}

TEST(Theta, DivergesAtOneConvergesAboveOne) {
    const TauParam      tau(0, 1);
    std::vector<double> grid;
    for (double b = 8; b <= 512; b *= 2) {
        grid.push_back(b);
    }
    const ThetaProbe at_one = theta_probe(tau, 1.0, grid);
    EXPECT_EQ(at_one.verdict, Verdict::Diverges);
    EXPECT_TRUE(std::is_sorted(at_one.partial_sums.begin(), at_one.partial_sums.end()));
    const ThetaProbe above = theta_probe(tau, 1.5, grid);
    EXPECT_EQ(above.verdict, Verdict::Converges);
    for (std::size_t i = 1; i < above.increments.size(); ++i) {
        EXPECT_LT(above.increments[i], above.increments[i - 1]);
    }
    EXPECT_STREQ(to_string(Verdict::Indeterminate), "indeterminate");
    EXPECT_THROW(theta_probe(tau, 1.0, {}), DomainError);
}

TEST(BowenRoot, FourTermSumOracle) {
    // Plain bisection on the four closed-form sups over {m, n <= 2}; frozen t* = 1.163095711315986.
    const TauParam tau(0, 1);
    const IndexSet set = enumerate_indices(tau, std::sqrt(8.0));
    ASSERT_EQ(set.size(), 4u);
    const double ref = oracle::bisect_sum(sampled_sups(set));
    const auto   est = bowen_root(set, 1, 1e-12);
    EXPECT_NEAR(est.h, 1.163095711315986, 1e-9);
    EXPECT_NEAR(est.h, ref, 1e-6);
    EXPECT_LE(est.residual, 1e-9);
    EXPECT_LE(est.bracket_lo, est.h);
    EXPECT_GE(est.bracket_hi, est.h);
}

TEST(BowenRoot, MonotoneInTruncationAndInsideUnitInterval) {
    const TauParam tau(0, 1);
    double         prev = 1.0;
    for (const std::size_t n : {4u, 20u, 100u, 500u, 2000u}) {
        const auto est = bowen_root(smallest_indices(tau, n), 1, 1e-10);
        EXPECT_LE(std::abs(psi(smallest_indices(tau, n), est.h, 1).value - 1.0), 1e-9);
        EXPECT_GE(est.h, prev);
        EXPECT_GT(est.h, 1.0);
        EXPECT_LT(est.h, 2.0);
        prev = est.h;
    }
}

TEST(BowenRoot, BracketFailureIsReported) {
    EXPECT_THROW(bowen_root(enumerate_indices(TauParam(0, 1), 1.5), 1, 1e-9), BracketError);
    EXPECT_THROW(bowen_root(smallest_indices(TauParam(0, 1), 10), 1, 0.0), DomainError);
}
