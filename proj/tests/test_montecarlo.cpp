#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "oracle.hpp"
#include "risfox/montecarlo.hpp"
#include "risfox/scenario.hpp"

using namespace risfox;

namespace {

SimPlan plan_for(FadingPreset fp, std::size_t n, double pt, std::uint64_t trials = 200000) {
    const auto pf = preset_fading(fp);
    SimPlan p;
    p.config = SystemConfig::identical(n, pf.ris, pf.direct);
    p.config.pt_dbm = pt;
    p.n_trials = trials;
    p.master_seed = 12345;
    return p;
}

bool same_bits(const McEstimate& a, const McEstimate& b) {
    return std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
           std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 && a.n == b.n &&
           a.degenerate == b.degenerate;
}

// P(g0 h^2 <= x) for one dGG hop, by quadrature of the reference density.
double hop_cdf(const DggParams& d, double g0, double x) {
    return oracle::integrate_positive(
        [&](double u) { return oracle::dgg_pdf(d.alpha1, d.beta1, d.omega1, d.alpha2, d.beta2, d.omega2, u); }, -16,
        std::log(std::sqrt(x / g0)), 1e-11);
}

}  // namespace

TEST(MonteCarlo, Reproducible) {
    const auto p = plan_for(FadingPreset::FP1, 2, 20.0);
    EXPECT_TRUE(same_bits(estimate_outage(p, 1.0), estimate_outage(p, 1.0)));
    EXPECT_TRUE(same_bits(estimate_ber(p, {}), estimate_ber(p, {})));
    auto q = p;
    q.master_seed = 54321;
    EXPECT_NE(estimate_outage(p, 1.0).mean, estimate_outage(q, 1.0).mean);
}

TEST(MonteCarlo, BatchSizeDoesNotMatter) {
    auto p = plan_for(FadingPreset::FP2, 3, 15.0, 100000);
    const auto a = estimate_ber(p, {});
    const auto o = estimate_outage(p, 1.0);
    p.batch_size = 777;
    EXPECT_TRUE(same_bits(a, estimate_ber(p, {})));
    EXPECT_TRUE(same_bits(o, estimate_outage(p, 1.0)));
}

TEST(MonteCarlo, SerialAndParallelBitwiseEqual) {
    auto p = plan_for(FadingPreset::FP1, 2, 15.0);
    p.batch_size = 4096;
    p.exec = Exec::serial;
    const auto a = estimate_ber(p, {});
    const auto l = estimate_laplace(p, 0.3);
    p.exec = Exec::parallel;
    EXPECT_TRUE(same_bits(a, estimate_ber(p, {})));
    EXPECT_TRUE(same_bits(l, estimate_laplace(p, 0.3)));
}

TEST(MonteCarlo, ThresholdEdges) {
    const auto p = plan_for(FadingPreset::FP1, 1, 20.0, 20000);
    const auto zero = estimate_outage(p, 0.0);
    EXPECT_EQ(zero.mean, 0.0);
    EXPECT_TRUE(zero.degenerate);
    EXPECT_DOUBLE_EQ(zero.upper_bound, 3.0 / 20000.0);
    const auto all = estimate_outage(p, std::numeric_limits<double>::infinity());
    EXPECT_EQ(all.mean, 1.0);
    EXPECT_FALSE(all.degenerate);
    EXPECT_THROW(estimate_outage(p, std::nan("")), std::invalid_argument);
    EXPECT_EQ(estimate_laplace(p, 0.0).mean, 1.0);
}

TEST(MonteCarlo, PlanValidation) {
    auto p = plan_for(FadingPreset::FP1, 1, 20.0, 9999);
    EXPECT_THROW(estimate_outage(p, 1.0), std::invalid_argument);
    p.n_trials = 10000;
    p.batch_size = 0;
    EXPECT_THROW(estimate_outage(p, 1.0), std::invalid_argument);
    p.batch_size = 100;
    p.config.elements.clear();
    EXPECT_THROW(estimate_outage(p, 1.0), std::invalid_argument);
}

TEST(MonteCarlo, MeanSnrMatchesMoments) {
    const auto p = plan_for(FadingPreset::FP1, 3, 120.0);
    const auto g = simulate_snr(p, 0, 200000);
    double sum = 0, sq = 0;
    for (double v : g) {
        sum += v;
        sq += v * v;
    }
    const double n = static_cast<double>(g.size());
    const double m = sum / n, se = std::sqrt((sq / n - m * m) / (n - 1));
    const auto b = p.config.link_budget();
    const auto& c = p.config.elements[0];
    const double N = 3.0;
    const double eh2 = N * cascade_moment(c, 2.0) + N * (N - 1) * std::pow(cascade_moment(c, 1.0), 2);
    const double want = b.gamma0_ris * eh2 + b.gamma0_d * dgg_moment(p.config.direct, 2.0);
    EXPECT_NEAR(m, want, 4.0 * se);
}

TEST(MonteCarlo, ScenariosShareDraws) {
    auto p = plan_for(FadingPreset::FP3, 2, 60.0);
    const auto both = simulate_snr(p, 100, 500);
    p.scenario = Scenario::ris_only;
    const auto ris = simulate_snr(p, 100, 500);
    p.scenario = Scenario::dt_only;
    const auto dt = simulate_snr(p, 100, 500);
    for (std::size_t i = 0; i < both.size(); ++i) EXPECT_EQ(both[i], ris[i] + dt[i]);
    // trial-indexed streams: a sub-range equals the tail of a longer run
    const auto longer = simulate_snr(p, 0, 600);
    for (std::size_t i = 0; i < dt.size(); ++i) EXPECT_EQ(dt[i], longer[100 + i]);
}

TEST(MonteCarlo, SweepEqualsPointEstimates) {
    const auto p = plan_for(FadingPreset::FP1, 1, 10.0, 50000);
    const std::vector<double> pts{10.0, 20.0};
    const auto sw = sweep(p, pts, 1.0, {});
    ASSERT_EQ(sw.size(), 2u);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto q = p;
        q.config.pt_dbm = pts[i];
        EXPECT_TRUE(same_bits(sw[i].outage, estimate_outage(q, 1.0)));
        EXPECT_TRUE(same_bits(sw[i].ber, estimate_ber(q, {})));
    }
    EXPECT_TRUE(sweep(p, {}, 1.0, {}).empty());
}

TEST(MonteCarlo, OutageMatchesExactAtTwentyDbm) {
    const auto p = plan_for(FadingPreset::FP1, 1, 20.0, 1000000);
    const auto mc = estimate_outage(p, 1.0);
    const double ex = outage_exact(CombinedSnrStat::make(p.config.ensemble(), p.config.link_budget()), 1.0).value;
    EXPECT_NEAR(mc.mean, ex, 3.0 * mc.std_error);
}

TEST(MonteCarlo, BerApproachesHalfAtTinySnr) {
    const auto p = plan_for(FadingPreset::FP1, 1, -150.0, 20000);
    const auto b = estimate_ber(p, {3.0, 1.0});
    EXPECT_NEAR(b.mean, 1.5, 1e-3);
    EXPECT_LE(b.mean, 1.5);
}

TEST(MonteCarlo, DirectOnlyEqualsDirectFormula) {
    auto p = plan_for(FadingPreset::FP1, 1, 15.0, 400000);
    p.scenario = Scenario::dt_only;
    const auto mc = estimate_outage(p, 1.0);
    const double want = hop_cdf(p.config.direct, p.config.link_budget().gamma0_d, 1.0);
    EXPECT_NEAR(mc.mean, want, 4.0 * mc.std_error);
}

TEST(DfRelay, SymmetricHopsOrderStatistic) {
    auto p = plan_for(FadingPreset::FP1, 1, -20.0, 400000);
    p.config.geometry.d1_m = p.config.geometry.d2_m = 75.0;
    const auto [out, ber] = baseline_df_relay(p, 1.0, {});
    const double g0 = std::pow(friis_gain(p.config.geometry, 75.0), 2) * db_to_linear(-20.0 + 74.0);
    const double F = hop_cdf(p.config.elements[0].hop1, g0, 1.0);
    const double want = 1.0 - (1.0 - F) * (1.0 - F);
    EXPECT_NEAR(out.mean, want, 4.0 * out.std_error);
    EXPECT_GT(ber.mean, 0.0);
    EXPECT_FALSE(df_relay_assumptions().empty());
}

TEST(DfRelay, ZeroThreshold) {
    const auto p = plan_for(FadingPreset::FP1, 1, 20.0, 20000);
    const auto r = baseline_df_relay(p, 0.0, {});
    EXPECT_EQ(r.first.mean, 0.0);
    EXPECT_TRUE(r.first.degenerate);
}
