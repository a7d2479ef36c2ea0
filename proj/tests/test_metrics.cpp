#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "risfox/metrics.hpp"
#include "risfox/scenario.hpp"

using namespace risfox;

namespace {

RisEnsemble ensemble(FadingPreset fp, std::size_t n) {
    const auto pf = preset_fading(fp);
    return RisEnsemble::identical(n, pf.ris, pf.direct);
}

}  // namespace

TEST(Diversity, PresetsByHand) {
    for (std::size_t n : {1u, 2u, 5u}) {
        const double N = static_cast<double>(n);
        // FP1: element min{2,4,2,4}/2 = 1, direct min{2.25,1.5}/2 = 0.75
        auto r = diversity(ensemble(FadingPreset::FP1, n));
        EXPECT_EQ(r.g_out, N * 1.0 + 0.75);
        EXPECT_EQ(r.g_ber, N * 0.5 + 0.25);
        EXPECT_EQ(r.direct_min, 0.75);
        EXPECT_EQ(r.per_element_minima, std::vector<double>(n, 1.0));
        // FP2: element min{1,2,1,2}/2 = 0.5, direct 3/2
        r = diversity(ensemble(FadingPreset::FP2, n));
        EXPECT_EQ(r.g_out, N * 0.5 + 1.5);
        EXPECT_EQ(r.g_ber, N * 0.0 + 1.0);
        EXPECT_EQ(r.direct_min, 1.5);
        // FP3: element min{1.5,2.5}/2 = 0.75, direct 4.2/2
        r = diversity(ensemble(FadingPreset::FP3, n));
        EXPECT_EQ(r.g_out, N * 0.75 + 2.1);
        EXPECT_EQ(r.g_ber, N * 0.25 + (4.2 - 1.0) / 2);
        EXPECT_EQ(r.direct_min, 2.1);
    }
    EXPECT_EQ(diversity(ensemble(FadingPreset::FP1, 1)).g_out, 1.75);
    EXPECT_EQ(diversity(ensemble(FadingPreset::FP1, 2)).g_out, 2.75);
}

TEST(Diversity, MixedElements) {
    auto e = ensemble(FadingPreset::FP1, 2);
    e.elements[1] = preset_fading(FadingPreset::FP3).ris;
    const auto r = diversity(e);
    ASSERT_EQ(r.per_element_minima.size(), 2u);
    EXPECT_EQ(r.per_element_minima[0], 1.0);
    EXPECT_EQ(r.per_element_minima[1], 0.75);
    EXPECT_EQ(r.g_out, 1.0 + 0.75 + 0.75);
}

TEST(Asymptotic, PowerLawWithoutTies) {
    // distinct leading poles: the residue term is an exact power of the SNR
    const CascadeParams c{{2, 1, 2, 1.3}, {2, 1.6, 2, 2}};
    const DggParams d{1.5, 1.5, 1, 1.5};
    const RisEnsemble e{{c}, d};
    const double g = diversity(e).g_out;
    const auto a1 = outage_asymptotic(CombinedSnrStat::make(e, budget_from_snr(1e3, 2e3)), 1.0);
    const auto a2 = outage_asymptotic(CombinedSnrStat::make(e, budget_from_snr(1e4, 2e4)), 1.0);
    EXPECT_FALSE(a1.perturbed);
    EXPECT_NEAR(std::log10(a2.value / a1.value), -g, 1e-12);
}

TEST(Asymptotic, ApproachesExactAtHighSnr) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const LinkGeometry geo;
    for (double pt : {140.0, 150.0}) {
        const auto stat = CombinedSnrStat::make(e, budget(geo, pt));
        const auto a = outage_asymptotic(stat, 1.0);
        EXPECT_TRUE(a.perturbed);
        EXPECT_FALSE(a.note.empty());
        EXPECT_NEAR(outage_exact(stat, 1.0).value / a.value, 1.0, 0.02) << pt;
    }
}

TEST(Asymptotic, SlopeNearDiversityOrder) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const LinkGeometry geo;
    const double lo = outage_exact(CombinedSnrStat::make(e, budget(geo, 150.0)), 1.0).value;
    const double hi = outage_exact(CombinedSnrStat::make(e, budget(geo, 160.0)), 1.0).value;
    const double slope = std::log10(hi / lo);
    EXPECT_NEAR(slope, -1.75, 0.05 * 1.75);
    // the tied poles add a logarithmic factor that flattens the slope
    EXPECT_GT(slope, -1.75);
}

TEST(Asymptotic, RejectsBadThreshold) {
    const auto stat = CombinedSnrStat::make(ensemble(FadingPreset::FP1, 1), budget_from_snr(1.0, 1.0));
    EXPECT_THROW(outage_asymptotic(stat, 0.0), std::domain_error);
}

TEST(Outage, BiasChoiceIsConsistent) {
    const auto stat = CombinedSnrStat::make(ensemble(FadingPreset::FP1, 1), budget(LinkGeometry{}, 20.0));
    const double a = outage_exact(stat, 1.0).value;
    const double b = outage_exact(stat, 1.0, {}, ContourBias{0.5}).value;
    EXPECT_NEAR(a, b, 1e-9);
    EXPECT_NEAR(outage_exact(stat, 1.0).value, gamma_cdf(stat, 1.0), 1e-9);
}

TEST(Outage, ThresholdLimits) {
    const auto stat = CombinedSnrStat::make(ensemble(FadingPreset::FP1, 1), budget_from_snr(1.0, 1.0));
    EXPECT_LT(outage_exact(stat, 1e-6).value, 1e-5);
    EXPECT_GT(outage_exact(stat, 1e-6).value, 0.0);
}

TEST(Ber, MatchesCdfIntegral) {
    // P_b = (a/2) sqrt(b/pi) int exp(-b g) g^{-1/2} F(g) dg
    const auto stat = CombinedSnrStat::make(ensemble(FadingPreset::FP1, 1), budget_from_snr(1.0, 2.0));
    for (const ModulationParams mod : {ModulationParams{1, 1}, ModulationParams{0.5, 2}}) {
        const double want = 0.5 * mod.a * std::sqrt(mod.b / M_PI) *
                            oracle::integrate_positive(
                                [&](double g) { return std::exp(-mod.b * g) / std::sqrt(g) * gamma_cdf(stat, g); },
                                -20, 3.5, 1e-8);
        EXPECT_NEAR(ber_exact(stat, mod).value, want, 1e-7 * want) << mod.a << " " << mod.b;
    }
}

TEST(Ber, MatchesSamples) {
    const auto e = ensemble(FadingPreset::FP2, 1);
    const double gr = 1.5, gd = 0.8;
    const auto stat = CombinedSnrStat::make(e, budget_from_snr(gr, gd));
    Rng rng(3);
    const int n = 300000;
    double sum = 0, sq = 0;
    for (int t = 0; t < n; ++t) {
        const double h = dgg_sample(e.elements[0].hop1, rng) * dgg_sample(e.elements[0].hop2, rng);
        const double d = dgg_sample(e.direct, rng);
        const double v = oracle::q_func(std::sqrt(2.0 * (gr * h * h + gd * d * d)));
        sum += v;
        sq += v * v;
    }
    const double m = sum / n, se = std::sqrt((sq / n - m * m) / (n - 1));
    EXPECT_NEAR(ber_exact(stat, {}).value, m, 4.0 * se);
}

TEST(Ber, RangeAndDominance) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    for (double pt : {0.0, 15.0, 30.0}) {
        const auto b = budget(LinkGeometry{}, pt);
        const double both = ber_exact(CombinedSnrStat::make(e, b), {}).value;
        EXPECT_GT(both, 0.0);
        EXPECT_LE(both, 0.5);
        const double dt = evaluate_snr_stat(e, b, Branches::dt_only, StatKind::ber, 1.0).value;
        const double ris = evaluate_snr_stat(e, b, Branches::ris_only, StatKind::ber, 1.0).value;
        EXPECT_LE(both, std::min(dt, ris) + 1e-9) << pt;
    }
    const double low = ber_exact(CombinedSnrStat::make(e, budget_from_snr(1e-4, 1e-4)), {2.0, 1.0}).value;
    EXPECT_NEAR(low, 1.0, 0.05);
    EXPECT_LT(low, 1.0);
}

TEST(Ber, BadModulation) {
    const auto stat = CombinedSnrStat::make(ensemble(FadingPreset::FP1, 1), budget_from_snr(1.0, 1.0));
    EXPECT_THROW(ber_exact(stat, {0.0, 1.0}), std::invalid_argument);
}

TEST(Baseline, DirectOnlyMatchesDensity) {
    const auto d = preset_fading(FadingPreset::FP1).direct;
    const auto b = budget(LinkGeometry{}, 15.0);
    const auto p = baseline_dt(d, b, 1.0, {});
    const double h = std::sqrt(1.0 / b.gamma0_d);
    const double want = oracle::integrate_positive(
        [&](double u) { return oracle::dgg_pdf(d.alpha1, d.beta1, d.omega1, d.alpha2, d.beta2, d.omega2, u); }, -16,
        std::log(h), 1e-11);
    EXPECT_NEAR(p.outage.value, want, 1e-8);
    EXPECT_GT(p.ber.value, 0.0);
    EXPECT_LT(p.ber.value, 0.5);
    // adding the RIS branch can only help
    const auto stat = CombinedSnrStat::make(RisEnsemble::identical(1, preset_fading(FadingPreset::FP1).ris, d), b);
    EXPECT_LE(outage_exact(stat, 1.0).value, p.outage.value);
}
