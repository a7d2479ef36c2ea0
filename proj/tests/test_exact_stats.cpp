#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "risfox/exact_stats.hpp"
#include "risfox/scenario.hpp"

using namespace risfox;

namespace {

RisEnsemble ensemble(FadingPreset ris, std::size_t n, FadingPreset dt = FadingPreset::FP1) {
    return RisEnsemble::identical(n, preset_fading(ris).ris, preset_fading(dt).direct);
}

// Empirical P(gamma <= x) from independent draws, with its binomial standard error.
struct Empirical {
    std::vector<double> g;
    double cdf(double x) const {
        return static_cast<double>(std::count_if(g.begin(), g.end(), [&](double v) { return v <= x; })) / g.size();
    }
    double se(double p) const { return std::sqrt(p * (1 - p) / g.size()); }
};

Empirical sample_snr(const RisEnsemble& e, double g_ris, double g_d, int n, std::uint64_t seed) {
    Rng rng(seed);
    Empirical out;
    out.g.reserve(n);
    for (int t = 0; t < n; ++t) {
        double h = 0.0;
        for (const auto& c : e.elements) h += dgg_sample(c.hop1, rng) * dgg_sample(c.hop2, rng);
        const double d = g_d > 0 ? dgg_sample(e.direct, rng) : 0.0;
        out.g.push_back(g_ris * h * h + g_d * d * d);
    }
    return out;
}

}  // namespace

TEST(Hris, SingleElementPdfIsProductPdf) {
    for (auto fp : {FadingPreset::FP1, FadingPreset::FP2, FadingPreset::FP3}) {
        const auto e = ensemble(fp, 1);
        for (double z : {0.05, 0.4, 1.3, 4.0}) {
            const double want = product_pdf(e.elements[0], z);
            EXPECT_NEAR(hris_pdf(e, z), want, 1e-10 * want) << to_string(fp) << " z=" << z;
        }
    }
}

TEST(Hris, CdfLimitsAndMonotone) {
    const auto e = ensemble(FadingPreset::FP1, 2);
    double prev = 0.0;
    for (double z = 0.1; z < 8.0; z *= 1.5) {
        const double v = hris_cdf(e, z);
        EXPECT_GE(v, prev);
        EXPECT_LE(v, 1.0 + 1e-8);
        prev = v;
    }
    EXPECT_NEAR(hris_cdf(e, 30.0), 1.0, 1e-4);
    EXPECT_LT(hris_cdf(e, 1e-3), 1e-6);
}

TEST(Hris, CdfIsIntegralOfPdf) {
    const auto e = ensemble(FadingPreset::FP2, 2);
    for (double z : {0.8, 2.5}) {
        const double area = oracle::integrate_positive([&](double u) { return hris_pdf(e, u); }, -14, std::log(z), 1e-9);
        EXPECT_NEAR(hris_cdf(e, z), area, 1e-7) << z;
    }
}

TEST(Hris, SingleElementMedianFromSamples) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    auto s = sample_snr(e, 1.0, 0.0, 200000, 5);
    for (auto& v : s.g) v = std::sqrt(v);
    std::nth_element(s.g.begin(), s.g.begin() + s.g.size() / 2, s.g.end());
    const double median = s.g[s.g.size() / 2];
    EXPECT_NEAR(hris_cdf(e, median), 0.5, 4.0 * s.se(0.5));
}

TEST(Hris, BadInputs) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    EXPECT_THROW(hris_spec(e, StatKind::ber, 1.0), std::invalid_argument);
    EXPECT_THROW(hris_pdf(e, 0.0), std::domain_error);
    EXPECT_THROW(hris_spec(e, StatKind::cdf, 1.0, ContourBias{1.0}), std::invalid_argument);
    EXPECT_THROW(RisEnsemble::identical(0, e.elements[0], e.direct), std::invalid_argument);
}

TEST(SnrStats, RisOnlyCdfIsChangeOfVariable) {
    for (std::size_t n : {1u, 2u}) {
        const auto e = ensemble(FadingPreset::FP1, n);
        const double g_ris = 3.0;
        const auto b = budget_from_snr(g_ris, 1.0);
        for (double g : {0.5, 2.0, 9.0, 30.0}) {
            const double via_h = hris_cdf(e, std::sqrt(g / g_ris));
            const double direct = evaluate_snr_stat(e, b, Branches::ris_only, StatKind::cdf, g).value;
            EXPECT_NEAR(direct, via_h, 1e-5) << "N=" << n << " g=" << g;
        }
    }
}

TEST(SnrStats, DirectOnlyCdfMatchesDensityIntegral) {
    const auto e = ensemble(FadingPreset::FP1, 1, FadingPreset::FP2);
    const double g0 = 4.0;
    const auto b = budget_from_snr(1.0, g0);
    for (double x : {0.3, 2.0, 8.0}) {
        const double h = std::sqrt(x / g0);
        const double want = oracle::integrate_positive(
            [&](double u) {
                return oracle::dgg_pdf(e.direct.alpha1, e.direct.beta1, e.direct.omega1, e.direct.alpha2,
                                       e.direct.beta2, e.direct.omega2, u);
            },
            -16, std::log(h), 1e-10);
        EXPECT_NEAR(evaluate_snr_stat(e, b, Branches::dt_only, StatKind::cdf, x).value, want, 1e-8) << x;
    }
}

TEST(SnrStats, CombinedPdfNormalized) {
    for (auto fp : {FadingPreset::FP1, FadingPreset::FP3}) {
        const auto stat = CombinedSnrStat::make(ensemble(fp, 1, fp), budget_from_snr(1.0, 1.0));
        // (a + b)^4 <= 8 (a^4 + b^4) bounds E[gamma^4] for the Markov tail cut
        const double m4 = 8.0 * (cascade_moment(stat.ensemble.elements[0], 8.0) + dgg_moment(stat.ensemble.direct, 8.0));
        const double hi = oracle::log_tail_cut(m4, 4.0, 1e-7);
        const double m0 = oracle::integrate_positive([&](double g) { return gamma_pdf(stat, g); }, -20, hi, 1e-7);
        EXPECT_NEAR(m0, 1.0, 1e-5) << to_string(fp);
    }
}

TEST(SnrStats, CombinedCdfMatchesSamples) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const auto stat = CombinedSnrStat::make(e, budget_from_snr(2.0, 1.0));
    const auto s = sample_snr(e, 2.0, 1.0, 400000, 17);
    for (double x : {0.2, 1.0, 3.0, 8.0}) {
        const double p = s.cdf(x);
        EXPECT_NEAR(gamma_cdf(stat, x), p, 4.0 * s.se(p) + 1e-6) << x;
    }
}

TEST(SnrStats, CombinedCdfBoundsAndMonotone) {
    const auto stat =
        CombinedSnrStat::make(ensemble(FadingPreset::FP2, 1, FadingPreset::FP2), budget_from_snr(1.0, 1.0));
    double prev = 0.0;
    for (double x = 1e-2; x < 40.0; x *= 2.0) {
        const double v = gamma_cdf(stat, x);
        EXPECT_GE(v, prev - 1e-9);
        EXPECT_LE(v, 1.0 + 1e-6);
        prev = v;
    }
    // outage order 0.5 + 1.5 = 2 near the origin
    EXPECT_LT(gamma_cdf(stat, 1e-4), 1e-6);
}

TEST(SnrStats, CombinedBelowEitherBranch) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const auto b = budget_from_snr(0.5, 2.0);
    for (double x : {0.3, 1.0, 4.0}) {
        const double both = evaluate_snr_stat(e, b, Branches::combined, StatKind::cdf, x).value;
        const double ris = evaluate_snr_stat(e, b, Branches::ris_only, StatKind::cdf, x).value;
        const double dt = evaluate_snr_stat(e, b, Branches::dt_only, StatKind::cdf, x).value;
        EXPECT_LE(both, std::min(ris, dt) + 1e-8) << x;
        // independence gives the sharper bound P(both) <= P(ris) P(dt)
        EXPECT_LE(both, ris * dt + 1e-8) << x;
    }
}

TEST(SnrStats, ScaleInvariance) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const double a = evaluate_snr_stat(e, budget_from_snr(1.0, 2.0), Branches::combined, StatKind::cdf, 1.5).value;
    const double b = evaluate_snr_stat(e, budget_from_snr(10.0, 20.0), Branches::combined, StatKind::cdf, 15.0).value;
    EXPECT_NEAR(a, b, 1e-12);
}

TEST(SnrStats, ContourShiftDoesNotChangeValue) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const auto b = budget_from_snr(1.0, 1.0);
    const double mid = evaluate_snr_stat(e, b, Branches::combined, StatKind::cdf, 1.0).value;
    for (double bias : {0.25, 0.75}) {
        EXPECT_NEAR(evaluate_snr_stat(e, b, Branches::combined, StatKind::cdf, 1.0, 1.0, {}, {bias}).value, mid,
                    1e-9);
    }
}

TEST(SnrStats, BadInputs) {
    const auto e = ensemble(FadingPreset::FP1, 1);
    const auto b = budget_from_snr(1.0, 1.0);
    EXPECT_THROW(snr_spec(e, b, Branches::combined, StatKind::cdf, 0.0), std::domain_error);
    EXPECT_THROW(snr_spec(e, b, Branches::combined, StatKind::ber, 1.0, -1.0), std::domain_error);
    LinkBudget zero = b;
    zero.gamma0_d = 0.0;
    EXPECT_THROW(snr_spec(e, zero, Branches::combined, StatKind::cdf, 1.0), std::domain_error);
    EXPECT_NO_THROW(snr_spec(e, zero, Branches::ris_only, StatKind::cdf, 1.0));
}

TEST(Mgf, OriginLimit) {
    const auto e = ensemble(FadingPreset::FP1, 2);
    const auto b = budget_from_snr(1.0, 1.0);
    EXPECT_NEAR(mgf_gamma_ris(e, b, 1e-7), 1.0, 1e-4);
    EXPECT_NEAR(mgf_gamma_d(e.direct, b, 1e-7), 1.0, 1e-4);
}

TEST(Mgf, DirectMatchesDensityQuadrature) {
    const auto d = preset_fading(FadingPreset::FP1).direct;
    const auto b = budget_from_snr(1.0, 1.0);
    for (double s : {0.1, 1.0, 2.0}) {
        const double want = oracle::integrate_positive(
            [&](double h) {
                return std::exp(-s * h * h) * oracle::dgg_pdf(d.alpha1, d.beta1, d.omega1, d.alpha2, d.beta2, d.omega2, h);
            },
            -16, 4.0, 1e-10);
        EXPECT_NEAR(mgf_gamma_d(d, b, s), want, 1e-8) << s;
    }
}

TEST(Mgf, RisMatchesSamples) {
    const auto e = ensemble(FadingPreset::FP1, 2);
    const auto b = budget_from_snr(1.0, 1.0);
    const auto s = sample_snr(e, 1.0, 0.0, 200000, 23);
    for (double x : {0.1, 1.0}) {
        double sum = 0, sq = 0;
        for (double g : s.g) {
            const double v = std::exp(-x * g);
            sum += v;
            sq += v * v;
        }
        const double n = static_cast<double>(s.g.size());
        const double m = sum / n, se = std::sqrt((sq / n - m * m) / (n - 1));
        EXPECT_NEAR(mgf_gamma_ris(e, b, x), m, 4.0 * se) << x;
    }
}

TEST(Mgf, CombinedFactorizes) {
    const auto e = ensemble(FadingPreset::FP2, 1);
    const auto b = budget_from_snr(1.5, 0.7);
    for (double s : {0.3, 2.0}) {
        const double both = evaluate_snr_stat(e, b, Branches::combined, StatKind::laplace, s).value;
        EXPECT_NEAR(both, mgf_gamma_ris(e, b, s) * mgf_gamma_d(e.direct, b, s), 1e-8) << s;
    }
}
