#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "risfox/channel.hpp"

using namespace risfox;

TEST(Channel, CascadedPathLossAtDefaultGeometry) {
    const LinkGeometry g;
    // sqrt(10) c^2 / (16 pi (6e9)^2 50 100), hand arithmetic
    const double c = 299792458.0;
    const double want = std::sqrt(10.0) * c * c / (16.0 * std::numbers::pi * 36e18 * 5000.0);
    EXPECT_NEAR(pathloss_cascaded(g), want, 1e-15 * want);
    EXPECT_NEAR(pathloss_cascaded(g), 3.15e-8, 0.01e-8);
}

TEST(Channel, DirectPathLossAtDefaultGeometry) {
    const LinkGeometry g;
    const double want = std::sqrt(10.0) * 299792458.0 / (4.0 * std::numbers::pi * 6e9 * std::sqrt(12500.0));
    EXPECT_NEAR(pathloss_direct(g), want, 1e-15 * want);
    EXPECT_NEAR(pathloss_direct(g), 1.1246e-4, 1e-8);
}

TEST(Channel, Scalings) {
    LinkGeometry g;
    const double c0 = pathloss_cascaded(g), d0 = pathloss_direct(g);
    g.freq_hz *= 2.0;
    EXPECT_NEAR(pathloss_cascaded(g), c0 / 4.0, 1e-15 * c0);
    EXPECT_NEAR(pathloss_direct(g), d0 / 2.0, 1e-15 * d0);
    g = LinkGeometry{};
    g.d1_m *= 3.0;
    EXPECT_NEAR(pathloss_cascaded(g), c0 / 3.0, 1e-15 * c0);
    g = LinkGeometry{};
    g.gain_rx_dbi = 20.0;   // amplitude gains scale with sqrt(Gr)
    EXPECT_NEAR(pathloss_cascaded(g), 10.0 * c0, 1e-14 * c0);
    EXPECT_NEAR(pathloss_direct(g), 10.0 * d0, 1e-14 * d0);
}

TEST(Channel, SymmetricInHopLengths) {
    LinkGeometry a, b;
    a.d1_m = 30.0;
    a.d2_m = 70.0;
    b.d1_m = 70.0;
    b.d2_m = 30.0;
    EXPECT_DOUBLE_EQ(pathloss_cascaded(a), pathloss_cascaded(b));
    EXPECT_DOUBLE_EQ(pathloss_direct(a), pathloss_direct(b));
}

TEST(Channel, DirectWithZeroSecondHopIsFriis) {
    LinkGeometry g;
    g.d2_m = 0.0;
    EXPECT_DOUBLE_EQ(pathloss_direct(g), friis_gain(g, g.d1_m));
}

TEST(Channel, InvalidGeometryRejected) {
    LinkGeometry g;
    g.freq_hz = 0.0;
    EXPECT_THROW(pathloss_cascaded(g), std::invalid_argument);
    EXPECT_THROW(pathloss_direct(g), std::invalid_argument);
    g = LinkGeometry{};
    g.d1_m = -1.0;
    EXPECT_THROW(g.validate(), std::invalid_argument);
    EXPECT_THROW(friis_gain(LinkGeometry{}, 0.0), std::invalid_argument);
    EXPECT_THROW(budget_from_snr(0.0, 1.0), std::invalid_argument);
}

TEST(Budget, EqualPowersGiveUnitSnr) {
    const auto b = budget_from_snr(1.0, 1.0);
    EXPECT_EQ(b.gamma0_ris, 1.0);
    EXPECT_EQ(b.gamma0_d, 1.0);
    EXPECT_DOUBLE_EQ(db_to_linear(-74.0 - (-74.0)), 1.0);
    EXPECT_DOUBLE_EQ(dbm_to_watt(30.0), 1.0);
}

TEST(Budget, DefaultGeometryAtFifteenDbm) {
    const LinkGeometry g;
    const auto b = budget(g, 15.0);
    const double snr = std::pow(10.0, 8.9);   // (15 + 74) dB
    EXPECT_NEAR(b.gamma0_ris, pathloss_cascaded(g) * pathloss_cascaded(g) * snr, 1e-13 * b.gamma0_ris);
    EXPECT_NEAR(b.gamma0_d, pathloss_direct(g) * pathloss_direct(g) * snr, 1e-13 * b.gamma0_d);
    EXPECT_NEAR(b.gamma0_d, 10.05, 0.01);
    EXPECT_NEAR(b.gamma0_ris, 7.84e-7, 0.01e-7);
    EXPECT_EQ(b.pt_dbm, 15.0);
    EXPECT_EQ(b.noise_dbm, -74.0);
}

TEST(Budget, TenDbMoreIsTenTimesSnr) {
    const LinkGeometry g;
    const auto a = budget(g, 10.0), b = budget(g, 20.0);
    EXPECT_NEAR(b.gamma0_ris / a.gamma0_ris, 10.0, 1e-12);
    EXPECT_NEAR(b.gamma0_d / a.gamma0_d, 10.0, 1e-12);
}
