#include "risfox/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risfox {

void LinkGeometry::validate() const {
    if (!(freq_hz > 0.0) || !(d1_m > 0.0) || !(d2_m > 0.0)) {
        throw std::invalid_argument("LinkGeometry: frequency and distances must be positive");
    }
    if (!std::isfinite(gain_tx_dbi) || !std::isfinite(gain_rx_dbi)) {
        throw std::invalid_argument("LinkGeometry: antenna gains must be finite");
    }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watt(double dbm) { return 1e-3 * db_to_linear(dbm); }

namespace {

double antenna_amplitude(const LinkGeometry& g) {
    return std::sqrt(db_to_linear(g.gain_tx_dbi) * db_to_linear(g.gain_rx_dbi));
}

}  // namespace

double pathloss_cascaded(const LinkGeometry& g) {
    g.validate();
    const double c = kSpeedOfLight;
    return antenna_amplitude(g) * c * c /
           (16.0 * std::numbers::pi * g.freq_hz * g.freq_hz * g.d1_m * g.d2_m);
}

double pathloss_direct(const LinkGeometry& g) {
    // d2 = 0 is allowed here: it degenerates to Friis at d1.
    if (!(g.freq_hz > 0.0) || !(g.d1_m > 0.0) || !(g.d2_m >= 0.0)) {
        throw std::invalid_argument("pathloss_direct: invalid geometry");
    }
    return antenna_amplitude(g) * kSpeedOfLight /
           (4.0 * std::numbers::pi * g.freq_hz * std::hypot(g.d1_m, g.d2_m));
}

double friis_gain(const LinkGeometry& g, double d_m) {
    if (!(g.freq_hz > 0.0) || !(d_m > 0.0)) throw std::invalid_argument("friis_gain: invalid input");
    return antenna_amplitude(g) * kSpeedOfLight / (4.0 * std::numbers::pi * g.freq_hz * d_m);
}

LinkBudget budget(const LinkGeometry& g, double pt_dbm, double noise_dbm) {
    LinkBudget b;
    b.h_l_ris = pathloss_cascaded(g);
    b.h_l = pathloss_direct(g);
    b.pt_dbm = pt_dbm;
    b.noise_dbm = noise_dbm;
    const double snr = db_to_linear(pt_dbm - noise_dbm);
    b.gamma0_ris = b.h_l_ris * b.h_l_ris * snr;
    b.gamma0_d = b.h_l * b.h_l * snr;
    return b;
}

LinkBudget budget_from_snr(double gamma0_ris, double gamma0_d) {
    if (!(gamma0_ris > 0.0) || !(gamma0_d > 0.0)) {
        throw std::invalid_argument("budget_from_snr: SNRs must be positive");
    }
    return {1.0, 1.0, gamma0_ris, gamma0_d, 0.0, 0.0};
}

}  // namespace risfox
