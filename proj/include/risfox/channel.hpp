#pragma once

namespace risfox {

inline constexpr double kSpeedOfLight = 299792458.0;

struct LinkGeometry {
    double freq_hz = 6e9;
    double gain_tx_dbi = 10.0;
    double gain_rx_dbi = 0.0;
    double d1_m = 50.0;    // source -> RIS
    double d2_m = 100.0;   // RIS -> destination

    void validate() const;
    friend bool operator==(const LinkGeometry&, const LinkGeometry&) = default;
};

struct LinkBudget {
    double h_l_ris = 0.0;   // amplitude gains
    double h_l = 0.0;
    double gamma0_ris = 0.0;   // linear average SNRs
    double gamma0_d = 0.0;
    double pt_dbm = 0.0;
    double noise_dbm = 0.0;
};

double db_to_linear(double db);
double dbm_to_watt(double dbm);

/// sqrt(Gt Gr) c^2 / (16 pi f^2 d1 d2)
double pathloss_cascaded(const LinkGeometry& g);
/// sqrt(Gt Gr) c / (4 pi f sqrt(d1^2 + d2^2)); antenna heights ignored.
double pathloss_direct(const LinkGeometry& g);
/// Free-space amplitude gain over a single hop of length d.
double friis_gain(const LinkGeometry& g, double d_m);

LinkBudget budget(const LinkGeometry& g, double pt_dbm, double noise_dbm = -74.0);
/// Budget with the average SNRs given directly (unit path gains, 0 dBm noise).
LinkBudget budget_from_snr(double gamma0_ris, double gamma0_d);

}  // namespace risfox
