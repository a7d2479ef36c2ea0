#pragma once

// Monte-Carlo simulation of the received SNR. Every trial owns its random
// streams (derived from master seed, trial index and a per-branch tag), so
// estimates do not depend on batch size or thread count, and scenarios or
// element counts run with the same seed share their fading draws.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "risfox/channel.hpp"
#include "risfox/dgg.hpp"
#include "risfox/metrics.hpp"
#include "risfox/parallel.hpp"

namespace risfox {

enum class Scenario { combined, ris_only, dt_only, df_relay };

const char* to_string(Scenario s);

struct SystemConfig {
    std::vector<CascadeParams> elements;   // one entry per RIS element
    DggParams direct;
    LinkGeometry geometry;
    double noise_dbm = -74.0;
    double pt_dbm = 20.0;

    static SystemConfig identical(std::size_t n, const CascadeParams& element, const DggParams& direct);
    std::size_t n_elements() const { return elements.size(); }
    RisEnsemble ensemble() const { return {elements, direct}; }
    LinkBudget link_budget() const { return budget(geometry, pt_dbm, noise_dbm); }
    void validate() const;
};

struct SimPlan {
    SystemConfig config;
    std::uint64_t n_trials = 1000000;
    std::uint64_t master_seed = 1;
    std::uint64_t batch_size = 1u << 16;
    Scenario scenario = Scenario::combined;
    Exec exec = Exec::parallel;

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    /// No events observed: mean is 0 and upper_bound is the one-sided 95%
    /// bound 3/n; std_error is not meaningful.
    bool degenerate = false;
    double upper_bound = 0.0;
};

struct McPoint {
    double pt_dbm = 0.0;
    McEstimate outage;
    McEstimate ber;
};

/// gamma for trials [first, first + count) at the plan's transmit power.
std::vector<double> simulate_snr(const SimPlan& plan, std::uint64_t first, std::uint64_t count);

McEstimate estimate_outage(const SimPlan& plan, double gamma_th);
McEstimate estimate_ber(const SimPlan& plan, const ModulationParams& mod);
/// E[exp(-s gamma)].
McEstimate estimate_laplace(const SimPlan& plan, double s);

/// Outage and BER at several transmit powers from one set of fading draws.
std::vector<McPoint> sweep(const SimPlan& plan, std::span<const double> pt_dbm, double gamma_th,
                           const ModulationParams& mod);

/// Two-hop decode-and-forward comparator: outage and BER of min(g1, g2).
std::pair<McEstimate, McEstimate> baseline_df_relay(SimPlan plan, double gamma_th,
                                                     const ModulationParams& mod);

/// Modelling assumptions of the relay comparator, for output metadata.
std::string df_relay_assumptions();

}  // namespace risfox
