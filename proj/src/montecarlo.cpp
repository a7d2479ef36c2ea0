#include "risfox/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace risfox {

namespace {

constexpr std::uint64_t kStreamRis = 1;
constexpr std::uint64_t kStreamDirect = 2;
constexpr std::uint64_t kStreamRelay = 3;

__extension__ typedef unsigned __int128 u128;
constexpr double kFixedScale = 0x1p62;

// Values in [0, 1] summed as 62-bit fixed point: exact and order-free.
std::uint64_t to_fixed(double v) { return static_cast<std::uint64_t>(std::llround(v * kFixedScale)); }
double from_fixed(u128 v) { return static_cast<double>(v) / kFixedScale; }

struct Accumulator {
    std::uint64_t n = 0;
    std::uint64_t hits = 0;
    u128 sum = 0;
    u128 sum_sq = 0;

    void add_bounded(double v) {
        sum += to_fixed(v);
        sum_sq += to_fixed(v * v);
    }
    Accumulator& operator+=(const Accumulator& o) {
        n += o.n;
        hits += o.hits;
        sum += o.sum;
        sum_sq += o.sum_sq;
        return *this;
    }
};

struct Fading {
    double ris = 0.0;   // sum of cascade amplitudes
    double direct = 0.0;
    double hop1 = 0.0;   // relay hops
    double hop2 = 0.0;
};

Fading draw(const SimPlan& plan, std::uint64_t trial) {
    const SystemConfig& cfg = plan.config;
    Fading f;
    if (plan.scenario == Scenario::df_relay) {
        Rng r = Rng::for_trial(plan.master_seed, trial, kStreamRelay);
        f.hop1 = dgg_sample(cfg.elements.front().hop1, r);
        f.hop2 = dgg_sample(cfg.elements.front().hop2, r);
        return f;
    }
    if (plan.scenario != Scenario::dt_only) {
        Rng r = Rng::for_trial(plan.master_seed, trial, kStreamRis);
        for (const auto& c : cfg.elements) f.ris += dgg_sample(c.hop1, r) * dgg_sample(c.hop2, r);
    }
    if (plan.scenario != Scenario::ris_only) {
        Rng r = Rng::for_trial(plan.master_seed, trial, kStreamDirect);
        f.direct = dgg_sample(cfg.direct, r);
    }
    return f;
}

struct Gains {
    double ris = 0.0, direct = 0.0, hop1 = 0.0, hop2 = 0.0;   // average SNR per unit fading power
};

Gains gains_at(const SystemConfig& cfg, double pt_dbm) {
    const LinkBudget b = budget(cfg.geometry, pt_dbm, cfg.noise_dbm);
    const double snr = db_to_linear(pt_dbm - cfg.noise_dbm);
    const double g1 = friis_gain(cfg.geometry, cfg.geometry.d1_m);
    const double g2 = friis_gain(cfg.geometry, cfg.geometry.d2_m);
    return {b.gamma0_ris, b.gamma0_d, g1 * g1 * snr, g2 * g2 * snr};
}

double snr_of(Scenario s, const Fading& f, const Gains& g) {
    switch (s) {
        case Scenario::combined:
            return g.ris * f.ris * f.ris + g.direct * f.direct * f.direct;
        case Scenario::ris_only:
            return g.ris * f.ris * f.ris;
        case Scenario::dt_only:
            return g.direct * f.direct * f.direct;
        case Scenario::df_relay:
            return std::min(g.hop1 * f.hop1 * f.hop1, g.hop2 * f.hop2 * f.hop2);
    }
    return 0.0;
}

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Runs `per_trial(trial, accs)` over all trials in batches; one accumulator
// vector per batch, summed afterwards (integer sums, so the order is free).
template <class F>
std::vector<Accumulator> run_batches(const SimPlan& plan, std::size_t n_acc, F per_trial) {
    const std::uint64_t nb = (plan.n_trials + plan.batch_size - 1) / plan.batch_size;
    std::vector<std::vector<Accumulator>> parts(nb, std::vector<Accumulator>(n_acc));
    auto run = [&](std::uint64_t b) {
        const std::uint64_t lo = b * plan.batch_size;
        const std::uint64_t hi = std::min(plan.n_trials, lo + plan.batch_size);
        for (std::uint64_t t = lo; t < hi; ++t) per_trial(t, parts[b]);
    };
    if (plan.exec == Exec::parallel) {
        const auto count = static_cast<long long>(nb);
#pragma omp parallel for schedule(dynamic)
        for (long long b = 0; b < count; ++b) run(static_cast<std::uint64_t>(b));
    } else {
        for (std::uint64_t b = 0; b < nb; ++b) run(b);
    }
    std::vector<Accumulator> total(n_acc);
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < n_acc; ++i) total[i] += p[i];
    }
    return total;
}

McEstimate proportion(const Accumulator& a) {
    McEstimate e;
    e.n = a.n;
    const double n = static_cast<double>(a.n);
    e.mean = static_cast<double>(a.hits) / n;
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / n);
    if (a.hits == 0) {
        e.degenerate = true;
        e.upper_bound = 3.0 / n;
    }
    return e;
}

McEstimate bounded_mean(const Accumulator& a, double scale) {
    McEstimate e;
    e.n = a.n;
    const double n = static_cast<double>(a.n);
    const double m = from_fixed(a.sum) / n;
    const double m2 = from_fixed(a.sum_sq) / n;
    e.mean = scale * m;
    e.std_error = scale * std::sqrt(std::max(0.0, m2 - m * m) / std::max(1.0, n - 1.0));
    if (a.sum == 0) {
        e.degenerate = true;
        e.upper_bound = scale * 3.0 / n;
    }
    return e;
}

}  // namespace

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::combined: return "combined";
        case Scenario::ris_only: return "ris_only";
        case Scenario::dt_only: return "dt_only";
        case Scenario::df_relay: return "df_relay";
    }
    return "?";
}

SystemConfig SystemConfig::identical(std::size_t n, const CascadeParams& element,
                                     const DggParams& direct) {
    SystemConfig c;
    c.elements.assign(n, element);
    c.direct = direct;
    return c;
}

void SystemConfig::validate() const {
    if (elements.empty()) throw std::invalid_argument("SystemConfig: need at least one RIS element");
    for (const auto& e : elements) e.validate();
    direct.validate();
    geometry.validate();
    if (!std::isfinite(noise_dbm) || !std::isfinite(pt_dbm)) {
        throw std::invalid_argument("SystemConfig: powers must be finite");
    }
}

void SimPlan::validate() const {
    config.validate();
    if (n_trials < 10000) throw std::invalid_argument("SimPlan: n_trials must be at least 1e4");
    if (batch_size == 0) throw std::invalid_argument("SimPlan: batch_size must be positive");
}

std::vector<double> simulate_snr(const SimPlan& plan, std::uint64_t first, std::uint64_t count) {
    plan.config.validate();
    const Gains g = gains_at(plan.config, plan.config.pt_dbm);
    std::vector<double> out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        out[i] = snr_of(plan.scenario, draw(plan, first + i), g);
    }
    return out;
}

McEstimate estimate_outage(const SimPlan& plan, double gamma_th) {
    plan.validate();
    if (std::isnan(gamma_th)) throw std::invalid_argument("estimate_outage: gamma_th is NaN");
    const Gains g = gains_at(plan.config, plan.config.pt_dbm);
    const auto acc = run_batches(plan, 1, [&](std::uint64_t t, std::vector<Accumulator>& a) {
        const double snr = snr_of(plan.scenario, draw(plan, t), g);
        ++a[0].n;
        if (snr <= gamma_th) ++a[0].hits;
    });
    return proportion(acc[0]);
}

McEstimate estimate_ber(const SimPlan& plan, const ModulationParams& mod) {
    plan.validate();
    mod.validate();
    const Gains g = gains_at(plan.config, plan.config.pt_dbm);
    const auto acc = run_batches(plan, 1, [&](std::uint64_t t, std::vector<Accumulator>& a) {
        const double snr = snr_of(plan.scenario, draw(plan, t), g);
        ++a[0].n;
        a[0].add_bounded(q_func(std::sqrt(2.0 * mod.b * snr)));
    });
    return bounded_mean(acc[0], mod.a);
}

McEstimate estimate_laplace(const SimPlan& plan, double s) {
    plan.validate();
    if (!(s >= 0.0)) throw std::invalid_argument("estimate_laplace: s must be nonnegative");
    const Gains g = gains_at(plan.config, plan.config.pt_dbm);
    const auto acc = run_batches(plan, 1, [&](std::uint64_t t, std::vector<Accumulator>& a) {
        const double snr = snr_of(plan.scenario, draw(plan, t), g);
        ++a[0].n;
        a[0].add_bounded(std::exp(-s * snr));
    });
    return bounded_mean(acc[0], 1.0);
}

std::vector<McPoint> sweep(const SimPlan& plan, std::span<const double> pt_dbm, double gamma_th,
                           const ModulationParams& mod) {
    plan.validate();
    mod.validate();
    const std::size_t P = pt_dbm.size();
    std::vector<Gains> gains;
    for (double pt : pt_dbm) gains.push_back(gains_at(plan.config, pt));
    // accumulators: [2p] outage, [2p+1] ber
    const auto acc = run_batches(plan, 2 * P, [&](std::uint64_t t, std::vector<Accumulator>& a) {
        const Fading f = draw(plan, t);
        for (std::size_t p = 0; p < P; ++p) {
            const double snr = snr_of(plan.scenario, f, gains[p]);
            ++a[2 * p].n;
            if (snr <= gamma_th) ++a[2 * p].hits;
            ++a[2 * p + 1].n;
            a[2 * p + 1].add_bounded(q_func(std::sqrt(2.0 * mod.b * snr)));
        }
    });
    std::vector<McPoint> out(P);
    for (std::size_t p = 0; p < P; ++p) {
        out[p] = {pt_dbm[p], proportion(acc[2 * p]), bounded_mean(acc[2 * p + 1], mod.a)};
    }
    return out;
}

std::pair<McEstimate, McEstimate> baseline_df_relay(SimPlan plan, double gamma_th,
                                                     const ModulationParams& mod) {
    plan.scenario = Scenario::df_relay;
    const double pt = plan.config.pt_dbm;
    const auto pts = sweep(plan, std::span<const double>(&pt, 1), gamma_th, mod);
    return {pts[0].outage, pts[0].ber};
}

std::string df_relay_assumptions() {
    return "relay at the RIS position; full transmit power in each of two slots; free-space gain "
           "at d1 and d2 with the link antenna gains; hop fading = first element's hop1/hop2 dGG; "
           "end-to-end SNR = min(hop SNRs)";
}

}  // namespace risfox
