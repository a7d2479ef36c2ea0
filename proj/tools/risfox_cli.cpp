// risfox: outage / BER sweeps, diversity orders, exact-vs-MC verification and
// Fox-H debug evaluation for RIS-assisted links over dGG fading.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "risfox/csv.hpp"
#include "risfox/errors.hpp"
#include "risfox/scenario.hpp"
#include "risfox/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWarnings = 2;

struct Common {
    std::string config;
    std::string output;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string methods;
    bool quiet = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", c.output, "CSV path (default: config 'output' key, else stdout)");
    sub->add_option("--seed", c.seed, "Monte-Carlo master seed");
    sub->add_option("--trials", c.trials, "Monte-Carlo trials per point");
    sub->add_option("--methods", c.methods, "comma list of exact,asym,mc");
    sub->add_flag("--quiet", c.quiet, "suppress warnings on stderr");
}

risfox::ScenarioConfig load(const Common& c, CLI::App* sub) {
    risfox::ScenarioConfig cfg = risfox::load_config(c.config);
    if (sub->count("--seed")) cfg.mc_seed = c.seed;
    if (sub->count("--trials")) cfg.mc_trials = c.trials;
    if (sub->count("--methods")) cfg.methods = risfox::parse_methods(c.methods);
    if (!c.output.empty()) cfg.output = c.output;
    cfg.validate();
    return cfg;
}

// Keeps pt_dbm plus the columns starting with `prefix`.
risfox::CurveResult select(const risfox::CurveResult& r, const std::string& prefix) {
    std::vector<std::size_t> keep{0};
    for (std::size_t i = 1; i < r.columns.size(); ++i) {
        if (r.columns[i].rfind(prefix, 0) == 0) keep.push_back(i);
    }
    risfox::CurveResult out;
    out.metadata = r.metadata;
    out.warnings = r.warnings;
    for (std::size_t i : keep) out.columns.push_back(r.columns[i]);
    for (const auto& row : r.rows) {
        std::vector<std::optional<double>> nr;
        for (std::size_t i : keep) nr.push_back(row[i]);
        out.rows.push_back(std::move(nr));
    }
    return out;
}

int finish(const risfox::CurveResult& r, const risfox::ScenarioConfig& cfg, bool quiet) {
    if (cfg.output.empty()) {
        risfox::emit_csv(r, std::cout);
    } else {
        risfox::emit_csv(r, cfg.output);
    }
    if (!quiet) {
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    }
    return r.has_warnings() ? kExitWarnings : kExitOk;
}

int run_diversity(const risfox::ScenarioConfig& cfg, std::ostream& os) {
    const auto rep = risfox::diversity(cfg.system(0.0).ensemble());
    char buf[64];
    auto put = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << k << ": " << buf << "\n";
    };
    os << "n_elements: " << cfg.n_elements << "\n";
    put("g_out", rep.g_out);
    put("g_ber", rep.g_ber);
    put("direct_min", rep.direct_min);
    for (std::size_t i = 0; i < rep.per_element_minima.size(); ++i) {
        std::snprintf(buf, sizeof buf, "element_min[%zu]", i + 1);
        put(buf, rep.per_element_minima[i]);
    }
    return kExitOk;
}

int run_foxh(const std::string& path, const std::string& dump, bool quiet) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open spec '" + path + "'");
    const auto spec = risfox::foxh::read_spec(f);
    if (!dump.empty()) {
        std::ofstream d(dump);
        if (!d) throw std::runtime_error("cannot write '" + dump + "'");
        risfox::foxh::write_spec(d, spec);
    }
    const auto e = risfox::foxh::eval_foxh(spec);
    std::printf("value: %.17e\nerr_estimate: %.3e\nnodes: %zu\nrefinements: %d\nsampled: %s\n",
                e.value, e.err_estimate, e.nodes, e.refinements, e.sampled ? "yes" : "no");
    (void)quiet;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"risfox: RIS-assisted dGG link outage/BER via Fox-H quadrature and Monte Carlo"};
    app.require_subcommand(1);

    Common outage_opts, ber_opts, verify_opts, div_opts;
    auto* outage = app.add_subcommand("outage", "outage probability sweep");
    add_common(outage, outage_opts);
    auto* ber = app.add_subcommand("ber", "average BER sweep");
    add_common(ber, ber_opts);
    auto* verify = app.add_subcommand("verify", "exact vs Monte-Carlo consistency sweep");
    add_common(verify, verify_opts);
    auto* div = app.add_subcommand("diversity", "outage and BER diversity orders");
    add_common(div, div_opts);

    std::string spec_path, dump_path;
    bool foxh_quiet = false;
    auto* fx = app.add_subcommand("foxh-eval", "evaluate a Fox-H spec file");
    fx->add_option("--spec", spec_path, "spec file")->required()->check(CLI::ExistingFile);
    fx->add_option("--dump", dump_path, "write the parsed spec with feasible intervals");
    fx->add_flag("--quiet", foxh_quiet);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*outage) {
            const auto cfg = load(outage_opts, outage);
            return finish(select(risfox::run_sweep(cfg), "outage_"), cfg, outage_opts.quiet);
        }
        if (*ber) {
            const auto cfg = load(ber_opts, ber);
            return finish(select(risfox::run_sweep(cfg), "ber_"), cfg, ber_opts.quiet);
        }
        if (*verify) {
            const auto cfg = load(verify_opts, verify);
            return finish(risfox::run_verify(cfg), cfg, verify_opts.quiet);
        }
        if (*div) {
            const auto cfg = load(div_opts, div);
            if (cfg.output.empty()) return run_diversity(cfg, std::cout);
            std::ofstream f(cfg.output);
            if (!f) throw std::runtime_error("cannot write '" + cfg.output + "'");
            return run_diversity(cfg, f);
        }
        if (*fx) return run_foxh(spec_path, dump_path, foxh_quiet);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
