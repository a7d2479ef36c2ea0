#include "risfox/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "risfox/errors.hpp"

namespace risfox {

const char* to_string(FadingPreset p) {
    switch (p) {
        case FadingPreset::FP1: return "FP1";
        case FadingPreset::FP2: return "FP2";
        case FadingPreset::FP3: return "FP3";
        case FadingPreset::custom: return "custom";
    }
    return "?";
}

PresetFading preset_fading(FadingPreset p, double o1, double o2) {
    auto hop = [&](double a1, double b1, double a2, double b2) { return DggParams{a1, b1, a2, b2, o1, o2}; };
    switch (p) {
        case FadingPreset::FP1: {
            const DggParams r = hop(2, 1, 2, 2);
            return {{r, r}, hop(1.5, 1.5, 1, 1.5)};
        }
        case FadingPreset::FP2: {
            const DggParams r = hop(1, 1, 1, 2);
            return {{r, r}, hop(2, 1.5, 2, 1.5)};
        }
        case FadingPreset::FP3: {
            const DggParams r = hop(1, 1.5, 1, 2.5);
            return {{r, r}, hop(2, 2.1, 2, 2.1)};
        }
        case FadingPreset::custom:
            break;
    }
    throw std::invalid_argument("preset_fading: custom has no fixed parameters");
}

Methods parse_methods(const std::string& list) {
    Methods m;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        tok = tok.substr(b, e - b + 1);
        if (tok == "exact") {
            m.exact = true;
        } else if (tok == "asym" || tok == "asymptotic") {
            m.asym = true;
        } else if (tok == "mc") {
            m.mc = true;
        } else {
            throw std::invalid_argument("unknown method '" + tok + "'");
        }
    }
    return m;
}

std::string to_string(const Methods& m) {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ",";
        s += name;
    };
    add(m.exact, "exact");
    add(m.asym, "asym");
    add(m.mc, "mc");
    return s;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& v, std::size_t line, const std::string& key) {
    std::istringstream is(v);
    double x;
    std::string rest;
    if (!(is >> x) || (is >> rest) || !std::isfinite(x)) {
        throw ParseError(line, key, "expected a finite number, got '" + v + "'");
    }
    return x;
}

std::uint64_t parse_count(const std::string& v, std::size_t line, const std::string& key) {
    // accepts 1000000 as well as 1e6
    const double x = parse_double(v, line, key);
    if (x < 0 || x != std::floor(x) || x > 1.8e19) {
        throw ParseError(line, key, "expected a nonnegative integer, got '" + v + "'");
    }
    return static_cast<std::uint64_t>(x);
}

std::vector<double> parse_list(const std::string& v, std::size_t line, const std::string& key) {
    std::string s = v;
    for (char& c : s) {
        if (c == ',') c = ' ';
    }
    std::istringstream is(s);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) out.push_back(parse_double(tok, line, key));
    return out;
}

DggParams parse_fading(const std::string& v, std::size_t line, const std::string& key, double o1,
                       double o2) {
    const auto x = parse_list(v, line, key);
    if (x.size() != 4 && x.size() != 6) {
        throw ParseError(line, key, "expected 'a1 b1 a2 b2 [omega1 omega2]'");
    }
    DggParams p{x[0], x[1], x[2], x[3], o1, o2};
    if (x.size() == 6) {
        p.omega1 = x[4];
        p.omega2 = x[5];
    }
    return p;
}

FadingPreset parse_preset(const std::string& v, std::size_t line, const std::string& key) {
    if (v == "FP1" || v == "fp1") return FadingPreset::FP1;
    if (v == "FP2" || v == "fp2") return FadingPreset::FP2;
    if (v == "FP3" || v == "fp3") return FadingPreset::FP3;
    if (v == "custom") return FadingPreset::custom;
    throw ParseError(line, key, "expected FP1, FP2, FP3 or custom");
}

Scenario parse_scenario(const std::string& v, std::size_t line, const std::string& key) {
    if (v == "combined") return Scenario::combined;
    if (v == "ris_only") return Scenario::ris_only;
    if (v == "dt_only") return Scenario::dt_only;
    throw ParseError(line, key, "expected combined, ris_only or dt_only");
}

void check_params(const DggParams& p, const std::string& where, std::vector<std::string>& out) {
    try {
        p.validate();
    } catch (const std::exception& e) {
        out.push_back(where + ": " + e.what());
    }
}

}  // namespace

ScenarioConfig parse_config(std::istream& is) {
    ScenarioConfig cfg;
    enum class Section { top, element, direct } section = Section::top;
    struct Pending {
        std::optional<DggParams> hop1, hop2;
        std::size_t line = 0;
    };
    std::vector<Pending> elements;
    // fading lines may precede omega keys; keep raw text and resolve at the end
    struct RawFading {
        std::string text, key;
        std::size_t line;
        int element;   // -1: direct
    };
    std::vector<RawFading> raw_fading;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line == "[element]") {
                section = Section::element;
                elements.push_back({{}, {}, lineno});
            } else if (line == "[direct]") {
                section = Section::direct;
                if (cfg.custom_direct) throw ParseError(lineno, line, "duplicate [direct] block");
                cfg.custom_direct = DggParams{};
            } else {
                throw ParseError(lineno, line, "unknown block");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "", "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ParseError(lineno, key, "empty value");

        // block keys; anything else is a top-level key even after a block
        if (key == "hop1" || key == "hop2") {
            if (section != Section::element) throw ParseError(lineno, key, "outside an [element] block");
            raw_fading.push_back({val, key, lineno, static_cast<int>(elements.size() - 1)});
            continue;
        }
        if (key == "link") {
            if (section != Section::direct) throw ParseError(lineno, key, "outside the [direct] block");
            raw_fading.push_back({val, key, lineno, -1});
            continue;
        }

        if (key == "n_elements") {
            cfg.n_elements = parse_count(val, lineno, key);
        } else if (key == "fading_preset") {
            cfg.ris_preset = cfg.direct_preset = parse_preset(val, lineno, key);
        } else if (key == "ris_preset") {
            cfg.ris_preset = parse_preset(val, lineno, key);
        } else if (key == "direct_preset") {
            cfg.direct_preset = parse_preset(val, lineno, key);
        } else if (key == "omega1") {
            cfg.omega1 = parse_double(val, lineno, key);
        } else if (key == "omega2") {
            cfg.omega2 = parse_double(val, lineno, key);
        } else if (key == "freq_hz") {
            cfg.geometry.freq_hz = parse_double(val, lineno, key);
        } else if (key == "gain_tx_dbi") {
            cfg.geometry.gain_tx_dbi = parse_double(val, lineno, key);
        } else if (key == "gain_rx_dbi") {
            cfg.geometry.gain_rx_dbi = parse_double(val, lineno, key);
        } else if (key == "d1_m") {
            cfg.geometry.d1_m = parse_double(val, lineno, key);
        } else if (key == "d2_m") {
            cfg.geometry.d2_m = parse_double(val, lineno, key);
        } else if (key == "noise_dbm") {
            cfg.noise_dbm = parse_double(val, lineno, key);
        } else if (key == "mod_a") {
            cfg.modulation.a = parse_double(val, lineno, key);
        } else if (key == "mod_b") {
            cfg.modulation.b = parse_double(val, lineno, key);
        } else if (key == "pt_dbm") {
            cfg.pt_dbm = parse_list(val, lineno, key);
        } else if (key == "pt_range") {
            const auto r = parse_list(val, lineno, key);
            if (r.size() != 3 || !(r[2] > 0.0) || r[1] < r[0]) {
                throw ParseError(lineno, key, "expected 'start stop step' with step > 0, stop >= start");
            }
            const auto n = static_cast<long>(std::floor((r[1] - r[0]) / r[2] + 1e-9)) + 1;
            cfg.pt_dbm.clear();
            for (long k = 0; k < n; ++k) cfg.pt_dbm.push_back(r[0] + static_cast<double>(k) * r[2]);
        } else if (key == "gamma_th_db") {
            cfg.gamma_th_db = parse_double(val, lineno, key);
        } else if (key == "methods") {
            try {
                cfg.methods = parse_methods(val);
            } catch (const std::exception& e) {
                throw ParseError(lineno, key, e.what());
            }
        } else if (key == "scenario") {
            cfg.scenario = parse_scenario(val, lineno, key);
        } else if (key == "mc_trials") {
            cfg.mc_trials = parse_count(val, lineno, key);
        } else if (key == "mc_seed") {
            cfg.mc_seed = parse_count(val, lineno, key);
        } else if (key == "mc_batch") {
            cfg.mc_batch = parse_count(val, lineno, key);
        } else if (key == "n_exact_max") {
            cfg.n_exact_max = parse_count(val, lineno, key);
        } else if (key == "quad_half_length") {
            cfg.quad.half_length = parse_double(val, lineno, key);
        } else if (key == "quad_step") {
            cfg.quad.step = parse_double(val, lineno, key);
        } else if (key == "quad_rel_tol") {
            cfg.quad.rel_tol = parse_double(val, lineno, key);
        } else if (key == "quad_max_refinements") {
            cfg.quad.max_refinements = static_cast<int>(parse_count(val, lineno, key));
        } else if (key == "qmc_samples") {
            cfg.quad.qmc_samples = parse_count(val, lineno, key);
        } else if (key == "qmc_threshold_dims") {
            cfg.quad.qmc_threshold_dims = parse_count(val, lineno, key);
        } else if (key == "qmc_rel_tol") {
            cfg.quad.qmc_rel_tol = parse_double(val, lineno, key);
        } else if (key == "output") {
            cfg.output = val;
        } else {
            throw ParseError(lineno, key, "unknown key");
        }
    }

    for (const auto& r : raw_fading) {
        const DggParams p = parse_fading(r.text, r.line, r.key, cfg.omega1, cfg.omega2);
        if (r.element < 0) {
            cfg.custom_direct = p;
        } else {
            auto& e = elements[static_cast<std::size_t>(r.element)];
            auto& slot = r.key == "hop1" ? e.hop1 : e.hop2;
            if (slot) throw ParseError(r.line, r.key, "given twice in one [element] block");
            slot = p;
        }
    }
    for (const auto& e : elements) {
        if (!e.hop1 || !e.hop2) throw ParseError(e.line, "[element]", "block needs both hop1 and hop2");
        cfg.custom_elements.push_back({*e.hop1, *e.hop2});
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config '" + path + "'");
    return parse_config(f);
}

void ScenarioConfig::validate() const {
    std::vector<std::string> p;
    if (n_elements == 0) p.push_back("n_elements: required, must be a positive integer");
    if (pt_dbm.empty()) p.push_back("sweep: give pt_dbm or pt_range");
    if (!methods.any()) p.push_back("methods: at least one of exact, asym, mc");
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) p.push_back("omega1/omega2 must be positive");
    try {
        geometry.validate();
    } catch (const std::exception& e) {
        p.push_back(e.what());
    }
    try {
        modulation.validate();
    } catch (const std::exception& e) {
        p.push_back(e.what());
    }
    try {
        quad.validate();
    } catch (const std::exception& e) {
        p.push_back(e.what());
    }
    if (ris_preset == FadingPreset::custom) {
        if (custom_elements.empty()) {
            p.push_back("ris_preset = custom needs at least one [element] block");
        } else if (custom_elements.size() != 1 && custom_elements.size() != n_elements) {
            p.push_back("[element] blocks: give 1 (shared) or n_elements blocks, got " +
                        std::to_string(custom_elements.size()));
        }
    } else if (!custom_elements.empty()) {
        p.push_back("[element] blocks require ris_preset = custom");
    }
    for (std::size_t i = 0; i < custom_elements.size(); ++i) {
        check_params(custom_elements[i].hop1, "[element] " + std::to_string(i + 1) + " hop1", p);
        check_params(custom_elements[i].hop2, "[element] " + std::to_string(i + 1) + " hop2", p);
    }
    if (direct_preset == FadingPreset::custom) {
        if (!custom_direct) {
            p.push_back("direct_preset = custom needs a [direct] block");
        } else {
            check_params(*custom_direct, "[direct] link", p);
        }
    } else if (custom_direct) {
        p.push_back("[direct] block requires direct_preset = custom");
    }
    if (methods.mc && mc_trials < 10000) p.push_back("mc_trials must be at least 1e4");
    if (mc_batch == 0) p.push_back("mc_batch must be positive");
    if (!std::isfinite(noise_dbm)) p.push_back("noise_dbm must be finite");
    if (!p.empty()) throw ValidationError(std::move(p));
}

std::vector<CascadeParams> ScenarioConfig::elements() const {
    if (ris_preset == FadingPreset::custom) {
        if (custom_elements.size() == 1) return std::vector<CascadeParams>(n_elements, custom_elements[0]);
        return custom_elements;
    }
    return std::vector<CascadeParams>(n_elements, preset_fading(ris_preset, omega1, omega2).ris);
}

DggParams ScenarioConfig::direct() const {
    if (direct_preset == FadingPreset::custom) return *custom_direct;
    return preset_fading(direct_preset, omega1, omega2).direct;
}

SystemConfig ScenarioConfig::system(double pt) const {
    SystemConfig s;
    s.elements = elements();
    s.direct = direct();
    s.geometry = geometry;
    s.noise_dbm = noise_dbm;
    s.pt_dbm = pt;
    return s;
}

double ScenarioConfig::gamma_th() const { return db_to_linear(gamma_th_db); }

std::string ScenarioConfig::canonical() const {
    std::ostringstream os;
    auto fading = [&](const DggParams& d) {
        return num(d.alpha1) + " " + num(d.beta1) + " " + num(d.alpha2) + " " + num(d.beta2) + " " +
               num(d.omega1) + " " + num(d.omega2);
    };
    os << "freq_hz=" << num(geometry.freq_hz) << "\n"
       << "gain_tx_dbi=" << num(geometry.gain_tx_dbi) << "\n"
       << "gain_rx_dbi=" << num(geometry.gain_rx_dbi) << "\n"
       << "d1_m=" << num(geometry.d1_m) << "\n"
       << "d2_m=" << num(geometry.d2_m) << "\n"
       << "noise_dbm=" << num(noise_dbm) << "\n"
       << "n_elements=" << n_elements << "\n"
       << "ris_preset=" << to_string(ris_preset) << "\n"
       << "direct_preset=" << to_string(direct_preset) << "\n";
    const auto els = n_elements > 0 && (ris_preset != FadingPreset::custom || !custom_elements.empty())
                         ? elements()
                         : std::vector<CascadeParams>{};
    for (const auto& e : els) os << "element=" << fading(e.hop1) << " | " << fading(e.hop2) << "\n";
    if (direct_preset != FadingPreset::custom || custom_direct) os << "direct=" << fading(direct()) << "\n";
    os << "mod=" << num(modulation.a) << " " << num(modulation.b) << "\n";
    os << "pt_dbm=";
    for (double p : pt_dbm) os << num(p) << " ";
    os << "\n"
       << "gamma_th_db=" << num(gamma_th_db) << "\n"
       << "methods=" << to_string(methods) << "\n"
       << "scenario=" << to_string(scenario) << "\n"
       << "mc_trials=" << mc_trials << "\n"
       << "mc_seed=" << mc_seed << "\n"
       << "n_exact_max=" << n_exact_max << "\n"
       << "quad=" << num(quad.half_length) << " " << num(quad.step) << " " << num(quad.rel_tol) << " "
       << quad.max_refinements << " " << quad.qmc_samples << " " << quad.qmc_threshold_dims << " "
       << num(quad.qmc_rel_tol) << "\n";
    return os.str();
}

std::uint64_t ScenarioConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace risfox
