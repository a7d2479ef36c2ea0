#pragma once

// Scenario files: flat "key = value" lines, '#' comments, plus repeated
// [element] blocks (hop1 = / hop2 = lines) and an optional [direct] block
// (link = line) for custom fading. A fading line is "a1 b1 a2 b2 [omega1 omega2]".

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risfox/channel.hpp"
#include "risfox/dgg.hpp"
#include "risfox/foxh.hpp"
#include "risfox/metrics.hpp"
#include "risfox/montecarlo.hpp"

namespace risfox {

enum class FadingPreset { FP1, FP2, FP3, custom };

const char* to_string(FadingPreset p);

struct PresetFading {
    CascadeParams ris;   // both hops identical
    DggParams direct;
};

inline constexpr double kPresetOmega1 = 1.5793;
inline constexpr double kPresetOmega2 = 0.9671;

PresetFading preset_fading(FadingPreset p, double omega1 = kPresetOmega1,
                           double omega2 = kPresetOmega2);

struct Methods {
    bool exact = false;
    bool asym = false;
    bool mc = false;
    bool any() const { return exact || asym || mc; }
};

/// "exact,asym,mc" in any order; "asymptotic" is accepted for "asym".
Methods parse_methods(const std::string& list);
std::string to_string(const Methods& m);

struct ScenarioConfig {
    LinkGeometry geometry;
    double noise_dbm = -74.0;
    std::size_t n_elements = 0;
    FadingPreset ris_preset = FadingPreset::FP1;
    FadingPreset direct_preset = FadingPreset::FP1;
    double omega1 = kPresetOmega1;
    double omega2 = kPresetOmega2;
    std::vector<CascadeParams> custom_elements;   // 1 (shared) or n_elements blocks
    std::optional<DggParams> custom_direct;
    ModulationParams modulation;
    std::vector<double> pt_dbm;
    double gamma_th_db = 0.0;
    Methods methods{true, true, true};
    Scenario scenario = Scenario::combined;
    std::uint64_t mc_trials = 1000000;
    std::uint64_t mc_seed = 1;
    std::uint64_t mc_batch = 1u << 16;
    std::size_t n_exact_max = 4;
    foxh::QuadratureConfig quad;
    std::string output;

    /// Throws ValidationError listing every violated invariant.
    void validate() const;
    std::vector<CascadeParams> elements() const;
    DggParams direct() const;
    SystemConfig system(double pt_dbm) const;
    double gamma_th() const;
    /// Canonical text of every field that can change results (output path and
    /// MC batch size excluded).
    std::string canonical() const;
    /// FNV-1a of canonical().
    std::uint64_t hash() const;
};

ScenarioConfig parse_config(std::istream& is);
ScenarioConfig load_config(const std::string& path);

}  // namespace risfox
