#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risfox/exact_stats.hpp"

namespace risfox {

/// Conditional error probability a Q(sqrt(2 b gamma)).
struct ModulationParams {
    double a = 1.0;
    double b = 1.0;
    void validate() const;
};

struct DiversityReport {
    double g_out = 0.0;
    double g_ber = 0.0;
    std::vector<double> per_element_minima;   // min_j alpha_ij beta_ij / 2
    double direct_min = 0.0;                  // min_k alpha_dk beta_dk / 2
};

struct AsymptoticOutage {
    double value = 0.0;
    bool perturbed = false;   // tied pole orders were split and summed
    std::string note;
};

/// Exact outage; without an explicit bias the contour is placed by auto_bias.
StatValue outage_exact(const CombinedSnrStat& stat, double gamma_th,
                       const foxh::QuadratureConfig& quad = {},
                    std::optional<ContourBias> bias = std::nullopt);

/// Leading high-SNR term of the outage probability: the residue at the
/// first right-hand pole of every contour variable. When several Gamma
/// factors of one variable put their first pole at the same place, their
/// beta's are split by a small amount, the simple residues are summed, and
/// two split sizes are Richardson-combined.
AsymptoticOutage outage_asymptotic(const CombinedSnrStat& stat, double gamma_th);

StatValue ber_exact(const CombinedSnrStat& stat, const ModulationParams& mod,
                    const foxh::QuadratureConfig& quad = {},
                    std::optional<ContourBias> bias = std::nullopt);

DiversityReport diversity(const RisEnsemble& ens);

struct BaselinePoint {
    StatValue outage;
    StatValue ber;
};

/// Direct transmission alone.
BaselinePoint baseline_dt(const DggParams& direct, const LinkBudget& budget, double gamma_th,
                          const ModulationParams& mod, const foxh::QuadratureConfig& quad = {});

/// Bias heuristic: push the contour toward the governing poles when every
/// Fox-H argument is small (high SNR) and away from them when large.
ContourBias auto_bias(const RisEnsemble& ens, const LinkBudget& budget, Branches branches,
                      StatKind kind, double x);

}  // namespace risfox
