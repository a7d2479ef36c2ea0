#pragma once

// Fox-H representations of the RIS amplitude h_RIS = sum_i |h_i1||h_i2| and of
// the MRC output SNR gamma = g0_ris h_RIS^2 + g0_d |h_d|^2.

#include <cstddef>
#include <vector>

#include "risfox/channel.hpp"
#include "risfox/dgg.hpp"
#include "risfox/foxh.hpp"

namespace risfox {

struct RisEnsemble {
    std::vector<CascadeParams> elements;
    DggParams direct;

    static RisEnsemble identical(std::size_t n, const CascadeParams& element, const DggParams& direct);
    std::size_t size() const { return elements.size(); }
    void validate() const;
};

/// Which SNR terms are present: both (MRC), the RIS term alone, or the direct term alone.
enum class Branches { combined, ris_only, dt_only };

/// pdf/cdf at a threshold x; ber with conditional error a Q(sqrt(2 b gamma)) at x = b;
/// laplace E[exp(-x gamma)].
enum class StatKind { pdf, cdf, ber, laplace };

struct SpecWithCoefficient {
    foxh::FoxHSpec spec;
    double log_coefficient = 0.0;

    double coefficient() const;
    foxh::Evaluation evaluate(const foxh::QuadratureConfig& quad = {}) const;
};

struct StatValue {
    double value = 0.0;
    double err = 0.0;
    bool sampled = false;
};

/// Contour placement: anchor = right edge - bias * width in every variable.
/// 0.5 is the midpoint; values toward 1 sit nearer the poles that govern small
/// arguments (high SNR), which reduces cancellation there.
struct ContourBias {
    double value = 0.5;
};

SpecWithCoefficient snr_spec(const RisEnsemble& ens, const LinkBudget& budget, Branches branches,
                             StatKind kind, double x, double a = 1.0, ContourBias bias = {});

StatValue evaluate_snr_stat(const RisEnsemble& ens, const LinkBudget& budget, Branches branches,
                            StatKind kind, double x, double a = 1.0,
                            const foxh::QuadratureConfig& quad = {}, ContourBias bias = {});

/// Sum of cascade amplitudes: density and CDF at z.
SpecWithCoefficient hris_spec(const RisEnsemble& ens, StatKind kind, double z, ContourBias bias = {});
double hris_pdf(const RisEnsemble& ens, double z, const foxh::QuadratureConfig& quad = {});
double hris_cdf(const RisEnsemble& ens, double z, const foxh::QuadratureConfig& quad = {});

struct CombinedSnrStat {
    RisEnsemble ensemble;
    LinkBudget budget;
    double coefficient = 0.0;   // (1/4) psi_d phi_d^-beta_d2 prod A_i B_i^beta_i2

    static CombinedSnrStat make(RisEnsemble ensemble, const LinkBudget& budget);
};

double gamma_pdf(const CombinedSnrStat& stat, double g, const foxh::QuadratureConfig& quad = {});
double gamma_cdf(const CombinedSnrStat& stat, double g, const foxh::QuadratureConfig& quad = {});

double mgf_gamma_ris(const RisEnsemble& ens, const LinkBudget& budget, double s,
                     const foxh::QuadratureConfig& quad = {});
double mgf_gamma_d(const DggParams& direct, const LinkBudget& budget, double s,
                   const foxh::QuadratureConfig& quad = {});

}  // namespace risfox
