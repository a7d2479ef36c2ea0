#include "risfox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risfox {

void ModulationParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ModulationParams: a, b must be positive");
}

ContourBias auto_bias(const RisEnsemble& ens, const LinkBudget& budget, Branches branches,
                      StatKind kind, double x) {
    const auto sw = snr_spec(ens, budget, branches, kind, x);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& a : sw.spec.args) {
        const double l = std::log(std::abs(a.value()));
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    if (hi < -8.0) return {0.75};
    if (lo > 8.0) return {0.25};
    return {0.5};
}

StatValue outage_exact(const CombinedSnrStat& stat, double gamma_th,
                       const foxh::QuadratureConfig& quad, std::optional<ContourBias> bias) {
    const ContourBias b = bias.value_or(
        auto_bias(stat.ensemble, stat.budget, Branches::combined, StatKind::cdf, gamma_th));
    return evaluate_snr_stat(stat.ensemble, stat.budget, Branches::combined, StatKind::cdf,
                             gamma_th, 1.0, quad, b);
}

StatValue ber_exact(const CombinedSnrStat& stat, const ModulationParams& mod,
                    const foxh::QuadratureConfig& quad, std::optional<ContourBias> bias) {
    mod.validate();
    const ContourBias b = bias.value_or(
        auto_bias(stat.ensemble, stat.budget, Branches::combined, StatKind::ber, mod.b));
    return evaluate_snr_stat(stat.ensemble, stat.budget, Branches::combined, StatKind::ber, mod.b,
                             mod.a, quad, b);
}

namespace {

// Real Gamma as (log|.|, sign).
struct SignedLog {
    double log = 0.0;
    double sign = 1.0;
};

SignedLog lgamma_signed(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw PoleError(cplx(x, 0.0));
    SignedLog r{std::lgamma(x), 1.0};
    if (x < 0.0 && static_cast<long>(std::floor(x)) % 2 != 0) r.sign = -1.0;
    return r;
}

// One contour variable: Gamma(lead * s) on the left, Gamma(b_j - k_j s) on
// the right, argument X^s.
struct Family {
    double lead = 0.0;
    std::vector<std::pair<double, double>> right;   // (b_j, k_j)
    double log_arg = 0.0;
    double half_alpha = 0.0;   // weight in W
    double alpha = 0.0;        // weight in the RIS coupling, 0 for the direct variable
};

struct Pole {
    double s = 0.0;
    SignedLog contrib;
};

std::vector<Pole> leading_poles(const Family& f, double split_scale, bool& perturbed) {
    double s_star = INFINITY;
    for (const auto& [b, k] : f.right) s_star = std::min(s_star, b / k);
    std::vector<std::size_t> cluster;
    for (std::size_t j = 0; j < f.right.size(); ++j) {
        const double sj = f.right[j].first / f.right[j].second;
        if (std::abs(sj - s_star) <= 1e-9 * s_star) cluster.push_back(j);
    }
    auto right = f.right;
    if (cluster.size() > 1) {
        perturbed = true;
        const double delta =
            split_scale * s_star * std::pow(10.0, -8.0 / static_cast<double>(cluster.size()));
        for (std::size_t m = 0; m < cluster.size(); ++m) {
            auto& [b, k] = right[cluster[m]];
            b = k * (s_star + static_cast<double>(m) * delta);
        }
    }
    std::vector<Pole> poles;
    for (std::size_t jstar : cluster) {
        const double s = right[jstar].first / right[jstar].second;
        SignedLog c{-std::log(right[jstar].second), 1.0};
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (j == jstar) continue;
            const SignedLog g = lgamma_signed(right[j].first - right[j].second * s);
            c.log += g.log;
            c.sign *= g.sign;
        }
        const SignedLog g = lgamma_signed(f.lead * s);
        c.log += g.log + s * f.log_arg;
        c.sign *= g.sign;
        poles.push_back({s, c});
    }
    return poles;
}

double residue_sum(const std::vector<Family>& fams, double split_scale, bool& perturbed) {
    std::vector<std::vector<Pole>> poles;
    double combos = 1.0;
    for (const auto& f : fams) {
        poles.push_back(leading_poles(f, split_scale, perturbed));
        combos *= static_cast<double>(poles.back().size());
    }
    if (combos > 4e6) throw std::runtime_error("outage_asymptotic: too many tied pole combinations");

    std::vector<double> logs, signs;
    std::vector<std::size_t> idx(fams.size(), 0);
    for (;;) {
        double lg = 0.0, sg = 1.0, half = 0.0, full = 0.0, w = 0.0;
        for (std::size_t v = 0; v < fams.size(); ++v) {
            const Pole& p = poles[v][idx[v]];
            lg += p.contrib.log;
            sg *= p.contrib.sign;
            w += fams[v].half_alpha * p.s;
            if (fams[v].alpha > 0.0) {
                half += 0.5 * fams[v].alpha * p.s;
                full += fams[v].alpha * p.s;
            }
        }
        if (full > 0.0) lg += std::lgamma(half) - std::lgamma(full);
        lg -= std::lgamma(1.0 + w);
        logs.push_back(lg);
        signs.push_back(sg);

        std::size_t v = 0;
        while (v < fams.size() && ++idx[v] == poles[v].size()) idx[v++] = 0;
        if (v == fams.size()) break;
    }
    const double ref = *std::max_element(logs.begin(), logs.end());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        acc += static_cast<long double>(signs[i] * std::exp(logs[i] - ref));
    }
    return static_cast<double>(acc) * std::exp(ref);
}

}  // namespace

AsymptoticOutage outage_asymptotic(const CombinedSnrStat& stat, double gamma_th) {
    if (!(gamma_th > 0.0)) throw std::domain_error("outage_asymptotic: gamma_th must be positive");
    const RisEnsemble& ens = stat.ensemble;
    const LinkBudget& bud = stat.budget;
    std::vector<Family> fams;
    for (const auto& c : ens.elements) {
        const CascadeConstants k = cascade_constants(c);
        const double a2 = c.hop1.alpha2;
        Family f;
        f.lead = a2;
        f.right = {{c.hop1.beta2, 1.0},
                   {c.hop1.beta1, a2 / c.hop1.alpha1},
                   {c.hop2.beta1, a2 / c.hop2.alpha1},
                   {c.hop2.beta2, a2 / c.hop2.alpha2}};
        f.log_arg = -k.log_B + 0.5 * a2 * std::log(gamma_th / bud.gamma0_ris);
        f.half_alpha = 0.5 * a2;
        f.alpha = a2;
        fams.push_back(std::move(f));
    }
    {
        const DggParams& d = ens.direct;
        const PsiPhi pp = dgg_psi_phi(d);
        Family f;
        f.lead = 0.5 * d.alpha2;
        f.right = {{d.beta2, 1.0}, {d.beta1, d.alpha2 / d.alpha1}};
        f.log_arg = std::log(pp.phi) + 0.5 * d.alpha2 * std::log(gamma_th / bud.gamma0_d);
        f.half_alpha = 0.5 * d.alpha2;
        fams.push_back(std::move(f));
    }

    AsymptoticOutage out;
    const double r1 = residue_sum(fams, 1.0, out.perturbed);
    if (out.perturbed) {
        // the split error is linear in the split size
        const double r2 = residue_sum(fams, 2.0, out.perturbed);
        out.value = stat.coefficient * (2.0 * r1 - r2);
        out.note = "tied leading poles: split-and-sum residues (Richardson over two split sizes)";
    } else {
        out.value = stat.coefficient * r1;
    }
    return out;
}

DiversityReport diversity(const RisEnsemble& ens) {
    ens.validate();
    DiversityReport r;
    double g_ber = 0.0;
    for (const auto& c : ens.elements) {
        const double p = std::min({c.hop1.alpha1 * c.hop1.beta1, c.hop1.alpha2 * c.hop1.beta2,
                                   c.hop2.alpha1 * c.hop2.beta1, c.hop2.alpha2 * c.hop2.beta2});
        r.per_element_minima.push_back(p / 2.0);
        r.g_out += p / 2.0;
        g_ber += (p - 1.0) / 2.0;
    }
    const DggParams& d = ens.direct;
    const double pd = std::min(d.alpha1 * d.beta1, d.alpha2 * d.beta2);
    r.direct_min = pd / 2.0;
    r.g_out += pd / 2.0;
    r.g_ber = g_ber + (pd - 1.0) / 2.0;
    return r;
}

BaselinePoint baseline_dt(const DggParams& direct, const LinkBudget& budget, double gamma_th,
                          const ModulationParams& mod, const foxh::QuadratureConfig& quad) {
    mod.validate();
    const RisEnsemble e{{}, direct};
    BaselinePoint p;
    p.outage = evaluate_snr_stat(e, budget, Branches::dt_only, StatKind::cdf, gamma_th, 1.0, quad,
                                 auto_bias(e, budget, Branches::dt_only, StatKind::cdf, gamma_th));
    p.ber = evaluate_snr_stat(e, budget, Branches::dt_only, StatKind::ber, mod.b, mod.a, quad,
                              auto_bias(e, budget, Branches::dt_only, StatKind::ber, mod.b));
    return p;
}

}  // namespace risfox
