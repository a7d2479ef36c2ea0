#include "risfox/exact_stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risfox {

using foxh::Factor;
using foxh::GammaTerm;
using foxh::Orientation;

RisEnsemble RisEnsemble::identical(std::size_t n, const CascadeParams& element,
                                   const DggParams& direct) {
    RisEnsemble e{std::vector<CascadeParams>(n, element), direct};
    e.validate();
    return e;
}

void RisEnsemble::validate() const {
    if (elements.empty()) throw std::invalid_argument("RisEnsemble: need at least one element");
    for (const auto& c : elements) c.validate();
    direct.validate();
}

double SpecWithCoefficient::coefficient() const { return std::exp(log_coefficient); }

foxh::Evaluation SpecWithCoefficient::evaluate(const foxh::QuadratureConfig& quad) const {
    foxh::Evaluation e = foxh::eval_foxh(spec, quad);
    const double c = coefficient();
    e.value *= c;
    e.err_estimate *= c;
    return e;
}

namespace {

// Terms are written with the contour variables of the Laplace-domain
// derivation, Gamma(offset + c.s) with args^{+s}; the engine integrates
// args^{-t}, so every term goes in with t = -s.
GammaTerm paper_term(double offset, std::vector<double> coeffs, Factor f) {
    return {offset, std::move(coeffs), f, Orientation::minus};
}

std::vector<double> unit(std::size_t D, std::size_t j, double c) {
    std::vector<double> v(D, 0.0);
    v[j] = c;
    return v;
}

void add_element_terms(std::vector<GammaTerm>& terms, const CascadeParams& c, std::size_t D,
                       std::size_t j) {
    const double a2 = c.hop1.alpha2;
    terms.push_back(paper_term(0.0, unit(D, j, a2), Factor::numerator));
    terms.push_back(paper_term(c.hop1.beta2, unit(D, j, -1.0), Factor::numerator));
    const std::pair<double, double> other[] = {
        {c.hop1.alpha1, c.hop1.beta1}, {c.hop2.alpha1, c.hop2.beta1}, {c.hop2.alpha2, c.hop2.beta2}};
    for (const auto& [a, b] : other) {
        terms.push_back(paper_term(b, unit(D, j, -a2 / a), Factor::numerator));
    }
}

// Drop numerator/denominator pairs that cancel exactly.
void cancel_pairs(std::vector<GammaTerm>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].sign != Factor::numerator) continue;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const GammaTerm& d = terms[k];
            if (d.sign == Factor::denominator && d.offset == terms[i].offset &&
                d.coeffs == terms[i].coeffs && d.orientation == terms[i].orientation) {
                terms.erase(terms.begin() + static_cast<long>(std::max(i, k)));
                terms.erase(terms.begin() + static_cast<long>(std::min(i, k)));
                i = static_cast<std::size_t>(-1);
                break;
            }
        }
    }
}

foxh::FoxHSpec finish(std::size_t D, std::vector<ComplexValue> args, std::vector<GammaTerm> terms,
                      ContourBias bias) {
    if (!(bias.value > 0.0 && bias.value < 1.0)) {
        throw std::invalid_argument("ContourBias must lie in (0, 1)");
    }
    cancel_pairs(terms);
    foxh::FoxHSpec spec = foxh::make_spec(D, std::move(args), std::move(terms));
    if (bias.value != 0.5) {
        const auto iv = foxh::validate_contour(spec);
        for (std::size_t j = 0; j < D; ++j) {
            if (std::isfinite(iv[j].lo) && std::isfinite(iv[j].hi)) {
                spec.contour_re[j] = iv[j].hi - bias.value * (iv[j].hi - iv[j].lo);
            }
        }
        foxh::validate_contour(spec);
    }
    return spec;
}

}  // namespace

SpecWithCoefficient snr_spec(const RisEnsemble& ens, const LinkBudget& budget, Branches branches,
                             StatKind kind, double x, double a, ContourBias bias) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("snr_spec: x must be positive");
    if (!(a > 0.0)) throw std::domain_error("snr_spec: a must be positive");
    const bool ris = branches != Branches::dt_only;
    const bool dt = branches != Branches::ris_only;
    if (ris) ens.validate(); else ens.direct.validate();
    if (ris && !(budget.gamma0_ris > 0.0)) throw std::domain_error("snr_spec: gamma0_ris <= 0");
    if (dt && !(budget.gamma0_d > 0.0)) throw std::domain_error("snr_spec: gamma0_d <= 0");

    const std::size_t N = ris ? ens.size() : 0;
    const std::size_t D = N + (dt ? 1 : 0);
    const bool threshold = kind == StatKind::pdf || kind == StatKind::cdf;
    // per-branch normalized variable: gamma/g0 for pdf/cdf, 1/(x g0) otherwise
    auto scaled = [&](double g0) { return threshold ? std::log(x / g0) : -std::log(x * g0); };

    std::vector<ComplexValue> args;
    std::vector<GammaTerm> terms;
    std::vector<double> half_alpha(D, 0.0);
    double log_coef = -std::log(2.0) * ((ris ? 1 : 0) + (dt ? 1 : 0));

    for (std::size_t i = 0; i < N; ++i) {
        const CascadeParams& c = ens.elements[i];
        const CascadeConstants k = cascade_constants(c);
        const double a2 = c.hop1.alpha2;
        add_element_terms(terms, c, D, i);
        log_coef += k.log_A + c.hop1.beta2 * k.log_B;
        args.emplace_back(std::exp(-k.log_B + 0.5 * a2 * scaled(budget.gamma0_ris)));
        half_alpha[i] = 0.5 * a2;
    }
    if (ris) {
        std::vector<double> full(D, 0.0);
        for (std::size_t i = 0; i < N; ++i) full[i] = 2.0 * half_alpha[i];
        std::vector<double> half(full);
        for (auto& v : half) v *= 0.5;
        terms.push_back(paper_term(0.0, half, Factor::numerator));
        terms.push_back(paper_term(0.0, full, Factor::denominator));
    }
    if (dt) {
        const DggParams& d = ens.direct;
        const PsiPhi pp = dgg_psi_phi(d);
        const std::size_t j = N;
        terms.push_back(paper_term(0.0, unit(D, j, 0.5 * d.alpha2), Factor::numerator));
        terms.push_back(paper_term(d.beta2, unit(D, j, -1.0), Factor::numerator));
        terms.push_back(paper_term(d.beta1, unit(D, j, -d.alpha2 / d.alpha1), Factor::numerator));
        log_coef += std::log(pp.psi) - d.beta2 * std::log(pp.phi);
        args.emplace_back(std::exp(std::log(pp.phi) + 0.5 * d.alpha2 * scaled(budget.gamma0_d)));
        half_alpha[j] = 0.5 * d.alpha2;
    }

    switch (kind) {
        case StatKind::pdf:
            terms.push_back(paper_term(0.0, half_alpha, Factor::denominator));
            log_coef -= std::log(x);
            break;
        case StatKind::cdf:
            terms.push_back(paper_term(1.0, half_alpha, Factor::denominator));
            break;
        case StatKind::ber:
            terms.push_back(paper_term(0.5, half_alpha, Factor::numerator));
            terms.push_back(paper_term(1.0, half_alpha, Factor::denominator));
            log_coef += std::log(a) - 0.5 * std::log(4.0 * std::numbers::pi);
            break;
        case StatKind::laplace:
            break;
    }
    return {finish(D, std::move(args), std::move(terms), bias), log_coef};
}

StatValue evaluate_snr_stat(const RisEnsemble& ens, const LinkBudget& budget, Branches branches,
                            StatKind kind, double x, double a, const foxh::QuadratureConfig& quad,
                            ContourBias bias) {
    const auto e = snr_spec(ens, budget, branches, kind, x, a, bias).evaluate(quad);
    return {e.value, e.err_estimate, e.sampled};
}

SpecWithCoefficient hris_spec(const RisEnsemble& ens, StatKind kind, double z, ContourBias bias) {
    if (kind != StatKind::pdf && kind != StatKind::cdf) {
        throw std::invalid_argument("hris_spec: only pdf and cdf are defined");
    }
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("hris_spec: z must be positive");
    ens.validate();
    const std::size_t N = ens.size();
    std::vector<ComplexValue> args;
    std::vector<GammaTerm> terms;
    std::vector<double> alpha(N);
    double log_coef = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const CascadeParams& c = ens.elements[i];
        const CascadeConstants k = cascade_constants(c);
        add_element_terms(terms, c, N, i);
        log_coef += k.log_A + c.hop1.beta2 * k.log_B;
        alpha[i] = c.hop1.alpha2;
        args.emplace_back(std::exp(alpha[i] * std::log(z) - k.log_B));
    }
    if (kind == StatKind::pdf) {
        terms.push_back(paper_term(0.0, alpha, Factor::denominator));
        log_coef -= std::log(z);
    } else {
        terms.push_back(paper_term(1.0, alpha, Factor::denominator));
    }
    return {finish(N, std::move(args), std::move(terms), bias), log_coef};
}

double hris_pdf(const RisEnsemble& ens, double z, const foxh::QuadratureConfig& quad) {
    return hris_spec(ens, StatKind::pdf, z).evaluate(quad).value;
}

double hris_cdf(const RisEnsemble& ens, double z, const foxh::QuadratureConfig& quad) {
    return hris_spec(ens, StatKind::cdf, z).evaluate(quad).value;
}

CombinedSnrStat CombinedSnrStat::make(RisEnsemble ensemble, const LinkBudget& budget) {
    ensemble.validate();
    const PsiPhi pp = dgg_psi_phi(ensemble.direct);
    double lc = std::log(0.25) + std::log(pp.psi) - ensemble.direct.beta2 * std::log(pp.phi);
    for (const auto& c : ensemble.elements) {
        const CascadeConstants k = cascade_constants(c);
        lc += k.log_A + c.hop1.beta2 * k.log_B;
    }
    const double coef = std::exp(lc);
    if (!(coef > 0.0) || !std::isfinite(coef)) {
        throw std::domain_error("CombinedSnrStat: prefactor is not positive and finite");
    }
    return {std::move(ensemble), budget, coef};
}

double gamma_pdf(const CombinedSnrStat& stat, double g, const foxh::QuadratureConfig& quad) {
    return evaluate_snr_stat(stat.ensemble, stat.budget, Branches::combined, StatKind::pdf, g, 1.0,
                             quad)
        .value;
}

double gamma_cdf(const CombinedSnrStat& stat, double g, const foxh::QuadratureConfig& quad) {
    return evaluate_snr_stat(stat.ensemble, stat.budget, Branches::combined, StatKind::cdf, g, 1.0,
                             quad)
        .value;
}

double mgf_gamma_ris(const RisEnsemble& ens, const LinkBudget& budget, double s,
                     const foxh::QuadratureConfig& quad) {
    return evaluate_snr_stat(ens, budget, Branches::ris_only, StatKind::laplace, s, 1.0, quad).value;
}

double mgf_gamma_d(const DggParams& direct, const LinkBudget& budget, double s,
                   const foxh::QuadratureConfig& quad) {
    RisEnsemble e{{}, direct};
    return evaluate_snr_stat(e, budget, Branches::dt_only, StatKind::laplace, s, 1.0, quad).value;
}

}  // namespace risfox
