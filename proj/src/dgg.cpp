#include "risfox/dgg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risfox {

using foxh::Factor;
using foxh::GammaTerm;
using foxh::Orientation;

void DggParams::validate() const {
    const double v[] = {alpha1, beta1, alpha2, beta2, omega1, omega2};
    const char* names[] = {"alpha1", "beta1", "alpha2", "beta2", "omega1", "omega2"};
    for (int i = 0; i < 6; ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
            throw std::invalid_argument(std::string("DggParams: ") + names[i] +
                                        " must be positive and finite");
        }
    }
}

void CascadeParams::validate() const {
    hop1.validate();
    hop2.validate();
}

PsiPhi dgg_psi_phi(const DggParams& p) {
    p.validate();
    const double log_phi =
        std::log(p.beta2 / p.omega2) + (p.alpha2 / p.alpha1) * std::log(p.beta1 / p.omega1);
    const double log_psi =
        std::log(p.alpha2) + p.beta2 * log_phi - std::lgamma(p.beta1) - std::lgamma(p.beta2);
    return {std::exp(log_psi), std::exp(log_phi)};
}

double CascadeConstants::A() const { return std::exp(log_A); }
double CascadeConstants::B() const { return std::exp(log_B); }

CascadeConstants cascade_constants(const CascadeParams& c) {
    const PsiPhi h1 = dgg_psi_phi(c.hop1);
    const PsiPhi h2 = dgg_psi_phi(c.hop2);
    const double a2 = c.hop1.alpha2, b2 = c.hop1.beta2;
    const double a4 = c.hop2.alpha2, b4 = c.hop2.beta2;
    CascadeConstants k;
    k.log_A = std::log(h1.psi) + std::log(h2.psi) - std::log(a4) +
              (a2 * b2 - a4 * b4) / a4 * std::log(h2.phi);
    k.log_B = -std::log(h1.phi) - (a2 / a4) * std::log(h2.phi);
    return k;
}

foxh::FoxHSpec dgg_kernel_spec(const DggParams& p, double x) {
    const PsiPhi k = dgg_psi_phi(p);
    const double r = p.alpha2 / p.alpha1;
    std::vector<GammaTerm> terms{
        {0.0, {1.0}, Factor::numerator, Orientation::plus},
        {(p.alpha1 * p.beta1 - p.alpha2 * p.beta2) / p.alpha1, {r}, Factor::numerator,
         Orientation::plus},
    };
    return foxh::make_spec(1, {ComplexValue(k.phi * std::pow(x, p.alpha2))}, std::move(terms));
}

namespace {

// Lower parameters (0,1) and (beta_j - a2 b2 / alpha_j, a2 / alpha_j) for the
// three factors other than the hop-1 second factor.
std::vector<GammaTerm> cascade_lower_terms(const CascadeParams& c) {
    const double a2 = c.hop1.alpha2, b2 = c.hop1.beta2;
    const std::pair<double, double> other[] = {
        {c.hop1.alpha1, c.hop1.beta1}, {c.hop2.alpha1, c.hop2.beta1}, {c.hop2.alpha2, c.hop2.beta2}};
    std::vector<GammaTerm> terms{{0.0, {1.0}, Factor::numerator, Orientation::plus}};
    for (const auto& [a, b] : other) {
        terms.push_back({b - a2 * b2 / a, {a2 / a}, Factor::numerator, Orientation::plus});
    }
    return terms;
}

}  // namespace

foxh::FoxHSpec product_kernel_spec(const CascadeParams& c, double z) {
    c.validate();
    const CascadeConstants k = cascade_constants(c);
    const double arg = std::exp(c.hop1.alpha2 * std::log(z) - k.log_B);
    return foxh::make_spec(1, {ComplexValue(arg)}, cascade_lower_terms(c));
}

foxh::FoxHSpec product_mgf_spec(const CascadeParams& c, double s) {
    c.validate();
    const CascadeConstants k = cascade_constants(c);
    const double a2 = c.hop1.alpha2, b2 = c.hop1.beta2;
    auto terms = cascade_lower_terms(c);
    // upper (1 - a2 b2, a2) contributes Gamma(a2 b2 - a2 t)
    terms.push_back({a2 * b2, {a2}, Factor::numerator, Orientation::minus});
    const double arg = std::exp(-a2 * std::log(s) - k.log_B);
    return foxh::make_spec(1, {ComplexValue(arg)}, std::move(terms));
}

double dgg_pdf(const DggParams& p, double x, const foxh::QuadratureConfig& quad) {
    if (!(x > 0.0)) throw std::domain_error("dgg_pdf: x must be positive");
    const PsiPhi k = dgg_psi_phi(p);
    const double h = foxh::eval_foxh(dgg_kernel_spec(p, x), quad).value;
    return k.psi * std::pow(x, p.alpha2 * p.beta2 - 1.0) * h;
}

double product_pdf(const CascadeParams& c, double z, const foxh::QuadratureConfig& quad) {
    if (!(z > 0.0)) throw std::domain_error("product_pdf: z must be positive");
    const CascadeConstants k = cascade_constants(c);
    const double h = foxh::eval_foxh(product_kernel_spec(c, z), quad).value;
    return std::exp(k.log_A + (c.hop1.alpha2 * c.hop1.beta2 - 1.0) * std::log(z)) * h;
}

double product_mgf(const CascadeParams& c, double s, const foxh::QuadratureConfig& quad) {
    if (!(s > 0.0)) throw std::domain_error("product_mgf: s must be positive");
    const CascadeConstants k = cascade_constants(c);
    const double h = foxh::eval_foxh(product_mgf_spec(c, s), quad).value;
    return std::exp(k.log_A - c.hop1.alpha2 * c.hop1.beta2 * std::log(s)) * h;
}

double gg_moment(double alpha, double beta, double omega, double t) {
    return std::exp((t / alpha) * std::log(omega / beta) + std::lgamma(beta + t / alpha) -
                    std::lgamma(beta));
}

double dgg_moment(const DggParams& p, double t) {
    return gg_moment(p.alpha1, p.beta1, p.omega1, t) * gg_moment(p.alpha2, p.beta2, p.omega2, t);
}

double cascade_moment(const CascadeParams& c, double t) {
    return dgg_moment(c.hop1, t) * dgg_moment(c.hop2, t);
}

double gg_sample(double alpha, double beta, double omega, Rng& rng) {
    return std::pow((omega / beta) * rng.gamma(beta), 1.0 / alpha);
}

double dgg_sample(const DggParams& p, Rng& rng) {
    return gg_sample(p.alpha1, p.beta1, p.omega1, rng) * gg_sample(p.alpha2, p.beta2, p.omega2, rng);
}

std::vector<double> dgg_sample(const DggParams& p, Rng& rng, std::size_t n) {
    p.validate();
    std::vector<double> out(n);
    for (auto& x : out) x = dgg_sample(p, rng);
    return out;
}

}  // namespace risfox
