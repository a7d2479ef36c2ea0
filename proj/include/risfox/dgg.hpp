#pragma once

// Double generalized Gamma (dGG) variates: X = X1 * X2 with independent
// generalized-Gamma factors of density
//   alpha x^{alpha beta - 1} (beta/Omega)^beta exp(-(beta/Omega) x^alpha) / Gamma(beta).

#include <cstddef>
#include <vector>

#include "risfox/foxh.hpp"
#include "risfox/rng.hpp"

namespace risfox {

struct DggParams {
    double alpha1 = 1.0, beta1 = 1.0, alpha2 = 1.0, beta2 = 1.0;
    double omega1 = 1.0, omega2 = 1.0;

    void validate() const;
    friend bool operator==(const DggParams&, const DggParams&) = default;
};

/// One RIS element: source->element hop and element->destination hop.
struct CascadeParams {
    DggParams hop1, hop2;

    void validate() const;
    friend bool operator==(const CascadeParams&, const CascadeParams&) = default;
};

struct PsiPhi {
    double psi = 0.0;
    double phi = 0.0;
};

PsiPhi dgg_psi_phi(const DggParams& p);

/// Constants of the cascade density A z^{a b - 1} H[z^a / B], kept in log form.
struct CascadeConstants {
    double log_A = 0.0;
    double log_B = 0.0;
    double A() const;
    double B() const;
};

CascadeConstants cascade_constants(const CascadeParams& c);

/// Spec of the H^{2,0}_{0,2} kernel in the dGG density at x.
foxh::FoxHSpec dgg_kernel_spec(const DggParams& p, double x);
/// Spec of the H^{4,0}_{0,4} kernel in the cascade density at z.
foxh::FoxHSpec product_kernel_spec(const CascadeParams& c, double z);
/// Spec of the H^{4,1}_{1,4} kernel in the cascade Laplace transform at s.
foxh::FoxHSpec product_mgf_spec(const CascadeParams& c, double s);

double dgg_pdf(const DggParams& p, double x, const foxh::QuadratureConfig& quad = {});
double product_pdf(const CascadeParams& c, double z, const foxh::QuadratureConfig& quad = {});
/// E[exp(-s Z)] for the cascade Z = |h1||h2|.
double product_mgf(const CascadeParams& c, double s, const foxh::QuadratureConfig& quad = {});

/// E[X^t] of one generalized-Gamma factor.
double gg_moment(double alpha, double beta, double omega, double t);
double dgg_moment(const DggParams& p, double t);
double cascade_moment(const CascadeParams& c, double t);

double gg_sample(double alpha, double beta, double omega, Rng& rng);
double dgg_sample(const DggParams& p, Rng& rng);
std::vector<double> dgg_sample(const DggParams& p, Rng& rng, std::size_t n);

}  // namespace risfox
