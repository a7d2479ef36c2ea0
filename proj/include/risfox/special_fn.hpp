#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace risfox {

using cplx = std::complex<double>;

/// A finite complex number. Construction rejects NaN and infinite parts.
class ComplexValue {
public:
    ComplexValue() = default;
    ComplexValue(double re, double im = 0.0);
    ComplexValue(cplx z);

    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    cplx value() const { return z_; }
    operator cplx() const { return z_; }

    friend bool operator==(const ComplexValue&, const ComplexValue&) = default;

private:
    cplx z_{};
};

/// Raised when a Gamma argument sits on (or within 1e-12 of) a non-positive integer.
class PoleError : public std::domain_error {
public:
    explicit PoleError(cplx where);
    cplx where() const { return where_; }

private:
    cplx where_;
};

/// Log-Gamma on the principal branch for Re(z) >= 1/2; the reflected branch
/// below that agrees with the principal one modulo 2*pi*i.
cplx log_gamma(cplx z);

/// sum(log_gamma(num)) - sum(log_gamma(den)), differencing matched pairs first.
cplx gamma_ratio_log(std::span<const cplx> num, std::span<const cplx> den);

}  // namespace risfox
