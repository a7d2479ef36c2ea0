#include "risfox/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace risfox {

ComplexValue::ComplexValue(double re, double im) : ComplexValue(cplx(re, im)) {}

ComplexValue::ComplexValue(cplx z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("ComplexValue: non-finite component");
    }
}

namespace {

std::string pole_message(cplx z) {
    std::ostringstream os;
    os << "Gamma pole at " << z;
    return os.str();
}

// Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.).
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosSer0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczosCoeffs = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

cplx log_gamma_right(cplx z) {
    cplx tmp = z + kLanczosG;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    cplx ser = kLanczosSer0;
    cplx y = z;
    for (double c : kLanczosCoeffs) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(kSqrtTwoPi * ser / z);
}

// log(sin(pi z)) without overflow for large |Im z|; result is modulo 2*pi*i.
cplx log_sin_pi(cplx z) {
    constexpr double pi = std::numbers::pi;
    const cplx w = pi * z;
    const double b = w.imag();
    const cplx i(0.0, 1.0);
    if (std::abs(b) < 20.0) {
        return std::log(std::sin(w));
    }
    if (b > 0.0) {
        return -i * w + std::log(1.0 - std::exp(2.0 * i * w)) + std::log(0.5) + i * (pi / 2);
    }
    return i * w + std::log(1.0 - std::exp(-2.0 * i * w)) + std::log(0.5) - i * (pi / 2);
}

}  // namespace

PoleError::PoleError(cplx where) : std::domain_error(pole_message(where)), where_(where) {}

cplx log_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("log_gamma: non-finite argument");
    }
    if (z.real() >= 0.5) {
        return log_gamma_right(z);
    }
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - cplx(nearest, 0.0)) < 1e-12) {
        throw PoleError(z);
    }
    return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cplx gamma_ratio_log(std::span<const cplx> num, std::span<const cplx> den) {
    cplx acc = 0.0;
    const std::size_t paired = std::min(num.size(), den.size());
    for (std::size_t k = 0; k < paired; ++k) {
        acc += log_gamma(num[k]) - log_gamma(den[k]);
    }
    for (std::size_t k = paired; k < num.size(); ++k) acc += log_gamma(num[k]);
    for (std::size_t k = paired; k < den.size(); ++k) acc -= log_gamma(den[k]);
    return acc;
}

}  // namespace risfox
