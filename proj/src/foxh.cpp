#include "risfox/foxh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "foxh_kernel.hpp"

namespace risfox::foxh {

namespace {

std::string describe_terms(const std::vector<std::size_t>& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    return os.str();
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

cplx GammaTerm::argument(std::span<const cplx> s) const {
    cplx a = offset;
    for (std::size_t j = 0; j < coeffs.size(); ++j) a += slope(j) * s[j];
    return a;
}

NoValidContour::NoValidContour(std::size_t variable, std::vector<std::size_t> terms,
                               const std::string& why)
    : std::runtime_error("no valid contour for variable " + std::to_string(variable) +
                         " (terms " + describe_terms(terms) + "): " + why),
      variable_(variable),
      terms_(std::move(terms)) {}

NotConverged::NotConverged(double value, double delta)
    : std::runtime_error("quadrature did not converge: value " + std::to_string(value) +
                         ", last delta " + std::to_string(delta)),
      value_(value),
      delta_(delta) {}

void QuadratureConfig::validate() const {
    if (!(half_length > 0.0) || !(step > 0.0) || step >= half_length) {
        throw std::invalid_argument("QuadratureConfig: need 0 < step < half_length");
    }
    if (!(rel_tol > 0.0) || !(qmc_rel_tol > 0.0)) {
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    }
    if (max_refinements < 0) throw std::invalid_argument("QuadratureConfig: max_refinements < 0");
    if (qmc_samples < 16) throw std::invalid_argument("QuadratureConfig: qmc_samples < 16");
    if (qmc_threshold_dims < 2) {
        throw std::invalid_argument("QuadratureConfig: qmc_threshold_dims must be >= 2");
    }
}

std::vector<Interval> validate_contour(const FoxHSpec& spec) {
    const std::size_t D = spec.num_vars;
    std::vector<Interval> iv(D);
    std::vector<std::vector<std::size_t>> lo_terms(D), hi_terms(D);
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        const GammaTerm& g = spec.terms[t];
        if (g.sign != Factor::numerator) continue;
        std::size_t nz = 0, var = 0;
        for (std::size_t j = 0; j < D; ++j) {
            if (g.coeffs[j] != 0.0) {
                ++nz;
                var = j;
            }
        }
        if (nz != 1) continue;
        // Re(offset + slope*c) > 0
        const double sl = g.slope(var);
        const double edge = -g.offset / sl;
        if (sl > 0.0) {
            if (edge >= iv[var].lo) {
                if (edge > iv[var].lo) lo_terms[var].clear();
                iv[var].lo = edge;
                lo_terms[var].push_back(t);
            }
        } else if (edge <= iv[var].hi) {
            if (edge < iv[var].hi) hi_terms[var].clear();
            iv[var].hi = edge;
            hi_terms[var].push_back(t);
        }
    }
    for (std::size_t j = 0; j < D; ++j) {
        if (!(iv[j].lo < iv[j].hi)) {
            auto terms = lo_terms[j];
            terms.insert(terms.end(), hi_terms[j].begin(), hi_terms[j].end());
            throw NoValidContour(j, terms, "left and right pole families overlap");
        }
    }

    std::vector<double> anchors = spec.contour_re;
    if (anchors.empty()) {
        for (const auto& i : iv) anchors.push_back(default_anchor(i));
    }
    for (std::size_t j = 0; j < D; ++j) {
        if (!iv[j].contains(anchors[j])) {
            throw NoValidContour(j, {}, "anchor " + std::to_string(anchors[j]) +
                                            " outside the feasible interval");
        }
    }
    // Coupled numerator terms can only be checked at the chosen anchors.
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        const GammaTerm& g = spec.terms[t];
        if (g.sign != Factor::numerator) continue;
        double re = g.offset;
        std::size_t nz = 0, first = 0;
        for (std::size_t j = 0; j < D; ++j) {
            if (g.coeffs[j] == 0.0) continue;
            if (nz++ == 0) first = j;
            re += g.slope(j) * anchors[j];
        }
        if (nz == 0 && !(re > 0.0) && re == std::round(re)) {
            throw NoValidContour(0, {t}, "constant numerator Gamma at a pole");
        }
        if (nz >= 2 && !(re > 0.0)) {
            throw NoValidContour(first, {t}, "coupled numerator term has Re(arg) <= 0 at the anchors");
        }
    }
    return iv;
}

double default_anchor(const Interval& iv) {
    const bool lo = std::isfinite(iv.lo), hi = std::isfinite(iv.hi);
    if (lo && hi) return 0.5 * (iv.lo + iv.hi);
    if (lo) return iv.lo + 0.5;
    if (hi) return iv.hi - 0.5;
    return 0.0;
}

FoxHSpec make_spec(std::size_t num_vars, std::vector<ComplexValue> args,
                   std::vector<GammaTerm> terms, std::vector<double> contour_re) {
    if (num_vars == 0 || num_vars > detail::kMaxDims) {
        throw std::invalid_argument("FoxHSpec: num_vars must be in [1, " +
                                    std::to_string(detail::kMaxDims) + "]");
    }
    if (args.size() != num_vars) throw std::invalid_argument("FoxHSpec: |args| != num_vars");
    for (const auto& a : args) {
        if (a.value() == cplx(0.0, 0.0)) throw std::invalid_argument("FoxHSpec: zero argument");
    }
    for (const auto& t : terms) {
        if (t.coeffs.size() != num_vars) {
            throw std::invalid_argument("FoxHSpec: term coefficient count != num_vars");
        }
        if (!finite(t.offset) || !std::all_of(t.coeffs.begin(), t.coeffs.end(), finite)) {
            throw std::invalid_argument("FoxHSpec: non-finite term parameter");
        }
    }
    if (!contour_re.empty() && contour_re.size() != num_vars) {
        throw std::invalid_argument("FoxHSpec: |contour_re| != num_vars");
    }
    FoxHSpec spec{num_vars, std::move(args), std::move(terms), std::move(contour_re)};
    const auto iv = validate_contour(spec);
    if (spec.contour_re.empty()) {
        for (const auto& i : iv) spec.contour_re.push_back(default_anchor(i));
    }
    return spec;
}

Evaluation eval_foxh(const FoxHSpec& spec, const QuadratureConfig& quad) {
    quad.validate();
    const auto iv = validate_contour(spec);
    std::vector<double> anchors = spec.contour_re;
    if (anchors.empty()) {
        for (const auto& i : iv) anchors.push_back(default_anchor(i));
    }
    const std::size_t D = spec.num_vars;
    constexpr double kEps = std::numeric_limits<double>::epsilon();

    if (D > quad.qmc_threshold_dims) {
        std::size_t n = quad.qmc_samples;
        detail::QmcResult r;
        for (int ref = 0; ref <= quad.max_refinements; ++ref) {
            r = detail::qmc_integrate(spec, anchors, quad.half_length, quad.step, n, 16,
                                      quad.qmc_seed, quad.exec);
            const double tol = std::max(quad.qmc_rel_tol * std::abs(r.mean), 64.0 * kEps * r.l1);
            if (r.std_error <= tol) {
                return {r.mean, r.std_error, r.samples, ref, true};
            }
            n *= 2;
        }
        throw NotConverged(r.mean, r.std_error);
    }

    double T = quad.half_length, h = quad.step;
    double value = 0.0, delta = 0.0;
    std::size_t nodes = 0;
    for (int ref = 0; ref <= quad.max_refinements; ++ref) {
        const auto plan = detail::build_tensor_plan(spec, anchors, T, h);
        const auto sums = detail::tensor_sum(plan, quad.exec);
        const double scale = std::pow(h / (2.0 * std::numbers::pi), static_cast<double>(D));
        value = scale * sums.full;
        const double coarse = scale * std::ldexp(sums.coarse, static_cast<int>(D));
        const double inner = scale * sums.inner;
        const double disc = std::abs(value - coarse);
        const double trunc = std::abs(value - inner);
        const double floor = 64.0 * kEps * scale * sums.l1;
        const double tol = std::max(quad.rel_tol * std::abs(value), floor);
        nodes += sums.nodes;
        delta = std::max(disc, trunc);
        if (disc <= tol && trunc <= tol) {
            return {value, std::max(delta, floor), nodes, ref, false};
        }
        if (trunc > tol) {
            T *= 2.0;
        } else {
            h *= 0.5;
        }
    }
    throw NotConverged(value, delta);
}

std::vector<BatchEntry> eval_foxh_batch(std::span<const FoxHSpec> specs,
                                        const QuadratureConfig& quad) {
    std::vector<BatchEntry> out(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
            out[i].result = eval_foxh(specs[i], quad);
        } catch (const std::exception& e) {
            out[i].error = e.what();
            if (out[i].error.empty()) out[i].error = "unknown error";
        }
    }
    return out;
}

}  // namespace risfox::foxh
