#pragma once

// Numerical evaluation of univariate and multivariate Fox H-functions written
// as Mellin-Barnes integrals
//
//   H = (2 pi i)^-D  int ... int  prod_k Gamma(a_k(s))^{+-1} prod_i x_i^{-s_i}  ds
//
// with every a_k affine in the contour variables s = (s_1..s_D). Each s_i runs
// along a vertical line Re(s_i) = c_i placed between the left and right pole
// families of the numerator Gammas. Up to `qmc_threshold_dims` variables the
// integral is a tensor-product truncated trapezoid; above that it is sampled by
// randomized Sobol points.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "risfox/parallel.hpp"
#include "risfox/special_fn.hpp"

namespace risfox::foxh {

enum class Factor { numerator, denominator };
enum class Orientation { plus, minus };

/// Gamma(offset +- sum_j coeffs[j] * s_j), in the numerator or the denominator.
struct GammaTerm {
    double offset = 0.0;
    std::vector<double> coeffs;
    Factor sign = Factor::numerator;
    Orientation orientation = Orientation::plus;

    /// Signed coefficient of variable j as it enters the argument.
    double slope(std::size_t j) const {
        return orientation == Orientation::plus ? coeffs[j] : -coeffs[j];
    }
    cplx argument(std::span<const cplx> s) const;
};

struct FoxHSpec {
    std::size_t num_vars = 0;
    std::vector<ComplexValue> args;   // x_i, raised to -s_i
    std::vector<GammaTerm> terms;
    std::vector<double> contour_re;   // empty: midpoints of the feasible intervals
};

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x > lo && x < hi; }
};

class NoValidContour : public std::runtime_error {
public:
    NoValidContour(std::size_t variable, std::vector<std::size_t> terms, const std::string& why);
    std::size_t variable() const { return variable_; }
    const std::vector<std::size_t>& terms() const { return terms_; }

private:
    std::size_t variable_;
    std::vector<std::size_t> terms_;
};

class NotConverged : public std::runtime_error {
public:
    NotConverged(double value, double delta);
    double value() const { return value_; }
    double delta() const { return delta_; }

private:
    double value_;
    double delta_;
};

struct QuadratureConfig {
    double half_length = 40.0;   // T: cap on |Im s_i|, also the tail margin in nats
    double step = 0.08;          // trapezoid step h
    double rel_tol = 1e-6;
    int max_refinements = 4;
    std::size_t qmc_samples = 200000;
    std::size_t qmc_threshold_dims = 3;
    double qmc_rel_tol = 1e-3;
    std::uint64_t qmc_seed = 0x9e3779b97f4a7c15ULL;
    Exec exec = Exec::parallel;

    void validate() const;
};

struct Evaluation {
    double value = 0.0;
    double err_estimate = 0.0;
    std::size_t nodes = 0;
    int refinements = 0;
    bool sampled = false;   // true when the QMC route produced the value
};

/// Feasible anchor interval per variable. Single-variable numerator terms
/// bound the interval; multi-variable numerator terms are checked at the
/// chosen anchors. Throws NoValidContour.
std::vector<Interval> validate_contour(const FoxHSpec& spec);

/// Midpoint of a finite interval; half a unit inside a half-infinite one.
double default_anchor(const Interval& iv);

/// Structural checks plus contour validation; fills contour_re when empty.
FoxHSpec make_spec(std::size_t num_vars, std::vector<ComplexValue> args,
                   std::vector<GammaTerm> terms, std::vector<double> contour_re = {});

Evaluation eval_foxh(const FoxHSpec& spec, const QuadratureConfig& quad = {});

struct BatchEntry {
    Evaluation result;
    std::string error;   // empty on success
    bool ok() const { return error.empty(); }
};

/// Elementwise eval_foxh; a failing element records its error and the batch continues.
std::vector<BatchEntry> eval_foxh_batch(std::span<const FoxHSpec> specs,
                                        const QuadratureConfig& quad = {});

/// Text dump of a spec: args, terms, anchors and feasible intervals.
void write_spec(std::ostream& os, const FoxHSpec& spec);
/// Parses the format produced by write_spec (comment lines ignored).
FoxHSpec read_spec(std::istream& is);

}  // namespace risfox::foxh
