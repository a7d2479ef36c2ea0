#pragma once

// Internal quadrature machinery behind eval_foxh. Kept out of the public
// headers; tests and the benchmark include it directly.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "risfox/foxh.hpp"

namespace risfox::foxh::detail {

constexpr std::size_t kMaxDims = 10;

/// One contour variable discretized as s = anchor + i*k*h, k in [-K, K].
struct Axis {
    std::size_t var = 0;   // index in the spec
    double anchor = 0.0;
    double h = 0.0;
    long K = 0;
    std::vector<cplx> sep_log;   // log of all single-variable factors, index k + K
    double decay_rate = 0.0;     // average envelope decay per unit |Im s| over [0, K h]
};

/// A Gamma factor depending on two or more variables, hoisted to the loop
/// depth of its innermost variable.
struct CoupledTerm {
    double sign = 1.0;   // +1 numerator, -1 denominator
    cplx base;           // argument at all k = 0
    std::vector<std::pair<std::size_t, double>> slopes;   // (axis position, d Im(arg) / d k)
    bool lattice = false;
    std::vector<long> mult;   // per slope entry, Im(arg) = delta * sum mult_j k_j
    long m_min = 0;
    std::vector<cplx> table;

    cplx eval(const long* k) const;
};

struct TensorPlan {
    std::vector<Axis> axes;                            // loop order, outermost first
    std::vector<std::vector<CoupledTerm>> coupled_at;  // by loop depth
    cplx const_log = 0.0;
    bool symmetric = false;   // f(conj s) = conj f(s): sum half of axis 0
};

struct TensorSums {
    double full = 0.0;     // all nodes
    double coarse = 0.0;   // nodes with every k even (step 2h)
    double inner = 0.0;    // nodes with every |k| <= K/2
    double l1 = 0.0;       // sum of |f|
    std::size_t nodes = 0;
};

/// Axis for variable `var` with separable log-factors on [-T/h, T/h], then
/// trimmed to the nodes whose envelope lies within T nats of its peak.
Axis build_axis(const FoxHSpec& spec, std::size_t var, double anchor, double T, double h,
                std::span<const std::size_t> coupled_terms);

TensorPlan build_tensor_plan(const FoxHSpec& spec, std::span<const double> anchors, double T,
                             double h);

TensorSums tensor_sum(const TensorPlan& plan, Exec exec);

struct QmcResult {
    double mean = 0.0;
    double std_error = 0.0;
    double l1 = 0.0;
    std::size_t samples = 0;
};

/// Randomized-QMC estimate over the trimmed contour box. The samples are split
/// into `replicates` independently digit-shifted Sobol sequences.
QmcResult qmc_integrate(const FoxHSpec& spec, std::span<const double> anchors, double T, double h,
                        std::size_t samples, std::size_t replicates, std::uint64_t seed, Exec exec);

/// Indices of terms with at least two nonzero coefficients.
std::vector<std::size_t> coupled_term_indices(const FoxHSpec& spec);

}  // namespace risfox::foxh::detail
