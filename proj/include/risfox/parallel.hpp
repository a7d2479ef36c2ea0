#pragma once

#include <cstddef>
#include <span>

namespace risfox {

/// Selects the serial reference path or the OpenMP path of a kernel. Both
/// paths perform identical arithmetic in identical order, so results agree
/// bit-for-bit; only the wall time differs.
enum class Exec { serial, parallel };

/// Pairwise (tree) summation in index order. Deterministic for a given span.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace risfox
