#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace risfox::detail {

/// Gray-code Sobol sequence (Joe-Kuo direction numbers), up to kMaxDims
/// dimensions, 32-bit resolution. Point 0 is the origin.
class Sobol {
public:
    static constexpr std::size_t kMaxDims = 10;

    explicit Sobol(std::size_t dims);

    std::size_t dims() const { return dims_; }
    /// Writes the next point as raw 32-bit integers (u = x * 2^-32).
    void next(std::uint32_t* out);

private:
    std::size_t dims_;
    std::uint64_t index_ = 0;
    std::vector<std::array<std::uint32_t, 32>> directions_;
    std::vector<std::uint32_t> state_;
};

}  // namespace risfox::detail
