#pragma once

#include <cstdint>

namespace risfox {

/// splitmix64 step: advances `state` and returns a well-mixed word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** with normal and Gamma variates.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream for (master seed, trial index, stream tag). Every
    /// trial of a simulation owns one, so results do not depend on batching.
    static Rng for_trial(std::uint64_t master, std::uint64_t trial, std::uint64_t stream);

    std::uint64_t next();
    /// Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    /// Standard Gamma(shape, 1), Marsaglia-Tsang.
    double gamma(double shape);

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace risfox
