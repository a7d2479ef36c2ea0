#include "sobol.hpp"

#include <bit>
#include <stdexcept>

namespace risfox::detail {

namespace {

struct Primitive {
    unsigned degree;
    std::uint32_t poly;   // interior coefficients a
    std::array<std::uint32_t, 5> m;
};

// new-joe-kuo-6.21201, dimensions 2..10.
constexpr std::array<Primitive, 9> kPrimitives = {{
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
}};

}  // namespace

Sobol::Sobol(std::size_t dims) : dims_(dims), directions_(dims), state_(dims, 0u) {
    if (dims == 0 || dims > kMaxDims) {
        throw std::invalid_argument("Sobol: dimension out of range");
    }
    for (unsigned b = 0; b < 32; ++b) directions_[0][b] = 1u << (31 - b);
    for (std::size_t d = 1; d < dims; ++d) {
        const Primitive& p = kPrimitives[d - 1];
        auto& v = directions_[d];
        const unsigned s = p.degree;
        for (unsigned b = 0; b < s; ++b) v[b] = p.m[b] << (31 - b);
        for (unsigned b = s; b < 32; ++b) {
            std::uint32_t x = v[b - s] ^ (v[b - s] >> s);
            for (unsigned k = 1; k < s; ++k) {
                if ((p.poly >> (s - 1 - k)) & 1u) x ^= v[b - k];
            }
            v[b] = x;
        }
    }
}

void Sobol::next(std::uint32_t* out) {
    if (index_ > 0) {
        const unsigned c = static_cast<unsigned>(std::countr_one(index_ - 1));
        for (std::size_t d = 0; d < dims_; ++d) state_[d] ^= directions_[d][c];
    }
    for (std::size_t d = 0; d < dims_; ++d) out[d] = state_[d];
    ++index_;
}

}  // namespace risfox::detail
