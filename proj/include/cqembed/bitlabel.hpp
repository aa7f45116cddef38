#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cqembed {

// Host vertices are bit strings b_{m-1}...b_0; bit 0 is the least significant.
// Labels are printed most-significant bit first, so leading zeros matter.
using VertexValue = std::uint32_t;

inline std::string to_bit_label(VertexValue v, int dim) {
    std::string s(static_cast<std::size_t>(dim), '0');
    for (int i = 0; i < dim; ++i) {
        if ((v >> i) & 1u) s[static_cast<std::size_t>(dim - 1 - i)] = '1';
    }
    return s;
}

inline VertexValue parse_bit_label(std::string_view s, int dim) {
    if (static_cast<int>(s.size()) != dim)
        throw std::invalid_argument("bit label '" + std::string(s) + "' does not have length " +
                                    std::to_string(dim));
    VertexValue v = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit label '" + std::string(s) + "' contains non-binary digit");
        v = (v << 1) | static_cast<VertexValue>(c - '0');
    }
    return v;
}

} // namespace cqembed
