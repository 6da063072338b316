#pragma once

#include "cifs/moebius.hpp"

#include <array>
#include <cmath>
#include <span>

namespace cifs {

inline constexpr int kMaxWordLength = 3;

/// Generator maps for every index of a truncation, in index order.
std::vector<MoebiusMapd> generators_of(const IndexSet &set);

/// |I|^length as a double, for cap checks before enumerating.
inline double word_count(std::size_t letters, int length) {
    return std::pow(static_cast<double>(letters), length);
}

/// Visits every word of exactly `length` letters starting with `first`, in lexicographic
/// order. `visit(letters, map)` receives the letter positions and the composed map.
template <typename Visit>
void visit_words_from(std::span<const MoebiusMapd> gens, std::size_t first, int length, Visit &&visit) {
    std::array<std::size_t, kMaxWordLength> letters{};
    std::array<MoebiusMapd, kMaxWordLength> prefix{};
    letters[0] = first;
    prefix[0]  = gens[first];
    if (length == 1) {
        visit(std::span<const std::size_t>(letters.data(), 1), prefix[0]);
        return;
    }
    int depth = 1;
    letters[1] = 0;
    while (depth > 0) {
        const auto slot = static_cast<std::size_t>(depth);
        if (letters[slot] == gens.size()) {
            --depth;
            if (depth > 0) {
                ++letters[static_cast<std::size_t>(depth)];
            }
            continue;
        }
        prefix[slot] = prefix[slot - 1] * gens[letters[slot]];
        if (depth + 1 == length) {
            visit(std::span<const std::size_t>(letters.data(), static_cast<std::size_t>(length)), prefix[slot]);
            ++letters[slot];
        } else {
            ++depth;
            letters[static_cast<std::size_t>(depth)] = 0;
        }
    }
}

} // namespace cifs
