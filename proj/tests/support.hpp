#pragma once

#include <array>
#include <random>
#include <utility>

#include "hopf/geometry.hpp"
#include "hopf/winding.hpp"

namespace test {

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1p-53);
}

inline hopf::EllipsoidParams random_params(std::mt19937_64& gen) {
    return hopf::EllipsoidParams(uniform(gen, 0.2, 5.0), uniform(gen, 0.2, 5.0), uniform(gen, 0.2, 5.0),
                                 uniform(gen, 0.2, 5.0));
}

/// s uniformly distributed over the four branches, at least `margin` from every locus.
inline double random_interior_s(std::mt19937_64& gen, double margin) {
    const int branch = static_cast<int>(gen() % 4);
    return branch * hopf::kQuarterPi + uniform(gen, margin, hopf::kQuarterPi - margin);
}

/// Random winding numbers in [-5, 5] \ {0} with the matching semi-axes a_i = |k_i|.
inline std::pair<hopf::EllipsoidParams, hopf::WindingNumbers> random_regime(std::mt19937_64& gen) {
    std::array<int, 4> k{};
    std::array<double, 4> a{};
    for (std::size_t i = 0; i < 4; ++i) {
        const int m = 1 + static_cast<int>(gen() % 5);
        k[i] = (gen() & 1) ? m : -m;
        a[i] = m;
    }
    return {hopf::EllipsoidParams(a), hopf::WindingNumbers(k)};
}

}  // namespace test
