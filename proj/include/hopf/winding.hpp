#pragma once

#include <array>
#include <cstddef>

#include "hopf/geometry.hpp"

namespace hopf {

/// Winding integers k1..k4 of the equivariant map; not all zero.
class WindingNumbers {
public:
    WindingNumbers(int k1, int k2, int k3, int k4);
    explicit WindingNumbers(const std::array<int, 4>& k);

    int operator[](std::size_t i) const { return k_[i]; }
    const std::array<int, 4>& values() const { return k_; }

    friend bool operator==(const WindingNumbers&, const WindingNumbers&) = default;

private:
    std::array<int, 4> k_;
};

/// a_i == |k_i| for all i (to 1e-12 relative when a_i is not an exact integer).
bool is_morphism_regime(const EllipsoidParams& params, const WindingNumbers& k);

/// Throws NotMorphismRegime unless is_morphism_regime holds.
void require_morphism_regime(const EllipsoidParams& params, const WindingNumbers& k);

}  // namespace hopf
