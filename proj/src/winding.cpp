#include "hopf/winding.hpp"

#include <cmath>
#include <cstdlib>

#include "hopf/errors.hpp"

namespace hopf {

WindingNumbers::WindingNumbers(int k1, int k2, int k3, int k4) : WindingNumbers(std::array<int, 4>{k1, k2, k3, k4}) {}

WindingNumbers::WindingNumbers(const std::array<int, 4>& k) : k_(k) {
    if (k_[0] == 0 && k_[1] == 0 && k_[2] == 0 && k_[3] == 0)
        throw InvalidArgument("winding numbers must not all be zero");
}

bool is_morphism_regime(const EllipsoidParams& params, const WindingNumbers& k) {
    for (std::size_t i = 0; i < 4; ++i) {
        const double target = std::abs(k[i]);
        const double a = params[i];
        if (a == std::round(a)) {
            if (a != target) return false;
        } else if (std::abs(a - target) > 1e-12 * std::max(1.0, target)) {
            return false;
        }
    }
    return true;
}

void require_morphism_regime(const EllipsoidParams& params, const WindingNumbers& k) {
    if (!is_morphism_regime(params, k))
        throw NotMorphismRegime("the morphism construction needs a_i = |k_i| for i = 1..4");
}

}  // namespace hopf
