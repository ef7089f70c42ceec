// Prints the inequality chain for one extremal kernel along its slice: the
// upper bound (1+r)/(1-r) is attained at q = r e^{-I theta}, the lower bound
// at the antipodal point, and a two-kernel mix sits strictly inside both.

#include <cstdio>

#include "slicereg/slicereg.hpp"

using namespace slicereg;

int main() {
    const KernelSpec spec{UnitImaginary::i(), 0.8};
    const HerglotzMix mix{{0.5, 0.5}, {spec, KernelSpec{UnitImaginary::j(), 2.1}}};

    std::printf("%-6s %-12s %-12s %-12s %-12s\n", "r", "lower bound", "mix Re", "kernel value",
                "upper bound");
    for (double r = 0.1; r < 0.95; r += 0.2) {
        const Quaternion q = r * exp_slice(spec.unit, -spec.theta);
        const Quaternion kernel_value = kernel_eval_closed(spec, q);
        Quaternion mix_value;
        for (std::size_t j = 0; j < mix.kernels.size(); ++j) {
            mix_value += mix.weights[j] * kernel_eval_closed(mix.kernels[j], q);
        }
        std::printf("%-6.2f %-12.6f %-12.6f %-12.6f %-12.6f\n", r, (1.0 - r) / (1.0 + r),
                    mix_value.re(), kernel_value.re(), (1.0 + r) / (1.0 - r));
    }

    const QSeries k = kernel_series(spec, 16);
    std::printf("\nkernel coefficient moduli (sharp bound is 2):");
    for (int n = 1; n <= 6; ++n) std::printf(" %.6f", k[n].norm());
    std::printf("\n");
    return 0;
}
