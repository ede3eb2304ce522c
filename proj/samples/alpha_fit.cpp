// Fits the global cutoff for the built-in species table and prints each
// species' share of 1/alpha.

#include <cstdio>

#include "vpair/vpair.hpp"

int main() {
    using namespace vpair;
    const auto reg = default_registry();
    const auto fit = vacuum::fit_cutoff(reg, PC::inverse_alpha_target, vacuum::PolicyKind::GlobalConstant);
    const auto breakdown = vacuum::inverse_alpha_total(reg, fit.policy);

    std::printf("A = %.3f MeV\n", fit.value);
    for (const auto& c : breakdown.per_species)
        std::printf("  %-4s %12.6f  (%6.3f %%)\n", c.species.c_str(), c.inverse_alpha,
                    100.0 * c.inverse_alpha / breakdown.total_inverse_alpha);
    std::printf("1/alpha = %.6f\n", breakdown.total_inverse_alpha);
}
