#include "ym2/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace ym2 {

namespace {

void validate(const RectLoop& loop, const CouplingSpec& c) {
    if (!(loop.r > 0.0) || !(loop.dt > 0.0)) throw std::domain_error("loop extents must be positive");
    if (!(c.g2 > 0.0)) throw std::domain_error("squared coupling must be positive");
}

} // namespace

double wilson_exact(const Irrep& irrep, const RectLoop& loop, const CouplingSpec& c) {
    validate(loop, c);
    return irrep.dim * std::exp(-0.5 * c.g2 * irrep.casimir * loop.area());
}

double multi_loop_exact(const std::vector<std::pair<Irrep, RectLoop>>& pairs,
                        const CouplingSpec& c) {
    double prod = 1.0;
    for (const auto& [irrep, loop] : pairs) prod *= wilson_exact(irrep, loop, c);
    return prod;
}

double static_potential_exact(const Irrep& irrep, double r, const CouplingSpec& c) {
    if (!(r > 0.0)) throw std::domain_error("separation must be positive");
    if (!(c.g2 > 0.0)) throw std::domain_error("squared coupling must be positive");
    return 0.5 * c.g2 * irrep.casimir * r;
}

double string_tension(const Irrep& irrep, const CouplingSpec& c) {
    if (!(c.g2 > 0.0)) throw std::domain_error("squared coupling must be positive");
    return 0.5 * c.g2 * irrep.casimir;
}

} // namespace ym2
