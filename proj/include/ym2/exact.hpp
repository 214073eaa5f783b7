#pragma once

#include <utility>
#include <vector>

#include "ym2/groups.hpp"

namespace ym2 {

// Axis-aligned rectangular loop, r across space and dt across time.
struct RectLoop {
    double r = 1.0;
    double dt = 1.0;
    double area() const { return r * dt; }
    double perimeter() const { return 2.0 * (r + dt); }
};

struct CouplingSpec {
    double g2 = 1.0; // squared coupling
};

// Wilson expectation on the plane: dim * exp(-g^2 c_rho area / 2).
double wilson_exact(const Irrep& irrep, const RectLoop& loop, const CouplingSpec& c);

// Product over non-overlapping loops; the caller vouches for disjointness.
// An empty list is the empty product 1 (callers flag that case in reports).
double multi_loop_exact(const std::vector<std::pair<Irrep, RectLoop>>& pairs,
                        const CouplingSpec& c);

// Static potential at separation r, the large-dt limit of
// -(1/dt) ln(wilson/dim); exactly linear, slope = string tension.
double static_potential_exact(const Irrep& irrep, double r, const CouplingSpec& c);

// Area-law coefficient g^2 c_rho / 2.
double string_tension(const Irrep& irrep, const CouplingSpec& c);

} // namespace ym2
