#pragma once

#include <string>
#include <vector>

#include "ym2/exact.hpp"
#include "ym2/heat_kernel.hpp"
#include "ym2/quadrature.hpp"

namespace ym2 {

struct AffinityResult {
    double value = 0.0;        // integral of sqrt(density) against Haar
    double clamped_mass = 0.0; // negative-excursion mass clamped before the root
    double error_estimate = 0.0;
};

// Hellinger affinity between the plaquette measure and Haar; 1 iff the
// density is identically 1.
AffinityResult hellinger_affinity(const HeatKernelSpec& spec, QuadratureSpec quad = {},
                                  SeriesMode mode = SeriesMode::Auto);

struct ScanRow {
    int n_plaquettes = 1;
    double t = 0.0;        // per-plaquette time T/N
    double affinity = 1.0; // H(T/N)
    double log_product = 0.0; // N ln H
    bool evaluated = false;
    std::string reason; // set when a row cannot be evaluated
};

struct SingularityScanReport {
    GroupId group = GroupId::Circle;
    double total_time = 0.0; // T = g^2 * total area, split over N plaquettes
    std::vector<ScanRow> rows;
    bool diverging = false; // log-product strictly decreasing over evaluated rows
    std::string rationale;
};

// Fix the physical region, refine the lattice: N plaquettes of time T/N each.
// The product measure over plaquettes has affinity H(T/N)^N against the
// per-plaquette Haar product, and a log-product N ln H sinking without bound
// is the product-measure dichotomy's signature of mutual singularity in the
// refinement limit.
SingularityScanReport refinement_scan(GroupId group, double total_area, double g2,
                                      const std::vector<int>& Ns, QuadratureSpec quad = {});

struct StrongCouplingRow {
    double g2 = 0.0;
    double exact_value = 0.0; // closed-form Wilson expectation
    double haar_value = 0.0;  // quadrature of the bare character, 0 in exact arithmetic
};

// Wilson expectations marching toward the Haar value as the coupling grows:
// the strong-coupling degeneration of the plaquette measure onto Haar.
std::vector<StrongCouplingRow> strong_coupling_check(const Irrep& irrep, const RectLoop& loop,
                                                     const std::vector<double>& g2_list,
                                                     QuadratureSpec quad = {});

} // namespace ym2
