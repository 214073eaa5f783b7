#pragma once

#include <functional>
#include <vector>

#include "ym2/groups.hpp"

namespace ym2 {

// Nodes and weights for integrating class functions against Haar measure.
// Weights absorb both the Weyl density and the cell measure, so
// sum_i w_i f(x_i) approximates the Haar integral of f and the weights of a
// grid sum to 1 exactly (up to roundoff).
struct ClassGrid {
    GroupId group;
    std::vector<ClassPoint> nodes;
    std::vector<double> weights;
};

// Number of nodes used when a spec leaves `nodes` at 0. For SU(3) the count
// is per axis (the grid is nodes x nodes on the torus of angle pairs).
int default_grid_nodes(GroupId group);

// Uniform rules chosen so that products of characters below the grid's
// Nyquist degree are integrated exactly:
//   circle  midpoint on [0, 2pi)
//   su2     midpoint in the half-angle phi = theta/2 on [0, pi]
//   su3     midpoint product rule on [0, 2pi)^2
ClassGrid class_grid(GroupId group, int nodes);

struct QuadratureSpec {
    int nodes = 0; // 0 -> default_grid_nodes(group)
};

struct QuadResult {
    double value = 0.0;
    // |I(n) - I(n/2)| plus a roundoff floor; for the spectrally convergent
    // rules above this dominates the true error at resolution n.
    double error_estimate = 0.0;
};

QuadResult haar_integrate(GroupId group,
                          const std::function<double(const ClassPoint&)>& f,
                          QuadratureSpec spec = {});

// Same rule applied to a complex integrand; the error estimate covers both
// components.
struct QuadResultC {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
};

QuadResultC haar_integrate_c(GroupId group,
                             const std::function<Complex(const ClassPoint&)>& f,
                             QuadratureSpec spec = {});

} // namespace ym2
