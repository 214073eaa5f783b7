#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ym2/exact.hpp"
#include "ym2/groups.hpp"

namespace ym2 {

// One measured loop: normalized Wilson value w = <tr rho>/dim with its error
// (0 for exact data).
struct WilsonDatum {
    double r = 0.0;
    double dt = 0.0;
    double w = 0.0;
    double stderr_ = 0.0;
};

struct PotentialPoint {
    double dt = 0.0;
    double v = 0.0; // -ln(w)/dt
    double stderr_ = 0.0;
};

struct PotentialExtraction {
    std::vector<PotentialPoint> points; // sorted by dt
    double v = 0.0;                     // estimate at the largest dt
    double stderr_ = 0.0;
    bool plateau = false; // last two points agree within combined error
};

// Static potential at fixed spatial extent from the time-direction falloff.
PotentialExtraction extract_potential(const std::vector<WilsonDatum>& data, double r_fixed);

enum class LoopLaw { Area, Perimeter, Ambiguous };

struct PotentialFit {
    double sigma = 0.0; // area coefficient
    double mu = 0.0;    // perimeter coefficient
    double c0 = 0.0;    // constant offset
    double residual_norm = 0.0;
    // covariance of (sigma, mu, c0); for all-exact input this is the
    // unit-noise Gram inverse, carrying the correlation structure only
    std::array<std::array<double, 3>, 3> cov{};
    LoopLaw law = LoopLaw::Ambiguous;
};

struct AreaPerimeterDatum {
    double area = 0.0;
    double perimeter = 0.0;
    double w = 0.0; // normalized Wilson value
    double stderr_ = 0.0;
};

// Weighted least squares of -ln w = sigma*A + mu*P + c0. Points must be all
// exact (stderr 0, unit weights) or all noisy (weights 1/stderr^2).
// The fitted law is Area when sigma * mean(A) dominates |mu| * mean(P) by
// 10x, Perimeter when reversed, Ambiguous otherwise.
PotentialFit fit_area_perimeter(const std::vector<AreaPerimeterDatum>& data);

struct ScalingRow {
    Irrep irrep;
    double measured_ratio = 0.0;  // sigma_rho / sigma_ref
    double predicted_ratio = 0.0; // c_rho / c_ref
    bool pass = true;
};

struct CasimirScalingReport {
    std::vector<ScalingRow> rows;
    double tolerance = 0.0; // relative, on the ratio
    bool pass = true;
};

// String-tension ratios against the Casimir-ratio prediction.
CasimirScalingReport casimir_scaling_report(const std::vector<std::pair<Irrep, PotentialFit>>& fits,
                                            const Irrep& reference, double tolerance = 0.02);

// Confinement wants loops long in time, small-loop analyses want them small;
// narrow loops (fixed small r, growing dt) serve both at once.
std::vector<RectLoop> narrow_loop_family(double r, const std::vector<double>& dts);

} // namespace ym2
