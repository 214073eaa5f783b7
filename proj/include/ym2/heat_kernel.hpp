#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ym2/groups.hpp"
#include "ym2/quadrature.hpp"
#include "ym2/random.hpp"

namespace ym2 {

// One plaquette's worth of measure: time t = g^2 * area in the exponent
// convention exp(-t * casimir / 2).
struct HeatKernelSpec {
    GroupId group = GroupId::Circle;
    double t = 1.0;
    double truncation_eps = 1e-12; // retain irreps with dim * exp(-t c/2) >= eps
    int max_terms = 200000;
};

// Raised when the retention rule needs more irreps than max_terms allows.
// tail_bound is the bound achievable with only max_terms kept.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& msg, int needed, double bound)
        : std::runtime_error(msg), terms_needed(needed), tail_bound(bound) {}
    int terms_needed;
    double tail_bound;
};

// Character series is the generic route. The circle also has the wrapped
// Gaussian image sum, which converges fast exactly where the character
// series is slow; Auto picks it for t < 0.5.
enum class SeriesMode { Auto, Character, DualGaussian };

struct SeriesTerm {
    Irrep irrep;
    double coefficient; // dim * exp(-t c/2)
};

struct TruncationInfo {
    int terms_kept = 0;
    double tail_bound = 0.0; // sum over excluded irreps of dim^2 exp(-t c/2)
};

// Normalized coefficient exp(-t c_rho / 2) in (0, 1].
double hk_coefficient(const Irrep& irrep, double t);

// Density of the measure w.r.t. Haar, evaluated via a truncated character
// series (or the image sum on the circle). Immutable after construction.
class HeatKernelDensity {
public:
    explicit HeatKernelDensity(const HeatKernelSpec& spec, SeriesMode mode = SeriesMode::Auto);

    // Raw series value; truncation can leave it a hair negative.
    double operator()(const ClassPoint& x) const;
    // max(raw, 0), the value consumers should integrate or sample from.
    double clamped(const ClassPoint& x) const { return std::max((*this)(x), 0.0); }

    // Batched evaluation; for SU(3) this shares per-node character tables
    // across the whole series instead of rebuilding them per irrep.
    std::vector<double> evaluate(const std::vector<ClassPoint>& points) const;
    std::vector<double> evaluate(const ClassGrid& grid) const { return evaluate(grid.nodes); }

    // Raw value straight from a group element, via its trace; no
    // eigenvector work, cheap enough for Monte Carlo inner loops.
    double from_element(const GroupElement& g) const;

    double at_identity() const;

    const HeatKernelSpec& spec() const { return spec_; }
    SeriesMode mode() const { return mode_; } // resolved, never Auto
    const TruncationInfo& truncation() const { return trunc_; }
    const std::vector<SeriesTerm>& terms() const { return terms_; }

private:
    HeatKernelSpec spec_;
    SeriesMode mode_;
    TruncationInfo trunc_;
    std::vector<SeriesTerm> terms_; // empty in DualGaussian mode
    // dense coefficient tables for the recurrence-based fast paths
    std::vector<double> coef_dense_; // circle: by |n|; su2: by k
    int su3_maxdeg_ = 1;
};

// Convenience single-point form: clamped density under Auto mode.
double hk_density(const HeatKernelSpec& spec, const ClassPoint& x);

// Inverse-transform sampler on class coordinates followed by conjugation
// with a Haar element. Tables are built once and are immutable; sampling
// draws a fixed number of variates per call.
struct SamplerSpec {
    int cdf_nodes = 8192;    // 1D table size (circle, su2)
    int cdf_nodes_2d = 512;  // per-axis table size for the su3 angle pair
};

class HeatKernelSampler {
public:
    explicit HeatKernelSampler(const HeatKernelSpec& spec, SamplerSpec tab = {});

    ClassPoint sample_class(RandomStream& rng) const;
    GroupElement sample(RandomStream& rng) const;

    // Table resolution actually used after refinement to the CDF tolerance.
    int table_nodes() const { return table_nodes_; }
    const HeatKernelSpec& spec() const { return spec_; }

private:
    HeatKernelSpec spec_;
    int table_nodes_ = 0;
    // 1D: boundaries of the class coordinate and the CDF at them.
    std::vector<double> edges_;
    std::vector<double> cdf_;
    // 2D (su3): marginal CDF over theta1 cells plus one conditional CDF row
    // over theta2 per theta1 cell, flattened row-major.
    std::vector<double> marginal_cdf_;
    std::vector<double> conditional_cdf_;
};

GroupElement hk_sample(const HeatKernelSpec& spec, RandomStream& rng);

// Sup over a class grid of |(K_s * K_t)(x) - K_{s+t}(x)|, with the
// convolution done by coefficient multiplication. Exact coefficients cancel,
// so the residual isolates truncation mismatch between the three series.
double semigroup_residual(GroupId group, double s, double t, QuadratureSpec quad = {});

} // namespace ym2
