#pragma once

#include <string>
#include <vector>

#include "ym2/groups.hpp"
#include "ym2/lattice.hpp"
#include "ym2/quadrature.hpp"

namespace ym2 {

// One Wilson expectation <tr rho(h)>, exact (stderr 0) or Monte Carlo.
// Entries sharing loop_id refer to the same loop.
struct ExpectationEntry {
    Irrep irrep;
    std::string loop_id;
    double area = 0.0; // bookkeeping for reports
    double value = 0.0;
    double stderr_ = 0.0;
};

struct ExpectationTable {
    std::vector<ExpectationEntry> entries;
};

// ---- universality: normalized expectations are Casimir-ratio powers of a
// ---- reference irrep's expectation

struct UniversalityCase {
    Irrep irrep;
    std::string loop_id;
    double measured = 0.0;  // value/dim
    double expected = 0.0;  // (ref value/ref dim)^(c/c_ref)
    double residual = 0.0;
    double tolerance = 0.0; // 1e-10 exact, else 3 * propagated stderr
    bool inconclusive = false; // reference below the exponentiation floor
    bool pass = true;
};

struct UniversalityReport {
    std::vector<UniversalityCase> cases;
    double max_residual = 0.0;
    bool vacuous = false; // no nontrivial irrep besides the reference
    bool pass = true;
};

// Exponentiating a reference value this small is numerically meaningless;
// such cases are reported inconclusive instead of pass/fail.
inline constexpr double kExponentiationFloor = 1e-12;

UniversalityReport verify_universality(const ExpectationTable& table, const Irrep& reference);

// Single-plaquette expectations under the Wilson action weight
// exp(beta_w Re tr U)/Z by class quadrature, with their universality
// residuals against the lowest-Casimir nontrivial irrep in the list.
struct DefectEntry {
    Irrep irrep;
    double expectation = 0.0; // <chi_rho> under the Wilson weight
    double defect = 0.0;      // universality residual
    bool inconclusive = false;
};

std::vector<DefectEntry> wilson_action_defect(GroupId group, double beta_w,
                                              const std::vector<Irrep>& irreps,
                                              QuadratureSpec quad = {});

// ---- independence: disjoint-loop expectations factorize

struct IndependenceCase {
    std::vector<int> loop_indices;
    double joint = 0.0;    // <prod W>
    double product = 0.0;  // prod <W>
    double residual = 0.0; // |joint - product|
    double stderr_ = 0.0;  // jackknife-propagated, 0 for exact input
    double tolerance = 0.0;
    bool pass = true;
};

struct IndependenceReport {
    std::vector<IndependenceCase> cases;
    bool vacuous = false; // every tested set had fewer than two loops
    bool pass = true;
};

bool regions_disjoint(const RectRegion& a, const RectRegion& b);

// MC variant: per-sweep joint samples from one chain. Loops must be
// plaquette-disjoint unless the caller explicitly declares overlap intent
// (the nested-loop counterexample does).
IndependenceReport verify_independence(const std::vector<LoopObservable>& loops,
                                       const ChainOutput& mc,
                                       const std::vector<std::vector<int>>& sets,
                                       std::size_t bin_size, bool allow_overlap = false);

// Exact variant: a known joint expectation against the product of known
// marginals, absolute tolerance.
IndependenceCase verify_independence_exact(double joint, const std::vector<double>& marginals,
                                           double tol = 1e-10);

// ---- regularity: (dim - <tr rho>)/sigma stays bounded while sigma -> 0

enum class SizeGauge { Area, Length };

struct RegularityPoint {
    double sigma = 0.0; // loop size in the chosen gauge
    double value = 0.0; // <tr rho(h)>
};

struct RegularityReport {
    SizeGauge gauge = SizeGauge::Area;
    std::vector<double> ratios; // (dim - value)/sigma, in input order
    double bound = 0.0;         // max ratio
    double limit_slope = 0.0;   // log-log slope of ratio vs sigma at small sigma
    bool pass = false;
};

// Curve must be sorted by strictly decreasing sigma, at least 3 points.
// Ratios sliding toward a log-log slope of -1/2 or steeper read as divergence.
RegularityReport verify_regularity(const std::vector<RegularityPoint>& curve, const Irrep& irrep,
                                   SizeGauge gauge);

} // namespace ym2
