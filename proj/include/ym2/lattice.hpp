#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ym2/groups.hpp"
#include "ym2/heat_kernel.hpp"
#include "ym2/random.hpp"

namespace ym2 {

// Open-boundary plaquette grid: nx * nt plaquettes of physical area a each,
// so sites run over (nx+1) * (nt+1) corners. Open boundaries keep disjoint
// plaquette regions exactly independent under a product plaquette weight.
struct Lattice2D {
    int nx = 1;
    int nt = 1;
    double a = 1.0;
};

// Rectangle in plaquette units: plaquettes [x0, x0+w) x [y0, y0+h).
struct RectRegion {
    int x0 = 0;
    int y0 = 0;
    int w = 1;
    int h = 1;
};

enum class ActionKind { HeatKernel, Wilson };

struct ActionSpec {
    ActionKind kind = ActionKind::HeatKernel;
    double t = 1.0;      // per-plaquette time, HeatKernel only
    double beta_w = 1.0; // coupling, Wilson only
};

class LinkConfiguration {
public:
    // cold start: every link the identity
    LinkConfiguration(GroupId group, const Lattice2D& lat);

    GroupId group() const { return group_; }
    const Lattice2D& lattice() const { return lat_; }

    // link from site (i,j) to (i+1,j); i in [0,nx), j in [0,nt]
    GroupElement& xlink(int i, int j);
    const GroupElement& xlink(int i, int j) const;
    // link from site (i,j) to (i,j+1); i in [0,nx], j in [0,nt)
    GroupElement& tlink(int i, int j);
    const GroupElement& tlink(int i, int j) const;

    // counterclockwise holonomy around plaquette (i,j)
    GroupElement plaquette(int i, int j) const;

private:
    GroupId group_;
    Lattice2D lat_;
    std::vector<GroupElement> xlinks_;
    std::vector<GroupElement> tlinks_;
};

// Per-plaquette weight w(U_p): heat-kernel density at the plaquette class,
// or exp(beta_w Re tr U_p). Log weights only; normalizations cancel in
// Metropolis ratios.
class PlaquetteAction {
public:
    PlaquetteAction(GroupId group, const ActionSpec& spec);
    double log_weight(const GroupElement& plaquette) const;
    const ActionSpec& spec() const { return spec_; }

private:
    ActionSpec spec_;
    std::optional<HeatKernelDensity> density_;
};

// One full sweep of single-link Metropolis updates with proposal U' = r U,
// r a small random element of scale `step`. Returns the acceptance rate.
double metropolis_sweep(LinkConfiguration& cfg, const PlaquetteAction& action, double step,
                        RandomStream& rng);

// Character of the holonomy around the region's boundary rectangle.
Complex measure_wilson(const LinkConfiguration& cfg, const RectRegion& rect, const Irrep& irrep);

struct LoopObservable {
    RectRegion region;
    Irrep irrep;
    std::string name;
};

struct ChainParams {
    int n_sweeps = 1000; // total, including thermalization
    int n_therm = 100;
    std::uint64_t seed = 0;
    double step0 = 0.5; // initial proposal scale; 0 freezes the chain
    bool tune = true;   // tune step toward ~50% acceptance during warmup
};

struct ChainOutput {
    std::vector<std::string> names;
    std::vector<std::vector<double>> series; // Re of each observable, per kept sweep
    double acceptance = 0.0;                 // measured after thermalization
    double step = 0.0;                       // frozen proposal scale
    bool frozen = false;                     // degenerate zero-step chain
};

ChainOutput run_chain(const Lattice2D& lat, GroupId group, const ActionSpec& action,
                      const std::vector<LoopObservable>& observables, const ChainParams& params);

// Re character of a product of k independent single-plaquette draws; the
// k-fold convolution identity makes its mean the exact Wilson value for a
// k-plaquette region.
double region_product_sample(int k, const HeatKernelSampler& sampler, const Irrep& irrep,
                             RandomStream& rng);
double region_product_sample(int k, const HeatKernelSpec& spec, const Irrep& irrep,
                             RandomStream& rng);

// Random gauge transformation at every site; Wilson loops are invariant.
void random_gauge_transform(LinkConfiguration& cfg, RandomStream& rng);

} // namespace ym2
