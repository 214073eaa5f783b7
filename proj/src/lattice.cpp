#include "ym2/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ym2 {

namespace {

void validate_lattice(const Lattice2D& lat) {
    if (lat.nx < 1 || lat.nt < 1) throw std::domain_error("lattice needs at least one plaquette");
    if (!(lat.a > 0.0)) throw std::domain_error("plaquette area must be positive");
}

void validate_region(const Lattice2D& lat, const RectRegion& r) {
    if (r.w < 1 || r.h < 1 || r.x0 < 0 || r.y0 < 0 || r.x0 + r.w > lat.nx || r.y0 + r.h > lat.nt)
        throw std::domain_error("rectangle does not fit in the lattice");
}

} // namespace

LinkConfiguration::LinkConfiguration(GroupId group, const Lattice2D& lat)
    : group_(group), lat_(lat) {
    validate_lattice(lat);
    GroupElement e = identity_element(group);
    xlinks_.assign(static_cast<std::size_t>(lat.nx) * (lat.nt + 1), e);
    tlinks_.assign(static_cast<std::size_t>(lat.nx + 1) * lat.nt, e);
}

GroupElement& LinkConfiguration::xlink(int i, int j) {
    return xlinks_[static_cast<std::size_t>(j) * lat_.nx + i];
}
const GroupElement& LinkConfiguration::xlink(int i, int j) const {
    return xlinks_[static_cast<std::size_t>(j) * lat_.nx + i];
}
GroupElement& LinkConfiguration::tlink(int i, int j) {
    return tlinks_[static_cast<std::size_t>(j) * (lat_.nx + 1) + i];
}
const GroupElement& LinkConfiguration::tlink(int i, int j) const {
    return tlinks_[static_cast<std::size_t>(j) * (lat_.nx + 1) + i];
}

GroupElement LinkConfiguration::plaquette(int i, int j) const {
    // bottom, right, top^-1, left^-1
    GroupElement m = mul(xlink(i, j), tlink(i + 1, j));
    m = mul(m, inverse(xlink(i, j + 1)));
    return mul(m, inverse(tlink(i, j)));
}

PlaquetteAction::PlaquetteAction(GroupId group, const ActionSpec& spec) : spec_(spec) {
    if (spec.kind == ActionKind::HeatKernel) {
        density_.emplace(HeatKernelSpec{group, spec.t, 1e-12, 200000});
    } else if (!(spec.beta_w >= 0.0)) {
        throw std::domain_error("Wilson coupling must be nonnegative");
    }
}

double PlaquetteAction::log_weight(const GroupElement& plaquette) const {
    if (spec_.kind == ActionKind::Wilson) {
        switch (plaquette.group) {
        case GroupId::Circle: return spec_.beta_w * std::cos(std::get<double>(plaquette.value));
        case GroupId::SU2: return spec_.beta_w * 2.0 * std::get<Su2Elem>(plaquette.value).w;
        case GroupId::SU3:
            return spec_.beta_w * std::get<Su3Elem>(plaquette.value).trace().real();
        }
        throw std::domain_error("unknown group tag");
    }
    // clamp away zero so a truncation-noise zero cannot produce -inf
    return std::log(std::max(density_->from_element(plaquette), 1e-300));
}

namespace {

struct LinkRef {
    bool horizontal;
    int i, j;
};

// Plaquettes sharing a link (one or two under open boundaries).
int adjacent_plaquettes(const Lattice2D& lat, const LinkRef& l, int out[2][2]) {
    int count = 0;
    if (l.horizontal) {
        if (l.j < lat.nt) { out[count][0] = l.i; out[count][1] = l.j; ++count; }
        if (l.j >= 1) { out[count][0] = l.i; out[count][1] = l.j - 1; ++count; }
    } else {
        if (l.i < lat.nx) { out[count][0] = l.i; out[count][1] = l.j; ++count; }
        if (l.i >= 1) { out[count][0] = l.i - 1; out[count][1] = l.j; ++count; }
    }
    return count;
}

} // namespace

double metropolis_sweep(LinkConfiguration& cfg, const PlaquetteAction& action, double step,
                        RandomStream& rng) {
    const Lattice2D& lat = cfg.lattice();
    long proposed = 0, accepted = 0;

    auto update = [&](const LinkRef& l) {
        GroupElement& link = l.horizontal ? cfg.xlink(l.i, l.j) : cfg.tlink(l.i, l.j);
        int plaq[2][2];
        int np = adjacent_plaquettes(lat, l, plaq);
        double before = 0.0;
        for (int p = 0; p < np; ++p)
            before += action.log_weight(cfg.plaquette(plaq[p][0], plaq[p][1]));
        GroupElement old = link;
        link = mul(small_random_element(cfg.group(), step, rng), old);
        double after = 0.0;
        for (int p = 0; p < np; ++p)
            after += action.log_weight(cfg.plaquette(plaq[p][0], plaq[p][1]));
        ++proposed;
        if (std::log(rng.uniform() + 1e-300) < after - before) {
            ++accepted;
        } else {
            link = old;
        }
    };

    for (int j = 0; j <= lat.nt; ++j)
        for (int i = 0; i < lat.nx; ++i) update({true, i, j});
    for (int j = 0; j < lat.nt; ++j)
        for (int i = 0; i <= lat.nx; ++i) update({false, i, j});

    return static_cast<double>(accepted) / static_cast<double>(proposed);
}

Complex measure_wilson(const LinkConfiguration& cfg, const RectRegion& rect, const Irrep& irrep) {
    validate_region(cfg.lattice(), rect);
    if (irrep.group != cfg.group()) throw std::domain_error("irrep group mismatch");
    GroupElement m = identity_element(cfg.group());
    for (int s = 0; s < rect.w; ++s) m = mul(m, cfg.xlink(rect.x0 + s, rect.y0));
    for (int s = 0; s < rect.h; ++s) m = mul(m, cfg.tlink(rect.x0 + rect.w, rect.y0 + s));
    for (int s = rect.w - 1; s >= 0; --s) m = mul(m, inverse(cfg.xlink(rect.x0 + s, rect.y0 + rect.h)));
    for (int s = rect.h - 1; s >= 0; --s) m = mul(m, inverse(cfg.tlink(rect.x0, rect.y0 + s)));
    return character(irrep, m);
}

ChainOutput run_chain(const Lattice2D& lat, GroupId group, const ActionSpec& action,
                      const std::vector<LoopObservable>& observables, const ChainParams& params) {
    validate_lattice(lat);
    if (params.n_therm < 0 || params.n_sweeps <= params.n_therm)
        throw std::domain_error("need n_sweeps > n_therm >= 0");
    for (const auto& obs : observables) {
        validate_region(lat, obs.region);
        if (obs.irrep.group != group) throw std::domain_error("observable irrep group mismatch");
    }

    LinkConfiguration cfg(group, lat);
    PlaquetteAction act(group, action);
    RandomStream rng(params.seed);

    ChainOutput out;
    out.frozen = !(params.step0 > 0.0);
    for (const auto& obs : observables) out.names.push_back(obs.name);
    out.series.assign(observables.size(), {});
    int kept = params.n_sweeps - params.n_therm;
    for (auto& s : out.series) s.reserve(static_cast<std::size_t>(kept));

    double step = params.step0;
    for (int sweep = 0; sweep < params.n_therm; ++sweep) {
        double acc = metropolis_sweep(cfg, act, step, rng);
        if (params.tune && !out.frozen) {
            if (acc > 0.55)
                step = std::min(step * 1.1, std::numbers::pi);
            else if (acc < 0.45)
                step = std::max(step / 1.1, 1e-4);
        }
    }

    double acc_sum = 0.0;
    for (int sweep = 0; sweep < kept; ++sweep) {
        acc_sum += metropolis_sweep(cfg, act, step, rng);
        for (std::size_t o = 0; o < observables.size(); ++o)
            out.series[o].push_back(
                measure_wilson(cfg, observables[o].region, observables[o].irrep).real());
    }
    out.acceptance = acc_sum / kept;
    out.step = step;
    return out;
}

double region_product_sample(int k, const HeatKernelSampler& sampler, const Irrep& irrep,
                             RandomStream& rng) {
    if (k < 1) throw std::domain_error("plaquette count must be at least 1");
    if (irrep.group != sampler.spec().group) throw std::domain_error("irrep group mismatch");
    GroupElement prod = sampler.sample(rng);
    for (int i = 1; i < k; ++i) prod = mul(prod, sampler.sample(rng));
    return character(irrep, prod).real();
}

double region_product_sample(int k, const HeatKernelSpec& spec, const Irrep& irrep,
                             RandomStream& rng) {
    return region_product_sample(k, HeatKernelSampler(spec), irrep, rng);
}

void random_gauge_transform(LinkConfiguration& cfg, RandomStream& rng) {
    const Lattice2D& lat = cfg.lattice();
    std::vector<GroupElement> site;
    site.reserve(static_cast<std::size_t>(lat.nx + 1) * (lat.nt + 1));
    for (int j = 0; j <= lat.nt; ++j)
        for (int i = 0; i <= lat.nx; ++i) site.push_back(haar_sample(cfg.group(), rng));
    auto at = [&](int i, int j) -> const GroupElement& {
        return site[static_cast<std::size_t>(j) * (lat.nx + 1) + i];
    };
    for (int j = 0; j <= lat.nt; ++j)
        for (int i = 0; i < lat.nx; ++i)
            cfg.xlink(i, j) = mul(at(i, j), mul(cfg.xlink(i, j), inverse(at(i + 1, j))));
    for (int j = 0; j < lat.nt; ++j)
        for (int i = 0; i <= lat.nx; ++i)
            cfg.tlink(i, j) = mul(at(i, j), mul(cfg.tlink(i, j), inverse(at(i, j + 1))));
}

} // namespace ym2
