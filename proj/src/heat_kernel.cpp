#include "ym2/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace ym2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Character series below this time needs too many terms for su2/su3 and the
// circle has the image sum instead; documented floor.
constexpr double kMinTimeSu = 1e-3;

void validate_spec(const HeatKernelSpec& spec) {
    if (!(spec.t > 0.0)) throw std::domain_error("heat-kernel time must be positive");
    if (!(spec.truncation_eps > 0.0)) throw std::domain_error("truncation tolerance must be positive");
    if (spec.max_terms < 1) throw std::domain_error("max_terms must be positive");
    if (spec.group != GroupId::Circle && spec.t < kMinTimeSu)
        throw std::domain_error("heat-kernel time below the supported minimum 1e-3 for su2/su3");
}

// Largest dimension among irreps with casimir <= c.
double dim_bound(GroupId group, double c) {
    switch (group) {
    case GroupId::Circle: return 1.0;
    case GroupId::SU2: return std::sqrt(4.0 * c + 1.0) + 1.0;
    case GroupId::SU3: return std::pow(c + 2.0, 1.5) + 1.0;
    }
    throw std::domain_error("unknown group tag");
}

// Self-consistent casimir cutoff guaranteeing that every irrep with
// weight(dim) * exp(-t c/2) >= eps lies below it. `power` is 1 for the
// retention rule and 2 for the dim^2 tail bookkeeping.
double casimir_cutoff(GroupId group, double t, double eps, int power) {
    double c = (2.0 / t) * std::log(1.0 / eps);
    for (int iter = 0; iter < 8; ++iter)
        c = (2.0 / t) * (power * std::log(std::max(dim_bound(group, c), 1.0)) - std::log(eps));
    return c * (1.0 + 1e-9) + 1.0;
}

// Character-series values at many points, sharing per-point recurrences
// across the whole term list. Coefficients are the full dim * exp(-t c/2)
// (or signed differences thereof); only the real part of each character
// contributes, which is exactly the conjugate-pair reduction because every
// term list passed in is symmetric under label conjugation.
std::vector<double> eval_terms(GroupId group, const std::vector<SeriesTerm>& terms,
                               const std::vector<ClassPoint>& pts) {
    std::vector<double> out(pts.size(), 0.0);
    if (terms.empty()) return out;
    switch (group) {
    case GroupId::Circle: {
        int nmax = 0;
        for (const auto& s : terms) nmax = std::max(nmax, std::abs(s.irrep.label.a));
        std::vector<double> coef(static_cast<std::size_t>(nmax) + 1, 0.0);
        for (const auto& s : terms) coef[static_cast<std::size_t>(std::abs(s.irrep.label.a))] += s.coefficient;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double th = pts[i].a;
            double c1 = std::cos(th);
            double cm2 = 1.0, cm1 = c1; // cos(0), cos(th)
            double acc = coef[0] + (nmax >= 1 ? coef[1] * c1 : 0.0);
            for (int m = 2; m <= nmax; ++m) {
                double cm = 2.0 * c1 * cm1 - cm2;
                acc += coef[static_cast<std::size_t>(m)] * cm;
                cm2 = cm1;
                cm1 = cm;
            }
            out[i] = acc;
        }
        break;
    }
    case GroupId::SU2: {
        int kmax = 0;
        for (const auto& s : terms) kmax = std::max(kmax, s.irrep.label.a);
        std::vector<double> coef(static_cast<std::size_t>(kmax) + 1, 0.0);
        for (const auto& s : terms) coef[static_cast<std::size_t>(s.irrep.label.a)] += s.coefficient;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double c = std::cos(0.5 * pts[i].a);
            double um1 = 1.0, u = 2.0 * c; // chi_0, chi_1
            double acc = coef[0] + (kmax >= 1 ? coef[1] * u : 0.0);
            for (int k = 2; k <= kmax; ++k) {
                double next = 2.0 * c * u - um1;
                acc += coef[static_cast<std::size_t>(k)] * next;
                um1 = u;
                u = next;
            }
            out[i] = acc;
        }
        break;
    }
    case GroupId::SU3: {
        int maxdeg = 1;
        for (const auto& s : terms) maxdeg = std::max(maxdeg, s.irrep.label.a + s.irrep.label.b + 1);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double t1 = pts[i].a, t2 = pts[i].b;
            Complex e1 = std::polar(1.0, t1) + std::polar(1.0, t2) + std::polar(1.0, -t1 - t2);
            detail::Su3CharTable tab(e1, maxdeg);
            double acc = 0.0;
            for (const auto& s : terms)
                acc += s.coefficient * tab.chi(s.irrep.label.a, s.irrep.label.b).real();
            out[i] = acc;
        }
        break;
    }
    }
    return out;
}

// Wrapped-Gaussian image sum for the circle density w.r.t. Haar.
double dual_gaussian(double t, double theta) {
    int m_max = static_cast<int>(std::ceil(37.2 * std::sqrt(t) / kTwoPi)) + 1;
    double acc = 0.0;
    for (int m = -m_max; m <= m_max; ++m) {
        double x = theta - kTwoPi * m;
        acc += std::exp(-x * x / (2.0 * t));
    }
    return std::sqrt(kTwoPi / t) * acc;
}

} // namespace

double hk_coefficient(const Irrep& irrep, double t) {
    if (!(t > 0.0)) throw std::domain_error("heat-kernel time must be positive");
    return std::exp(-0.5 * t * irrep.casimir);
}

HeatKernelDensity::HeatKernelDensity(const HeatKernelSpec& spec, SeriesMode mode) : spec_(spec) {
    validate_spec(spec);
    if (mode == SeriesMode::Auto)
        mode = (spec.group == GroupId::Circle && spec.t < 0.5) ? SeriesMode::DualGaussian
                                                               : SeriesMode::Character;
    if (mode == SeriesMode::DualGaussian && spec.group != GroupId::Circle)
        throw std::domain_error("the image-sum series exists only on the circle");
    mode_ = mode;

    if (mode_ == SeriesMode::DualGaussian) {
        int m_max = static_cast<int>(std::ceil(37.2 * std::sqrt(spec.t) / kTwoPi)) + 1;
        trunc_.terms_kept = 2 * m_max + 1;
        double edge = kTwoPi * m_max;
        trunc_.tail_bound = 2.0 * std::sqrt(kTwoPi / spec.t) * std::exp(-edge * edge / (2.0 * spec.t));
        return;
    }

    double cutoff = casimir_cutoff(spec.group, spec.t, spec.truncation_eps, 1);
    std::vector<Irrep> candidates = enumerate_irreps(spec.group, cutoff);
    for (const auto& r : candidates) {
        double coef = r.dim * hk_coefficient(r, spec.t);
        if (coef >= spec.truncation_eps) terms_.push_back({r, coef});
    }
    if (static_cast<int>(terms_.size()) > spec.max_terms) {
        double bound = 0.0;
        for (std::size_t i = static_cast<std::size_t>(spec.max_terms); i < terms_.size(); ++i)
            bound += terms_[i].irrep.dim * terms_[i].coefficient;
        throw TruncationError("heat-kernel series needs " + std::to_string(terms_.size()) +
                                  " terms, max_terms = " + std::to_string(spec.max_terms),
                              static_cast<int>(terms_.size()), bound);
    }
    trunc_.terms_kept = static_cast<int>(terms_.size());

    if (spec.group == GroupId::Circle || spec.group == GroupId::SU2) {
        int top = 0;
        for (const auto& s : terms_) top = std::max(top, std::abs(s.irrep.label.a));
        coef_dense_.assign(static_cast<std::size_t>(top) + 1, 0.0);
        for (const auto& s : terms_)
            coef_dense_[static_cast<std::size_t>(std::abs(s.irrep.label.a))] += s.coefficient;
    } else {
        for (const auto& s : terms_)
            su3_maxdeg_ = std::max(su3_maxdeg_, s.irrep.label.a + s.irrep.label.b + 1);
    }

    // Tail bound: sum dim^2 exp(-t c/2) over everything excluded, summed out
    // to where per-term contributions are 12 orders below eps. Past that
    // cutoff the terms decay superexponentially while their count grows only
    // polynomially, so the remainder is negligible against the leading
    // excluded term (which is at least ~eps).
    double tail_cutoff = casimir_cutoff(spec.group, spec.t, spec.truncation_eps * 1e-12, 2);
    double tail = 0.0;
    for (const auto& r : enumerate_irreps(spec.group, tail_cutoff)) {
        double coef = r.dim * hk_coefficient(r, spec.t);
        if (coef < spec.truncation_eps) tail += r.dim * coef;
    }
    trunc_.tail_bound = tail;
}

double HeatKernelDensity::operator()(const ClassPoint& x) const {
    if (x.group != spec_.group) throw std::domain_error("class point group mismatch");
    if (mode_ == SeriesMode::DualGaussian) return dual_gaussian(spec_.t, x.a);
    return eval_terms(spec_.group, terms_, {x})[0];
}

std::vector<double> HeatKernelDensity::evaluate(const std::vector<ClassPoint>& points) const {
    if (mode_ == SeriesMode::DualGaussian) {
        std::vector<double> out(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = dual_gaussian(spec_.t, points[i].a);
        return out;
    }
    return eval_terms(spec_.group, terms_, points);
}

double HeatKernelDensity::at_identity() const { return (*this)(identity_class(spec_.group)); }

double HeatKernelDensity::from_element(const GroupElement& g) const {
    if (g.group != spec_.group) throw std::domain_error("element group mismatch");
    switch (spec_.group) {
    case GroupId::Circle:
        return (*this)({GroupId::Circle, detail::wrap_angle_2pi(std::get<double>(g.value)), 0.0});
    case GroupId::SU2: {
        double c = std::get<Su2Elem>(g.value).w; // cos(theta/2)
        std::size_t kmax = coef_dense_.size();
        double acc = kmax > 0 ? coef_dense_[0] : 0.0;
        double um1 = 1.0, u = 2.0 * c;
        for (std::size_t k = 1; k < kmax; ++k) {
            acc += coef_dense_[k] * u;
            double next = 2.0 * c * u - um1;
            um1 = u;
            u = next;
        }
        return acc;
    }
    case GroupId::SU3: {
        detail::Su3CharTable tab(std::get<Su3Elem>(g.value).trace(), su3_maxdeg_);
        double acc = 0.0;
        for (const auto& s : terms_)
            acc += s.coefficient * tab.chi(s.irrep.label.a, s.irrep.label.b).real();
        return acc;
    }
    }
    throw std::domain_error("unknown group tag");
}

double hk_density(const HeatKernelSpec& spec, const ClassPoint& x) {
    return HeatKernelDensity(spec).clamped(x);
}

namespace {

// Cell masses -> normalized CDF at cell edges, refusing negative cells.
std::vector<double> masses_to_cdf(const std::vector<double>& mass) {
    std::vector<double> cdf(mass.size() + 1, 0.0);
    for (std::size_t i = 0; i < mass.size(); ++i) cdf[i + 1] = cdf[i] + mass[i];
    double total = cdf.back();
    if (!(total > 0.0)) throw std::runtime_error("density tabulation has no mass");
    for (auto& v : cdf) v /= total;
    cdf.back() = 1.0;
    return cdf;
}

// Piecewise-linear inverse of a tabulated CDF on uniform cells over [0, hi].
double invert_cdf(const double* cdf, std::size_t len, double hi, double u) {
    const double* it = std::upper_bound(cdf, cdf + len, u);
    std::size_t cell = it == cdf ? 0 : static_cast<std::size_t>(it - cdf) - 1;
    if (cell >= len - 1) cell = len - 2;
    double lo = cdf[cell], span = cdf[cell + 1] - cdf[cell];
    double frac = span > 0.0 ? (u - lo) / span : 0.5;
    double h = hi / static_cast<double>(len - 1);
    return (static_cast<double>(cell) + frac) * h;
}

double invert_cdf(const std::vector<double>& cdf, double hi, double u) {
    return invert_cdf(cdf.data(), cdf.size(), hi, u);
}

std::vector<double> cell_masses_1d(const HeatKernelDensity& dens, int n) {
    GroupId g = dens.spec().group;
    std::vector<ClassPoint> mids(static_cast<std::size_t>(n));
    double h = kTwoPi / n;
    for (int i = 0; i < n; ++i) mids[static_cast<std::size_t>(i)] = {g, (i + 0.5) * h, 0.0};
    std::vector<double> f = dens.evaluate(mids);
    std::vector<double> mass(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double w = weyl_density(g, mids[static_cast<std::size_t>(i)]);
        mass[static_cast<std::size_t>(i)] = std::max(f[static_cast<std::size_t>(i)], 0.0) * w * h;
    }
    return mass;
}

double sup_cdf_change_1d(const std::vector<double>& coarse, const std::vector<double>& fine) {
    std::vector<double> fc = masses_to_cdf(coarse), ff = masses_to_cdf(fine);
    double sup = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) sup = std::max(sup, std::abs(fc[i] - ff[2 * i]));
    return sup;
}

std::vector<double> cell_masses_2d(const HeatKernelDensity& dens, int n) {
    std::vector<ClassPoint> mids;
    mids.reserve(static_cast<std::size_t>(n) * n);
    double h = kTwoPi / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mids.push_back({GroupId::SU3, (i + 0.5) * h, (j + 0.5) * h});
    std::vector<double> f = dens.evaluate(mids);
    std::vector<double> mass(mids.size());
    for (std::size_t k = 0; k < mids.size(); ++k)
        mass[k] = std::max(f[k], 0.0) * weyl_density(GroupId::SU3, mids[k]) * h * h;
    return mass;
}

double sup_cdf_change_2d(const std::vector<double>& coarse, int nc,
                         const std::vector<double>& fine, int nf) {
    // Joint CDFs compared at the coarse cell corners via prefix sums.
    auto prefix = [](const std::vector<double>& m, int n) {
        std::vector<double> p(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
        auto at = [n](std::vector<double>& v, int i, int j) -> double& {
            return v[static_cast<std::size_t>(i) * (n + 1) + j];
        };
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                at(p, i, j) = m[static_cast<std::size_t>(i - 1) * n + (j - 1)] + at(p, i - 1, j) +
                              at(p, i, j - 1) - at(p, i - 1, j - 1);
        double total = p.back();
        if (!(total > 0.0)) throw std::runtime_error("density tabulation has no mass");
        for (auto& v : p) v /= total;
        return p;
    };
    std::vector<double> pc = prefix(coarse, nc), pf = prefix(fine, nf);
    int r = nf / nc;
    double sup = 0.0;
    for (int i = 0; i <= nc; ++i)
        for (int j = 0; j <= nc; ++j)
            sup = std::max(sup, std::abs(pc[static_cast<std::size_t>(i) * (nc + 1) + j] -
                                         pf[static_cast<std::size_t>(i * r) * (nf + 1) + j * r]));
    return sup;
}

} // namespace

HeatKernelSampler::HeatKernelSampler(const HeatKernelSpec& spec, SamplerSpec tab) : spec_(spec) {
    validate_spec(spec);
    if (tab.cdf_nodes < 16 || tab.cdf_nodes_2d < 16)
        throw std::domain_error("CDF table too small");
    HeatKernelDensity dens(spec);
    constexpr double kCdfTol = 1e-6;

    // Resolutions double (from half the requested default, so the common
    // case lands exactly on the default) until the retained table's CDF
    // error drops below the tolerance. Midpoint cell masses converge as
    // O(h^2), so the boundary-CDF change between resolutions n and 2n is
    // about three times the error of the 2n table; sup/3 estimates the
    // error of the table we keep.
    if (spec.group != GroupId::SU3) {
        int n = tab.cdf_nodes / 2;
        constexpr int kCap = 1 << 20;
        std::vector<double> mass = cell_masses_1d(dens, n);
        for (;;) {
            if (2 * n > kCap)
                throw std::runtime_error("CDF tabulation did not reach tolerance within the node cap");
            std::vector<double> fine = cell_masses_1d(dens, 2 * n);
            double sup = sup_cdf_change_1d(mass, fine);
            mass = std::move(fine);
            n *= 2;
            if (sup / 3.0 < kCdfTol) break;
        }
        table_nodes_ = n;
        cdf_ = masses_to_cdf(mass);
        return;
    }

    int n = tab.cdf_nodes_2d / 2;
    constexpr int kCap2d = 2048;
    std::vector<double> mass = cell_masses_2d(dens, n);
    for (;;) {
        if (2 * n > kCap2d)
            throw std::runtime_error("CDF tabulation did not reach tolerance within the node cap");
        std::vector<double> fine = cell_masses_2d(dens, 2 * n);
        double sup = sup_cdf_change_2d(mass, n, fine, 2 * n);
        mass = std::move(fine);
        n *= 2;
        if (sup / 3.0 < kCdfTol) break;
    }
    table_nodes_ = n;

    // Marginal over theta1 plus a conditional CDF row per theta1 cell.
    std::vector<double> row_mass(static_cast<std::size_t>(n), 0.0);
    conditional_cdf_.assign(static_cast<std::size_t>(n) * (n + 1), 0.0);
    for (int i = 0; i < n; ++i) {
        double* row = &conditional_cdf_[static_cast<std::size_t>(i) * (n + 1)];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += mass[static_cast<std::size_t>(i) * n + j];
            row[j + 1] = acc;
        }
        row_mass[static_cast<std::size_t>(i)] = acc;
        if (acc > 0.0) {
            for (int j = 0; j <= n; ++j) row[j] /= acc;
            row[n] = 1.0;
        } else {
            // unreachable rows; keep a valid uniform CDF anyway
            for (int j = 0; j <= n; ++j) row[j] = static_cast<double>(j) / n;
        }
    }
    marginal_cdf_ = masses_to_cdf(row_mass);
}

ClassPoint HeatKernelSampler::sample_class(RandomStream& rng) const {
    if (spec_.group != GroupId::SU3) {
        double u = rng.uniform();
        return {spec_.group, invert_cdf(cdf_, kTwoPi, u), 0.0};
    }
    double u1 = rng.uniform(), u2 = rng.uniform();
    int n = table_nodes_;
    double t1 = invert_cdf(marginal_cdf_, kTwoPi, u1);
    int cell = std::min(static_cast<int>(t1 / (kTwoPi / n)), n - 1);
    const double* row = &conditional_cdf_[static_cast<std::size_t>(cell) * (n + 1)];
    double t2 = invert_cdf(row, static_cast<std::size_t>(n) + 1, kTwoPi, u2);
    return {GroupId::SU3, t1, t2};
}

GroupElement HeatKernelSampler::sample(RandomStream& rng) const {
    ClassPoint x = sample_class(rng);
    switch (spec_.group) {
    case GroupId::Circle:
        return {GroupId::Circle, x.a};
    case GroupId::SU2: {
        GroupElement rep{GroupId::SU2, Su2Elem{std::cos(0.5 * x.a), std::sin(0.5 * x.a), 0.0, 0.0}};
        return conjugate(rep, haar_sample(GroupId::SU2, rng));
    }
    case GroupId::SU3: {
        Su3Elem d = Su3Elem::Zero();
        d(0, 0) = std::polar(1.0, x.a);
        d(1, 1) = std::polar(1.0, x.b);
        d(2, 2) = std::polar(1.0, -x.a - x.b);
        return conjugate({GroupId::SU3, d}, haar_sample(GroupId::SU3, rng));
    }
    }
    throw std::domain_error("unknown group tag");
}

GroupElement hk_sample(const HeatKernelSpec& spec, RandomStream& rng) {
    return HeatKernelSampler(spec).sample(rng);
}

double semigroup_residual(GroupId group, double s, double t, QuadratureSpec quad) {
    if (!(s > 0.0) || !(t > 0.0)) throw std::domain_error("convolution times must be positive");
    HeatKernelDensity ks({group, s}, SeriesMode::Character);
    HeatKernelDensity kt({group, t}, SeriesMode::Character);
    HeatKernelDensity kst({group, s + t}, SeriesMode::Character);

    // Coefficients multiply exactly under convolution, so the difference
    // series carries only irreps whose retention differs between the
    // convolved pair and the direct s+t series.
    std::map<std::pair<int, int>, double> diff;
    for (const auto& term : kst.terms())
        diff[{term.irrep.label.a, term.irrep.label.b}] += term.coefficient;
    {
        std::map<std::pair<int, int>, const SeriesTerm*> in_s;
        for (const auto& term : ks.terms()) in_s[{term.irrep.label.a, term.irrep.label.b}] = &term;
        for (const auto& term : kt.terms()) {
            auto it = in_s.find({term.irrep.label.a, term.irrep.label.b});
            if (it == in_s.end()) continue;
            double conv_coef = term.irrep.dim * hk_coefficient(term.irrep, s + t);
            diff[{term.irrep.label.a, term.irrep.label.b}] -= conv_coef;
        }
    }
    std::vector<SeriesTerm> residual_terms;
    for (const auto& [label, coef] : diff) {
        if (coef == 0.0) continue;
        residual_terms.push_back({irrep_data(group, {label.first, label.second}), coef});
    }

    int n = quad.nodes > 0 ? quad.nodes : default_grid_nodes(group);
    ClassGrid grid = class_grid(group, n);
    std::vector<double> vals = eval_terms(group, residual_terms, grid.nodes);
    double sup = 0.0;
    for (double v : vals) sup = std::max(sup, std::abs(v));
    return sup;
}

} // namespace ym2
