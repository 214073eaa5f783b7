#include "ym2/principles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ym2/stats.hpp"

namespace ym2 {

UniversalityReport verify_universality(const ExpectationTable& table, const Irrep& reference) {
    if (reference.trivial()) throw std::domain_error("reference irrep must be nontrivial");

    // index the reference entry per loop
    std::map<std::string, const ExpectationEntry*> ref_by_loop;
    for (const auto& e : table.entries)
        if (e.irrep.group == reference.group && e.irrep.label.a == reference.label.a &&
            e.irrep.label.b == reference.label.b)
            ref_by_loop[e.loop_id] = &e;

    UniversalityReport report;
    bool any_nonref = false;
    for (const auto& e : table.entries) {
        bool is_ref = ref_by_loop.count(e.loop_id) && ref_by_loop[e.loop_id] == &e;
        if (is_ref) continue;
        auto it = ref_by_loop.find(e.loop_id);
        if (it == ref_by_loop.end())
            throw std::domain_error("loop '" + e.loop_id + "' has no reference-irrep value");
        const ExpectationEntry& ref = *it->second;
        if (!e.irrep.trivial()) any_nonref = true;

        UniversalityCase c;
        c.irrep = e.irrep;
        c.loop_id = e.loop_id;
        c.measured = e.value / e.irrep.dim;

        double w_ref = std::min(ref.value / ref.irrep.dim, 1.0);
        double exponent = e.irrep.casimir / reference.casimir;
        if (w_ref < kExponentiationFloor) {
            c.inconclusive = true;
            c.expected = 0.0;
            c.residual = 0.0;
            c.pass = true;
        } else {
            c.expected = std::pow(w_ref, exponent);
            c.residual = std::abs(c.measured - c.expected);
            if (e.stderr_ == 0.0 && ref.stderr_ == 0.0) {
                c.tolerance = 1e-10;
            } else {
                double dref = exponent * std::pow(w_ref, exponent - 1.0) * ref.stderr_ / ref.irrep.dim;
                double dval = e.stderr_ / e.irrep.dim;
                c.tolerance = 3.0 * std::sqrt(dref * dref + dval * dval);
            }
            c.pass = c.residual <= c.tolerance;
            report.max_residual = std::max(report.max_residual, c.residual);
        }
        report.pass = report.pass && c.pass;
        report.cases.push_back(std::move(c));
    }
    report.vacuous = !any_nonref;
    return report;
}

std::vector<DefectEntry> wilson_action_defect(GroupId group, double beta_w,
                                              const std::vector<Irrep>& irreps,
                                              QuadratureSpec quad) {
    if (beta_w < 0.0) throw std::domain_error("Wilson coupling must be nonnegative");

    auto re_trace = [group](const ClassPoint& x) {
        switch (group) {
        case GroupId::Circle: return std::cos(x.a);
        case GroupId::SU2: return 2.0 * std::cos(0.5 * x.a);
        case GroupId::SU3: return std::cos(x.a) + std::cos(x.b) + std::cos(x.a + x.b);
        }
        throw std::domain_error("unknown group tag");
    };
    double z = haar_integrate(group, [&](const ClassPoint& x) {
                   return std::exp(beta_w * re_trace(x));
               }, quad).value;

    std::vector<DefectEntry> out;
    std::vector<double> norm_values; // value/dim per input irrep
    for (const auto& r : irreps) {
        if (r.group != group) throw std::domain_error("irrep group mismatch");
        double v = haar_integrate(group, [&](const ClassPoint& x) {
                       return character(r, x).real() * std::exp(beta_w * re_trace(x));
                   }, quad).value / z;
        out.push_back({r, v, 0.0, false});
        norm_values.push_back(v / r.dim);
    }

    // reference: lowest-casimir nontrivial input irrep
    int ref = -1;
    for (std::size_t i = 0; i < irreps.size(); ++i)
        if (!irreps[i].trivial() && (ref < 0 || irreps[i].casimir < irreps[static_cast<std::size_t>(ref)].casimir))
            ref = static_cast<int>(i);
    if (ref < 0) throw std::domain_error("need at least one nontrivial irrep");

    double w_ref = std::min(norm_values[static_cast<std::size_t>(ref)], 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<int>(i) == ref) continue;
        if (w_ref < kExponentiationFloor) {
            out[i].inconclusive = true;
            continue;
        }
        double expected =
            std::pow(w_ref, irreps[i].casimir / irreps[static_cast<std::size_t>(ref)].casimir);
        out[i].defect = std::abs(norm_values[i] - expected);
    }
    return out;
}

bool regions_disjoint(const RectRegion& a, const RectRegion& b) {
    bool x_apart = a.x0 + a.w <= b.x0 || b.x0 + b.w <= a.x0;
    bool y_apart = a.y0 + a.h <= b.y0 || b.y0 + b.h <= a.y0;
    return x_apart || y_apart;
}

IndependenceReport verify_independence(const std::vector<LoopObservable>& loops,
                                       const ChainOutput& mc,
                                       const std::vector<std::vector<int>>& sets,
                                       std::size_t bin_size, bool allow_overlap) {
    if (mc.series.size() != loops.size())
        throw std::domain_error("chain output does not match the loop list");

    IndependenceReport report;
    report.vacuous = true;
    for (const auto& set : sets) {
        for (int idx : set)
            if (idx < 0 || static_cast<std::size_t>(idx) >= loops.size())
                throw std::domain_error("loop index out of range");
        if (!allow_overlap) {
            for (std::size_t i = 0; i < set.size(); ++i)
                for (std::size_t j = i + 1; j < set.size(); ++j)
                    if (!regions_disjoint(loops[static_cast<std::size_t>(set[i])].region,
                                          loops[static_cast<std::size_t>(set[j])].region))
                        throw std::domain_error(
                            "loops share plaquettes; declare overlap intent to test them anyway");
        }

        IndependenceCase c;
        c.loop_indices = set;
        if (set.size() < 2) {
            // single loop: nothing to factorize
            c.joint = c.product = set.empty() ? 1.0 : jackknife(mc.series[static_cast<std::size_t>(set[0])], bin_size).mean;
            c.pass = true;
            report.cases.push_back(std::move(c));
            continue;
        }
        report.vacuous = false;

        std::vector<std::vector<double>> cols;
        for (int idx : set) cols.push_back(mc.series[static_cast<std::size_t>(idx)]);
        std::size_t n = cols[0].size();
        std::vector<double> prod_series(n, 1.0);
        for (const auto& col : cols)
            for (std::size_t i = 0; i < n; ++i) prod_series[i] *= col[i];
        cols.push_back(std::move(prod_series));

        std::size_t k = set.size();
        McEstimate res = jackknife_functional(cols, bin_size, [k](const std::vector<double>& m) {
            double p = 1.0;
            for (std::size_t j = 0; j < k; ++j) p *= m[j];
            return m[k] - p;
        });
        c.joint = jackknife(cols[k], bin_size).mean;
        c.product = c.joint - res.mean;
        c.residual = std::abs(res.mean);
        c.stderr_ = res.stderr_;
        c.tolerance = 3.0 * res.stderr_;
        c.pass = c.residual <= c.tolerance;
        report.pass = report.pass && c.pass;
        report.cases.push_back(std::move(c));
    }
    return report;
}

IndependenceCase verify_independence_exact(double joint, const std::vector<double>& marginals,
                                           double tol) {
    IndependenceCase c;
    c.joint = joint;
    c.product = 1.0;
    for (double m : marginals) c.product *= m;
    c.residual = std::abs(joint - c.product);
    c.tolerance = tol;
    c.pass = c.residual <= tol;
    return c;
}

RegularityReport verify_regularity(const std::vector<RegularityPoint>& curve, const Irrep& irrep,
                                   SizeGauge gauge) {
    if (curve.size() < 3) throw std::domain_error("regularity curve needs at least 3 points");
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!(curve[i].sigma > 0.0)) throw std::domain_error("loop sizes must be positive");
        if (i > 0 && !(curve[i].sigma < curve[i - 1].sigma))
            throw std::domain_error("curve must be sorted by strictly decreasing size");
    }

    RegularityReport report;
    report.gauge = gauge;
    for (const auto& p : curve) report.ratios.push_back((irrep.dim - p.value) / p.sigma);
    report.bound = *std::max_element(report.ratios.begin(), report.ratios.end());

    // Log-log slope over the three smallest sizes. A flat or rising-to-a-
    // plateau ratio has slope near 0; a 1/sigma blowup has slope -1. The
    // dividing line is set halfway-ish, at -1/2.
    std::size_t m = curve.size();
    double floor_ratio = 1e-14 * std::max(1.0, static_cast<double>(irrep.dim));
    double x1 = std::log(curve[m - 3].sigma), x2 = std::log(curve[m - 1].sigma);
    double r1 = std::max(report.ratios[m - 3], floor_ratio);
    double r2 = std::max(report.ratios[m - 1], floor_ratio);
    report.limit_slope = (std::log(r2) - std::log(r1)) / (x2 - x1);
    bool all_tiny = report.bound <= floor_ratio; // trivial irrep: exactly flat
    report.pass = all_tiny || report.limit_slope > -0.5;
    return report;
}

} // namespace ym2
