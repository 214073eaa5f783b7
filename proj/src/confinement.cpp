#include "ym2/confinement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ym2 {

PotentialExtraction extract_potential(const std::vector<WilsonDatum>& data, double r_fixed) {
    PotentialExtraction out;
    double rtol = 1e-9 * std::max(1.0, std::abs(r_fixed));
    for (const auto& d : data) {
        if (std::abs(d.r - r_fixed) > rtol) continue;
        if (!(d.w > 0.0)) throw std::domain_error("Wilson values must be positive");
        if (!(d.dt > 0.0)) throw std::domain_error("time extents must be positive");
        PotentialPoint p;
        p.dt = d.dt;
        p.v = -std::log(d.w) / d.dt;
        p.stderr_ = d.stderr_ / (d.w * d.dt);
        out.points.push_back(p);
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const PotentialPoint& a, const PotentialPoint& b) { return a.dt < b.dt; });
    if (out.points.size() < 3)
        throw std::domain_error("potential extraction needs at least 3 time extents");

    const PotentialPoint& last = out.points.back();
    const PotentialPoint& prev = out.points[out.points.size() - 2];
    out.v = last.v;
    out.stderr_ = last.stderr_;
    double combined = std::hypot(last.stderr_, prev.stderr_) +
                      1e-12 * std::max(1.0, std::abs(last.v));
    out.plateau = std::abs(last.v - prev.v) <= combined;
    return out;
}

PotentialFit fit_area_perimeter(const std::vector<AreaPerimeterDatum>& data) {
    std::size_t n = data.size();
    if (n < 4) throw std::domain_error("area/perimeter fit needs at least 4 points");
    bool all_exact = true, all_noisy = true;
    for (const auto& d : data) {
        if (!(d.w > 0.0)) throw std::domain_error("Wilson values must be positive");
        (d.stderr_ > 0.0 ? all_exact : all_noisy) = false;
    }
    if (!all_exact && !all_noisy)
        throw std::domain_error("mixing exact and noisy points in one fit is not supported");

    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sw(static_cast<Eigen::Index>(n)); // sqrt of the weights
    double mean_area = 0.0, mean_perim = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto k = static_cast<Eigen::Index>(i);
        X(k, 0) = data[i].area;
        X(k, 1) = data[i].perimeter;
        X(k, 2) = 1.0;
        y(k) = -std::log(data[i].w);
        sw(k) = all_exact ? 1.0 : 1.0 / data[i].stderr_;
        mean_area += data[i].area;
        mean_perim += data[i].perimeter;
    }
    mean_area /= static_cast<double>(n);
    mean_perim /= static_cast<double>(n);

    Eigen::MatrixXd Xw = sw.asDiagonal() * X;
    Eigen::VectorXd yw = sw.asDiagonal() * y;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xw);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3)
        throw std::domain_error("degenerate design: areas and perimeters do not separate");
    Eigen::Vector3d beta = qr.solve(yw);
    Eigen::Matrix3d gram_inv = (Xw.transpose() * Xw).inverse();

    PotentialFit fit;
    fit.sigma = beta(0);
    fit.mu = beta(1);
    fit.c0 = beta(2);
    fit.residual_norm = (yw - Xw * beta).norm();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) fit.cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = gram_inv(i, j);

    double area_part = fit.sigma * mean_area;
    double perim_part = std::abs(fit.mu) * mean_perim;
    if (area_part > 10.0 * perim_part)
        fit.law = LoopLaw::Area;
    else if (perim_part > 10.0 * area_part)
        fit.law = LoopLaw::Perimeter;
    else
        fit.law = LoopLaw::Ambiguous;
    return fit;
}

CasimirScalingReport casimir_scaling_report(const std::vector<std::pair<Irrep, PotentialFit>>& fits,
                                            const Irrep& reference, double tolerance) {
    const PotentialFit* ref_fit = nullptr;
    for (const auto& [irrep, fit] : fits)
        if (irrep.group == reference.group && irrep.label.a == reference.label.a &&
            irrep.label.b == reference.label.b)
            ref_fit = &fit;
    if (!ref_fit) throw std::domain_error("reference irrep missing from the fit list");
    if (!(ref_fit->sigma > 0.0)) throw std::domain_error("reference string tension must be positive");
    if (!(reference.casimir > 0.0)) throw std::domain_error("reference irrep must be nontrivial");

    CasimirScalingReport report;
    report.tolerance = tolerance;
    for (const auto& [irrep, fit] : fits) {
        ScalingRow row;
        row.irrep = irrep;
        row.measured_ratio = fit.sigma / ref_fit->sigma;
        row.predicted_ratio = irrep.casimir / reference.casimir;
        row.pass = std::abs(row.measured_ratio - row.predicted_ratio) <=
                   tolerance * std::abs(row.predicted_ratio) + 1e-9;
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

std::vector<RectLoop> narrow_loop_family(double r, const std::vector<double>& dts) {
    if (!(r > 0.0)) throw std::domain_error("spatial extent must be positive");
    std::vector<RectLoop> loops;
    for (double dt : dts) {
        if (!(dt > 0.0)) throw std::domain_error("time extents must be positive");
        loops.push_back({r, dt});
    }
    return loops;
}

} // namespace ym2
