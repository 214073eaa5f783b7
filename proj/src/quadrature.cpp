#include "ym2/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ym2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

int default_grid_nodes(GroupId group) {
    switch (group) {
    case GroupId::Circle: return 2048;
    case GroupId::SU2: return 2048;
    case GroupId::SU3: return 256;
    }
    throw std::domain_error("unknown group tag");
}

ClassGrid class_grid(GroupId group, int nodes) {
    if (nodes < 2) throw std::domain_error("class grid needs at least 2 nodes");
    ClassGrid g;
    g.group = group;
    switch (group) {
    case GroupId::Circle: {
        g.nodes.reserve(static_cast<std::size_t>(nodes));
        double w = 1.0 / nodes;
        for (int i = 0; i < nodes; ++i) {
            g.nodes.push_back({group, (i + 0.5) * kTwoPi / nodes, 0.0});
            g.weights.push_back(w);
        }
        break;
    }
    case GroupId::SU2: {
        g.nodes.reserve(static_cast<std::size_t>(nodes));
        for (int i = 0; i < nodes; ++i) {
            double phi = (i + 0.5) * std::numbers::pi / nodes;
            double s = std::sin(phi);
            g.nodes.push_back({group, 2.0 * phi, 0.0});
            g.weights.push_back(2.0 * s * s / nodes);
        }
        break;
    }
    case GroupId::SU3: {
        g.nodes.reserve(static_cast<std::size_t>(nodes) * nodes);
        double cell = 1.0 / (6.0 * static_cast<double>(nodes) * nodes);
        auto d2 = [](double u) {
            double s = std::sin(0.5 * u);
            return 4.0 * s * s;
        };
        for (int i = 0; i < nodes; ++i) {
            double t1 = (i + 0.5) * kTwoPi / nodes;
            for (int j = 0; j < nodes; ++j) {
                double t2 = (j + 0.5) * kTwoPi / nodes;
                double t3 = -t1 - t2;
                g.nodes.push_back({group, t1, t2});
                g.weights.push_back(cell * d2(t1 - t2) * d2(t1 - t3) * d2(t2 - t3));
            }
        }
        break;
    }
    }
    return g;
}

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <typename T, typename F>
T grid_sum(const ClassGrid& g, const F& f) {
    T acc{};
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        T v = f(g.nodes[i]);
        if (!finite(v)) throw std::runtime_error("integrand returned a non-finite value");
        acc += g.weights[i] * v;
    }
    return acc;
}

} // namespace

QuadResult haar_integrate(GroupId group,
                          const std::function<double(const ClassPoint&)>& f,
                          QuadratureSpec spec) {
    int n = spec.nodes > 0 ? spec.nodes : default_grid_nodes(group);
    if (n < 4) throw std::domain_error("quadrature needs at least 4 nodes");
    double coarse = grid_sum<double>(class_grid(group, n / 2), f);
    double fine = grid_sum<double>(class_grid(group, n), f);
    QuadResult r;
    r.value = fine;
    r.error_estimate = std::abs(fine - coarse) + 1e-15 * (1.0 + std::abs(fine));
    return r;
}

QuadResultC haar_integrate_c(GroupId group,
                             const std::function<Complex(const ClassPoint&)>& f,
                             QuadratureSpec spec) {
    int n = spec.nodes > 0 ? spec.nodes : default_grid_nodes(group);
    if (n < 4) throw std::domain_error("quadrature needs at least 4 nodes");
    Complex coarse = grid_sum<Complex>(class_grid(group, n / 2), f);
    Complex fine = grid_sum<Complex>(class_grid(group, n), f);
    QuadResultC r;
    r.value = fine;
    r.error_estimate = std::abs(fine - coarse) + 1e-15 * (1.0 + std::abs(fine));
    return r;
}

} // namespace ym2
