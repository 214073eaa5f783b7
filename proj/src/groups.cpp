#include "ym2/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ym2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void bad_group() { throw std::domain_error("unknown group tag"); }

} // namespace

std::string group_name(GroupId g) {
    switch (g) {
    case GroupId::Circle: return "u1";
    case GroupId::SU2: return "su2";
    case GroupId::SU3: return "su3";
    }
    bad_group();
}

std::string Irrep::name() const {
    switch (group) {
    case GroupId::Circle: return "n" + std::to_string(label.a);
    case GroupId::SU2: return "k" + std::to_string(label.a);
    case GroupId::SU3:
        return "p" + std::to_string(label.a) + "q" + std::to_string(label.b);
    }
    bad_group();
}

Irrep irrep_data(GroupId group, IrrepLabel label) {
    Irrep r;
    r.group = group;
    r.label = label;
    switch (group) {
    case GroupId::Circle: {
        if (label.b != 0) throw std::domain_error("circle irrep label is a single charge");
        r.dim = 1;
        r.casimir = static_cast<double>(label.a) * label.a;
        return r;
    }
    case GroupId::SU2: {
        if (label.a < 0 || label.b != 0)
            throw std::domain_error("su2 irrep label k must be a nonnegative integer");
        double j = 0.5 * label.a;
        r.dim = label.a + 1;
        r.casimir = j * (j + 1.0);
        return r;
    }
    case GroupId::SU3: {
        int p = label.a, q = label.b;
        if (p < 0 || q < 0)
            throw std::domain_error("su3 irrep label (p,q) must be nonnegative integers");
        r.dim = (p + 1) * (q + 1) * (p + q + 2) / 2;
        r.casimir = (static_cast<double>(p) * p + static_cast<double>(q) * q +
                     static_cast<double>(p) * q + 3.0 * p + 3.0 * q) / 3.0;
        return r;
    }
    }
    bad_group();
}

std::vector<Irrep> enumerate_irreps(GroupId group, double casimir_cutoff) {
    if (casimir_cutoff < 0.0) throw std::domain_error("casimir cutoff must be >= 0");
    std::vector<Irrep> out;
    switch (group) {
    case GroupId::Circle: {
        int nmax = static_cast<int>(std::floor(std::sqrt(casimir_cutoff)));
        for (int n = -nmax; n <= nmax; ++n) out.push_back(irrep_data(group, {n, 0}));
        break;
    }
    case GroupId::SU2: {
        for (int k = 0;; ++k) {
            Irrep r = irrep_data(group, {k, 0});
            if (r.casimir > casimir_cutoff) break;
            out.push_back(r);
        }
        break;
    }
    case GroupId::SU3: {
        // c >= (p^2 + 3p)/3, so p is bounded by the cutoff
        for (int p = 0;; ++p) {
            if ((static_cast<double>(p) * p + 3.0 * p) / 3.0 > casimir_cutoff && p > 0) break;
            bool any = false;
            for (int q = 0;; ++q) {
                Irrep r = irrep_data(group, {p, q});
                if (r.casimir > casimir_cutoff) break;
                out.push_back(r);
                any = true;
            }
            if (!any) break;
        }
        break;
    }
    }
    std::sort(out.begin(), out.end(), [](const Irrep& x, const Irrep& y) {
        if (x.casimir != y.casimir) return x.casimir < y.casimir;
        if (x.label.a != y.label.a) return x.label.a < y.label.a;
        return x.label.b < y.label.b;
    });
    return out;
}

namespace detail {

double wrap_angle_2pi(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

double wrap_angle_pi(double theta) {
    double t = std::fmod(theta + std::numbers::pi, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t - std::numbers::pi;
}

double su2_char_from_cos(int k, double c) {
    // U_0 = 1, U_1 = 2c, U_{m+1} = 2c U_m - U_{m-1}
    if (k == 0) return 1.0;
    double um1 = 1.0, u = 2.0 * c;
    for (int m = 1; m < k; ++m) {
        double next = 2.0 * c * u - um1;
        um1 = u;
        u = next;
    }
    return u;
}

Su3CharTable::Su3CharTable(Complex e1, int max_degree) {
    Complex e2 = std::conj(e1);
    h.resize(static_cast<std::size_t>(max_degree) + 1);
    h[0] = 1.0;
    if (max_degree >= 1) h[1] = e1;
    if (max_degree >= 2) h[2] = e1 * h[1] - e2;
    for (int k = 3; k <= max_degree; ++k)
        h[static_cast<std::size_t>(k)] = e1 * h[k - 1] - e2 * h[k - 2] + h[k - 3];
}

Complex Su3CharTable::chi(int p, int q) const {
    auto H = [this](int i) -> Complex {
        return i < 0 ? Complex(0.0) : h[static_cast<std::size_t>(i)];
    };
    return H(p + q) * H(q) - H(p + q + 1) * H(q - 1);
}

Complex su3_char_from_trace(int p, int q, Complex e1) {
    return Su3CharTable(e1, p + q + 1).chi(p, q);
}

Complex su3_char_from_angles(int p, int q, double t1, double t2) {
    double t3 = -t1 - t2;
    Complex z1 = std::polar(1.0, t1), z2 = std::polar(1.0, t2), z3 = std::polar(1.0, t3);
    Complex den = (z1 - z2) * (z1 - z3) * (z2 - z3);
    if (std::abs(den) < 1e-8)
        return su3_char_from_trace(p, q, z1 + z2 + z3);
    // numerator alternant det z_k^{l_j}, l = (p+q+2, q+1, 0)
    auto pw = [](double t, int l) { return std::polar(1.0, t * l); };
    int l1 = p + q + 2, l2 = q + 1;
    Complex num = pw(t1, l1) * (pw(t2, l2) - pw(t3, l2))
                - pw(t2, l1) * (pw(t1, l2) - pw(t3, l2))
                + pw(t3, l1) * (pw(t1, l2) - pw(t2, l2));
    return num / den;
}

} // namespace detail

Complex character(const Irrep& irrep, const ClassPoint& x) {
    if (irrep.group != x.group) throw std::domain_error("irrep/class group mismatch");
    switch (irrep.group) {
    case GroupId::Circle:
        return std::polar(1.0, irrep.label.a * x.a);
    case GroupId::SU2: {
        // sin((k+1) theta/2) / sin(theta/2), with the Chebyshev form taking
        // over at the removable singularities theta = 0, 2pi
        double s = std::sin(0.5 * x.a);
        if (std::abs(s) < 1e-6)
            return detail::su2_char_from_cos(irrep.label.a, std::cos(0.5 * x.a));
        return std::sin(0.5 * (irrep.label.a + 1) * x.a) / s;
    }
    case GroupId::SU3:
        return detail::su3_char_from_angles(irrep.label.a, irrep.label.b, x.a, x.b);
    }
    bad_group();
}

Complex character(const Irrep& irrep, const GroupElement& g) {
    if (irrep.group != g.group) throw std::domain_error("irrep/element group mismatch");
    switch (irrep.group) {
    case GroupId::Circle:
        return std::polar(1.0, irrep.label.a * std::get<double>(g.value));
    case GroupId::SU2:
        return detail::su2_char_from_cos(irrep.label.a, std::get<Su2Elem>(g.value).w);
    case GroupId::SU3:
        return detail::su3_char_from_trace(irrep.label.a, irrep.label.b,
                                           std::get<Su3Elem>(g.value).trace());
    }
    bad_group();
}

double weyl_density(GroupId group, const ClassPoint& x) {
    switch (group) {
    case GroupId::Circle:
        return 1.0 / kTwoPi;
    case GroupId::SU2: {
        double s = std::sin(0.5 * x.a);
        return s * s / std::numbers::pi;
    }
    case GroupId::SU3: {
        double t1 = x.a, t2 = x.b, t3 = -x.a - x.b;
        auto d2 = [](double u) {
            double s = std::sin(0.5 * u);
            return 4.0 * s * s;
        };
        // |Delta|^2 / (3! (2pi)^2)
        return d2(t1 - t2) * d2(t1 - t3) * d2(t2 - t3) / (6.0 * kTwoPi * kTwoPi);
    }
    }
    bad_group();
}

ClassPoint identity_class(GroupId group) { return {group, 0.0, 0.0}; }

GroupElement identity_element(GroupId group) {
    switch (group) {
    case GroupId::Circle: return {group, 0.0};
    case GroupId::SU2: return {group, Su2Elem{}};
    case GroupId::SU3: return {group, Su3Elem(Su3Elem::Identity())};
    }
    bad_group();
}

namespace {

Su2Elem qmul(const Su2Elem& p, const Su2Elem& q) {
    Su2Elem r{p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
              p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
              p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
              p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
    double n = std::sqrt(r.w * r.w + r.x * r.x + r.y * r.y + r.z * r.z);
    r.w /= n; r.x /= n; r.y /= n; r.z /= n;
    return r;
}

// project back onto SU(3): modified Gram-Schmidt, then divide out det^{1/3}
Su3Elem su3_unitarize(Su3Elem m) {
    for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < c; ++k) m.col(c) -= m.col(k).dot(m.col(c)) * m.col(k);
        m.col(c) /= m.col(c).norm();
    }
    Complex det = m.determinant();
    m /= std::polar(1.0, std::arg(det) / 3.0);
    return m;
}

} // namespace

GroupElement mul(const GroupElement& a, const GroupElement& b) {
    if (a.group != b.group) throw std::domain_error("element group mismatch");
    switch (a.group) {
    case GroupId::Circle:
        return {a.group, detail::wrap_angle_2pi(std::get<double>(a.value) + std::get<double>(b.value))};
    case GroupId::SU2:
        return {a.group, qmul(std::get<Su2Elem>(a.value), std::get<Su2Elem>(b.value))};
    case GroupId::SU3: {
        Su3Elem m = std::get<Su3Elem>(a.value) * std::get<Su3Elem>(b.value);
        return {a.group, su3_unitarize(m)};
    }
    }
    bad_group();
}

GroupElement inverse(const GroupElement& a) {
    switch (a.group) {
    case GroupId::Circle:
        return {a.group, detail::wrap_angle_2pi(-std::get<double>(a.value))};
    case GroupId::SU2: {
        const Su2Elem& q = std::get<Su2Elem>(a.value);
        return {a.group, Su2Elem{q.w, -q.x, -q.y, -q.z}};
    }
    case GroupId::SU3:
        return {a.group, Su3Elem(std::get<Su3Elem>(a.value).adjoint())};
    }
    bad_group();
}

GroupElement conjugate(const GroupElement& a, const GroupElement& g) {
    return mul(g, mul(a, inverse(g)));
}

ClassPoint class_of(const GroupElement& a) {
    switch (a.group) {
    case GroupId::Circle:
        return {a.group, detail::wrap_angle_2pi(std::get<double>(a.value)), 0.0};
    case GroupId::SU2: {
        double w = std::clamp(std::get<Su2Elem>(a.value).w, -1.0, 1.0);
        return {a.group, 2.0 * std::acos(w), 0.0};
    }
    case GroupId::SU3: {
        Eigen::ComplexEigenSolver<Su3Elem> es(std::get<Su3Elem>(a.value), false);
        std::array<double, 3> th;
        for (int i = 0; i < 3; ++i) th[static_cast<std::size_t>(i)] = detail::wrap_angle_2pi(std::arg(es.eigenvalues()[i]));
        std::sort(th.begin(), th.end());
        return {a.group, th[0], th[1]};
    }
    }
    bad_group();
}

GroupElement haar_sample(GroupId group, RandomStream& rng) {
    switch (group) {
    case GroupId::Circle:
        return {group, rng.uniform(0.0, kTwoPi)};
    case GroupId::SU2: {
        // uniform on S^3
        Su2Elem q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
        if (n < 1e-14) return {group, Su2Elem{}};
        q.w /= n; q.x /= n; q.y /= n; q.z /= n;
        return {group, q};
    }
    case GroupId::SU3: {
        // Gram-Schmidt of a complex Ginibre matrix is Haar on U(3);
        // dividing by det^{1/3} pushes it down to Haar on SU(3).
        Su3Elem m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = Complex(rng.normal(), rng.normal());
        return {group, su3_unitarize(m)};
    }
    }
    bad_group();
}

GroupElement small_random_element(GroupId group, double step, RandomStream& rng) {
    switch (group) {
    case GroupId::Circle:
        return {group, detail::wrap_angle_2pi(rng.uniform(-step, step))};
    case GroupId::SU2: {
        double ax = rng.normal(), ay = rng.normal(), az = rng.normal();
        double n = std::sqrt(ax * ax + ay * ay + az * az);
        if (n < 1e-14) { ax = 1.0; ay = az = 0.0; n = 1.0; }
        double alpha = rng.uniform(-step, step);
        double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha) / n;
        return {group, Su2Elem{c, s * ax, s * ay, s * az}};
    }
    case GroupId::SU3: {
        // exp(i step H) with H random traceless Hermitian; symmetric in H -> -H
        Su3Elem h;
        double d0 = rng.uniform(-1.0, 1.0), d1 = rng.uniform(-1.0, 1.0), d2 = rng.uniform(-1.0, 1.0);
        double tr = (d0 + d1 + d2) / 3.0;
        h(0, 0) = d0 - tr; h(1, 1) = d1 - tr; h(2, 2) = d2 - tr;
        for (int r = 0; r < 3; ++r)
            for (int c = r + 1; c < 3; ++c) {
                Complex v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                h(r, c) = v;
                h(c, r) = std::conj(v);
            }
        Eigen::SelfAdjointEigenSolver<Su3Elem> es(h);
        Su3Elem u = Su3Elem::Zero();
        for (int i = 0; i < 3; ++i)
            u += std::polar(1.0, step * es.eigenvalues()[i]) *
                 (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
        return {group, su3_unitarize(u)};
    }
    }
    bad_group();
}

} // namespace ym2
