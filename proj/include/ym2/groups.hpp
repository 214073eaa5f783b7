#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ym2/random.hpp"

namespace ym2 {

using Complex = std::complex<double>;

enum class GroupId { Circle, SU2, SU3 };

std::string group_name(GroupId g);

// Irrep labels:
//   Circle: charge n = a (any integer)
//   SU2:    k = a = twice the spin (k >= 0, dim k+1)
//   SU3:    Dynkin pair (p, q) = (a, b), p, q >= 0
struct IrrepLabel {
    int a = 0;
    int b = 0;

    friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

struct Irrep {
    GroupId group = GroupId::Circle;
    IrrepLabel label;
    int dim = 1;
    double casimir = 0.0;

    bool trivial() const { return label.a == 0 && label.b == 0; }
    std::string name() const;

    friend bool operator==(const Irrep&, const Irrep&) = default;
};

// Conjugacy-class coordinates.
//   Circle: a = theta in [0, 2pi)
//   SU2:    a = theta in [0, 2pi], eigenvalues e^{+-i theta/2}
//   SU3:    (a, b) = (theta1, theta2) in [0, 2pi)^2, theta3 = -theta1 - theta2
struct ClassPoint {
    GroupId group = GroupId::Circle;
    double a = 0.0;
    double b = 0.0;
};

// Unit quaternion w + xi + yj + zk <-> SU(2) matrix [[w+iz, ix+y], [ix-y, w-iz]];
// the trace is 2w.
struct Su2Elem {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

using Su3Elem = Eigen::Matrix3cd;

struct GroupElement {
    GroupId group = GroupId::Circle;
    std::variant<double, Su2Elem, Su3Elem> value = 0.0;
};

// --- irrep data ------------------------------------------------------------

// Validates the label and fills in dim and Casimir eigenvalue:
//   Circle: dim 1, c = n^2
//   SU2:    dim k+1, c = (k/2)(k/2 + 1)
//   SU3:    dim (p+1)(q+1)(p+q+2)/2, c = (p^2 + q^2 + pq + 3p + 3q)/3
Irrep irrep_data(GroupId group, IrrepLabel label);

// All irreps with casimir <= cutoff, sorted by (casimir, label); deterministic.
std::vector<Irrep> enumerate_irreps(GroupId group, double casimir_cutoff);

// --- characters and class geometry ------------------------------------------

// Unnormalized character tr rho(g) evaluated at a class point.
Complex character(const Irrep& irrep, const ClassPoint& x);

// Character evaluated directly on a group element (trace-based route,
// no eigendecomposition).
Complex character(const Irrep& irrep, const GroupElement& g);

// Density of the Haar pushforward on class coordinates w.r.t. d theta
// (d theta1 d theta2 for SU3); integrates to 1 over the fundamental domain.
double weyl_density(GroupId group, const ClassPoint& x);

ClassPoint identity_class(GroupId group);

// --- group operations --------------------------------------------------------

GroupElement identity_element(GroupId group);
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement conjugate(const GroupElement& a, const GroupElement& g); // g a g^-1
ClassPoint class_of(const GroupElement& a);

// Haar-distributed element; deterministic given the stream state.
GroupElement haar_sample(GroupId group, RandomStream& rng);

// Proposal element near the identity, symmetric under inversion; `step`
// controls the angular scale. step = 0 gives the identity.
GroupElement small_random_element(GroupId group, double step, RandomStream& rng);

namespace detail {

// Complete homogeneous symmetric polynomials h_0..h_max in the eigenvalues of
// an SU(3) element, built from e1 = tr U via h_k = e1 h_{k-1} - e2 h_{k-2} + h_{k-3}
// (e2 = conj(e1), e3 = 1 on SU(3)). Characters follow from Jacobi-Trudi:
//   chi_{(p,q)} = h_{p+q} h_q - h_{p+q+1} h_{q-1}.
// This route has no singularity at coincident eigenvalues.
struct Su3CharTable {
    std::vector<Complex> h;

    Su3CharTable(Complex e1, int max_degree);
    Complex chi(int p, int q) const;
};

Complex su3_char_from_trace(int p, int q, Complex e1);

// Alternant (Weyl character formula) evaluation from eigenangles; falls back
// to the Jacobi-Trudi route when the Vandermonde denominator is < 1e-8.
Complex su3_char_from_angles(int p, int q, double t1, double t2);

// chi_k(SU2) = U_k(c) with c = cos(theta/2), by the Chebyshev recurrence.
double su2_char_from_cos(int k, double c);

double wrap_angle_2pi(double theta);  // into [0, 2pi)
double wrap_angle_pi(double theta);   // into [-pi, pi)

} // namespace detail

} // namespace ym2
