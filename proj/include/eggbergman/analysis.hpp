#ifndef EGGBERGMAN_ANALYSIS_HPP
#define EGGBERGMAN_ANALYSIS_HPP

#include "eggbergman/kernel.hpp"
#include "eggbergman/quadrature.hpp"
#include "eggbergman/taylor.hpp"

#include <vector>

namespace eggb {

/// Integrability parameters of the weighted space: exponent p >= 1 and
/// weight lambda > -1. The solvable regime is p > 1 with lambda >= 0, or
/// p = 1 with any lambda > -1.
struct SpaceParams {
    double p;
    double lambda;

    SpaceParams(double p_, double lambda_);

    bool in_solvable_regime() const {
        return (p > 1.0 && lambda >= 0.0) || (p == 1.0 && lambda > -1.0);
    }
    double conjugate() const; // q with 1/p + 1/q = 1, requires p > 1
};

/// Auxiliary exponents sigma and d used by the boundedness checks. Always
/// satisfies the gate 0 < lambda+1 < p(sigma+1); for p > 1 additionally
/// d lies in (0, sigma+1) intersected with (-sigma/(p-1), 1/(p-1)).
struct ExponentChoice {
    double sigma;
    double d;
};

/// The gate predicate 0 < lambda + 1 < p (sigma + 1).
bool exponent_gate(double p, double lambda, double sigma);

/// Midpoint-of-interval exponent choice:
///   p > 1: sigma = max((lambda+1)/p - 1, 0) + 1 and d at the middle of the
///          admissible interval;
///   p = 1: sigma = lambda + 1 (d fixed at (sigma+1)/2 but unused).
/// Throws outside the solvable regime or if an interval degenerates.
ExponentChoice choose_exponents(const SpaceParams& sp);

/// Monte-Carlo estimate of (int h^lambda |f|^p dv)^{1/p}.
double lp_norm(const EggDomain& d, const SpaceParams& sp, const Integrand& f,
               const SamplerSpec& spec);

/// Monte-Carlo estimate of the weighted projection
///   (T f)(at) = C int h^sigma(xi') K(at, xi') f(xi') dv(xi').
/// Reproduces holomorphic polynomials up to MC error.
McEstimate projection_apply(const KernelParams& kp, const Integrand& f,
                            const CPoint& at, const SamplerSpec& spec);

/// Q(xi, xi') = C * h^sigma(xi') * int_0^1 dK/dxi_k (t xi, xi') dt, the
/// integral kernel of the ray-integral operator; t-integral by 32-node
/// Gauss-Legendre quadrature.
Complex q_kernel(const KernelParams& kp, int k, const CPoint& xi, const CPoint& xi_prime);

struct SchurConstants {
    double c13 = 0.0; // sup_xi  h^d(xi)      int |Q(xi,.)| h^{lambda-d}      dv
    double c14 = 0.0; // sup_xi' h^{d(p-1)}(xi') int |Q(.,xi')| h^{lambda-d(p-1)} dv
    double se13 = 0.0; // MC standard error at the respective argmax
    double se14 = 0.0;
    std::vector<double> sup_point13; // flat re/im coordinates of the argmax points
    std::vector<double> sup_point14;
};

/// Empirical Schur-test constants for the ray-integral kernel with test
/// weight h^{-d/q}: the suprema are taken over `n_outer` near-boundary scan
/// points with defining-function values down to h_floor. Requires p > 1.
SchurConstants schur_test(const EggDomain& d, const SpaceParams& sp,
                          const ExponentChoice& ec, const KernelParams& kp, int k,
                          const SamplerSpec& spec, int n_outer, double h_floor);

/// p = 1 counterpart: sup over scan points xi' of
///   int |Q(xi, xi')| h^lambda(xi) dv(xi) / h^lambda(xi').
/// Requires lambda > -1 and sigma > lambda.
double l1_check(const EggDomain& d, double lambda, const KernelParams& kp, int k,
                const SamplerSpec& spec, int n_outer, double h_floor);

/// Max over the family (and over coordinates) of
///   lp_norm(xi_k T_k f) / lp_norm(f).
double operator_norm_estimate(const EggDomain& d, const SpaceParams& sp,
                              const std::vector<RatPoly>& family,
                              const SamplerSpec& spec);

struct TwoRouteEstimate {
    double direct = 0.0;
    double direct_se = 0.0;
    double symmetric = 0.0;
    double symmetric_se = 0.0;
};

/// Both evaluations of the bounded quantity
///   h^{sigma + d(p-1)}(xi') int_0^1 int h^{-d(p-1)}(xi) |G(t xi, xi')|^2 dv dt:
/// directly, and through the |G(t xi, xi')| = |G(t xi', xi)| symmetry that
/// turns it into the h^{sigma-d'} form with d' = sigma + d(p-1). Independent
/// sample streams; the two must agree within MC error.
TwoRouteEstimate g_bound_two_routes(const EggDomain& d, const SpaceParams& sp,
                                    const ExponentChoice& ec, const KernelParams& kp,
                                    const CPoint& xi_prime, const SamplerSpec& spec);

} // namespace eggb

#endif
