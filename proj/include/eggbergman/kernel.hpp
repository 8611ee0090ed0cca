#ifndef EGGBERGMAN_KERNEL_HPP
#define EGGBERGMAN_KERNEL_HPP

#include "eggbergman/domain.hpp"
#include "eggbergman/sampling.hpp"

#include <string>
#include <vector>

namespace eggb {

/// Weighted kernel data for a domain and weight exponent sigma: the
/// coefficients c_0..c_{n+1} of
///   K(xi,xi') = sum_k c_k (1-<z,z'>)^{a k - n - 1}
///                 / ((1-<z,z'>)^a - <w,w'>)^{sigma+m+k}
/// plus the normalization C with which the projection fixes constants.
struct KernelParams {
    EggDomain domain;
    double sigma;
    std::vector<Complex> coeffs; // length n+2
    double normalization = 1.0;  // C_sigma
    double solve_residual = 0.0;
};

/// Recovers c_0..c_{n+1} by imposing the reproducing property on a spanning
/// set of low-degree monomials. Each monomial contributes one linear
/// equation whose entries are closed-form weighted moments; the system is
/// over-determined and must be consistent to 1e-8, else this throws with a
/// residual report. The normalization is fixed so the projection maps the
/// constant 1 to itself.
KernelParams solve_kernel_coefficients(const EggDomain& d, double sigma);

/// Max residual |sum_k c_k * row_k - 1/C| over the reproducing equations,
/// recomputed from scratch (used to re-validate cached records).
double reproducing_residual(const KernelParams& kp);

/// Kernel evaluation, principal branches. Both points must lie in the
/// closed domain.
Complex bergman_kernel(const KernelParams& kp, const CPoint& p, const CPoint& q);

/// Comparison kernel G: numerator exponent (a-1)(n+2)/2 for 0 < a <= 1 and
/// (a-1)(n+1)/2 for 1 < a <= 2, denominator exponent (sigma+m+n+2)/2.
Complex g_sigma(const KernelParams& kp, const CPoint& p, const CPoint& q);

/// Analytic d K / d xi_k in the first argument (k is the 0-based flat
/// coordinate, z block first).
Complex kernel_gradient(const KernelParams& kp, int k, const CPoint& p, const CPoint& q);

/// The gradient with its conj(coordinate') prefactor stripped, evaluated
/// from the pair products u = <z,z'> and v = <w,w'> alone:
///   d K / d z_k  = conj(z'_k) * kernel_gradient_series(kp, true,  u, v)
///   d K / d w_k  = conj(w'_k) * kernel_gradient_series(kp, false, u, v).
/// No membership checks; hot loops (the ray-operator kernel) scale u, v by
/// the ray parameter before calling.
Complex kernel_gradient_series(const KernelParams& kp, bool z_block, Complex u,
                               Complex v);

/// |d K / d xi_k| / |G|^2 at a pair of interior points. Bounded over the
/// domain square; scanned near the boundary by the verification suites.
double kernel_gradient_ratio(const KernelParams& kp, int k, const CPoint& p,
                             const CPoint& q);

/// [ int_0^1 int h^{sigma-d}(xi') |G(t xi, xi')|^2 dv(xi') dt ] * h^d(xi),
/// with the primed integral estimated by Monte Carlo and the t integral by
/// 32-node Gauss-Legendre quadrature. Requires 0 < d < sigma + 1.
/// Note: the integrand concentrates in an O(h^{n+m+1}) neighbourhood of the
/// boundary as h(xi) -> 0, so uniform-sample estimates at very small h are
/// systematic underestimates; use the series route there.
double g_integral_ratio(const KernelParams& kp, double d, const CPoint& xi,
                        const SamplerSpec& spec);

/// Same quantity through the orthogonal-family expansion
///   G = sum_l Gamma(l+c)/(l! Gamma(c)) psi_{l, a l + b}
/// (branch-dependent b), which turns the double integral into a double series
/// in |z(xi)|^2 and |w(xi)|^2. Exact up to the truncation tolerance 1e-12;
/// throws when the series needs more than max_terms outer terms (the tail is
/// geometric with ratio |w|^2 / (1-|z|^2)^a = 1 - h/(1-|z|^2)^a, so the cost
/// grows like 1/h toward the boundary).
double g_integral_ratio_series(const KernelParams& kp, double d, const CPoint& xi,
                               long max_terms = 2'000'000);

/// One-record text serialization (n, m, a, sigma, c_0..c_{n+1}, C, residual),
/// round-trippable at full double precision.
std::string kernel_record(const KernelParams& kp);
KernelParams parse_kernel_record(const std::string& text);

void save_kernel_record(const KernelParams& kp, const std::string& path);
KernelParams load_kernel_record(const std::string& path);

} // namespace eggb

#endif
