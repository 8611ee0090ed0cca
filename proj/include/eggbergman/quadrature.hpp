#ifndef EGGBERGMAN_QUADRATURE_HPP
#define EGGBERGMAN_QUADRATURE_HPP

#include "eggbergman/domain.hpp"
#include "eggbergman/sampling.hpp"

#include <functional>
#include <span>
#include <vector>

namespace eggb {

/// Weight exponent sigma of the measure h^sigma dv; requires sigma > -1.
struct WeightedMeasure {
    double sigma;

    explicit WeightedMeasure(double sigma_);
};

/// Closed form of int_{Omega_a} h^sigma dv:
///   pi^{n+m} Gamma(sigma+1) Gamma(a(sigma+m)+1)
///     / (Gamma(sigma+m+1) Gamma(a(sigma+m)+n+1)).
double weighted_volume(const EggDomain& d, const WeightedMeasure& mu);

struct McEstimate {
    Complex estimate;
    double std_error = 0.0; // standard error of the complex estimate's modulus spread
};

using Integrand = std::function<Complex(const CPoint&)>;

/// Unbiased Monte-Carlo estimate of int h^sigma f dv over the egg domain.
/// Samples are uniform for the volume measure; the importance weight is
/// volume * h^sigma(sample). Throws (naming the sample) on non-finite
/// integrand values. Deterministic for a fixed spec, any thread count.
McEstimate integrate_weighted(const EggDomain& d, const WeightedMeasure& mu,
                              const Integrand& f, const SamplerSpec& spec);

/// Weighted L2 integral of psi_{k,r}(xi, .) = <w,w'>^k / (1 - <z,z'>)^r over
/// the primed variable against h^s dv:
///   pi^{n+m} k! Gamma(s+1) Gamma(a(s+k+m)+1)
///       / (Gamma(r)^2 Gamma(s+k+m+1)) * |w|^{2k}
///     * sum_j Gamma(j+r)^2 |z|^{2j} / (Gamma(a(s+k+m)+j+n+1) j!).
/// The series converges geometrically (ratio -> |z|^2 < 1); summation stops
/// once the ratio-test tail bound drops below 1e-14 relative, and throws if
/// series_terms is exhausted first.
double psi_norm_integral(const EggDomain& d, double s, int k, double r,
                         const CPoint& at, int series_terms = 20000);

/// Closed-form weighted moment int h^sigma |xi^alpha|^2 dv for a multi-index
/// alpha = (beta, gamma) split across the z and w blocks:
///   pi^{n+m} beta! gamma! Gamma(sigma+1) Gamma(a(sigma+m+|gamma|)+1)
///     / (Gamma(sigma+m+|gamma|+1) Gamma(a(sigma+m+|gamma|)+n+|beta|+1)).
double monomial_moment(const EggDomain& d, double sigma, std::span<const int> alpha);

struct QuadNode {
    double x;
    double weight;
};

/// Gauss-Legendre nodes and weights on [0, 1].
const std::vector<QuadNode>& gauss_legendre_01(int n_nodes = 32);

} // namespace eggb

#endif
