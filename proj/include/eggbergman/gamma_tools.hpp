#ifndef EGGBERGMAN_GAMMA_TOOLS_HPP
#define EGGBERGMAN_GAMMA_TOOLS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace eggb {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(x+t)^2 / (Gamma(t) Gamma(2x+t)), evaluated in log space.
/// Lies in (0, 1] for x >= 0, t > 0 and tends to 1 as t -> infinity.
double gamma_ratio(double x, double t);

/// Parameter bundle for the two Gamma-quotient bound checks. The derived
/// quantities b, c, mu are always recomputed from (n, m, a, sigma, d).
struct Ineq56Params {
    int n;
    int m;
    double a;
    double sigma; // > -1
    double d;     // 0 < d < sigma + 1

    Ineq56Params(int n_, int m_, double a_, double sigma_, double d_);

    double b() const { return (a * (sigma + m) + n + 2) / 2.0; }
    double c() const { return (sigma + m + n + 2) / 2.0; }
    double mu() const { return sigma - d; }
};

/// Gamma(j+l*a+b)^2 / ((2(l+j)+1) Gamma(a(mu+l+m)+j+n+1) Gamma(j+a(l+d))),
/// log-space evaluation.
double ineq5_ratio(const Ineq56Params& p, long j, long l);

/// Gamma(l+c)^2 Gamma(a(mu+l+m)+1) Gamma(a(l+d))
///   / (Gamma(l+d) Gamma(mu+l+m+1) Gamma(l*a+b)^2), log-space evaluation.
double ineq6_ratio(const Ineq56Params& p, long l);

struct ScanResult {
    double sup = 0.0;
    std::array<long, 2> argmax{0, 0}; // second entry unused for 1-D scans
};

/// Max of f(i) over i in [0, i_max]. Empty range is an error.
ScanResult sup_constant(const std::function<double(long)>& f, long i_max);

/// Max of f(i, j) over the product grid [0, i_max] x [0, j_max].
ScanResult sup_constant(const std::function<double(long, long)>& f, long i_max,
                        long j_max);

/// Dense scan of a Gamma-quotient family with tail diagnostics. `sup` covers
/// the whole grid; `tail_inner` and `tail_outer` are suprema over the bands
/// where max(j,l) falls in [edge/10, edge/1) resp. [edge, grid_max], used to
/// certify that the ratio is not growing toward the grid edge.
struct TailedScan {
    double sup = 0.0;
    std::array<long, 2> argmax{0, 0};
    double tail_inner = 0.0;
    double tail_outer = 0.0;
};

/// Full 2-D scan of ineq5_ratio over j, l in [0, grid_max]^2. Uses the
/// recurrence lnGamma(x+1) = lnGamma(x) + ln(x) along j, which keeps the
/// 10^8-point default grid to a few seconds. Agrees with ineq5_ratio
/// pointwise to ~1e-12.
TailedScan ineq5_sup_scan(const Ineq56Params& p, long grid_max);

/// 1-D scan of ineq6_ratio over l in [0, grid_max].
TailedScan ineq6_sup_scan(const Ineq56Params& p, long grid_max);

} // namespace eggb

#endif
