#ifndef EGGBERGMAN_SAMPLING_HPP
#define EGGBERGMAN_SAMPLING_HPP

#include "eggbergman/domain.hpp"

#include <cstdint>

namespace eggb {

enum class Stratification { none, radial };

struct SamplerSpec {
    std::uint64_t sample_count = 1'000'000;
    std::uint64_t seed = 1;
    Stratification stratification = Stratification::none;

    SamplerSpec() = default;
    SamplerSpec(std::uint64_t count, std::uint64_t seed_,
                Stratification strat = Stratification::none);

    /// Derived spec with an independent stream (suites use distinct salts for
    /// distinct estimators so nothing is accidentally correlated).
    SamplerSpec reseeded(std::uint64_t salt) const;
};

/// Exact sampler for the uniform (volume) measure on the egg domain:
///   - z-direction uniform on the unit sphere of C^n,
///   - s = |z|^2 from the Beta(n, a*m + 1) law (the w-ball volume
///     (1-s)^{a*m} is the exact z-marginal),
///   - w uniform in the ball of radius (1-s)^{a/2} in C^m.
/// Every sample is a pure function of (seed, index) — and of sample_count in
/// the radially stratified mode, which stratifies the Beta draw — so streams
/// are reproducible regardless of how evaluation is partitioned.
class Sampler {
  public:
    Sampler(const EggDomain& d, const SamplerSpec& spec);

    const EggDomain& domain() const { return domain_; }
    const SamplerSpec& spec() const { return spec_; }

    CPoint at(std::uint64_t index) const;
    void at_into(std::uint64_t index, CPoint& out) const;

  private:
    EggDomain domain_;
    SamplerSpec spec_;
};

/// Quantile of the Beta(alpha, beta) distribution.
double beta_quantile(double alpha, double beta, double u);

/// Point on the ray through `direction` (from the origin) where the defining
/// function equals h_target, found by bisection. Used by the near-boundary
/// sup scans. Requires 0 < h_target <= 1 and a nonzero direction.
CPoint point_at_level(const EggDomain& d, const CPoint& direction, double h_target);

/// Deterministic scan point for sup estimates: a uniformly drawn direction
/// rescaled so its defining-function value is log-uniform in [h_floor, 1).
/// Tightening the floor therefore genuinely pushes the scan toward the
/// boundary instead of leaving it to the (vanishing) chance of uniform
/// samples landing there.
CPoint scan_point(const EggDomain& d, std::uint64_t seed, std::uint64_t index,
                  double h_floor);

} // namespace eggb

#endif
