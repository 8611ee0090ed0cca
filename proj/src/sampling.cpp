#include "eggbergman/sampling.hpp"

#include "eggbergman/rng.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <stdexcept>

namespace eggb {

SamplerSpec::SamplerSpec(std::uint64_t count, std::uint64_t seed_, Stratification strat)
    : sample_count(count), seed(seed_), stratification(strat) {
    if (count < 1) throw std::invalid_argument("SamplerSpec: sample_count must be >= 1");
}

SamplerSpec SamplerSpec::reseeded(std::uint64_t salt) const {
    SamplerSpec s = *this;
    s.seed = mix64(seed ^ mix64(salt + 0x5851f42d4c957f2dULL));
    return s;
}

double beta_quantile(double alpha, double beta, double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return boost::math::ibeta_inv(alpha, beta, u);
}

Sampler::Sampler(const EggDomain& d, const SamplerSpec& spec) : domain_(d), spec_(spec) {
    if (spec.sample_count < 1)
        throw std::invalid_argument("Sampler: sample_count must be >= 1");
}

CPoint Sampler::at(std::uint64_t index) const {
    CPoint p;
    at_into(index, p);
    return p;
}

void Sampler::at_into(std::uint64_t index, CPoint& out) const {
    const int n = domain_.n;
    const int m = domain_.m;
    const double a = domain_.a;
    SampleRng rng(spec_.seed, index);

    out.z.resize(n);
    out.w.resize(m);

    // z-direction on the unit sphere of C^n
    double zn = 0.0;
    for (int j = 0; j < n; ++j) {
        double g0, g1;
        rng.normal_pair(g0, g1);
        out.z[j] = Complex(g0, g1);
        zn += g0 * g0 + g1 * g1;
    }
    double u_s = rng.uniform();
    if (spec_.stratification == Stratification::radial)
        u_s = (static_cast<double>(index % spec_.sample_count) + u_s) /
              static_cast<double>(spec_.sample_count);
    double s = beta_quantile(n, a * m + 1.0, u_s);
    double zscale = std::sqrt(s / zn);
    for (int j = 0; j < n; ++j) out.z[j] *= zscale;

    // w uniform in the ball of radius (1-s)^{a/2}
    double wn = 0.0;
    for (int j = 0; j < m; ++j) {
        double g0, g1;
        rng.normal_pair(g0, g1);
        out.w[j] = Complex(g0, g1);
        wn += g0 * g0 + g1 * g1;
    }
    double u_r = rng.uniform();
    double radius = std::pow(1.0 - s, a / 2.0) * std::pow(u_r, 1.0 / (2.0 * m));
    double wscale = radius / std::sqrt(wn);
    for (int j = 0; j < m; ++j) out.w[j] *= wscale;
}

CPoint point_at_level(const EggDomain& d, const CPoint& direction, double h_target) {
    require_point_shape(d, direction);
    if (!(h_target > 0.0) || !(h_target <= 1.0))
        throw std::invalid_argument("point_at_level: h_target must lie in (0, 1]");
    double zsq = norm_sq(direction.z);
    double wsq = norm_sq(direction.w);
    if (zsq + wsq == 0.0)
        throw std::invalid_argument("point_at_level: zero direction");

    // t_hi: ray parameter where |t z|^2 + |t w|^{2/a} reaches 1
    auto boundary_gap = [&](double t) {
        return 1.0 - (t * t * zsq + std::pow(t * t * wsq, 1.0 / d.a));
    };
    double t_hi = 1.0;
    while (boundary_gap(t_hi) > 0.0) t_hi *= 2.0;
    double t_lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (t_lo + t_hi);
        if (boundary_gap(mid) > 0.0)
            t_lo = mid;
        else
            t_hi = mid;
    }

    // h is 1 at t=0 and decreases to 0 along the ray; bisect for the level
    auto h_at = [&](double t) {
        return std::pow(1.0 - t * t * zsq, d.a) - t * t * wsq;
    };
    double lo = 0.0, hi = t_lo;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (h_at(mid) > h_target)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    CPoint p = direction;
    for (Complex& c : p.z) c *= t;
    for (Complex& c : p.w) c *= t;
    return p;
}

CPoint scan_point(const EggDomain& d, std::uint64_t seed, std::uint64_t index,
                  double h_floor) {
    if (!(h_floor > 0.0) || !(h_floor < 1.0))
        throw std::invalid_argument("scan_point: h_floor must lie in (0, 1)");
    Sampler direction_sampler(d, SamplerSpec(1, mix64(seed ^ 0x73c0ffee1234ULL)));
    CPoint direction = direction_sampler.at(index);
    SampleRng level_rng(mix64(seed + 0x9177aa5b00b5ULL), index);
    double level = std::pow(h_floor, 1.0 - level_rng.uniform());
    return point_at_level(d, direction, level);
}

} // namespace eggb
