#include "eggbergman/quadrature.hpp"

#include "eggbergman/gamma_tools.hpp"
#include "eggbergman/parallel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eggb {

WeightedMeasure::WeightedMeasure(double sigma_) : sigma(sigma_) {
    if (!(sigma > -1.0))
        throw std::invalid_argument("WeightedMeasure: sigma must be > -1");
}

double weighted_volume(const EggDomain& d, const WeightedMeasure& mu) {
    const double s = mu.sigma;
    const double A = d.a * (s + d.m);
    double lg = (d.n + d.m) * std::log(std::numbers::pi) + log_gamma(s + 1.0) +
                log_gamma(A + 1.0) - log_gamma(s + d.m + 1.0) -
                log_gamma(A + d.n + 1.0);
    return std::exp(lg);
}

McEstimate integrate_weighted(const EggDomain& d, const WeightedMeasure& mu,
                              const Integrand& f, const SamplerSpec& spec) {
    const Sampler sampler(d, spec);
    const double volume = weighted_volume(d, WeightedMeasure(0.0));
    const std::uint64_t count = spec.sample_count;

    struct Acc {
        Complex sum{0.0};
        double sum_sq = 0.0; // sum of |weighted integrand|^2
    };
    Acc total = block_mapreduce<Acc>(
        count, 8192, Acc{},
        [&](std::uint64_t lo, std::uint64_t hi) {
            Acc acc;
            CPoint p;
            for (std::uint64_t i = lo; i < hi; ++i) {
                sampler.at_into(i, p);
                double hv = defining_function(d, p);
                double weight = volume * std::pow(hv, mu.sigma);
                Complex val = f(p);
                if (!std::isfinite(val.real()) || !std::isfinite(val.imag()) ||
                    !std::isfinite(weight)) {
                    std::ostringstream msg;
                    msg << "integrate_weighted: non-finite value at sample " << i
                        << " (h = " << hv << ", point =";
                    for (const Complex&-z : {p.z, p.w}) (void)z;
                    for (const Complex& c : p.z)
                        msg << " " << c.real() << (c.imag() < 0 ? "-" : "+")
                            << std::abs(c.imag()) << "i";
                    for (const Complex& c : p.w)
                        msg << " " << c.real() << (c.imag() < 0 ? "-" : "+")
                            << std::abs(c.imag()) << "i";
                    msg << ")";
                    throw std::runtime_error(msg.str());
                }
                Complex g = weight * val;
                acc.sum += g;
                acc.sum_sq += std::norm(g);
            }
            return acc;
        },
        [](Acc a, const Acc& b) {
            a.sum += b.sum;
            a.sum_sq += b.sum_sq;
            return a;
        });

    const double nd = static_cast<double>(count);
    Complex mean = total.sum / nd;
    double var = total.sum_sq / nd - std::norm(mean);
    if (var < 0.0) var = 0.0;
    return McEstimate{mean, std::sqrt(var / nd)};
}

double psi_norm_integral(const EggDomain& d, double s, int k, double r,
                         const CPoint& at, int series_terms) {
    if (!(s > -1.0)) throw std::invalid_argument("psi_norm_integral: s must be > -1");
    if (k < 0) throw std::invalid_argument("psi_norm_integral: k must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("psi_norm_integral: r must be > 0");
    require_point_shape(d, at);
    const double zsq = norm_sq(at.z);
    const double wsq = norm_sq(at.w);
    if (!(zsq < 1.0)) throw std::domain_error("psi_norm_integral: requires |z| < 1");

    const double A = d.a * (s + k + d.m);
    double log_pref = (d.n + d.m) * std::log(std::numbers::pi) + log_gamma(k + 1.0) +
                      log_gamma(s + 1.0) + log_gamma(A + 1.0) - 2.0 * log_gamma(r) -
                      log_gamma(s + k + d.m + 1.0);
    if (k > 0) {
        if (wsq == 0.0) return 0.0;
        log_pref += k * std::log(wsq);
    }

    // term_j = Gamma(j+r)^2 |z|^{2j} / (Gamma(A+j+n+1) j!), summed in linear
    // space relative to term_0 (the terms decay geometrically).
    double log_t0 = 2.0 * log_gamma(r) - log_gamma(A + d.n + 1.0);
    double term = 1.0; // relative to exp(log_t0)
    double sum = term;
    if (zsq == 0.0)
        return std::exp(log_pref + log_t0);
    bool converged = false;
    for (int j = 0; j < series_terms; ++j) {
        double ratio = (j + r) * (j + r) * zsq / ((A + j + d.n + 1.0) * (j + 1.0));
        term *= ratio;
        sum += term;
        if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-14 * sum) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error(
            "psi_norm_integral: series not converged within " +
            std::to_string(series_terms) + " terms");
    return std::exp(log_pref + log_t0) * sum;
}

double monomial_moment(const EggDomain& d, double sigma, std::span<const int> alpha) {
    if (!(sigma > -1.0)) throw std::invalid_argument("monomial_moment: sigma must be > -1");
    if (alpha.size() != static_cast<std::size_t>(d.n + d.m))
        throw std::invalid_argument("monomial_moment: index length mismatch");
    double log_beta_fact = 0.0, log_gamma_fact = 0.0;
    int beta_order = 0, gamma_order = 0;
    for (int i = 0; i < d.n; ++i) {
        if (alpha[i] < 0) throw std::invalid_argument("monomial_moment: negative exponent");
        beta_order += alpha[i];
        log_beta_fact += log_gamma(alpha[i] + 1.0);
    }
    for (int i = d.n; i < d.n + d.m; ++i) {
        if (alpha[i] < 0) throw std::invalid_argument("monomial_moment: negative exponent");
        gamma_order += alpha[i];
        log_gamma_fact += log_gamma(alpha[i] + 1.0);
    }
    const double A = d.a * (sigma + d.m + gamma_order);
    double lg = (d.n + d.m) * std::log(std::numbers::pi) + log_beta_fact +
                log_gamma_fact + log_gamma(sigma + 1.0) + log_gamma(A + 1.0) -
                log_gamma(sigma + d.m + gamma_order + 1.0) -
                log_gamma(A + d.n + beta_order + 1.0);
    return std::exp(lg);
}

namespace {

std::vector<QuadNode> make_gauss_legendre(int n) {
    // Newton iteration on the Legendre polynomial P_n, nodes mapped to [0,1].
    std::vector<QuadNode> nodes(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = QuadNode{0.5 * (x + 1.0), 0.5 * w};
    }
    return nodes;
}

} // namespace

const std::vector<QuadNode>& gauss_legendre_01(int n_nodes) {
    if (n_nodes < 1) throw std::invalid_argument("gauss_legendre_01: need >= 1 node");
    static std::mutex mtx;
    static std::map<int, std::vector<QuadNode>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n_nodes);
    if (it == cache.end()) it = cache.emplace(n_nodes, make_gauss_legendre(n_nodes)).first;
    return it->second;
}

} // namespace eggb
