#include "eggbergman/gamma_tools.hpp"

#include "eggbergman/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace eggb {

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
    return std::lgamma(x);
}

double gamma_ratio(double x, double t) {
    if (x < 0.0) throw std::domain_error("gamma_ratio: x must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("gamma_ratio: t must be > 0");
    return std::exp(2.0 * log_gamma(x + t) - log_gamma(t) - log_gamma(2.0 * x + t));
}

Ineq56Params::Ineq56Params(int n_, int m_, double a_, double sigma_, double d_)
    : n(n_), m(m_), a(a_), sigma(sigma_), d(d_) {
    if (n < 1 || m < 1) throw std::invalid_argument("Ineq56Params: n, m must be >= 1");
    if (!(a > 0.0) || !(a <= 2.0))
        throw std::invalid_argument("Ineq56Params: a must lie in (0, 2]");
    if (!(sigma > -1.0)) throw std::invalid_argument("Ineq56Params: sigma must be > -1");
    if (!(d > 0.0) || !(d < sigma + 1.0))
        throw std::invalid_argument("Ineq56Params: need 0 < d < sigma + 1");
}

double ineq5_ratio(const Ineq56Params& p, long j, long l) {
    if (j < 0 || l < 0) throw std::invalid_argument("ineq5_ratio: indices must be >= 0");
    double lg = 2.0 * log_gamma(j + l * p.a + p.b()) -
                std::log(2.0 * (l + j) + 1.0) -
                log_gamma(p.a * (p.mu() + l + p.m) + j + p.n + 1) -
                log_gamma(j + p.a * (l + p.d));
    return std::exp(lg);
}

double ineq6_ratio(const Ineq56Params& p, long l) {
    if (l < 0) throw std::invalid_argument("ineq6_ratio: index must be >= 0");
    double lg = 2.0 * log_gamma(l + p.c()) + log_gamma(p.a * (p.mu() + l + p.m) + 1) +
                log_gamma(p.a * (l + p.d)) - log_gamma(l + p.d) -
                log_gamma(p.mu() + l + p.m + 1) - 2.0 * log_gamma(l * p.a + p.b());
    return std::exp(lg);
}

ScanResult sup_constant(const std::function<double(long)>& f, long i_max) {
    if (i_max < 0) throw std::invalid_argument("sup_constant: empty grid");
    ScanResult r{f(0), {0, 0}};
    for (long i = 1; i <= i_max; ++i) {
        double v = f(i);
        if (v > r.sup) {
            r.sup = v;
            r.argmax = {i, 0};
        }
    }
    return r;
}

ScanResult sup_constant(const std::function<double(long, long)>& f, long i_max,
                        long j_max) {
    if (i_max < 0 || j_max < 0) throw std::invalid_argument("sup_constant: empty grid");
    ScanResult r{f(0, 0), {0, 0}};
    for (long i = 0; i <= i_max; ++i)
        for (long j = 0; j <= j_max; ++j) {
            double v = f(i, j);
            if (v > r.sup) {
                r.sup = v;
                r.argmax = {i, j};
            }
        }
    return r;
}

namespace {

struct LogTailedScan {
    double sup = -1e300;
    std::array<long, 2> argmax{0, 0};
    double tail_inner = -1e300;
    double tail_outer = -1e300;
};

LogTailedScan fold_max(const LogTailedScan& x, const LogTailedScan& y) {
    LogTailedScan r = x;
    if (y.sup > r.sup) {
        r.sup = y.sup;
        r.argmax = y.argmax;
    }
    r.tail_inner = std::max(r.tail_inner, y.tail_inner);
    r.tail_outer = std::max(r.tail_outer, y.tail_outer);
    return r;
}

TailedScan to_linear(const LogTailedScan& s) {
    TailedScan r;
    r.sup = std::exp(s.sup);
    r.argmax = s.argmax;
    r.tail_inner = s.tail_inner <= -1e299 ? 0.0 : std::exp(s.tail_inner);
    r.tail_outer = s.tail_outer <= -1e299 ? 0.0 : std::exp(s.tail_outer);
    return r;
}

} // namespace

TailedScan ineq5_sup_scan(const Ineq56Params& p, long grid_max) {
    if (grid_max < 10) throw std::invalid_argument("ineq5_sup_scan: grid too small");
    const long edge = grid_max / 10;
    const double b = p.b();
    const double mu = p.mu();

    // One row per l; along j all three Gamma arguments step by exactly 1,
    // so a lnGamma recurrence replaces per-point lgamma calls.
    LogTailedScan total = block_mapreduce<LogTailedScan>(
        static_cast<std::uint64_t>(grid_max) + 1, 64, LogTailedScan{},
        [&](std::uint64_t lo, std::uint64_t hi) {
            LogTailedScan part;
            for (std::uint64_t lu = lo; lu < hi; ++lu) {
                long l = static_cast<long>(lu);
                double argA = l * p.a + b;
                double argB = p.a * (mu + l + p.m) + p.n + 1;
                double argC = p.a * (l + p.d);
                double A = log_gamma(argA);
                double B = log_gamma(argB);
                double C = log_gamma(argC);
                for (long j = 0; j <= grid_max; ++j) {
                    double v = 2.0 * A - B - C - std::log(2.0 * (l + j) + 1.0);
                    long band = std::max(j, l);
                    if (v > part.sup) {
                        part.sup = v;
                        part.argmax = {j, l};
                    }
                    if (band >= edge) {
                        if (v > part.tail_outer) part.tail_outer = v;
                    } else if (band >= edge / 10) {
                        if (v > part.tail_inner) part.tail_inner = v;
                    }
                    A += std::log(argA + j);
                    B += std::log(argB + j);
                    C += std::log(argC + j);
                }
            }
            return part;
        },
        fold_max);
    return to_linear(total);
}

TailedScan ineq6_sup_scan(const Ineq56Params& p, long grid_max) {
    if (grid_max < 10) throw std::invalid_argument("ineq6_sup_scan: grid too small");
    const long edge = grid_max / 10;
    LogTailedScan s;
    for (long l = 0; l <= grid_max; ++l) {
        double v = 2.0 * log_gamma(l + p.c()) + log_gamma(p.a * (p.mu() + l + p.m) + 1) +
                   log_gamma(p.a * (l + p.d)) - log_gamma(l + p.d) -
                   log_gamma(p.mu() + l + p.m + 1) - 2.0 * log_gamma(l * p.a + p.b());
        if (v > s.sup) {
            s.sup = v;
            s.argmax = {l, 0};
        }
        if (l >= edge) {
            if (v > s.tail_outer) s.tail_outer = v;
        } else if (l >= edge / 10) {
            if (v > s.tail_inner) s.tail_inner = v;
        }
    }
    return to_linear(s);
}

} // namespace eggb
