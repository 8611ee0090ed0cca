#include "eggbergman/kernel.hpp"

#include "eggbergman/gamma_tools.hpp"
#include "eggbergman/parallel.hpp"
#include "eggbergman/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eggb {

namespace {

// Reproducing equation for one monomial xi^alpha with z-degree j and
// w-degree l: integrating h^sigma * (k-th kernel term)(xi, .) * xi'^alpha
// over the primed variable returns xi^alpha times
//   rising(sigma+m+k, l) * rising(A_l+n+1, j) * moment(alpha) / (beta! gamma!)
// with A_l = a(sigma+m+l). The right-hand side is 1 for every alpha once the
// kernel is normalized to reproduce constants.
double reproducing_row_entry(const EggDomain& d, double sigma, int k, int j, int l) {
    const double al = d.a * (sigma + d.m + l);
    double lg = log_gamma(sigma + d.m + k + l) - log_gamma(sigma + d.m + k) +
                log_gamma(al + d.n + 1 + j) - log_gamma(al + d.n + 1) -
                log_gamma(j + 1.0) - log_gamma(l + 1.0);
    std::vector<int> alpha(d.n + d.m, 0);
    alpha[0] = j;
    alpha[d.n] = l;
    return std::exp(lg) * monomial_moment(d, sigma, alpha);
}

struct MonomialRow {
    int j; // z-degree
    int l; // w-degree
};

std::vector<MonomialRow> spanning_rows(const EggDomain& d) {
    std::vector<MonomialRow> rows;
    for (int l = 0; l <= d.n + 3; ++l) {
        rows.push_back({0, l});
        rows.push_back({1, l});
    }
    rows.push_back({2, 0});
    return rows;
}

// Least squares by Householder QR; throws on rank deficiency.
std::vector<double> solve_least_squares(std::vector<std::vector<double>> A,
                                        std::vector<double> b) {
    const std::size_t rows = A.size();
    const std::size_t cols = A.front().size();
    for (std::size_t c = 0; c < cols; ++c) {
        double norm = 0.0;
        for (std::size_t r = c; r < rows; ++r) norm += A[r][c] * A[r][c];
        norm = std::sqrt(norm);
        if (norm < 1e-300)
            throw std::runtime_error("solve_kernel_coefficients: singular system");
        double alpha = A[c][c] > 0 ? -norm : norm;
        std::vector<double> v(rows, 0.0);
        v[c] = A[c][c] - alpha;
        for (std::size_t r = c + 1; r < rows; ++r) v[r] = A[r][c];
        double vsq = 0.0;
        for (std::size_t r = c; r < rows; ++r) vsq += v[r] * v[r];
        if (vsq < 1e-300)
            throw std::runtime_error("solve_kernel_coefficients: singular system");
        for (std::size_t cc = c; cc < cols; ++cc) {
            double dot = 0.0;
            for (std::size_t r = c; r < rows; ++r) dot += v[r] * A[r][cc];
            double f = 2.0 * dot / vsq;
            for (std::size_t r = c; r < rows; ++r) A[r][cc] -= f * v[r];
        }
        double dotb = 0.0;
        for (std::size_t r = c; r < rows; ++r) dotb += v[r] * b[r];
        double fb = 2.0 * dotb / vsq;
        for (std::size_t r = c; r < rows; ++r) b[r] -= fb * v[r];
    }
    std::vector<double> x(cols, 0.0);
    for (std::size_t c = cols; c-- > 0;) {
        double acc = b[c];
        for (std::size_t cc = c + 1; cc < cols; ++cc) acc -= A[c][cc] * x[cc];
        if (std::abs(A[c][c]) < 1e-300)
            throw std::runtime_error("solve_kernel_coefficients: singular system");
        x[c] = acc / A[c][c];
    }
    return x;
}

} // namespace

KernelParams solve_kernel_coefficients(const EggDomain& d, double sigma) {
    if (!(sigma > -1.0))
        throw std::invalid_argument("solve_kernel_coefficients: sigma must be > -1");
    const int ncoef = d.n + 2;
    const auto rows = spanning_rows(d);

    std::vector<std::vector<double>> A(rows.size(), std::vector<double>(ncoef));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int k = 0; k < ncoef; ++k)
            A[r][k] = reproducing_row_entry(d, sigma, k, rows[r].j, rows[r].l);

    std::vector<double> rhs(rows.size(), 1.0);
    std::vector<double> c = solve_least_squares(A, rhs);

    KernelParams kp{d, sigma, {}, 1.0, 0.0};
    kp.coeffs.reserve(ncoef);
    for (double v : c) kp.coeffs.emplace_back(v, 0.0);

    // normalization from the constant-monomial equation
    double row0 = 0.0;
    for (int k = 0; k < ncoef; ++k)
        row0 += c[k] * reproducing_row_entry(d, sigma, k, 0, 0);
    if (!(row0 > 0.0))
        throw std::runtime_error("solve_kernel_coefficients: non-positive normalization");
    kp.normalization = 1.0 / row0;

    kp.solve_residual = reproducing_residual(kp);
    if (kp.solve_residual > 1e-8) {
        std::ostringstream msg;
        msg << "solve_kernel_coefficients: over-determined system inconsistent, "
               "max residual "
            << kp.solve_residual << " (n=" << d.n << " m=" << d.m << " a=" << d.a
            << " sigma=" << sigma << ")";
        throw std::runtime_error(msg.str());
    }
    return kp;
}

double reproducing_residual(const KernelParams& kp) {
    const auto rows = spanning_rows(kp.domain);
    double worst = 0.0;
    for (const MonomialRow& row : rows) {
        double acc = 0.0;
        for (std::size_t k = 0; k < kp.coeffs.size(); ++k)
            acc += kp.coeffs[k].real() *
                   reproducing_row_entry(kp.domain, kp.sigma, static_cast<int>(k),
                                         row.j, row.l);
        worst = std::max(worst, std::abs(kp.normalization * acc - 1.0));
    }
    return worst;
}

namespace {

struct PairGeometry {
    Complex log_one_minus_u; // log(1 - <z,z'>)
    Complex log_denom;       // log((1-<z,z'>)^a - <w,w'>)
    Complex ratio;           // (1-<z,z'>)^a / denom
};

PairGeometry pair_geometry(const EggDomain& d, const CPoint& p, const CPoint& q) {
    Complex one_minus_u = Complex(1.0) - pairing(p.z, q.z);
    Complex denom = kernel_denominator(d, p, q);
    PairGeometry g;
    g.log_one_minus_u = std::log(one_minus_u);
    g.log_denom = std::log(denom);
    g.ratio = std::exp(d.a * g.log_one_minus_u - g.log_denom);
    return g;
}

} // namespace

Complex bergman_kernel(const KernelParams& kp, const CPoint& p, const CPoint& q) {
    const EggDomain& d = kp.domain;
    PairGeometry g = pair_geometry(d, p, q);
    // sum_k c_k (1-u)^{ak-n-1} E^{-(sigma+m+k)} = base * sum_k c_k ratio^k
    Complex base = std::exp(-(d.n + 1.0) * g.log_one_minus_u -
                            (kp.sigma + d.m) * g.log_denom);
    Complex acc(0.0);
    Complex rk(1.0);
    for (const Complex& c : kp.coeffs) {
        acc += c * rk;
        rk *= g.ratio;
    }
    return base * acc;
}

Complex g_sigma(const KernelParams& kp, const CPoint& p, const CPoint& q) {
    const EggDomain& d = kp.domain;
    PairGeometry g = pair_geometry(d, p, q);
    double num_expo = d.a <= 1.0 ? (d.a - 1.0) * (d.n + 2) / 2.0
                                 : (d.a - 1.0) * (d.n + 1) / 2.0;
    double den_expo = (kp.sigma + d.m + d.n + 2) / 2.0;
    return std::exp(num_expo * g.log_one_minus_u - den_expo * g.log_denom);
}

Complex kernel_gradient_series(const KernelParams& kp, bool z_block, Complex u,
                               Complex v) {
    const EggDomain& d = kp.domain;
    const double sm = kp.sigma + d.m;
    Complex one_minus_u = Complex(1.0) - u;
    Complex log_one_minus_u = std::log(one_minus_u);
    Complex denom = std::exp(d.a * log_one_minus_u) - v;
    Complex log_denom = std::log(denom);
    Complex ratio = std::exp(d.a * log_one_minus_u - log_denom);

    if (z_block) {
        // d/dz_k term_j = conj(z'_k) * base * (a (sigma+m+j) ratio^{j+1}
        //                                      - (a j - n - 1) ratio^j)
        // with base = (1-u)^{-n-2} E^{-(sigma+m)}
        Complex base = std::exp(-(d.n + 2.0) * log_one_minus_u - sm * log_denom);
        Complex acc(0.0);
        Complex rj(1.0);
        for (std::size_t j = 0; j < kp.coeffs.size(); ++j) {
            double pj = d.a * j - d.n - 1.0;
            double qj = sm + j;
            acc += kp.coeffs[j] * (d.a * qj * ratio - pj) * rj;
            rj *= ratio;
        }
        return base * acc;
    }

    // d/dw_k term_j = (sigma+m+j) conj(w'_k) (1-u)^{aj-n-1} E^{-(sigma+m+j+1)}
    Complex base = std::exp(-(d.n + 1.0) * log_one_minus_u - (sm + 1.0) * log_denom);
    Complex acc(0.0);
    Complex rj(1.0);
    for (std::size_t j = 0; j < kp.coeffs.size(); ++j) {
        acc += kp.coeffs[j] * (sm + j) * rj;
        rj *= ratio;
    }
    return base * acc;
}

Complex kernel_gradient(const KernelParams& kp, int k, const CPoint& p, const CPoint& q) {
    const EggDomain& d = kp.domain;
    if (k < 0 || k >= d.n + d.m)
        throw std::invalid_argument("kernel_gradient: coordinate out of range");
    // membership validation (and the nonvanishing guarantee) via the checked
    // denominator path
    (void)kernel_denominator(d, p, q);
    Complex u = pairing(p.z, q.z);
    Complex v = pairing(p.w, q.w);
    if (k < d.n)
        return std::conj(q.z[k]) * kernel_gradient_series(kp, true, u, v);
    return std::conj(q.w[k - d.n]) * kernel_gradient_series(kp, false, u, v);
}

double kernel_gradient_ratio(const KernelParams& kp, int k, const CPoint& p,
                             const CPoint& q) {
    Complex grad = kernel_gradient(kp, k, p, q);
    Complex g = g_sigma(kp, p, q);
    return std::abs(grad) / std::norm(g);
}

double g_integral_ratio(const KernelParams& kp, double d, const CPoint& xi,
                        const SamplerSpec& spec) {
    const EggDomain& dom = kp.domain;
    if (!(d > 0.0) || !(d < kp.sigma + 1.0))
        throw std::invalid_argument("g_integral_ratio: need 0 < d < sigma + 1");
    require_point_shape(dom, xi);
    const double h_xi = defining_function(dom, xi);
    if (!(h_xi > 0.0))
        throw std::domain_error("g_integral_ratio: xi must be interior");

    const auto& tq = gauss_legendre_01(32);
    const Sampler sampler(dom, spec);
    const double volume = weighted_volume(dom, WeightedMeasure(0.0));
    const double mu = kp.sigma - d;

    double total = block_mapreduce<double>(
        spec.sample_count, 4096, 0.0,
        [&](std::uint64_t lo, std::uint64_t hi) {
            double acc = 0.0;
            CPoint prime;
            CPoint scaled = xi;
            for (std::uint64_t i = lo; i < hi; ++i) {
                sampler.at_into(i, prime);
                double hp = defining_function(dom, prime);
                double tsum = 0.0;
                for (const QuadNode& node : tq) {
                    for (std::size_t c = 0; c < scaled.z.size(); ++c)
                        scaled.z[c] = node.x * xi.z[c];
                    for (std::size_t c = 0; c < scaled.w.size(); ++c)
                        scaled.w[c] = node.x * xi.w[c];
                    tsum += node.weight * std::norm(g_sigma(kp, scaled, prime));
                }
                acc += std::pow(hp, mu) * tsum;
            }
            return acc;
        },
        [](double a, double b) { return a + b; });

    double integral = volume * total / static_cast<double>(spec.sample_count);
    return integral * std::pow(h_xi, d);
}

double g_integral_ratio_series(const KernelParams& kp, double d, const CPoint& xi,
                               long max_terms) {
    const EggDomain& dom = kp.domain;
    const double sigma = kp.sigma;
    if (!(d > 0.0) || !(d < sigma + 1.0))
        throw std::invalid_argument("g_integral_ratio_series: need 0 < d < sigma + 1");
    require_point_shape(dom, xi);
    const double zsq = norm_sq(xi.z);
    const double wsq = norm_sq(xi.w);
    const double h_xi = defining_function(dom, xi);
    if (!(h_xi > 0.0))
        throw std::domain_error("g_integral_ratio_series: xi must be interior");

    const double mu = sigma - d;
    const double b = dom.a <= 1.0 ? (dom.a * (sigma + dom.m) + dom.n + 2) / 2.0
                                  : (dom.a * (sigma + dom.m + 1) + dom.n + 1) / 2.0;
    const double c = (sigma + dom.m + dom.n + 2) / 2.0;
    const double outer_ratio_limit = wsq / std::pow(1.0 - zsq, dom.a);

    double total = 0.0;
    double prev = 0.0;
    for (long l = 0; l < max_terms; ++l) {
        if (l > 0 && wsq == 0.0) break;
        const double r = dom.a * l + b;
        const double A = dom.a * (mu + l + dom.m);
        // squared expansion coefficient times the psi-norm prefactor
        double log_pref = 2.0 * (log_gamma(l + c) - log_gamma(l + 1.0) - log_gamma(c)) +
                          (dom.n + dom.m) * std::log(std::numbers::pi) +
                          log_gamma(l + 1.0) + log_gamma(mu + 1.0) +
                          log_gamma(A + 1.0) - 2.0 * log_gamma(r) -
                          log_gamma(mu + l + dom.m + 1.0) +
                          (l > 0 ? l * std::log(wsq) : 0.0);
        double inner = 0.0;
        double jterm = 1.0; // relative to exp(log_j0)
        double log_j0 = 2.0 * log_gamma(r) - log_gamma(A + dom.n + 1.0) -
                        std::log(2.0 * l + 1.0);
        inner = jterm;
        if (zsq > 0.0) {
            for (long j = 0;; ++j) {
                double ratio = (j + r) * (j + r) * zsq /
                               ((A + j + dom.n + 1.0) * (j + 1.0)) *
                               (2.0 * (l + j) + 1.0) / (2.0 * (l + j) + 3.0);
                jterm *= ratio;
                inner += jterm;
                if (ratio < 1.0 && jterm * ratio / (1.0 - ratio) < 1e-14 * inner) break;
                if (j > 100000)
                    throw std::runtime_error(
                        "g_integral_ratio_series: inner series not converged");
            }
        }
        double contribution = std::exp(log_pref + log_j0) * inner;
        total += contribution;
        // geometric tail once the outer terms decay like the limit ratio
        if (l > 8 && contribution < prev) {
            double rho = std::max(contribution / prev, outer_ratio_limit);
            if (rho < 1.0 && contribution * rho / (1.0 - rho) < 1e-12 * total) break;
        }
        prev = contribution;
        if (l == max_terms - 1)
            throw std::runtime_error(
                "g_integral_ratio_series: outer series not converged within " +
                std::to_string(max_terms) + " terms");
    }
    return total * std::pow(h_xi, d);
}

std::string kernel_record(const KernelParams& kp) {
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "eggbergman-kernel 1\n";
    out << "n " << kp.domain.n << "\n";
    out << "m " << kp.domain.m << "\n";
    out << "a " << fmt(kp.domain.a) << "\n";
    out << "sigma " << fmt(kp.sigma) << "\n";
    for (std::size_t k = 0; k < kp.coeffs.size(); ++k)
        out << "c" << k << " " << fmt(kp.coeffs[k].real()) << " "
            << fmt(kp.coeffs[k].imag()) << "\n";
    out << "C " << fmt(kp.normalization) << "\n";
    out << "residual " << fmt(kp.solve_residual) << "\n";
    return out.str();
}

KernelParams parse_kernel_record(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "eggbergman-kernel" || version != 1)
        throw std::runtime_error("kernel record: unrecognized header");
    int n = 0, m = 0;
    double a = 0.0, sigma = 0.0;
    std::string key;
    auto expect = [&](const char* want) {
        if (!(in >> key) || key != want)
            throw std::runtime_error(std::string("kernel record: expected '") + want +
                                     "'");
    };
    expect("n");
    in >> n;
    expect("m");
    in >> m;
    expect("a");
    in >> a;
    expect("sigma");
    in >> sigma;
    if (!in) throw std::runtime_error("kernel record: truncated header");
    KernelParams kp{EggDomain(n, m, a), sigma, {}, 1.0, 0.0};
    for (int k = 0; k < n + 2; ++k) {
        expect(("c" + std::to_string(k)).c_str());
        double re = 0.0, im = 0.0;
        in >> re >> im;
        if (!in) throw std::runtime_error("kernel record: truncated coefficients");
        kp.coeffs.emplace_back(re, im);
    }
    expect("C");
    in >> kp.normalization;
    expect("residual");
    in >> kp.solve_residual;
    if (!in) throw std::runtime_error("kernel record: truncated record");
    return kp;
}

void save_kernel_record(const KernelParams& kp, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open kernel record for writing: " + path);
    out << kernel_record(kp);
    if (!out) throw std::runtime_error("failed writing kernel record: " + path);
}

KernelParams load_kernel_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open kernel record: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kernel_record(buf.str());
}

} // namespace eggb
