#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eggbergman/gamma_tools.hpp"
#include "eggbergman/kernel.hpp"
#include "eggbergman/quadrature.hpp"
#include "eggbergman/rng.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace eggb;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> flat(const CPoint& p) {
    std::vector<Complex> out;
    for (const Complex& c : p.z) out.push_back(c);
    for (const Complex& c : p.w) out.push_back(c);
    return out;
}

// Independent evaluation of the smoothing-bound integral
//   int_0^1 int h^{mu}(xi') |G(t xi, xi')|^2 dv(xi') dt
// through the orthogonal-family expansion G = sum_l gamma_l psi_{l, a l + b}
// with gamma_l = Gamma(l+c)/(l! Gamma(c)): a double series in |w|^{2l} |z|^{2j}
// of the fixed point, the 1/(2(l+j)+1) factor coming from the t-power.
double g_integral_series(const EggDomain& d, double sigma, double mu,
                         const CPoint& xi) {
    const double b = (d.a * (sigma + d.m) + d.n + 2) / 2.0;
    const double c = (sigma + d.m + d.n + 2) / 2.0;
    const double zsq = norm_sq(xi.z);
    const double wsq = norm_sq(xi.w);
    double total = 0.0;
    for (int l = 0; l < 400; ++l) {
        if (l > 0 && wsq == 0.0) break;
        double log_gamma_l = log_gamma(l + c) - log_gamma(l + 1.0) - log_gamma(c);
        double A = d.a * (mu + l + d.m);
        double log_pref = 2.0 * log_gamma_l + (d.n + d.m) * std::log(kPi) +
                          log_gamma(l + 1.0) + log_gamma(mu + 1.0) +
                          log_gamma(A + 1.0) - 2.0 * log_gamma(d.a * l + b) -
                          log_gamma(mu + l + d.m + 1.0) +
                          (l > 0 ? l * std::log(wsq) : 0.0);
        double inner = 0.0;
        for (int j = 0; j < 400; ++j) {
            if (j > 0 && zsq == 0.0) break;
            double lt = 2.0 * log_gamma(j + d.a * l + b) -
                        log_gamma(A + j + d.n + 1.0) - log_gamma(j + 1.0) +
                        (j > 0 ? j * std::log(zsq) : 0.0) -
                        std::log(2.0 * (l + j) + 1.0);
            double term = std::exp(lt);
            inner += term;
            if (j > 4 && term < 1e-16 * inner) break;
        }
        double contribution = std::exp(log_pref) * inner;
        total += contribution;
        if (l > 4 && contribution < 1e-16 * total) break;
    }
    return total;
}

} // namespace

TEST_CASE("coefficient recovery: exact values at sigma = 0") {
    // the reproducing rows force, for n = m = 1:
    //   a = 1.0 -> (0, 0, 2/pi^2)            (the ball kernel)
    //   a = 0.5 -> (0, 1/(2 pi^2), 1/pi^2)
    //   a = 2.0 -> (0, -1/pi^2, 4/pi^2)
    struct Case {
        double a;
        double c1, c2;
    };
    const Case cases[] = {
        {1.0, 0.0, 2.0 / (kPi * kPi)},
        {0.5, 0.5 / (kPi * kPi), 1.0 / (kPi * kPi)},
        {2.0, -1.0 / (kPi * kPi), 4.0 / (kPi * kPi)},
    };
    for (const Case& c : cases) {
        KernelParams kp = solve_kernel_coefficients(EggDomain(1, 1, c.a), 0.0);
        REQUIRE(kp.coeffs.size() == 3);
        CHECK(std::abs(kp.coeffs[0]) < 1e-12);
        CHECK(kp.coeffs[1].real() == doctest::Approx(c.c1).epsilon(1e-10));
        CHECK(kp.coeffs[2].real() == doctest::Approx(c.c2).epsilon(1e-10));
        CHECK(kp.solve_residual <= 1e-10);
        CHECK(kp.normalization == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(solve_kernel_coefficients(EggDomain(1, 1, 1.0), -1.0),
                    std::invalid_argument);
}

TEST_CASE("ball kernel anchor at a = 1") {
    for (double sigma : {0.0, 1.0}) {
        EggDomain d(1, 1, 1.0);
        KernelParams kp = solve_kernel_coefficients(d, sigma);
        double expected = std::exp(log_gamma(2 + 1 + sigma) - 2.0 * std::log(kPi) -
                                   log_gamma(sigma + 1));
        CHECK(kp.coeffs[2].real() == doctest::Approx(expected).epsilon(1e-10));

        Sampler pts(d, SamplerSpec(1, 3));
        for (int i = 0; i < 100; ++i) {
            CPoint p = pts.at(2 * i), q = pts.at(2 * i + 1);
            Complex ball =
                expected * principal_pow(Complex(1.0) - pairing(flat(p), flat(q)),
                                         -(2.0 + 1.0 + sigma));
            Complex ours = kp.normalization * bergman_kernel(kp, p, q);
            CHECK(std::abs(ours - ball) <= 1e-6 * std::abs(ball));
        }
    }
}

TEST_CASE("kernel structure") {
    EggDomain d(2, 1, 0.5);
    KernelParams kp = solve_kernel_coefficients(d, 0.5);
    Sampler pts(d, SamplerSpec(1, 8));

    for (int i = 0; i < 50; ++i) {
        CPoint p = pts.at(2 * i), q = pts.at(2 * i + 1);
        Complex k1 = bergman_kernel(kp, p, q);
        Complex k2 = bergman_kernel(kp, q, p);
        CHECK(std::abs(k1 - std::conj(k2)) <= 1e-12 * std::max(1.0, std::abs(k1)));
    }

    // against the origin every pairing vanishes: the kernel is the
    // coefficient sum, constant in the other argument
    Complex csum(0.0);
    for (const Complex& c : kp.coeffs) csum += c;
    for (int i = 0; i < 20; ++i) {
        CPoint p = pts.at(100 + i);
        CHECK(std::abs(bergman_kernel(kp, p, CPoint::origin(2, 1)) - csum) < 1e-12);
    }

    CPoint outside(std::vector<Complex>{Complex(0.9), Complex(0.5)},
                   std::vector<Complex>{Complex(0.5)});
    CHECK_THROWS_AS(bergman_kernel(kp, outside, pts.at(0)), std::domain_error);
}

TEST_CASE("comparison function G") {
    // a = 1: the numerator exponent vanishes on both branches
    EggDomain ball(1, 1, 1.0);
    KernelParams kb = solve_kernel_coefficients(ball, 1.0);
    Sampler pts(ball, SamplerSpec(1, 12));
    for (int i = 0; i < 50; ++i) {
        CPoint p = pts.at(2 * i), q = pts.at(2 * i + 1);
        Complex expected = principal_pow(Complex(1.0) - pairing(flat(p), flat(q)),
                                         -(1.0 + 1 + 1 + 2) / 2.0);
        CHECK(std::abs(g_sigma(kb, p, q) - expected) <= 1e-13 * std::abs(expected));
    }
    CHECK(g_sigma(kb, CPoint::origin(1, 1), CPoint::origin(1, 1)) == Complex(1.0));

    // |G(t xi, xi')| = |G(t xi', xi)| on both exponent branches
    for (double a : {0.5, 2.0}) {
        EggDomain d(1, 2, a);
        KernelParams kp = solve_kernel_coefficients(d, 0.5);
        Sampler s(d, SamplerSpec(1, 21));
        SampleRng rng(5, 5);
        for (int i = 0; i < 50; ++i) {
            CPoint p = s.at(2 * i), q = s.at(2 * i + 1);
            double t = rng.uniform();
            CPoint tp = p, tq = q;
            for (Complex& c : tp.z) c *= t;
            for (Complex& c : tp.w) c *= t;
            for (Complex& c : tq.z) c *= t;
            for (Complex& c : tq.w) c *= t;
            double g1 = std::abs(g_sigma(kp, tp, q));
            double g2 = std::abs(g_sigma(kp, tq, p));
            CHECK(std::abs(g1 - g2) <= 1e-12 * std::max(1.0, g1));
        }
    }
}

TEST_CASE("gradient against central finite differences") {
    EggDomain d(1, 2, 0.7);
    KernelParams kp = solve_kernel_coefficients(d, 0.5);
    Sampler pts(d, SamplerSpec(1, 14));
    const double h = 1e-6;
    for (int i = 0; i < 20; ++i) {
        CPoint p = pts.at(2 * i), q = pts.at(2 * i + 1);
        for (int k = 0; k < d.n + d.m; ++k) {
            Complex exact = kernel_gradient(kp, k, p, q);
            // holomorphic: the derivative along the real direction suffices
            CPoint hi = p, lo = p;
            if (k < d.n) {
                hi.z[k] += h;
                lo.z[k] -= h;
            } else {
                hi.w[k - d.n] += h;
                lo.w[k - d.n] -= h;
            }
            Complex numeric =
                (bergman_kernel(kp, hi, q) - bergman_kernel(kp, lo, q)) / (2.0 * h);
            CHECK(std::abs(numeric - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("gradient closed form when the first argument is the origin") {
    EggDomain d(2, 1, 0.5);
    double sigma = 1.0;
    KernelParams kp = solve_kernel_coefficients(d, sigma);
    Sampler pts(d, SamplerSpec(1, 31));
    Complex csum(0.0), cqsum(0.0);
    for (std::size_t k = 0; k < kp.coeffs.size(); ++k) {
        csum += kp.coeffs[k];
        cqsum += kp.coeffs[k] * (sigma + d.m + static_cast<double>(k));
    }
    const double zfactor = d.a * (sigma + d.m) + d.n + 1;
    CPoint origin = CPoint::origin(2, 1);
    for (int i = 0; i < 20; ++i) {
        CPoint q = pts.at(i);
        for (int k = 0; k < d.n; ++k) {
            Complex expected = std::conj(q.z[k]) * zfactor * csum;
            CHECK(std::abs(kernel_gradient(kp, k, origin, q) - expected) <=
                  1e-12 * std::max(1.0, std::abs(expected)));
        }
        Complex expected_w = std::conj(q.w[0]) * cqsum;
        CHECK(std::abs(kernel_gradient(kp, d.n, origin, q) - expected_w) <=
              1e-12 * std::max(1.0, std::abs(expected_w)));
    }
    // and it vanishes identically when the second argument is the origin
    CHECK(std::abs(kernel_gradient(kp, 0, pts.at(40), origin)) == 0.0);
    CHECK_THROWS_AS(kernel_gradient(kp, 5, origin, pts.at(0)), std::invalid_argument);
}

TEST_CASE("gradient-to-G ratio is finite near the boundary") {
    for (double a : {0.5, 1.0, 2.0}) {
        EggDomain d(1, 1, a);
        KernelParams kp = solve_kernel_coefficients(d, 1.0);
        double sup = 0.0;
        for (int i = 0; i < 2000; ++i) {
            CPoint p = scan_point(d, 100, i, 1e-6);
            CPoint q = scan_point(d, 200, i, 1e-6);
            for (int k = 0; k < d.n + d.m; ++k)
                sup = std::max(sup, kernel_gradient_ratio(kp, k, p, q));
        }
        CHECK(std::isfinite(sup));
        CHECK(sup > 0.0);
    }
}

TEST_CASE("weighted G integral against the series oracle") {
    EggDomain d(1, 1, 0.5);
    const double sigma = 1.0;
    const double dd = 0.8;
    KernelParams kp = solve_kernel_coefficients(d, sigma);

    CPoint xi = CPoint::origin(1, 1);
    xi.z[0] = Complex(0.35, 0.1);
    xi.w[0] = Complex(-0.2, 0.4);
    double closed = g_integral_series(d, sigma, sigma - dd, xi) *
                    std::pow(defining_function(d, xi), dd);
    double mc = g_integral_ratio(kp, dd, xi, SamplerSpec(300'000, 77));
    CHECK(std::abs(mc - closed) / closed < 0.02);

    // the library's series route must agree with this test's own expansion
    double lib = g_integral_ratio_series(kp, dd, xi);
    CHECK(lib == doctest::Approx(closed).epsilon(1e-9));

    // and with Monte Carlo on the other exponent branch (a > 1, different b)
    EggDomain d2(1, 1, 2.0);
    KernelParams kp2 = solve_kernel_coefficients(d2, sigma);
    CPoint xi2 = CPoint::origin(1, 1);
    xi2.z[0] = Complex(0.3, -0.15);
    xi2.w[0] = Complex(0.25, 0.3);
    double mc2 = g_integral_ratio(kp2, dd, xi2, SamplerSpec(300'000, 79));
    double lib2 = g_integral_ratio_series(kp2, dd, xi2);
    CHECK(std::abs(mc2 - lib2) / lib2 < 0.02);

    // at the origin only the (0,0) term survives: the weighted volume
    double at0 =
        g_integral_ratio(kp, dd, CPoint::origin(1, 1), SamplerSpec(200'000, 78));
    double vol = weighted_volume(d, WeightedMeasure(sigma - dd));
    CHECK(std::abs(at0 - vol) / vol < 0.02);

    CHECK_THROWS_AS(g_integral_ratio(kp, -0.1, xi, SamplerSpec(10, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(g_integral_ratio(kp, sigma + 1.0, xi, SamplerSpec(10, 1)),
                    std::invalid_argument);
}

TEST_CASE("kernel record round trip") {
    KernelParams kp = solve_kernel_coefficients(EggDomain(1, 1, 0.5), 0.25);
    std::string text = kernel_record(kp);
    KernelParams back = parse_kernel_record(text);
    CHECK(back.domain.n == kp.domain.n);
    CHECK(back.domain.m == kp.domain.m);
    CHECK(back.domain.a == kp.domain.a);
    CHECK(back.sigma == kp.sigma);
    for (std::size_t i = 0; i < kp.coeffs.size(); ++i)
        CHECK(back.coeffs[i] == kp.coeffs[i]);
    CHECK(back.normalization == kp.normalization);
    CHECK(kernel_record(back) == text);

    // reloaded coefficients still satisfy the reproducing equations
    CHECK(reproducing_residual(back) <= 1e-10);

    CHECK_THROWS_AS(parse_kernel_record("bogus"), std::runtime_error);
    CHECK_THROWS_AS(parse_kernel_record("eggbergman-kernel 1\nn 1\nm 1\na 0.5\n"),
                    std::runtime_error);

    std::string path = "test_kernel_record.tmp";
    save_kernel_record(kp, path);
    KernelParams loaded = load_kernel_record(path);
    CHECK(kernel_record(loaded) == text);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_kernel_record("does_not_exist.txt"), std::runtime_error);
}
