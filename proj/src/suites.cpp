#include "eggbergman/suites.hpp"

#include "eggbergman/analysis.hpp"
#include "eggbergman/gamma_tools.hpp"
#include "eggbergman/parallel.hpp"
#include "eggbergman/quadrature.hpp"
#include "eggbergman/rng.hpp"
#include "eggbergman/sampling.hpp"
#include "eggbergman/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace eggb {

namespace {

std::uint64_t clamp_u64(std::uint64_t v, std::uint64_t lo, std::uint64_t hi) {
    return std::max(lo, std::min(hi, v));
}

Json point_json(const CPoint& p) {
    Json arr = Json::array();
    for (const Complex& c : p.z) {
        arr.push_back(c.real());
        arr.push_back(c.imag());
    }
    for (const Complex& c : p.w) {
        arr.push_back(c.real());
        arr.push_back(c.imag());
    }
    return arr;
}

/// Shared state for one verification run.
struct SuiteContext {
    const RunConfig& cfg;
    ReportWriter& report;
    std::ostream& log;
    Json base_params;
    std::optional<KernelParams> kernel; // lazily solved, shared across suites

    SuiteContext(const RunConfig& c, ReportWriter& r, std::ostream& l)
        : cfg(c), report(r), log(l) {
        base_params["n"] = c.n;
        base_params["m"] = c.m;
        base_params["a"] = c.a;
        base_params["p"] = c.p;
        base_params["lambda"] = c.lambda;
        base_params["seed"] = c.seed;
        base_params["samples"] = c.samples;
    }

    EggDomain domain() const { return EggDomain(cfg.n, cfg.m, cfg.a); }

    const KernelParams& get_kernel(std::ostream& log_) {
        if (!kernel) kernel = solve_and_cache(cfg, log_);
        return *kernel;
    }

    void add(const std::string& suite, const std::string& check, double estimate,
             double tolerance, bool pass, double std_error = 0.0,
             std::uint64_t samples = 0, Json sup_point = Json(),
             Json extra = Json::object()) {
        CheckRow row;
        row.suite = suite;
        row.check = check;
        row.params = base_params;
        for (auto& [k, v] : extra.items()) row.params[k] = v;
        row.estimate = estimate;
        row.std_error = std_error;
        row.tolerance = tolerance;
        row.sup_point = std::move(sup_point);
        row.pass = pass;
        row.samples = samples;
        report.add(row);
        log << (pass ? "  [pass] " : "  [FAIL] ") << suite << "/" << check
            << "  estimate=" << estimate << " tol=" << tolerance << "\n";
    }
};

// ---------------------------------------------------------------------------
// decomposition
// ---------------------------------------------------------------------------

RatPoly sum_of_components(const RatPoly& f) {
    RatPoly acc(f.nvars);
    for (int k = 0; k < f.nvars; ++k)
        acc = acc + mul_monomial(leibenson_component(f, k), MultiIndex::unit(f.nvars, k));
    return acc;
}

RatPoly drop_constant(const RatPoly& f) {
    RatPoly r = f;
    MultiIndex zero = MultiIndex::zero(f.nvars);
    auto it = r.terms.find(zero);
    if (it != r.terms.end()) r.terms.erase(it);
    return r;
}

void run_decomposition(SuiteContext& ctx) {
    const int nvars = ctx.cfg.n + ctx.cfg.m;
    const int degree = ctx.cfg.degree;
    SampleRng rng(ctx.cfg.seed, 0xdec0);

    {
        int failures = 0;
        for (int i = 0; i < 200; ++i) {
            RatPoly f = random_poly(nvars, 0, degree, 6, rng);
            if (!(sum_of_components(f) == drop_constant(f))) ++failures;
        }
        ctx.add("decomposition", "order1_identity_exact", failures, 0.0, failures == 0,
                0.0, 200);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            DPoly f = to_double_poly(random_poly(nvars, 0, degree, 6, rng));
            DPoly acc(nvars);
            for (int k = 0; k < nvars; ++k)
                acc = acc + mul_monomial(leibenson_component(f, k),
                                         MultiIndex::unit(nvars, k));
            DPoly target = f;
            target.add_term(MultiIndex::zero(nvars),
                            -f.coeff(MultiIndex::zero(nvars)));
            DPoly diff = acc - target;
            for (const auto& [alpha, c] : diff.terms)
                worst = std::max(worst, std::abs(c));
        }
        ctx.add("decomposition", "order1_identity_float", worst, 1e-12, worst <= 1e-12,
                0.0, 200);
    }
    {
        int failures = 0;
        for (int order = 2; order <= 4; ++order) {
            for (int i = 0; i < 30; ++i) {
                RatPoly f =
                    random_poly(nvars, order, std::max(degree, order), 6, rng);
                auto parts = gleason_decompose(f, order);
                RatPoly acc(nvars);
                for (const auto& [alpha, part] : parts)
                    acc = acc + mul_monomial(part, alpha);
                if (!(acc == f)) ++failures;
            }
        }
        ctx.add("decomposition", "order_m_identity", failures, 0.0, failures == 0, 0.0,
                90);
    }
    {
        // evaluate(T_k f, p) against quadrature of the ray integral
        EggDomain d = ctx.domain();
        Sampler points(d, SamplerSpec(1, mix64(ctx.cfg.seed ^ 0xacce55)));
        const auto& tq = gauss_legendre_01(32);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            RatPoly fr = random_poly(nvars, 0, degree, 6, rng);
            DPoly f = to_double_poly(fr);
            int k = static_cast<int>(rng.next_u64() % nvars);
            DPoly tk = leibenson_component(f, k);
            DPoly df = partial_derivative(f, k);
            for (int j = 0; j < 20; ++j) {
                CPoint pt = points.at(static_cast<std::uint64_t>(i) * 100 + j);
                std::vector<Complex> flat;
                for (const Complex& c : pt.z) flat.push_back(c);
                for (const Complex& c : pt.w) flat.push_back(c);
                Complex quad(0.0);
                std::vector<Complex> scaled(flat.size());
                for (const QuadNode& node : tq) {
                    for (std::size_t c = 0; c < flat.size(); ++c)
                        scaled[c] = node.x * flat[c];
                    quad += node.weight * df.evaluate(scaled);
                }
                worst = std::max(worst, std::abs(tk.evaluate(flat) - quad));
            }
        }
        ctx.add("decomposition", "ray_integral_agreement", worst, 1e-10,
                worst <= 1e-10, 0.0, 400);
    }
    {
        // the vanishing-order hypothesis must be enforced
        RatPoly bad(nvars);
        bad.add_term(MultiIndex::unit(nvars, 0), RatComplex(Rational(1)));
        bool threw = false;
        try {
            gleason_decompose(bad, 2);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        ctx.add("decomposition", "low_order_rejected", threw ? 1.0 : 0.0, 0.0, threw);
    }
}

// ---------------------------------------------------------------------------
// multiplier
// ---------------------------------------------------------------------------

void run_multiplier(SuiteContext& ctx) {
    const int nvars = ctx.cfg.n + ctx.cfg.m;
    SampleRng rng(ctx.cfg.seed, 0x301cada);

    {
        int failures = 0;
        for (int i = 0; i < 200; ++i) {
            RatPoly f = random_poly(nvars, 0, ctx.cfg.degree, 6, rng);
            for (int k = 0; k < nvars; ++k) {
                RatPoly lhs = multiplier_transform(f, k);
                RatPoly rhs =
                    mul_monomial(leibenson_component(f, k), MultiIndex::unit(nvars, k));
                if (!(lhs == rhs)) ++failures;
            }
        }
        ctx.add("multiplier", "equals_scaled_component", failures, 0.0, failures == 0,
                0.0, 200);
    }
    {
        // alpha = (1,2,0,...): coefficient 1 -> 1/3 at k = 0; k-free terms die
        RatPoly f(nvars);
        std::vector<int> e(nvars, 0);
        e[0] = 1;
        e[1] = 2;
        f.add_term(MultiIndex(e), RatComplex(Rational(1)));
        RatPoly out = multiplier_transform(f, 0);
        bool ok = out.terms.size() == 1 &&
                  out.coeff(MultiIndex(e)) == RatComplex(Rational(1, 3));
        RatPoly g(nvars);
        std::vector<int> e2(nvars, 0);
        e2[1] = 3;
        g.add_term(MultiIndex(e2), RatComplex(Rational(5)));
        ok = ok && multiplier_transform(g, 0).is_zero();
        ctx.add("multiplier", "coefficient_rule", ok ? 0.0 : 1.0, 0.0, ok);
    }
    {
        int failures = 0;
        for (int i = 0; i < 200; ++i) {
            RatPoly f = random_poly(nvars, 0, ctx.cfg.degree, 6, rng);
            RatPoly acc(nvars);
            for (int k = 0; k < nvars; ++k) acc = acc + multiplier_transform(f, k);
            if (!(acc == drop_constant(f))) ++failures;
        }
        ctx.add("multiplier", "sum_recovers_f_minus_f0", failures, 0.0, failures == 0,
                0.0, 200);
    }
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

std::vector<MultiIndex> monomials_up_to(int nvars, int max_order) {
    std::vector<MultiIndex> out;
    std::vector<int> e(nvars, 0);
    // counts in a mixed-radix odometer capped by total order
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == nvars) {
            out.emplace_back(e);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            e[pos] = v;
            rec(pos + 1, remaining - v);
        }
        e[pos] = 0;
    };
    rec(0, max_order);
    return out;
}

/// Max over monomials and probe points of |T f - f| / ||f||, all monomials
/// sharing one sample stream.
double reproducing_error(const KernelParams& kp, const std::vector<MultiIndex>& mons,
                         const std::vector<CPoint>& outers, const SamplerSpec& spec) {
    const EggDomain& d = kp.domain;
    const double volume = weighted_volume(d, WeightedMeasure(0.0));
    const std::size_t nm = mons.size();
    const std::size_t np = outers.size();

    struct Acc {
        std::vector<Complex> sums; // [outer][monomial]
    };
    Acc total = block_mapreduce<Acc>(
        spec.sample_count, 8192, Acc{std::vector<Complex>(nm * np, Complex(0.0))},
        [&](std::uint64_t lo, std::uint64_t hi) {
            Acc acc{std::vector<Complex>(nm * np, Complex(0.0))};
            Sampler sampler(d, spec);
            CPoint x;
            std::vector<Complex> flat(d.n + d.m);
            std::vector<Complex> monval(nm);
            for (std::uint64_t i = lo; i < hi; ++i) {
                sampler.at_into(i, x);
                double weight = volume * std::pow(defining_function(d, x), kp.sigma);
                for (std::size_t c = 0; c < x.z.size(); ++c) flat[c] = x.z[c];
                for (std::size_t c = 0; c < x.w.size(); ++c)
                    flat[d.n + c] = x.w[c];
                for (std::size_t mi = 0; mi < nm; ++mi) {
                    Complex v(1.0);
                    for (int pos = 0; pos < d.n + d.m; ++pos)
                        for (int rep = 0; rep < mons[mi].e[pos]; ++rep) v *= flat[pos];
                    monval[mi] = v;
                }
                for (std::size_t pi = 0; pi < np; ++pi) {
                    Complex kv = weight * bergman_kernel(kp, outers[pi], x);
                    for (std::size_t mi = 0; mi < nm; ++mi)
                        acc.sums[pi * nm + mi] += kv * monval[mi];
                }
            }
            return acc;
        },
        [](Acc a, const Acc& b) {
            for (std::size_t i = 0; i < a.sums.size(); ++i) a.sums[i] += b.sums[i];
            return a;
        });

    double worst = 0.0;
    const double nd = static_cast<double>(spec.sample_count);
    for (std::size_t mi = 0; mi < nm; ++mi) {
        double norm = std::sqrt(monomial_moment(d, kp.sigma, mons[mi].e));
        for (std::size_t pi = 0; pi < np; ++pi) {
            Complex proj = kp.normalization * total.sums[pi * nm + mi] / nd;
            Complex exact(1.0);
            for (int pos = 0; pos < d.n; ++pos)
                for (int rep = 0; rep < mons[mi].e[pos]; ++rep)
                    exact *= outers[pi].z[pos];
            for (int pos = 0; pos < d.m; ++pos)
                for (int rep = 0; rep < mons[mi].e[d.n + pos]; ++rep)
                    exact *= outers[pi].w[pos];
            worst = std::max(worst, std::abs(proj - exact) / norm);
        }
    }
    return worst;
}

void run_kernel(SuiteContext& ctx) {
    EggDomain d = ctx.domain();
    const KernelParams& kp = ctx.get_kernel(ctx.log);
    const double sigma = kp.sigma;
    Json extra{{"sigma", sigma}};

    ctx.add("kernel", "solve_residual", kp.solve_residual, 1e-8,
            kp.solve_residual <= 1e-8, 0.0, 0, Json(), extra);

    Sampler pts(d, SamplerSpec(1, mix64(ctx.cfg.seed ^ 0x4eab)));
    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            CPoint p = pts.at(2 * i), q = pts.at(2 * i + 1);
            Complex k1 = bergman_kernel(kp, p, q);
            Complex k2 = bergman_kernel(kp, q, p);
            worst = std::max(worst,
                             std::abs(k1 - std::conj(k2)) / std::max(1.0, std::abs(k1)));
        }
        ctx.add("kernel", "hermitian_symmetry", worst, 1e-12, worst <= 1e-12, 0.0, 100,
                Json(), extra);
    }
    {
        SampleRng trng(ctx.cfg.seed, 0x747474);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            CPoint p = pts.at(1000 + 2 * i), q = pts.at(1000 + 2 * i + 1);
            double t = trng.uniform();
            CPoint tp = p, tq = q;
            for (Complex& c : tp.z) c *= t;
            for (Complex& c : tp.w) c *= t;
            for (Complex& c : tq.z) c *= t;
            for (Complex& c : tq.w) c *= t;
            double g1 = std::abs(g_sigma(kp, tp, q));
            double g2 = std::abs(g_sigma(kp, tq, p));
            worst = std::max(worst, std::abs(g1 - g2) / std::max(1.0, g1));
        }
        ctx.add("kernel", "g_scaling_symmetry", worst, 1e-12, worst <= 1e-12, 0.0, 100,
                Json(), extra);
    }
    if (ctx.cfg.a == 1.0) {
        // at a = 1 the kernel must be a constant multiple of
        // (1 - <xi,xi'>)^{-(n+m+1+sigma)}
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < 100; ++i) {
            CPoint p = pts.at(3000 + 2 * i), q = pts.at(3000 + 2 * i + 1);
            std::vector<Complex> fp, fq;
            for (const Complex& c : p.z) fp.push_back(c);
            for (const Complex& c : p.w) fp.push_back(c);
            for (const Complex& c : q.z) fq.push_back(c);
            for (const Complex& c : q.w) fq.push_back(c);
            Complex ball = principal_pow(
                Complex(1.0) - pairing(fp, fq), -(d.n + d.m + 1 + sigma));
            double ratio = std::abs(bergman_kernel(kp, p, q) / ball);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        double spread = (hi - lo) / lo;
        ctx.add("kernel", "ball_kernel_match", spread, 1e-6, spread <= 1e-6, 0.0, 100,
                Json(), extra);

        double low_mass = 0.0;
        for (int k = 0; k <= d.n; ++k) low_mass += std::abs(kp.coeffs[k]);
        double rel = low_mass / std::abs(kp.coeffs[d.n + 1]);
        ctx.add("kernel", "ball_low_coefficients", rel, 1e-8, rel <= 1e-8, 0.0, 0,
                Json(), extra);
    }
    {
        int max_order = (d.n + d.m <= 2) ? 4 : 3;
        auto mons = monomials_up_to(d.n + d.m, max_order);
        // mid-level probes: probing next to the boundary would inflate the
        // kernel's MC variance without testing anything extra (the identity
        // is exact everywhere)
        std::vector<CPoint> outers;
        const double probe_levels[3] = {0.8, 0.7, 0.6};
        for (int i = 0; i < 3; ++i)
            outers.push_back(point_at_level(d, pts.at(5000 + i), probe_levels[i]));
        SamplerSpec spec(ctx.cfg.samples, ctx.cfg.seed, Stratification::none);
        double worst = reproducing_error(kp, mons, outers, spec.reseeded(0x4e70));
        // 1% is the tolerance at the reference budget of 1e6 samples; smaller
        // budgets get the corresponding 1/sqrt(N) allowance
        double tol = 0.01 * std::max(1.0, std::sqrt(1e6 / static_cast<double>(
                                                        ctx.cfg.samples)));
        ctx.add("kernel", "reproducing_monomials", worst, tol, worst <= tol, 0.0,
                ctx.cfg.samples, Json(),
                Json{{"sigma", sigma}, {"max_order", max_order}});
    }
    {
        // operator form of the ray integral: T_k f(xi) = int f Q(xi, .) dv
        const int nvars = d.n + d.m;
        RatPoly f(nvars);
        std::vector<int> e(nvars, 0);
        e[0] = 1;
        e[nvars - 1] = 1;
        f.add_term(MultiIndex(e), RatComplex(Rational(1)));
        DPoly fd = to_double_poly(f);
        DPoly tk = leibenson_component(fd, 0);
        CPoint xi = pts.at(7000);
        Complex exact = tk.evaluate(xi);
        SamplerSpec spec(clamp_u64(ctx.cfg.samples / 10, 10'000, 200'000),
                         ctx.cfg.seed, Stratification::none);
        McEstimate mc = integrate_weighted(
            d, WeightedMeasure(0.0),
            [&](const CPoint& x) { return fd.evaluate(x) * q_kernel(kp, 0, xi, x); },
            spec.reseeded(0x412));
        double err = std::abs(mc.estimate - exact);
        double tol = std::max(3.0 * mc.std_error, 0.02 * std::max(1e-6, std::abs(exact)));
        ctx.add("kernel", "ray_operator_kernel_form", err, tol, err <= tol,
                mc.std_error, spec.sample_count, Json(), extra);
    }
    {
        std::string path = ctx.cfg.out + ".kernel-roundtrip.txt";
        save_kernel_record(kp, path);
        KernelParams back = load_kernel_record(path);
        bool same = kernel_record(back) == kernel_record(kp);
        double residual = reproducing_residual(back);
        ctx.add("kernel", "cache_roundtrip", same ? residual : 1.0, 1e-8,
                same && residual <= 1e-8, 0.0, 0, Json(), extra);
        std::filesystem::remove(path);
    }
}

// ---------------------------------------------------------------------------
// parseval
// ---------------------------------------------------------------------------

void run_parseval(SuiteContext& ctx) {
    EggDomain d = ctx.domain();
    const double sigma = effective_sigma(ctx.cfg);
    SamplerSpec spec(ctx.cfg.samples, ctx.cfg.seed, Stratification::none);

    auto volume_row = [&](const std::string& name, double s, std::uint64_t salt) {
        WeightedMeasure mu(s);
        double closed = weighted_volume(d, mu);
        McEstimate mc = integrate_weighted(
            d, mu, [](const CPoint&) { return Complex(1.0); }, spec.reseeded(salt));
        double rel = std::abs(mc.estimate.real() - closed) / closed;
        ctx.add("parseval", name, rel, 0.02, rel <= 0.02, mc.std_error / closed,
                ctx.cfg.samples, Json(), Json{{"sigma", s}, {"closed_form", closed}});
    };
    volume_row("volume_closed_vs_mc", sigma, 0xb01);
    if (sigma != 0.0) volume_row("volume_closed_vs_mc_sigma0", 0.0, 0xb02);
    if (ctx.cfg.a == 1.0 && ctx.cfg.n == 1 && ctx.cfg.m == 1) {
        double closed = weighted_volume(d, WeightedMeasure(0.0));
        double target = std::numbers::pi * std::numbers::pi / 2.0;
        double rel = std::abs(closed - target) / target;
        ctx.add("parseval", "ball_volume_pi2_over_2", rel, 1e-12, rel <= 1e-12);
    }

    // fixed probe point, interior for every a in (0, 2]
    CPoint probe = CPoint::origin(d.n, d.m);
    probe.z[0] = Complex(0.3, 0.0);
    probe.w[0] = Complex(0.4, 0.0);
    {
        const int k = 1;
        const double r = 2.0;
        double closed = psi_norm_integral(d, sigma, k, r, probe);
        McEstimate mc = integrate_weighted(
            d, WeightedMeasure(sigma),
            [&](const CPoint& x) {
                Complex num = std::pow(pairing(probe.w, x.w), k);
                Complex den = principal_pow(Complex(1.0) - pairing(probe.z, x.z), r);
                return Complex(std::norm(num / den));
            },
            spec.reseeded(0xb03));
        double rel = std::abs(mc.estimate.real() - closed) / closed;
        ctx.add("parseval", "psi_norm_closed_vs_mc", rel, 0.02, rel <= 0.02,
                mc.std_error / closed, ctx.cfg.samples, Json(),
                Json{{"sigma", sigma}, {"k", k}, {"r", r}, {"closed_form", closed}});
    }
    {
        // distinct w-degrees are orthogonal in the weighted inner product
        const double b = (d.a * (sigma + d.m) + d.n + 2) / 2.0;
        auto psi = [&](int k, const CPoint& x) {
            Complex num = k == 0 ? Complex(1.0) : std::pow(pairing(probe.w, x.w), k);
            Complex den =
                principal_pow(Complex(1.0) - pairing(probe.z, x.z), d.a * k + b);
            return num / den;
        };
        McEstimate mc = integrate_weighted(
            d, WeightedMeasure(sigma),
            [&](const CPoint& x) { return psi(0, x) * std::conj(psi(1, x)); },
            spec.reseeded(0xb04));
        double err = std::abs(mc.estimate);
        double tol = 3.0 * mc.std_error;
        ctx.add("parseval", "psi_family_orthogonality", err, tol, err <= tol,
                mc.std_error, ctx.cfg.samples, Json(), Json{{"sigma", sigma}});
    }
    {
        // Reinhardt structure: distinct monomials are orthogonal
        McEstimate mc = integrate_weighted(
            d, WeightedMeasure(sigma),
            [&](const CPoint& x) { return x.z[0] * std::conj(x.w[0]); },
            spec.reseeded(0xb05));
        double err = std::abs(mc.estimate);
        double tol = 3.0 * mc.std_error;
        ctx.add("parseval", "monomial_orthogonality", err, tol, err <= tol,
                mc.std_error, ctx.cfg.samples, Json(), Json{{"sigma", sigma}});
    }
}

// ---------------------------------------------------------------------------
// gamma
// ---------------------------------------------------------------------------

void run_gamma(SuiteContext& ctx) {
    {
        // grid capped at x = 50 (matching the bound grid); past that the
        // difference of two large log-gamma values cannot resolve 1e-12
        double worst = 0.0;
        for (int i = 0; i <= 60; ++i) {
            double x = std::pow(10.0, -3.0 + (std::log10(50.0) + 3.0) * i / 60.0);
            double rel = std::abs(std::exp(log_gamma(x + 1.0) - log_gamma(x)) / x - 1.0);
            worst = std::max(worst, rel);
        }
        ctx.add("gamma", "recurrence", worst, 1e-12, worst <= 1e-12, 0.0, 61);
    }
    {
        // 1e-8 slack: at t = 1e6 the log-gamma values are ~1.3e7 and carry
        // ~2e-9 of representation noise into the exponent
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            double x = i == 0 ? 0.0 : std::pow(10.0, -2.0 + (std::log10(50.0) + 2.0) * (i - 1) / 39.0);
            for (int j = 0; j <= 60; ++j) {
                double t = std::pow(10.0, -2.0 + 8.0 * j / 60.0);
                worst = std::max(worst, gamma_ratio(x, t));
            }
        }
        ctx.add("gamma", "ratio_bound", worst, 1.0 + 1e-8, worst <= 1.0 + 1e-8, 0.0,
                41 * 61);
    }
    {
        bool monotone = true;
        for (int i = 0; i <= 20 && monotone; ++i) {
            double x = i == 0 ? 0.0 : std::pow(10.0, -2.0 + (std::log10(50.0) + 2.0) * (i - 1) / 19.0);
            double prev = -1.0;
            for (int j = 0; j <= 40; ++j) {
                double t = std::pow(10.0, -2.0 + 8.0 * j / 40.0);
                double v = gamma_ratio(x, t);
                if (v < prev - 1e-8) {
                    monotone = false;
                    break;
                }
                prev = v;
            }
        }
        double at_limit = std::abs(1.0 - gamma_ratio(1.0, 1e6));
        bool pass = monotone && at_limit <= 1e-5;
        ctx.add("gamma", "ratio_limit_monotone", at_limit, 1e-5, pass, 0.0, 21 * 41);
    }
    {
        const double sigma = ctx.cfg.sigma_override.value_or(1.0);
        const double dd = ctx.cfg.d_override.value_or((sigma + 1.0) / 2.0);
        Ineq56Params params(ctx.cfg.n, ctx.cfg.m, ctx.cfg.a, sigma, dd);
        Json extra{{"sigma", sigma}, {"d", dd}, {"grid", ctx.cfg.grid}};

        // flat-tail rule: the edge decade may exceed the previous one by at
        // most 5% (the quotients approach finite limits from below; genuine
        // divergence grows by factors per decade)
        TailedScan s5 = ineq5_sup_scan(params, ctx.cfg.grid);
        bool pass5 = std::isfinite(s5.sup) && s5.tail_outer <= s5.tail_inner * 1.05;
        ctx.add("gamma", "ineq5_sup", s5.sup, s5.tail_inner * 1.05, pass5, 0.0,
                static_cast<std::uint64_t>(ctx.cfg.grid + 1) *
                    static_cast<std::uint64_t>(ctx.cfg.grid + 1),
                Json::array({s5.argmax[0], s5.argmax[1]}), extra);

        TailedScan s6 = ineq6_sup_scan(params, ctx.cfg.grid);
        bool pass6 = std::isfinite(s6.sup) && s6.tail_outer <= s6.tail_inner * 1.05;
        ctx.add("gamma", "ineq6_sup", s6.sup, s6.tail_inner * 1.05, pass6, 0.0,
                static_cast<std::uint64_t>(ctx.cfg.grid + 1),
                Json::array({s6.argmax[0], s6.argmax[1]}), extra);
    }
}

// ---------------------------------------------------------------------------
// lemma1 (gradient-to-G ratio sup scans)
// ---------------------------------------------------------------------------

double gradient_ratio_sup(const KernelParams& kp, std::uint64_t pairs,
                          std::uint64_t seed, double h_floor) {
    const EggDomain& d = kp.domain;
    return block_mapreduce<double>(
        pairs, 512, 0.0,
        [&](std::uint64_t lo, std::uint64_t hi) {
            double sup = 0.0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                CPoint p = scan_point(d, seed ^ 0xaaaa, i, h_floor);
                CPoint q = scan_point(d, seed ^ 0xbbbb, i, h_floor);
                for (int k = 0; k < d.n + d.m; ++k)
                    sup = std::max(sup, kernel_gradient_ratio(kp, k, p, q));
            }
            return sup;
        },
        [](double a, double b) { return std::max(a, b); });
}

void run_lemma1(SuiteContext& ctx) {
    const KernelParams& kp = ctx.get_kernel(ctx.log);
    const std::uint64_t pairs = clamp_u64(ctx.cfg.samples / 10, 5'000, 100'000);
    const double floors[3] = {1e-2, 1e-4, std::min(1e-6, ctx.cfg.h_floor)};
    Json extra{{"sigma", kp.sigma}, {"h_floor", ctx.cfg.h_floor}};

    double sups[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        sups[i] = gradient_ratio_sup(kp, pairs, ctx.cfg.seed + i, floors[i]);
        std::ostringstream name;
        name << "sup_floor_" << floors[i];
        ctx.add("lemma1", name.str(), sups[i], 0.0, std::isfinite(sups[i]), 0.0, pairs,
                Json(), extra);
    }
    double spread = *std::max_element(sups, sups + 3) /
                    std::max(1e-300, *std::min_element(sups, sups + 3));
    ctx.add("lemma1", "floor_stability", spread, 2.0, spread < 2.0, 0.0, 3 * pairs,
            Json(), extra);

    double sup4 = gradient_ratio_sup(kp, 4 * pairs, ctx.cfg.seed + 17, floors[2]);
    double ratio = sup4 / std::max(1e-300, sups[2]);
    bool ok = ratio < 2.0 && ratio > 0.5;
    ctx.add("lemma1", "budget_stability", ratio, 2.0, ok, 0.0, 4 * pairs, Json(), extra);
}

// ---------------------------------------------------------------------------
// lemma2 (weighted G-integral against h^{-d})
// ---------------------------------------------------------------------------

/// Median of five equal-budget estimates. The integrand is heavy-tailed at
/// deep scan points (rare near-pinch samples), so a single mean can spike;
/// the median keeps the scan statistic refinement-stable.
double robust_g_ratio(const KernelParams& kp, double dd, const CPoint& xi,
                      std::uint64_t inner, std::uint64_t seed) {
    double vals[5];
    for (int c = 0; c < 5; ++c) {
        SamplerSpec spec(std::max<std::uint64_t>(1, inner / 5), seed,
                         Stratification::none);
        vals[c] = g_integral_ratio(kp, dd, xi, spec.reseeded(0x700 + c));
    }
    std::sort(vals, vals + 5);
    return vals[2];
}

/// Sup of the weighted G-integral ratio over a deterministic ladder of scan
/// points: `n_dir` directions at every decade level 1e-1, 1e-2, ..., floor.
/// Tightening the floor extends the point set without disturbing the
/// shallower points, so the sup is monotone in the scanned region and its
/// stability genuinely measures boundedness.
double lemma2_ladder_sup(const KernelParams& kp, double dd, std::uint64_t inner,
                         std::uint64_t seed, double floor, int n_dir) {
    const EggDomain& d = kp.domain;
    Sampler directions(d, SamplerSpec(1, mix64(seed ^ 0x1e2e)));
    double sup = 0.0;
    int n_levels = static_cast<int>(std::round(-std::log10(floor)));
    for (int lev = 1; lev <= n_levels; ++lev) {
        double level = std::pow(10.0, -lev);
        for (int i = 0; i < n_dir; ++i) {
            CPoint xi = point_at_level(d, directions.at(i), level);
            sup = std::max(sup, robust_g_ratio(kp, dd, xi, inner,
                                               mix64(seed + 100 * lev + i)));
        }
    }
    return sup;
}

void run_lemma2(SuiteContext& ctx) {
    EggDomain d = ctx.domain();
    const KernelParams& kp = ctx.get_kernel(ctx.log);
    const double sigma = kp.sigma;
    const double dd = ctx.cfg.d_override.value_or((sigma + 1.0) / 2.0);
    const std::uint64_t inner = clamp_u64(ctx.cfg.samples / 50, 5'000, 50'000);
    const int n_dir = 6;
    Json extra{{"sigma", sigma}, {"d", dd}};

    {
        SamplerSpec spec(inner, ctx.cfg.seed, Stratification::none);
        double at_origin = g_integral_ratio(kp, dd, CPoint::origin(d.n, d.m),
                                            spec.reseeded(0x0417));
        double closed = weighted_volume(d, WeightedMeasure(sigma - dd));
        double rel = std::abs(at_origin - closed) / closed;
        ctx.add("lemma2", "origin_closed_form", rel, 0.02, rel <= 0.02, 0.0, inner,
                Json(), extra);
    }
    {
        // Monte Carlo against the expansion series at a mid-level probe
        CPoint xi = point_at_level(
            d, Sampler(d, SamplerSpec(1, mix64(ctx.cfg.seed ^ 0x1e2e))).at(0), 0.3);
        SamplerSpec spec(clamp_u64(4 * inner, 50'000, 200'000), ctx.cfg.seed,
                         Stratification::none);
        double mc = g_integral_ratio(kp, dd, xi, spec.reseeded(0x2e11));
        double series = g_integral_ratio_series(kp, dd, xi);
        double rel = std::abs(mc - series) / series;
        ctx.add("lemma2", "series_vs_mc_midlevel", rel, 0.02, rel <= 0.02, 0.0,
                spec.sample_count, point_json(xi), extra);
    }

    const double floors[3] = {1e-2, 1e-4, std::min(1e-6, ctx.cfg.h_floor)};
    double sups[3];
    for (int i = 0; i < 3; ++i) {
        sups[i] = lemma2_ladder_sup(kp, dd, inner, ctx.cfg.seed, floors[i], n_dir);
        std::ostringstream name;
        name << "sup_floor_" << floors[i];
        ctx.add("lemma2", name.str(), sups[i], 0.0, std::isfinite(sups[i]), 0.0,
                inner * n_dir, Json(), extra);
    }
    double spread = *std::max_element(sups, sups + 3) /
                    std::max(1e-300, *std::min_element(sups, sups + 3));
    ctx.add("lemma2", "floor_stability", spread, 2.0, spread < 2.0, 0.0, 0, Json(),
            extra);

    {
        double s1 = lemma2_ladder_sup(kp, dd, inner, ctx.cfg.seed + 5, floors[1], n_dir);
        double s4 =
            lemma2_ladder_sup(kp, dd, 4 * inner, ctx.cfg.seed + 5, floors[1], n_dir);
        double ratio = s4 / std::max(1e-300, s1);
        bool ok = ratio < 2.0 && ratio > 0.5;
        ctx.add("lemma2", "budget_stability", ratio, 2.0, ok, 0.0, 5 * inner * n_dir,
                Json(), extra);
    }
    {
        // boundary profile through the exact series, approaching along the
        // w-sphere ray (z = 0 keeps the expansion one-dimensional; on generic
        // rays its cost explodes near the boundary, and uniform-sample MC
        // cannot resolve the boundary concentration at all)
        CPoint direction = CPoint::origin(d.n, d.m);
        direction.w[0] = Complex(1.0, 0.0);
        double prev = -1.0;
        bool bounded = true;
        double last = 0.0;
        for (double level : {1e-2, 1e-3, 1e-4}) {
            CPoint xi = point_at_level(d, direction, level);
            last = g_integral_ratio_series(kp, dd, xi, 8'000'000);
            if (prev >= 0.0 && last > 2.0 * prev) bounded = false;
            prev = last;
        }
        ctx.add("lemma2", "series_profile_bounded", last, 0.0,
                bounded && std::isfinite(last), 0.0, 0, Json(), extra);
    }
}

// ---------------------------------------------------------------------------
// schur
// ---------------------------------------------------------------------------

void run_schur(SuiteContext& ctx) {
    EggDomain d = ctx.domain();
    SpaceParams sp(ctx.cfg.p, ctx.cfg.lambda);
    if (!sp.in_solvable_regime())
        throw std::invalid_argument("schur suite: (p, lambda) outside the solvable regime");
    const KernelParams& kp = ctx.get_kernel(ctx.log);
    const std::uint64_t inner = clamp_u64(ctx.cfg.samples / 100, 2'000, 20'000);
    const int n_outer = 32;
    // Outer scan points stay at h >= 0.1: the |Q| concentration gives the
    // inner integrand a second moment like h(outer)^-6, so uniform-sample
    // estimates below that are not refinement-stable at desk budgets.
    const double outer_floor = 0.1;

    if (sp.p == 1.0) {
        Json extra{{"sigma", kp.sigma}, {"lambda", sp.lambda}};
        SamplerSpec spec(inner, ctx.cfg.seed, Stratification::none);
        double c1 = l1_check(d, sp.lambda, kp, 0, spec, n_outer, outer_floor);
        ctx.add("schur", "l1_constant", c1, 0.0, std::isfinite(c1) && c1 > 0.0, 0.0,
                static_cast<std::uint64_t>(n_outer) * inner, Json(), extra);
        SamplerSpec big(4 * inner, ctx.cfg.seed, Stratification::none);
        double c4 = l1_check(d, sp.lambda, kp, 0, big, n_outer, outer_floor);
        double ratio = c4 / std::max(1e-300, c1);
        ctx.add("schur", "l1_refinement", ratio, 2.0, ratio < 2.0 && ratio > 0.5, 0.0,
                static_cast<std::uint64_t>(n_outer) * 4 * inner, Json(), extra);
        return;
    }

    ExponentChoice ec = choose_exponents(sp);
    if (ctx.cfg.sigma_override) {
        ec.sigma = *ctx.cfg.sigma_override;
        if (!exponent_gate(sp.p, sp.lambda, ec.sigma))
            throw std::invalid_argument("schur suite: sigma override violates the gate");
    }
    if (ctx.cfg.d_override) ec.d = *ctx.cfg.d_override;
    Json extra{{"sigma", ec.sigma}, {"d", ec.d}};

    SamplerSpec spec(inner, ctx.cfg.seed, Stratification::none);
    for (int k : {0, d.n}) {
        SchurConstants sc = schur_test(d, sp, ec, kp, k, spec, n_outer, outer_floor);
        std::string tag = k < d.n ? "z" : "w";
        Json extra_k = extra;
        extra_k["k"] = k;
        ctx.add("schur", "c13_" + tag, sc.c13, 0.0,
                std::isfinite(sc.c13) && sc.c13 > 0.0, sc.se13,
                static_cast<std::uint64_t>(n_outer) * inner, sc.sup_point13, extra_k);
        ctx.add("schur", "c14_" + tag, sc.c14, 0.0,
                std::isfinite(sc.c14) && sc.c14 > 0.0, sc.se14,
                static_cast<std::uint64_t>(n_outer) * inner, sc.sup_point14, extra_k);
    }
    {
        SchurConstants s1 = schur_test(d, sp, ec, kp, 0, spec, n_outer, outer_floor);
        SamplerSpec big(4 * inner, ctx.cfg.seed, Stratification::none);
        SchurConstants s4 = schur_test(d, sp, ec, kp, 0, big, n_outer, outer_floor);
        double ratio = s4.c13 / std::max(1e-300, s1.c13);
        ctx.add("schur", "c13_refinement", ratio, 2.0, ratio < 2.0 && ratio > 0.5, 0.0,
                static_cast<std::uint64_t>(n_outer) * 5 * inner, Json(), extra);
    }
    {
        // mid-level probe: near the boundary the squared integrand grows like
        // h^{-(sigma+m+n+2)*2}, which would swamp the MC error estimate
        CPoint xi_prime = point_at_level(
            d, Sampler(d, SamplerSpec(1, mix64(ctx.cfg.seed ^ 0xe16))).at(3), 0.4);
        SamplerSpec spec16(clamp_u64(ctx.cfg.samples / 25, 10'000, 100'000),
                           ctx.cfg.seed, Stratification::none);
        TwoRouteEstimate two = g_bound_two_routes(d, sp, ec, kp, xi_prime, spec16);
        double err = std::abs(two.direct - two.symmetric);
        double tol = 3.0 * (two.direct_se + two.symmetric_se);
        ctx.add("schur", "g_bound_route_agreement", err, tol, err <= tol,
                two.direct_se, spec16.sample_count, point_json(xi_prime), extra);
    }
}

// ---------------------------------------------------------------------------
// opnorm
// ---------------------------------------------------------------------------

void run_opnorm(SuiteContext& ctx) {
    EggDomain d = ctx.domain();
    SpaceParams sp(ctx.cfg.p, ctx.cfg.lambda);
    const int nvars = d.n + d.m;
    SampleRng rng(ctx.cfg.seed, 0x0b90);
    SamplerSpec spec(clamp_u64(ctx.cfg.samples / 20, 10'000, 100'000), ctx.cfg.seed,
                     Stratification::none);

    std::vector<RatPoly> family;
    for (int i = 0; i < 50; ++i)
        family.push_back(random_poly(nvars, 0, ctx.cfg.degree, 6, rng));
    double sup = operator_norm_estimate(d, sp, family, spec.reseeded(0x0b91));
    ctx.add("opnorm", "family_ratio_sup", sup, 0.0, std::isfinite(sup) && sup > 0.0,
            0.0, spec.sample_count, Json(),
            Json{{"family_size", 50}, {"degree", ctx.cfg.degree}});

    {
        // f = xi_k^deg: xi_k T_k f = f, so the norm ratio is exactly 1
        RatPoly f(nvars);
        std::vector<int> e(nvars, 0);
        e[0] = 4;
        f.add_term(MultiIndex(e), RatComplex(Rational(1)));
        double r = operator_norm_estimate(d, sp, {f}, spec.reseeded(0x0b92));
        double err = std::abs(r - 1.0);
        ctx.add("opnorm", "monomial_ratio_exact", err, 1e-12, err <= 1e-12, 0.0,
                spec.sample_count);
    }
    {
        // the ratio is scale invariant
        RatPoly f = random_poly(nvars, 0, ctx.cfg.degree, 5, rng);
        RatPoly f2(nvars);
        for (const auto& [alpha, c] : f.terms)
            f2.add_term(alpha, c * RatComplex(Rational(2)));
        double r1 = operator_norm_estimate(d, sp, {f}, spec.reseeded(0x0b93));
        double r2 = operator_norm_estimate(d, sp, {f2}, spec.reseeded(0x0b93));
        double err = std::abs(r1 - r2) / std::max(1e-300, r1);
        ctx.add("opnorm", "scaling_invariance", err, 1e-12, err <= 1e-12, 0.0,
                spec.sample_count);
    }
}

} // namespace

// ---------------------------------------------------------------------------
// configuration and orchestration
// ---------------------------------------------------------------------------

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = {
        "decomposition", "multiplier", "kernel", "parseval", "gamma",
        "schur",         "lemma1",     "lemma2", "opnorm"};
    return names;
}

void RunConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (m < 1) throw std::invalid_argument("config: m must be >= 1");
    if (!(a > 0.0) || !(a > 0.0 && a <= 2.0))
        throw std::invalid_argument("config: a must lie in (0, 2]");
    if (!(p >= 1.0)) throw std::invalid_argument("config: p must be >= 1");
    if (!(lambda > -1.0)) throw std::invalid_argument("config: lambda must be > -1");
    if (sigma_override && !(*sigma_override > -1.0))
        throw std::invalid_argument("config: sigma must be > -1");
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (degree < 1 || degree > 32)
        throw std::invalid_argument("config: degree must lie in [1, 32]");
    if (grid < 100) throw std::invalid_argument("config: grid must be >= 100");
    if (!(h_floor > 0.0) || !(h_floor < 1.0))
        throw std::invalid_argument("config: h-floor must lie in (0, 1)");
    if (out.empty()) throw std::invalid_argument("config: out must be non-empty");
    for (const std::string& s : suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) ==
            known_suites().end())
            throw std::invalid_argument("config: unknown suite '" + s + "'");
    if (sigma_override && d_override) {
        if (!(*d_override > 0.0) || !(*d_override < *sigma_override + 1.0))
            throw std::invalid_argument("config: need 0 < d < sigma + 1");
    }
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
    auto as_double = [&](const char* what) {
        try {
            std::size_t used = 0;
            double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("config: bad value for ") + what +
                                        ": '" + value + "'");
        }
    };
    auto as_u64 = [&](const char* what) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing");
            return static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("config: bad value for ") + what +
                                        ": '" + value + "'");
        }
    };
    if (key == "n")
        cfg.n = static_cast<int>(as_u64("n"));
    else if (key == "m")
        cfg.m = static_cast<int>(as_u64("m"));
    else if (key == "a")
        cfg.a = as_double("a");
    else if (key == "p")
        cfg.p = as_double("p");
    else if (key == "lambda")
        cfg.lambda = as_double("lambda");
    else if (key == "sigma")
        cfg.sigma_override = as_double("sigma");
    else if (key == "d")
        cfg.d_override = as_double("d");
    else if (key == "samples")
        cfg.samples = as_u64("samples");
    else if (key == "seed")
        cfg.seed = as_u64("seed");
    else if (key == "degree")
        cfg.degree = static_cast<int>(as_u64("degree"));
    else if (key == "grid")
        cfg.grid = static_cast<long>(as_u64("grid"));
    else if (key == "h-floor" || key == "h_floor")
        cfg.h_floor = as_double("h-floor");
    else if (key == "out")
        cfg.out = value;
    else if (key == "suites") {
        cfg.suites.clear();
        std::istringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.suites.push_back(item);
    } else
        throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        std::string key;
        if (!(row >> key) || key[0] == '#') continue;
        std::string value;
        row >> value;
        if (value == "=") row >> value;
        if (value.empty())
            throw std::invalid_argument("config: missing value at line " +
                                        std::to_string(lineno));
        apply_config_entry(cfg, key, value);
    }
    return cfg;
}

double effective_sigma(const RunConfig& cfg) {
    if (cfg.sigma_override) return *cfg.sigma_override;
    SpaceParams sp(cfg.p, cfg.lambda);
    if (!sp.in_solvable_regime()) return std::max(cfg.lambda, 0.0) + 1.0;
    return choose_exponents(sp).sigma;
}

namespace {

std::string cache_path(const RunConfig& cfg, double sigma) {
    std::ostringstream name;
    name << cfg.out << ".kernel-n" << cfg.n << "-m" << cfg.m << "-a" << cfg.a << "-s"
         << sigma << ".txt";
    return name.str();
}

} // namespace

KernelParams solve_and_cache(const RunConfig& cfg, std::ostream& log) {
    const double sigma = effective_sigma(cfg);
    const std::string path = cache_path(cfg, sigma);
    if (std::filesystem::exists(path)) {
        try {
            KernelParams kp = load_kernel_record(path);
            if (kp.domain.n != cfg.n || kp.domain.m != cfg.m ||
                kp.domain.a != cfg.a || kp.sigma != sigma)
                throw std::runtime_error("parameter mismatch");
            double residual = reproducing_residual(kp);
            if (residual > 1e-8) throw std::runtime_error("stale residual");
            return kp;
        } catch (const std::exception& ex) {
            log << "kernel cache at " << path << " unusable (" << ex.what()
                << "); recomputing\n";
        }
    }
    KernelParams kp = solve_kernel_coefficients(EggDomain(cfg.n, cfg.m, cfg.a), sigma);
    save_kernel_record(kp, path);
    return kp;
}

int run_suites(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    std::vector<std::string> selected = cfg.suites.empty() ? known_suites() : cfg.suites;
    // run in canonical order regardless of how they were listed
    std::vector<std::string> ordered;
    for (const std::string& name : known_suites())
        if (std::find(selected.begin(), selected.end(), name) != selected.end())
            ordered.push_back(name);

    ReportWriter report(cfg.out + ".jsonl", cfg.out + ".csv");
    SuiteContext ctx(cfg, report, log);

    for (const std::string& name : ordered) {
        log << "suite " << name << "\n";
        if (name == "decomposition")
            run_decomposition(ctx);
        else if (name == "multiplier")
            run_multiplier(ctx);
        else if (name == "kernel")
            run_kernel(ctx);
        else if (name == "parseval")
            run_parseval(ctx);
        else if (name == "gamma")
            run_gamma(ctx);
        else if (name == "schur")
            run_schur(ctx);
        else if (name == "lemma1")
            run_lemma1(ctx);
        else if (name == "lemma2")
            run_lemma2(ctx);
        else if (name == "opnorm")
            run_opnorm(ctx);
    }
    report.close();
    if (report.all_passed()) return 0;
    log << "failing checks:\n";
    for (const std::string& f : report.failing_checks()) log << "  " << f << "\n";
    return 1;
}

} // namespace eggb
