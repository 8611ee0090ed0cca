#include "eggbergman.h"

#include "eggbergman/analysis.hpp"
#include "eggbergman/gamma_tools.hpp"
#include "eggbergman/kernel.hpp"
#include "eggbergman/quadrature.hpp"
#include "eggbergman/sampling.hpp"
#include "eggbergman/suites.hpp"
#include "eggbergman/taylor.hpp"

#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace eggb;

struct egg_domain {
    EggDomain d;
};
struct egg_poly {
    RatPoly f;
};
struct egg_decomposition {
    int nvars;
    std::vector<std::pair<MultiIndex, RatPoly>> parts;
};
struct egg_kernel {
    KernelParams kp;
};
struct egg_config {
    RunConfig cfg;
};

namespace {

thread_local std::string t_last_error;

egg_status fail(egg_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

/// Runs `body`, translating exceptions into status codes.
template <class F>
egg_status guarded(F&& body) {
    try {
        return body();
    } catch (const std::overflow_error& ex) {
        return fail(EGG_ERR_OVERFLOW, ex.what());
    } catch (const std::domain_error& ex) {
        return fail(EGG_ERR_DOMAIN, ex.what());
    } catch (const std::invalid_argument& ex) {
        return fail(EGG_ERR_BAD_ARGUMENT, ex.what());
    } catch (const std::exception& ex) {
        return fail(EGG_ERR_RUNTIME, ex.what());
    } catch (...) {
        return fail(EGG_ERR_RUNTIME, "unknown error");
    }
}

egg_status require(bool cond, const char* message) {
    return cond ? EGG_OK : fail(EGG_ERR_BAD_ARGUMENT, message);
}

CPoint to_point(const EggDomain& d, const double* xi) {
    CPoint p;
    p.z.reserve(d.n);
    p.w.reserve(d.m);
    for (int i = 0; i < d.n; ++i) p.z.emplace_back(xi[2 * i], xi[2 * i + 1]);
    for (int i = 0; i < d.m; ++i)
        p.w.emplace_back(xi[2 * (d.n + i)], xi[2 * (d.n + i) + 1]);
    return p;
}

std::vector<Complex> to_flat(int nvars, const double* xi) {
    std::vector<Complex> out;
    out.reserve(nvars);
    for (int i = 0; i < nvars; ++i) out.emplace_back(xi[2 * i], xi[2 * i + 1]);
    return out;
}

void write_complex(Complex v, double* re, double* im) {
    if (re) *re = v.real();
    if (im) *im = v.imag();
}

} // namespace

extern "C" {

const char* egg_last_error(void) { return t_last_error.c_str(); }

egg_status egg_domain_create(int n, int m, double a, egg_domain** out) {
    if (egg_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] {
        *out = new egg_domain{EggDomain(n, m, a)};
        return EGG_OK;
    });
}

void egg_domain_free(egg_domain* d) { delete d; }

egg_status egg_domain_defining_function(const egg_domain* d, const double* xi,
                                        double* out) {
    if (egg_status s = require(d && xi && out, "null argument")) return s;
    return guarded([&] {
        *out = defining_function(d->d, to_point(d->d, xi));
        return EGG_OK;
    });
}

egg_status egg_domain_contains(const egg_domain* d, const double* xi, int* out) {
    if (egg_status s = require(d && xi && out, "null argument")) return s;
    return guarded([&] {
        *out = contains(d->d, to_point(d->d, xi)) ? 1 : 0;
        return EGG_OK;
    });
}

egg_status egg_domain_weighted_volume(const egg_domain* d, double sigma, double* out) {
    if (egg_status s = require(d && out, "null argument")) return s;
    return guarded([&] {
        *out = weighted_volume(d->d, WeightedMeasure(sigma));
        return EGG_OK;
    });
}

egg_status egg_domain_sample(const egg_domain* d, uint64_t seed, uint64_t index,
                             double* xi_out) {
    if (egg_status s = require(d && xi_out, "null argument")) return s;
    return guarded([&] {
        Sampler sampler(d->d, SamplerSpec(index + 1, seed));
        CPoint p = sampler.at(index);
        for (int i = 0; i < d->d.n; ++i) {
            xi_out[2 * i] = p.z[i].real();
            xi_out[2 * i + 1] = p.z[i].imag();
        }
        for (int i = 0; i < d->d.m; ++i) {
            xi_out[2 * (d->d.n + i)] = p.w[i].real();
            xi_out[2 * (d->d.n + i) + 1] = p.w[i].imag();
        }
        return EGG_OK;
    });
}

egg_status egg_psi_norm_integral(const egg_domain* d, double s, int k, double r,
                                 const double* xi, double* out) {
    if (egg_status st = require(d && xi && out, "null argument")) return st;
    return guarded([&] {
        *out = psi_norm_integral(d->d, s, k, r, to_point(d->d, xi));
        return EGG_OK;
    });
}

egg_status egg_monomial_moment(const egg_domain* d, double sigma, const int* alpha,
                               double* out) {
    if (egg_status st = require(d && alpha && out, "null argument")) return st;
    return guarded([&] {
        std::span<const int> sp(alpha, static_cast<std::size_t>(d->d.n + d->d.m));
        *out = monomial_moment(d->d, sigma, sp);
        return EGG_OK;
    });
}

egg_status egg_log_gamma(double x, double* out) {
    if (egg_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] {
        *out = log_gamma(x);
        return EGG_OK;
    });
}

egg_status egg_gamma_ratio(double x, double t, double* out) {
    if (egg_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] {
        *out = gamma_ratio(x, t);
        return EGG_OK;
    });
}

egg_status egg_poly_parse(int nvars, const char* text, egg_poly** out) {
    if (egg_status s = require(text && out, "null argument")) return s;
    return guarded([&] {
        *out = new egg_poly{parse_poly_text(nvars, text)};
        return EGG_OK;
    });
}

void egg_poly_free(egg_poly* f) { delete f; }

egg_status egg_poly_format(const egg_poly* f, char* buffer, size_t* size) {
    if (egg_status s = require(f && size, "null argument")) return s;
    return guarded([&] {
        std::string text = format_poly_text(f->f);
        if (!buffer || *size < text.size() + 1) {
            *size = text.size() + 1;
            return fail(EGG_ERR_BUFFER_TOO_SMALL, "buffer too small");
        }
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *size = text.size();
        return EGG_OK;
    });
}

egg_status egg_poly_nvars(const egg_poly* f, int* out) {
    if (egg_status s = require(f && out, "null argument")) return s;
    *out = f->f.nvars;
    return EGG_OK;
}

egg_status egg_poly_evaluate(const egg_poly* f, const double* xi, double* re,
                             double* im) {
    if (egg_status s = require(f && xi, "null argument")) return s;
    return guarded([&] {
        std::vector<Complex> flat = to_flat(f->f.nvars, xi);
        write_complex(f->f.evaluate(std::span<const Complex>(flat)), re, im);
        return EGG_OK;
    });
}

egg_status egg_poly_derivative(const egg_poly* f, int k, egg_poly** out) {
    if (egg_status s = require(f && out, "null argument")) return s;
    return guarded([&] {
        *out = new egg_poly{partial_derivative(f->f, k)};
        return EGG_OK;
    });
}

egg_status egg_poly_leibenson(const egg_poly* f, int k, egg_poly** out) {
    if (egg_status s = require(f && out, "null argument")) return s;
    return guarded([&] {
        *out = new egg_poly{leibenson_component(f->f, k)};
        return EGG_OK;
    });
}

egg_status egg_poly_multiplier(const egg_poly* f, int k, egg_poly** out) {
    if (egg_status s = require(f && out, "null argument")) return s;
    return guarded([&] {
        *out = new egg_poly{multiplier_transform(f->f, k)};
        return EGG_OK;
    });
}

egg_status egg_poly_gleason(const egg_poly* f, int order, egg_decomposition** out) {
    if (egg_status s = require(f && out, "null argument")) return s;
    return guarded([&] {
        auto parts = gleason_decompose(f->f, order);
        auto* dec = new egg_decomposition{f->f.nvars, {}};
        dec->parts.assign(parts.begin(), parts.end());
        *out = dec;
        return EGG_OK;
    });
}

void egg_decomposition_free(egg_decomposition* dec) { delete dec; }

egg_status egg_decomposition_size(const egg_decomposition* dec, size_t* out) {
    if (egg_status s = require(dec && out, "null argument")) return s;
    *out = dec->parts.size();
    return EGG_OK;
}

egg_status egg_decomposition_index(const egg_decomposition* dec, size_t i, int* alpha) {
    if (egg_status s = require(dec && alpha, "null argument")) return s;
    if (egg_status s = require(i < dec->parts.size(), "index out of range")) return s;
    for (int v = 0; v < dec->nvars; ++v) alpha[v] = dec->parts[i].first.e[v];
    return EGG_OK;
}

egg_status egg_decomposition_component(const egg_decomposition* dec, size_t i,
                                       egg_poly** out) {
    if (egg_status s = require(dec && out, "null argument")) return s;
    if (egg_status s = require(i < dec->parts.size(), "index out of range")) return s;
    return guarded([&] {
        *out = new egg_poly{dec->parts[i].second};
        return EGG_OK;
    });
}

egg_status egg_kernel_solve(const egg_domain* d, double sigma, egg_kernel** out) {
    if (egg_status s = require(d && out, "null argument")) return s;
    return guarded([&] {
        *out = new egg_kernel{solve_kernel_coefficients(d->d, sigma)};
        return EGG_OK;
    });
}

void egg_kernel_free(egg_kernel* k) { delete k; }

egg_status egg_kernel_eval(const egg_kernel* k, const double* xi, const double* xi_prime,
                           double* re, double* im) {
    if (egg_status s = require(k && xi && xi_prime, "null argument")) return s;
    return guarded([&] {
        write_complex(bergman_kernel(k->kp, to_point(k->kp.domain, xi),
                                     to_point(k->kp.domain, xi_prime)),
                      re, im);
        return EGG_OK;
    });
}

egg_status egg_kernel_g(const egg_kernel* k, const double* xi, const double* xi_prime,
                        double* re, double* im) {
    if (egg_status s = require(k && xi && xi_prime, "null argument")) return s;
    return guarded([&] {
        write_complex(g_sigma(k->kp, to_point(k->kp.domain, xi),
                              to_point(k->kp.domain, xi_prime)),
                      re, im);
        return EGG_OK;
    });
}

egg_status egg_kernel_gradient(const egg_kernel* k, int coord, const double* xi,
                               const double* xi_prime, double* re, double* im) {
    if (egg_status s = require(k && xi && xi_prime, "null argument")) return s;
    return guarded([&] {
        write_complex(kernel_gradient(k->kp, coord, to_point(k->kp.domain, xi),
                                      to_point(k->kp.domain, xi_prime)),
                      re, im);
        return EGG_OK;
    });
}

egg_status egg_kernel_coefficient(const egg_kernel* k, int index, double* re,
                                  double* im) {
    if (egg_status s = require(k != nullptr, "kernel is null")) return s;
    if (egg_status s = require(index >= 0 && index < static_cast<int>(k->kp.coeffs.size()),
                               "coefficient index out of range"))
        return s;
    write_complex(k->kp.coeffs[index], re, im);
    return EGG_OK;
}

egg_status egg_kernel_normalization(const egg_kernel* k, double* out) {
    if (egg_status s = require(k && out, "null argument")) return s;
    *out = k->kp.normalization;
    return EGG_OK;
}

egg_status egg_kernel_residual(const egg_kernel* k, double* out) {
    if (egg_status s = require(k && out, "null argument")) return s;
    *out = k->kp.solve_residual;
    return EGG_OK;
}

egg_status egg_kernel_save(const egg_kernel* k, const char* path) {
    if (egg_status s = require(k && path, "null argument")) return s;
    return guarded([&] {
        save_kernel_record(k->kp, path);
        return EGG_OK;
    });
}

egg_status egg_kernel_load(const char* path, egg_kernel** out) {
    if (egg_status s = require(path && out, "null argument")) return s;
    return guarded([&] {
        *out = new egg_kernel{load_kernel_record(path)};
        return EGG_OK;
    });
}

egg_status egg_config_create(egg_config** out) {
    if (egg_status s = require(out != nullptr, "out is null")) return s;
    *out = new egg_config{};
    return EGG_OK;
}

void egg_config_free(egg_config* cfg) { delete cfg; }

egg_status egg_config_set(egg_config* cfg, const char* key, const char* value) {
    if (egg_status s = require(cfg && key && value, "null argument")) return s;
    return guarded([&] {
        apply_config_entry(cfg->cfg, key, value);
        return EGG_OK;
    });
}

egg_status egg_config_load_file(egg_config* cfg, const char* path) {
    if (egg_status s = require(cfg && path, "null argument")) return s;
    return guarded([&] {
        RunConfig loaded = load_config_file(path);
        cfg->cfg = loaded;
        return EGG_OK;
    });
}

egg_status egg_run_suites(const egg_config* cfg, int verbose, int* exit_code) {
    if (egg_status s = require(cfg && exit_code, "null argument")) return s;
    return guarded([&] {
        std::ostringstream sink;
        std::ostream& log = verbose ? std::cerr : static_cast<std::ostream&>(sink);
        *exit_code = run_suites(cfg->cfg, log);
        return EGG_OK;
    });
}

egg_status egg_solve_and_cache(const egg_config* cfg, int verbose) {
    if (egg_status s = require(cfg != nullptr, "config is null")) return s;
    return guarded([&] {
        std::ostringstream sink;
        std::ostream& log = verbose ? std::cerr : static_cast<std::ostream&>(sink);
        solve_and_cache(cfg->cfg, log);
        return EGG_OK;
    });
}

} // extern "C"
