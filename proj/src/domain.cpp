#include "eggbergman/domain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eggb {

EggDomain::EggDomain(int n_, int m_, double a_) : n(n_), m(m_), a(a_) {
    if (n < 1) throw std::invalid_argument("EggDomain: n must be >= 1");
    if (m < 1) throw std::invalid_argument("EggDomain: m must be >= 1");
    if (!(a > 0.0) || !(a <= 2.0))
        throw std::invalid_argument("EggDomain: a must lie in (0, 2]");
}

Complex pairing(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("pairing: length mismatch (" +
                                    std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    Complex acc(0.0);
    for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * std::conj(v[j]);
    return acc;
}

double norm_sq(std::span<const Complex> u) {
    double acc = 0.0;
    for (const Complex& x : u) acc += std::norm(x);
    return acc;
}

Complex principal_pow(Complex base, double expo) {
    if (expo == 0.0) return Complex(1.0);
    if (expo == 1.0) return base;
    if (expo == 2.0) return base * base;
    if (expo == 3.0) return base * base * base;
    if (expo == 4.0) {
        Complex b2 = base * base;
        return b2 * b2;
    }
    return std::exp(expo * std::log(base));
}

void require_point_shape(const EggDomain& d, const CPoint& p) {
    if (p.z.size() != static_cast<std::size_t>(d.n) ||
        p.w.size() != static_cast<std::size_t>(d.m))
        throw std::invalid_argument("point block sizes do not match the domain");
}

double defining_function(const EggDomain& d, const CPoint& p) {
    require_point_shape(d, p);
    double zsq = norm_sq(p.z);
    if (zsq > 1.0)
        throw std::domain_error("defining_function: |z| > 1, real power undefined");
    return std::pow(1.0 - zsq, d.a) - norm_sq(p.w);
}

bool contains(const EggDomain& d, const CPoint& p) {
    require_point_shape(d, p);
    double zsq = norm_sq(p.z);
    double wsq = norm_sq(p.w);
    return zsq + std::pow(wsq, 1.0 / d.a) < 1.0;
}

namespace {

bool in_closed_domain(const EggDomain& d, const CPoint& p) {
    double zsq = norm_sq(p.z);
    double wsq = norm_sq(p.w);
    return zsq + std::pow(wsq, 1.0 / d.a) <= 1.0 + 1e-12;
}

} // namespace

Complex kernel_denominator(const EggDomain& d, const CPoint& p, const CPoint& q) {
    require_point_shape(d, p);
    require_point_shape(d, q);
    if (!in_closed_domain(d, p) || !in_closed_domain(d, q))
        throw std::domain_error("kernel_denominator: point outside the closed domain");
    Complex u = pairing(p.z, q.z);
    Complex v = pairing(p.w, q.w);
    return principal_pow(Complex(1.0) - u, d.a) - v;
}

} // namespace eggb
