#ifndef EGGBERGMAN_DOMAIN_HPP
#define EGGBERGMAN_DOMAIN_HPP

#include <complex>
#include <span>
#include <vector>

namespace eggb {

using Complex = std::complex<double>;

/// A point of C^{n+m}, split into the z-block (length n) and the w-block
/// (length m). Flat indexing runs z first, then w.
struct CPoint {
    std::vector<Complex> z;
    std::vector<Complex> w;

    CPoint() = default;
    CPoint(std::vector<Complex> z_, std::vector<Complex> w_)
        : z(std::move(z_)), w(std::move(w_)) {}

    std::size_t dim() const { return z.size() + w.size(); }

    Complex& flat(std::size_t k) { return k < z.size() ? z[k] : w[k - z.size()]; }
    const Complex& flat(std::size_t k) const {
        return k < z.size() ? z[k] : w[k - z.size()];
    }

    /// Origin of C^{n+m}.
    static CPoint origin(int n, int m) {
        return CPoint(std::vector<Complex>(n, Complex(0.0)),
                      std::vector<Complex>(m, Complex(0.0)));
    }
};

/// The two-block egg domain { (z,w) : |z|^2 + |w|^{2/a} < 1 } with
/// z in C^n, w in C^m and 0 < a <= 2.
struct EggDomain {
    int n;
    int m;
    double a;

    EggDomain(int n_, int m_, double a_);
};

/// Hermitian inner product <u,v> = sum_j u_j * conj(v_j).
Complex pairing(std::span<const Complex> u, std::span<const Complex> v);

/// Squared Euclidean norm |u|^2.
double norm_sq(std::span<const Complex> u);

/// Principal-branch power base^expo (real exponent). Exact for integer
/// exponents 0..4 so that a=1 and a=2 degenerate cases carry no branch fuzz.
Complex principal_pow(Complex base, double expo);

/// Defining function h(z,w) = (1-|z|^2)^a - |w|^2.
/// Requires |z| <= 1; positive exactly on the interior, zero on the boundary.
double defining_function(const EggDomain& d, const CPoint& p);

/// Strict membership |z|^2 + |w|^{2/a} < 1.
bool contains(const EggDomain& d, const CPoint& p);

/// (1 - <z,z'>)^a - <w,w'>, principal branch. Nonzero for points of the
/// closed domain because |<w,w'>| < |1 - <z,z'>|^a there.
Complex kernel_denominator(const EggDomain& d, const CPoint& p, const CPoint& q);

/// Dimension-checks p against d (z length n, w length m).
void require_point_shape(const EggDomain& d, const CPoint& p);

} // namespace eggb

#endif
