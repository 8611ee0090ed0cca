#ifndef EGGBERGMAN_TAYLOR_HPP
#define EGGBERGMAN_TAYLOR_HPP

#include "eggbergman/domain.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eggb {

/// Exact rational on 64-bit numerator/denominator, always reduced with
/// positive denominator. Operations route through 128-bit intermediates and
/// throw std::overflow_error if a reduced result leaves the 64-bit range.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {} // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);

    /// Accepts "p", "p/q" and plain decimals like "-0.125".
    static Rational parse(std::string_view text);

    bool is_zero() const { return num == 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num, den); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

/// Complex number with exact rational real and imaginary parts.
struct RatComplex {
    Rational re;
    Rational im;

    RatComplex() = default;
    RatComplex(Rational re_, Rational im_ = Rational(0)) : re(re_), im(im_) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Complex to_complex() const { return Complex(re.to_double(), im.to_double()); }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return RatComplex(a.re + b.re, a.im + b.im);
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return RatComplex(a.re - b.re, a.im - b.im);
    }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return RatComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Exponent vector of length n+m; |alpha| is the total degree.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e_);
    static MultiIndex unit(int nvars, int k);
    static MultiIndex zero(int nvars) { return MultiIndex(std::vector<int>(nvars, 0)); }

    int order() const;
    int size() const { return static_cast<int>(e.size()); }

    MultiIndex plus(int k) const;  // alpha + e_k
    MultiIndex minus(int k) const; // alpha - e_k, requires alpha_k >= 1
    MultiIndex operator+(const MultiIndex& o) const;

    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e < b.e; }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
    std::string str() const;
};

namespace detail {
inline bool coeff_is_zero(const RatComplex& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Complex& c) { return c == Complex(0.0); }
inline Complex coeff_to_complex(const RatComplex& c) { return c.to_complex(); }
inline Complex coeff_to_complex(const Complex& c) { return c; }
// Multiplication by the exact fraction num/den: exact for rational
// coefficients, a single rounded multiply for doubles.
inline RatComplex scale_fraction(const RatComplex& c, int num, int den) {
    Rational f(num, den);
    return RatComplex(c.re * f, c.im * f);
}
inline Complex scale_fraction(const Complex& c, int num, int den) {
    return c * (static_cast<double>(num) / static_cast<double>(den));
}
} // namespace detail

/// Sparse polynomial on C^{nvars}: finite map multi-index -> coefficient.
/// Zero coefficients are never stored. The degree cap guards against runaway
/// exponent growth in user input; the decomposition operators never raise it.
template <class C>
struct Poly {
    static constexpr int kMaxDegree = 32;

    int nvars = 0;
    std::map<MultiIndex, C> terms;

    Poly() = default;
    explicit Poly(int nvars_) : nvars(nvars_) {
        if (nvars_ < 1) throw std::invalid_argument("Poly: nvars must be >= 1");
    }

    bool is_zero() const { return terms.empty(); }

    /// Max |alpha| over stored terms; -1 for the zero polynomial.
    int degree() const {
        int deg = -1;
        for (const auto& [alpha, c] : terms) deg = std::max(deg, alpha.order());
        return deg;
    }

    void add_term(const MultiIndex& alpha, const C& c) {
        if (alpha.size() != nvars)
            throw std::invalid_argument("Poly: index length " +
                                        std::to_string(alpha.size()) +
                                        " does not match nvars " + std::to_string(nvars));
        if (alpha.order() > kMaxDegree)
            throw std::invalid_argument("Poly: degree cap " +
                                        std::to_string(kMaxDegree) + " exceeded");
        auto it = terms.find(alpha);
        if (it == terms.end()) {
            if (!detail::coeff_is_zero(c)) terms.emplace(alpha, c);
        } else {
            it->second = it->second + c;
            if (detail::coeff_is_zero(it->second)) terms.erase(it);
        }
    }

    C coeff(const MultiIndex& alpha) const {
        auto it = terms.find(alpha);
        return it != terms.end() ? it->second : C{};
    }

    Complex evaluate(std::span<const Complex> xi) const {
        if (xi.size() != static_cast<std::size_t>(nvars))
            throw std::invalid_argument("Poly::evaluate: dimension mismatch");
        Complex acc(0.0);
        for (const auto& [alpha, c] : terms) {
            Complex t = detail::coeff_to_complex(c);
            for (int i = 0; i < nvars; ++i)
                for (int rep = 0; rep < alpha.e[i]; ++rep) t *= xi[i];
            acc += t;
        }
        return acc;
    }

    Complex evaluate(const CPoint& p) const {
        std::vector<Complex> xi;
        xi.reserve(p.dim());
        xi.insert(xi.end(), p.z.begin(), p.z.end());
        xi.insert(xi.end(), p.w.begin(), p.w.end());
        return evaluate(std::span<const Complex>(xi));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        if (a.nvars != b.nvars) throw std::invalid_argument("Poly: nvars mismatch");
        Poly r = a;
        for (const auto& [alpha, c] : b.terms) r.add_term(alpha, c);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        if (a.nvars != b.nvars) throw std::invalid_argument("Poly: nvars mismatch");
        Poly r = a;
        for (const auto& [alpha, c] : b.terms)
            r.add_term(alpha, detail::scale_fraction(c, -1, 1));
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
};

using RatPoly = Poly<RatComplex>;
using DPoly = Poly<Complex>;

DPoly to_double_poly(const RatPoly& f);

/// Formal partial derivative with respect to coordinate k (0-based).
template <class C>
Poly<C> partial_derivative(const Poly<C>& f, int k) {
    if (k < 0 || k >= f.nvars)
        throw std::invalid_argument("partial_derivative: coordinate out of range");
    Poly<C> r(f.nvars);
    for (const auto& [alpha, c] : f.terms) {
        if (alpha.e[k] == 0) continue;
        r.add_term(alpha.minus(k), detail::scale_fraction(c, alpha.e[k], 1));
    }
    return r;
}

/// Coefficient form of the ray integral int_0^1 (d f / d xi_k)(t xi) dt:
/// c_alpha xi^alpha  ->  (alpha_k / |alpha|) c_alpha xi^{alpha - e_k}.
template <class C>
Poly<C> leibenson_component(const Poly<C>& f, int k) {
    if (k < 0 || k >= f.nvars)
        throw std::invalid_argument("leibenson_component: coordinate out of range");
    Poly<C> r(f.nvars);
    for (const auto& [alpha, c] : f.terms) {
        if (alpha.e[k] == 0) continue; // constants and k-free terms drop out
        r.add_term(alpha.minus(k), detail::scale_fraction(c, alpha.e[k], alpha.order()));
    }
    return r;
}

/// Termwise multiplier c_alpha -> (alpha_k / |alpha|) c_alpha, constant term
/// dropped. Identically xi_k * leibenson_component(f, k).
template <class C>
Poly<C> multiplier_transform(const Poly<C>& f, int k) {
    if (k < 0 || k >= f.nvars)
        throw std::invalid_argument("multiplier_transform: coordinate out of range");
    Poly<C> r(f.nvars);
    for (const auto& [alpha, c] : f.terms) {
        if (alpha.order() == 0 || alpha.e[k] == 0) continue;
        r.add_term(alpha, detail::scale_fraction(c, alpha.e[k], alpha.order()));
    }
    return r;
}

template <class C>
Poly<C> mul_monomial(const Poly<C>& f, const MultiIndex& beta) {
    Poly<C> r(f.nvars);
    for (const auto& [alpha, c] : f.terms) r.add_term(alpha + beta, c);
    return r;
}

/// Components of f = sum_{|alpha| = order} xi^alpha A_alpha f for f vanishing
/// to the given order at 0, built by iterating the order-1 components and
/// summing the contributions of all coordinate paths that lead to the same
/// multi-index. Throws if f has a nonzero coefficient below the stated order,
/// naming the offending index.
template <class C>
std::map<MultiIndex, Poly<C>> gleason_decompose(const Poly<C>& f, int order) {
    if (order < 1) throw std::invalid_argument("gleason_decompose: order must be >= 1");
    for (const auto& [alpha, c] : f.terms)
        if (alpha.order() < order)
            throw std::invalid_argument(
                "gleason_decompose: nonzero coefficient at low-order index " +
                alpha.str());
    std::map<MultiIndex, Poly<C>> out;
    if (f.is_zero()) return out;
    if (order == 1) {
        for (int k = 0; k < f.nvars; ++k) {
            Poly<C> comp = leibenson_component(f, k);
            if (!comp.is_zero()) out.emplace(MultiIndex::unit(f.nvars, k), std::move(comp));
        }
        return out;
    }
    for (int k = 0; k < f.nvars; ++k) {
        Poly<C> comp = leibenson_component(f, k);
        if (comp.is_zero()) continue;
        for (auto& [alpha, part] : gleason_decompose(comp, order - 1)) {
            MultiIndex target = alpha.plus(k);
            auto it = out.find(target);
            if (it == out.end())
                out.emplace(target, std::move(part));
            else
                it->second = it->second + part;
        }
    }
    // path merging can cancel a component entirely
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// Parses the one-term-per-row literal format: nvars integer exponents
/// followed by the real and imaginary parts ("0.5", "-2", "1/3"). Blank
/// lines and lines starting with '#' are skipped.
RatPoly parse_poly_text(int nvars, std::string_view text);

/// Inverse of parse_poly_text (terms in index order, exact fractions).
std::string format_poly_text(const RatPoly& f);

class SampleRng;

/// Random polynomial with small integer coefficients, term orders in
/// [min_order, max_degree]. Used by the verification suites.
RatPoly random_poly(int nvars, int min_order, int max_degree, int n_terms,
                    SampleRng& rng);

} // namespace eggb

#endif
