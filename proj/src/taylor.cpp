#include "eggbergman/taylor.hpp"

#include "eggbergman/rng.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eggb {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<long long>::max() ||
        v < std::numeric_limits<long long>::min())
        throw std::overflow_error(std::string("Rational: 64-bit overflow in ") + what);
    return static_cast<long long>(v);
}

Rational make_reduced(i128 num, i128 den, const char* what) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Rational(0);
    i128 g = gcd128(num, den);
    num /= g;
    den /= g;
    Rational r;
    r.num = narrow(num, what);
    r.den = narrow(den, what);
    return r;
}

} // namespace

Rational::Rational(long long n, long long d) {
    Rational r = make_reduced(n, d, "constructor");
    num = r.num;
    den = r.den;
}

Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num) * b.den + i128(b.num) * a.den,
                        i128(a.den) * b.den, "addition");
}

Rational operator-(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num) * b.den - i128(b.num) * a.den,
                        i128(a.den) * b.den, "subtraction");
}

Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num) * b.num, i128(a.den) * b.den, "multiplication");
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
    return make_reduced(i128(a.num) * b.den, i128(a.den) * b.num, "division");
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("Rational::parse: bad literal '" +
                                    std::string(text) + "'");
    };
    if (text.empty()) fail();
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        long long p = 0, q = 0;
        auto r1 = std::from_chars(text.data(), text.data() + slash, p);
        auto r2 =
            std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
        if (r1.ec != std::errc() || r1.ptr != text.data() + slash ||
            r2.ec != std::errc() || r2.ptr != text.data() + text.size())
            fail();
        return Rational(p, q);
    }
    // decimal: sign, digits, optional fractional digits
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    i128 num = 0;
    i128 den = 1;
    bool saw_digit = false, saw_dot = false;
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (ch == '.') {
            if (saw_dot) fail();
            saw_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') fail();
        saw_digit = true;
        num = num * 10 + (ch - '0');
        if (saw_dot) den *= 10;
        if (num > i128(std::numeric_limits<long long>::max()) ||
            den > i128(std::numeric_limits<long long>::max()))
            throw std::overflow_error("Rational::parse: literal too large");
    }
    if (!saw_digit) fail();
    return make_reduced(neg ? -num : num, den, "parse");
}

MultiIndex::MultiIndex(std::vector<int> e_) : e(std::move(e_)) {
    for (int v : e)
        if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
}

MultiIndex MultiIndex::unit(int nvars, int k) {
    std::vector<int> e(nvars, 0);
    e.at(k) = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const {
    int s = 0;
    for (int v : e) s += v;
    return s;
}

MultiIndex MultiIndex::plus(int k) const {
    MultiIndex r = *this;
    r.e.at(k) += 1;
    return r;
}

MultiIndex MultiIndex::minus(int k) const {
    MultiIndex r = *this;
    if (r.e.at(k) < 1) throw std::invalid_argument("MultiIndex: exponent underflow");
    r.e[k] -= 1;
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (e.size() != o.e.size()) throw std::invalid_argument("MultiIndex: size mismatch");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

DPoly to_double_poly(const RatPoly& f) {
    DPoly r(f.nvars);
    for (const auto& [alpha, c] : f.terms) r.add_term(alpha, c.to_complex());
    return r;
}

RatPoly parse_poly_text(int nvars, std::string_view text) {
    RatPoly poly(nvars);
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        std::string tok;
        if (!(row >> tok) || tok[0] == '#') continue;
        std::vector<int> e(nvars);
        try {
            e[0] = std::stoi(tok);
            for (int i = 1; i < nvars; ++i) {
                if (!(row >> tok)) throw std::invalid_argument("short row");
                e[i] = std::stoi(tok);
            }
            std::string tre, tim;
            if (!(row >> tre >> tim)) throw std::invalid_argument("short row");
            if (row >> tok) throw std::invalid_argument("trailing tokens");
            poly.add_term(MultiIndex(std::move(e)),
                          RatComplex(Rational::parse(tre), Rational::parse(tim)));
        } catch (const std::exception& ex) {
            throw std::invalid_argument("polynomial literal, line " +
                                        std::to_string(lineno) + ": " + ex.what());
        }
    }
    return poly;
}

std::string format_poly_text(const RatPoly& f) {
    std::string out;
    for (const auto& [alpha, c] : f.terms) {
        for (int i = 0; i < alpha.size(); ++i) {
            out += std::to_string(alpha.e[i]);
            out += ' ';
        }
        out += c.re.str();
        out += ' ';
        out += c.im.str();
        out += '\n';
    }
    return out;
}

RatPoly random_poly(int nvars, int min_order, int max_degree, int n_terms,
                    SampleRng& rng) {
    if (min_order < 0 || max_degree < min_order)
        throw std::invalid_argument("random_poly: bad order range");
    RatPoly poly(nvars);
    for (int t = 0; t < n_terms; ++t) {
        int span = max_degree - min_order + 1;
        int order = min_order + static_cast<int>(rng.next_u64() % span);
        std::vector<int> e(nvars, 0);
        for (int u = 0; u < order; ++u) e[rng.next_u64() % nvars] += 1;
        auto small_int = [&] {
            long long v = static_cast<long long>(rng.next_u64() % 19) - 9;
            return Rational(v);
        };
        Rational re = small_int(), im = small_int();
        if (re.is_zero() && im.is_zero()) re = Rational(1);
        poly.add_term(MultiIndex(std::move(e)), RatComplex(re, im));
    }
    return poly;
}

} // namespace eggb
