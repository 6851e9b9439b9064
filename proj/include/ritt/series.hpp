#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ritt/rational.hpp"
#include "ritt/rational_function.hpp"

namespace ritt {

// Raised when a computation would need more known coefficients than a series
// carries; `required` is the order that would have sufficed.
class InsufficientOrderError : public std::runtime_error {
public:
    InsufficientOrderError(const std::string& what, long required)
        : std::runtime_error(what + " (required order " + std::to_string(required) + ")"),
          required_(required) {}
    long required() const { return required_; }

private:
    long required_;
};

// Finitely truncated Laurent series over Q. The object represents knowledge
// of every coefficient with exponent < order(); exponents >= order() are
// unknown. Stored window: coefficient of x^(valuation()+i) at index i, with
// a nonzero front coefficient, or an empty window for the series that is
// exactly zero modulo x^order (then valuation() == order()).
//
// Every operation returns the tightest order its inputs guarantee; nothing
// is ever claimed beyond that order.
class TruncatedSeries {
public:
    TruncatedSeries(long valuation, std::vector<Rational> coeffs)
        : val_(valuation), coeffs_(std::move(coeffs)) {
        canonicalize();
    }

    static TruncatedSeries zero(long order) { return TruncatedSeries(order, {}); }
    static TruncatedSeries constant(const Rational& c, long order) {
        return monomial(c, 0, order);
    }
    static TruncatedSeries identity(long order) { return monomial(Rational(1), 1, order); }
    static TruncatedSeries monomial(const Rational& c, long exponent, long order) {
        if (order <= exponent || c.is_zero()) return zero(order);
        std::vector<Rational> v(static_cast<size_t>(order - exponent));
        v[0] = c;
        return TruncatedSeries(exponent, std::move(v));
    }

    long order() const { return val_ + static_cast<long>(coeffs_.size()); }
    long valuation() const { return val_; }
    bool is_zero_to_order() const { return coeffs_.empty(); }
    long known_length() const { return static_cast<long>(coeffs_.size()); }

    // Coefficient of x^e; e must lie below order().
    const Rational& coeff(long e) const {
        if (e >= order())
            throw std::out_of_range("TruncatedSeries: coefficient beyond known order");
        static const Rational kZero;
        if (e < val_) return kZero;
        return coeffs_[static_cast<size_t>(e - val_)];
    }

    const std::vector<Rational>& window() const { return coeffs_; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        long n = std::min(a.order(), b.order());
        long v = std::min(std::min(a.val_, b.val_), n);
        std::vector<Rational> r(static_cast<size_t>(n - v));
        for (long e = v; e < n; ++e) r[static_cast<size_t>(e - v)] = a.at(e) + b.at(e);
        return TruncatedSeries(v, std::move(r));
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        long n = std::min(a.order(), b.order());
        long v = std::min(std::min(a.val_, b.val_), n);
        std::vector<Rational> r(static_cast<size_t>(n - v));
        for (long e = v; e < n; ++e) r[static_cast<size_t>(e - v)] = a.at(e) - b.at(e);
        return TruncatedSeries(v, std::move(r));
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a) {
        std::vector<Rational> r(a.coeffs_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = -a.coeffs_[i];
        return TruncatedSeries(a.val_, std::move(r));
    }

    // Output order is min(val_a + order_b, val_b + order_a): the unknown tail
    // of one factor meets the valuation of the other. The convolution clears
    // denominators first and runs over integers, so there is one
    // canonicalization per output coefficient rather than two per term.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        long n = std::min(a.val_ + b.order(), b.val_ + a.order());
        if (a.is_zero_to_order() || b.is_zero_to_order()) return zero(n);
        long v = a.val_ + b.val_;
        size_t len = static_cast<size_t>(n - v); // == min of the window lengths

        auto cleared = [](const std::vector<Rational>& c, mpz_class& lcm) {
            lcm = 1;
            for (const Rational& x : c)
                if (!x.is_zero())
                    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
            std::vector<mpz_class> out(c.size());
            for (size_t i = 0; i < c.size(); ++i) {
                if (c[i].is_zero()) continue;
                mpz_class f;
                mpz_divexact(f.get_mpz_t(), lcm.get_mpz_t(), c[i].denominator().get_mpz_t());
                out[i] = c[i].numerator() * f;
            }
            return out;
        };
        mpz_class da, db;
        std::vector<mpz_class> ca = cleared(a.coeffs_, da);
        std::vector<mpz_class> cb = cleared(b.coeffs_, db);
        std::vector<mpz_class> acc(len);
        for (size_t i = 0; i < ca.size() && i < len; ++i) {
            if (sgn(ca[i]) == 0) continue;
            size_t jmax = std::min(cb.size(), len - i);
            for (size_t j = 0; j < jmax; ++j) {
                if (sgn(cb[j]) == 0) continue;
                mpz_addmul(acc[i + j].get_mpz_t(), ca[i].get_mpz_t(), cb[j].get_mpz_t());
            }
        }
        mpz_class den = da * db;
        std::vector<Rational> r(len);
        for (size_t k = 0; k < len; ++k) r[k] = Rational(acc[k], den);
        return TruncatedSeries(v, std::move(r));
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) {
        if (c.is_zero()) return zero(a.order());
        std::vector<Rational> r(a.coeffs_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeffs_[i] * c;
        return TruncatedSeries(a.val_, std::move(r));
    }
    friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) { return a * c; }

private:
    const Rational& at(long e) const {
        static const Rational kZero;
        if (e < val_ || e >= order()) return kZero;
        return coeffs_[static_cast<size_t>(e - val_)];
    }

    void canonicalize() {
        size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead == coeffs_.size()) {
            val_ += static_cast<long>(coeffs_.size());
            coeffs_.clear();
        } else if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
            val_ += static_cast<long>(lead);
        }
    }

    long val_;
    std::vector<Rational> coeffs_;
};

// Multiplication by x^k.
inline TruncatedSeries shift(const TruncatedSeries& f, long k) {
    return TruncatedSeries(f.valuation() + k, f.window());
}

// Restricts knowledge to exponents < k (no-op when k >= order).
inline TruncatedSeries truncate(const TruncatedSeries& f, long k) {
    if (k >= f.order()) return f;
    if (k <= f.valuation()) return TruncatedSeries::zero(k);
    std::vector<Rational> w(f.window().begin(),
                            f.window().begin() + static_cast<long>(k - f.valuation()));
    return TruncatedSeries(f.valuation(), std::move(w));
}

// f(q*x): coefficient at exponent e picks up a factor q^e. q must be nonzero
// when the window reaches negative exponents.
inline TruncatedSeries scale_argument(const TruncatedSeries& f, const Rational& q) {
    if (f.is_zero_to_order()) return f;
    std::vector<Rational> r(f.window().size());
    Rational p = pow(q, f.valuation());
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] = f.window()[i] * p;
        p *= q;
    }
    return TruncatedSeries(f.valuation(), std::move(r));
}

inline TruncatedSeries derive(const TruncatedSeries& f) {
    if (f.is_zero_to_order()) return TruncatedSeries::zero(f.order() - 1);
    std::vector<Rational> r(f.window().size());
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = f.window()[i] * Rational(f.valuation() + static_cast<long>(i));
    return TruncatedSeries(f.valuation() - 1, std::move(r));
}

// Multiplicative inverse. A unit part with k known coefficients keeps k known
// coefficients, so the output order is order - 2*valuation.
inline TruncatedSeries invert(const TruncatedSeries& f) {
    if (f.is_zero_to_order())
        throw std::domain_error("cannot invert zero series");
    const std::vector<Rational>& u = f.window();
    std::vector<Rational> w(u.size());
    Rational lead_inv = Rational(1) / u[0];
    w[0] = lead_inv;
    for (size_t m = 1; m < u.size(); ++m) {
        Rational s;
        for (size_t i = 1; i <= m; ++i) s += u[i] * w[m - i];
        w[m] = -s * lead_inv;
    }
    return TruncatedSeries(-f.valuation(), std::move(w));
}

inline TruncatedSeries pow(const TruncatedSeries& f, long m) {
    if (m < 0) {
        if (f.is_zero_to_order())
            throw std::domain_error("cannot invert zero series");
        return pow(invert(f), -m);
    }
    if (m == 0) {
        long len = f.is_zero_to_order() ? f.order() : f.known_length();
        return TruncatedSeries::constant(Rational(1), len);
    }
    TruncatedSeries base = f;
    TruncatedSeries acc = base;
    --m;
    while (m > 0) {
        if (m & 1) acc = acc * base;
        m >>= 1;
        if (m > 0) base = base * base;
    }
    return acc;
}

// f(g) for g with positive valuation. Laurent f is handled through
// f = x^v * u: the result is g^v * u(g). The unit part is composed by
// baby-step/giant-step over precomputed powers of g, which keeps the number
// of full-size multiplications near 2*sqrt(window of f).
inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    long w = g.valuation(); // == order for a zero-to-order g: still usable knowledge
    if (w < 1)
        throw std::domain_error("composition requires positive valuation");

    if (f.is_zero_to_order()) {
        long nf = f.order();
        return TruncatedSeries::zero(std::min(nf * w, (nf - 1) * w + g.order()));
    }

    long v = f.valuation();
    TruncatedSeries u = shift(f, -v); // valuation 0
    long window = u.known_length();
    long cap = std::min(window * w, g.order());

    long m = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(window))));
    if (m < 1) m = 1;
    std::vector<TruncatedSeries> gp;
    gp.reserve(static_cast<size_t>(m) + 1);
    gp.push_back(TruncatedSeries::constant(Rational(1), cap));
    for (long i = 1; i <= m; ++i) gp.push_back(truncate(gp.back() * g, cap));

    long blocks = (window + m - 1) / m;
    TruncatedSeries acc = TruncatedSeries::zero(cap);
    for (long j = blocks - 1; j >= 0; --j) {
        TruncatedSeries block = TruncatedSeries::zero(cap);
        for (long i = 0; i < m; ++i) {
            long idx = j * m + i;
            if (idx >= window) break;
            const Rational& c = u.coeff(idx);
            if (!c.is_zero()) block = block + gp[static_cast<size_t>(i)] * c;
        }
        acc = (j == blocks - 1) ? block : truncate(acc * gp[static_cast<size_t>(m)], cap) + block;
    }

    if (v == 0) return truncate(acc, cap);
    return pow(g, v) * acc;
}

// Compositional inverse of f = f1*x + f2*x^2 + ..., f1 != 0, via the
// Lagrange coefficient formula g_n = (1/n) [x^(n-1)] (x/f)^n. The result is
// known to the same order as f.
inline TruncatedSeries reversion(const TruncatedSeries& f) {
    if (f.is_zero_to_order() || f.valuation() != 1)
        throw std::domain_error("not reversible");
    long n = f.order();
    TruncatedSeries iu = invert(shift(f, -1)); // (x/f), a unit known mod x^(n-1)
    std::vector<Rational> g(static_cast<size_t>(n - 1));
    TruncatedSeries p = TruncatedSeries::constant(Rational(1), n - 1);
    for (long k = 1; k < n; ++k) {
        p = truncate(p * iu, n - 1);
        g[static_cast<size_t>(k - 1)] = p.coeff(k - 1) / Rational(k);
    }
    return TruncatedSeries(1, std::move(g));
}

// Laurent expansion of a rational function at 0, exact to the requested
// order. The zero function expands to the zero-to-order series.
inline TruncatedSeries expand(const RationalFunction& f, long order) {
    if (f.is_zero()) return TruncatedSeries::zero(order);
    long vn = f.num().valuation_at_zero();
    long vd = f.den().valuation_at_zero();
    long big = order + std::max({2 * vd - vn, vd, 0L}) + 1;

    auto poly_series = [big](const Polynomial& p) {
        std::vector<Rational> w(static_cast<size_t>(big));
        for (int i = 0; i <= p.degree() && i < big; ++i) w[static_cast<size_t>(i)] = p.coefficient(i);
        return TruncatedSeries(0, std::move(w));
    };
    TruncatedSeries r = poly_series(f.num()) * invert(poly_series(f.den()));
    return truncate(r, order);
}

// P(s) for a polynomial P and a series s with valuation >= 0, known modulo
// x^min(cap, order(s)).
inline TruncatedSeries eval_poly(const Polynomial& p, const TruncatedSeries& s, long cap) {
    if (!s.is_zero_to_order() && s.valuation() < 0)
        throw std::domain_error("eval_poly requires nonnegative valuation");
    long c = std::min(cap, s.order());
    TruncatedSeries acc = TruncatedSeries::zero(c);
    for (int i = p.degree(); i >= 0; --i)
        acc = truncate(acc * s, c) + TruncatedSeries::constant(p.coefficient(i), c);
    return acc;
}

// F(s) = num(s) / den(s).
inline TruncatedSeries eval_ratfun(const RationalFunction& f, const TruncatedSeries& s, long cap) {
    TruncatedSeries den = eval_poly(f.den(), s, cap);
    return truncate(eval_poly(f.num(), s, cap) * invert(den), cap);
}

// Exact agreement of all known coefficients below exponent k; both series
// must be known at least that far.
inline bool agree_to_order(const TruncatedSeries& a, const TruncatedSeries& b, long k) {
    if (a.order() < k || b.order() < k)
        throw InsufficientOrderError("agree_to_order: operands not known that far", k);
    TruncatedSeries d = truncate(a - b, k);
    return d.is_zero_to_order();
}

inline std::string to_string(const TruncatedSeries& f, const std::string& var = "x") {
    std::string out;
    for (long e = f.valuation(); e < f.order(); ++e) {
        const Rational& c = f.coeff(e);
        if (c.is_zero()) continue;
        Rational a = abs(c);
        out += out.empty() ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
        bool unit = a.is_one() && e != 0;
        if (!unit) out += a.str();
        if (e != 0) {
            if (!unit) out += "*";
            out += var;
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    if (!out.empty()) out += " + ";
    out += "O(" + var + "^" + std::to_string(f.order()) + ")";
    return out;
}

} // namespace ritt
