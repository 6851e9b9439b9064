#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ritt/rational.hpp"
#include "ritt/series.hpp"

namespace ritt {

// Partial Bell polynomial B_{n,k} in the variables x_1 .. x_{n-k+1}.
// Every monomial c * prod x_i^{e_i} satisfies sum e_i = k (degree) and
// sum i*e_i = n (weight); all coefficients are positive integers. Exponent
// vectors have fixed length n-k+1 and the term map is ordered, so printing
// and iteration are deterministic.
struct BellPolynomial {
    int n = 0;
    int k = 0;
    std::map<std::vector<int>, Rational> terms;

    // Substitutes args[i-1] for x_i. T needs ring operations and
    // multiplication by Rational (RationalFunction and TruncatedSeries both
    // qualify). Every monomial has at least one factor, so no standalone
    // multiplicative identity is needed.
    template <typename T>
    T evaluate(const std::vector<T>& args) const {
        if (static_cast<int>(args.size()) < n - k + 1)
            throw std::invalid_argument("BellPolynomial::evaluate: need " +
                                        std::to_string(n - k + 1) + " arguments");
        bool first_term = true;
        T acc = args[0]; // overwritten before use
        for (const auto& [exps, c] : terms) {
            bool first_factor = true;
            T term = args[0];
            for (size_t i = 0; i < exps.size(); ++i) {
                if (exps[i] == 0) continue;
                T p = pow(args[i], exps[i]);
                term = first_factor ? p : term * p;
                first_factor = false;
            }
            term = term * c;
            acc = first_term ? term : acc + term;
            first_term = false;
        }
        return acc;
    }
};

namespace detail {

// Recurrence B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1},
// with B_{0,0} = 1. Arguments may reach k = 0 internally.
inline std::map<std::vector<int>, Rational> bell_terms(int n, int k) {
    std::map<std::vector<int>, Rational> out;
    if (k == 0) {
        if (n == 0) out[{}] = Rational(1);
        return out;
    }
    if (n < k) return out;
    auto binom = [](int a, int b) {
        Rational r(1);
        for (int i = 1; i <= b; ++i) r = r * Rational(a - b + i) / Rational(i);
        return r;
    };
    const size_t width = static_cast<size_t>(n - k + 1);
    for (int i = 1; i <= n - k + 1; ++i) {
        Rational c = binom(n - 1, i - 1);
        for (const auto& [sub_exps, sub_c] : bell_terms(n - i, k - 1)) {
            std::vector<int> exps(width, 0);
            for (size_t t = 0; t < sub_exps.size(); ++t) exps[t] = sub_exps[t];
            exps[static_cast<size_t>(i - 1)] += 1;
            out[exps] += c * sub_c;
        }
    }
    return out;
}

} // namespace detail

inline BellPolynomial bell(int n, int k) {
    if (k < 1 || k > n)
        throw std::invalid_argument("bell: k out of range (need 1 <= k <= n)");
    return BellPolynomial{n, k, detail::bell_terms(n, k)};
}

// n-th derivative of f(g) assembled from the Bell expansion
// sum_k B_{n,k}(g', ..., g^{(n-k+1)}) * f^{(k)}(g). Must agree with
// iterating derive on compose(f, g).
inline TruncatedSeries faa_di_bruno_apply(const TruncatedSeries& f, const TruncatedSeries& g,
                                          int n) {
    if (n < 1) throw std::invalid_argument("faa_di_bruno_apply: n must be positive");
    std::vector<TruncatedSeries> g_derivs; // g^(1) .. g^(n)
    TruncatedSeries d = g;
    for (int i = 1; i <= n; ++i) {
        d = derive(d);
        g_derivs.push_back(d);
    }
    TruncatedSeries f_deriv = f;
    bool first = true;
    TruncatedSeries acc = TruncatedSeries::zero(g.order());
    for (int k = 1; k <= n; ++k) {
        f_deriv = derive(f_deriv);
        std::vector<TruncatedSeries> args(g_derivs.begin(), g_derivs.begin() + (n - k + 1));
        TruncatedSeries term = bell(n, k).evaluate(args) * compose(f_deriv, g);
        acc = first ? term : acc + term;
        first = false;
    }
    return acc;
}

// "3*x2^2 + 4*x1*x3" style rendering in the map's deterministic order.
inline std::string to_string(const BellPolynomial& b) {
    if (b.terms.empty()) return "0";
    std::string out;
    for (const auto& [exps, c] : b.terms) {
        if (!out.empty()) out += " + ";
        bool unit = c.is_one();
        if (!unit) out += c.str();
        bool first = unit;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!first) out += "*";
            out += "x" + std::to_string(i + 1);
            if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
            first = false;
        }
        if (first) out += c.str(); // constant monomial (B_{0,0} only)
    }
    return out;
}

} // namespace ritt
