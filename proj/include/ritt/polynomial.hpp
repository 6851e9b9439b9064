#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ritt/rational.hpp"

namespace ritt {

// Dense univariate polynomial over Q. coefficient(i) is the coefficient of
// x^i; the stored vector never has a trailing zero, and the zero polynomial
// is the empty vector (degree -1).
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) { if (!c.is_zero()) coeffs_ = {c}; }
    Polynomial(long c) : Polynomial(Rational(c)) {}
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial variable() { return monomial(1, Rational(1)); }
    static Polynomial monomial(int degree, const Rational& c) {
        if (c.is_zero()) return Polynomial();
        std::vector<Rational> v(static_cast<size_t>(degree) + 1);
        v.back() = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& coefficient(int i) const {
        static const Rational kZero;
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
        return coeffs_[static_cast<size_t>(i)];
    }
    const Rational& leading() const {
        if (is_zero()) throw std::domain_error("Polynomial: leading coefficient of zero");
        return coeffs_.back();
    }

    // Index of the lowest nonzero coefficient.
    int valuation_at_zero() const {
        if (is_zero()) throw std::domain_error("Polynomial: valuation of zero");
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return static_cast<int>(i);
        return 0; // unreachable: trimmed and nonempty
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(static_cast<int>(i)) + b.coefficient(static_cast<int>(i));
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(static_cast<int>(i)) - b.coefficient(static_cast<int>(i));
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<Rational> r(a.coeffs_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = -a.coeffs_[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        if (c.is_zero()) return Polynomial();
        std::vector<Rational> r(a.coeffs_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeffs_[i] * c;
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
        return true;
    }

    Rational evaluate(const Rational& x) const {
        Rational acc;
        for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial();
        std::vector<Rational> r(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        return Polynomial(std::move(r));
    }

    Polynomial monic() const {
        if (is_zero()) throw std::domain_error("Polynomial: cannot normalize zero to monic");
        Rational inv = Rational(1) / leading();
        return *this * inv;
    }

    // Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw std::domain_error("Polynomial: division by zero");
        std::vector<Rational> rem = a.coeffs_;
        int db = b.degree();
        if (a.degree() < db) return {Polynomial(), a};
        std::vector<Rational> quo(static_cast<size_t>(a.degree() - db) + 1);
        for (int i = a.degree(); i >= db; --i) {
            Rational c = rem[static_cast<size_t>(i)] / b.leading();
            if (c.is_zero()) continue;
            quo[static_cast<size_t>(i - db)] = c;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<size_t>(i - db + j)] -= c * b.coefficient(j);
        }
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    // Monic gcd over Q via the Euclidean scheme.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        if (a.is_zero() && b.is_zero()) throw std::domain_error("Polynomial: gcd of zeros");
        while (!b.is_zero()) {
            Polynomial r = divrem(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

// Renders the polynomial in the expression grammar ("x^2 - 2*x + 1/3"), so
// printed values can be fed back through the parser.
inline std::string to_expression_string(const Polynomial& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coefficient(i);
        if (c.is_zero()) continue;
        Rational a = abs(c);
        if (out.empty()) {
            out += c.sign() < 0 ? "-" : "";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        bool unit = a.is_one() && i > 0;
        if (!unit) out += a.str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace ritt
