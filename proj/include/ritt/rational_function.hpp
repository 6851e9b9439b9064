#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "ritt/polynomial.hpp"
#include "ritt/rational.hpp"

namespace ritt {

// Quotient of coprime polynomials over Q with monic denominator; the
// representative is unique, so equality of normalized forms is equality of
// functions.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}
    RationalFunction(long c) : num_(Rational(c)), den_(Rational(1)) {}
    RationalFunction(const Polynomial& num) : num_(num), den_(Rational(1)) {}
    RationalFunction(Polynomial num, Polynomial den) {
        if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        if (num.is_zero()) {
            den_ = Polynomial(Rational(1));
            return;
        }
        Polynomial g = Polynomial::gcd(num, den);
        if (g.degree() > 0) {
            num = Polynomial::divrem(num, g).first;
            den = Polynomial::divrem(den, g).first;
        }
        Rational lead_inv = Rational(1) / den.leading();
        num_ = num * lead_inv;
        den_ = den * lead_inv;
    }

    static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // Valuation at x = 0: val(num) - val(den), negative at a pole.
    int ord_at_zero() const {
        if (is_zero()) throw std::domain_error("RationalFunction: valuation of zero");
        return num_.valuation_at_zero() - den_.valuation_at_zero();
    }

    Rational evaluate(const Rational& x) const {
        Rational d = den_.evaluate(x);
        if (d.is_zero()) throw std::domain_error("RationalFunction: pole at evaluation point");
        return num_.evaluate(x) / d;
    }

    friend RationalFunction pow(const RationalFunction& a, long e) {
        if (e < 0) {
            if (a.is_zero()) throw std::domain_error("RationalFunction: negative power of zero");
            return pow(RationalFunction(a.den_, a.num_), -e);
        }
        RationalFunction acc(Rational(1));
        RationalFunction base = a;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    Polynomial num_;
    Polynomial den_;
};

inline std::string to_expression_string(const RationalFunction& f, const std::string& var = "x") {
    std::string n = to_expression_string(f.num(), var);
    if (f.is_polynomial()) return n;
    return "(" + n + ")/(" + to_expression_string(f.den(), var) + ")";
}

} // namespace ritt
