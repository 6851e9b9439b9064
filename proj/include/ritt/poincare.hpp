#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ritt/rational.hpp"
#include "ritt/rational_function.hpp"
#include "ritt/series.hpp"

namespace ritt {

// A rational map accepted by the solvers: fixes 0, with admissible
// multiplier q = R'(0). Over Q, "q is not a root of unity" is exactly
// q not in {1, -1}; q = 0 is excluded separately.
struct ValidatedMap {
    RationalFunction R;
    Rational q;
    int num_degree = 0;
    int den_degree = 0;
    bool is_homography = false;
    bool abs_q_gt_one = false; // metadata only; the formal theory ignores it
};

inline ValidatedMap validate_map(const RationalFunction& R) {
    if (R.is_zero() || R.den().coefficient(0).is_zero() ||
        !R.num().coefficient(0).is_zero())
        throw std::domain_error("fixed point condition fails: the map must vanish at 0 and be finite there");
    Rational q = R.derivative().evaluate(Rational(0));
    if (q.is_zero() || q == Rational(1) || q == Rational(-1))
        throw std::domain_error("multiplier not admissible: R'(0) = " + q.str() +
                                " must avoid {0, 1, -1}");
    ValidatedMap m;
    m.R = R;
    m.q = q;
    m.num_degree = R.num().degree();
    m.den_degree = R.den().degree();
    m.is_homography = m.num_degree <= 1 && m.den_degree <= 1;
    m.abs_q_gt_one = abs(q) > Rational(1);
    return m;
}

// The unique series sigma = t + ... with R(sigma(t)) = sigma(q t), computed
// by coefficient recursion on the cleared form P(sigma) = sigma(qt) Q(sigma),
// R = P/Q. The coefficient of sigma_n in the t^n identity is Q(0)(q - q^n),
// nonzero because q is not a root of unity; it is asserted at every step.
//
// The shifted Taylor states P^(k)(sigma)/k! and Q^(k)(sigma)/k! are kept
// incrementally, so one step costs O(deg^2 * order) coefficient operations.
inline TruncatedSeries solve_schroder(const ValidatedMap& map, long order) {
    if (order < 2) throw std::invalid_argument("solve_schroder: order must be at least 2");
    const Polynomial& p = map.R.num();
    const Polynomial& q_poly = map.R.den();
    const Rational& q = map.q;
    const size_t n = static_cast<size_t>(order);

    // taylor_states[k] = F^(k)(sigma)/k! as a dense vector of t-coefficients.
    auto init_states = [&](const Polynomial& f) {
        std::vector<std::vector<Rational>> states;
        Polynomial d = f;
        Rational fact(1);
        for (int k = 0; k <= f.degree(); ++k) {
            if (k > 0) {
                d = d.derivative();
                fact *= Rational(k);
            }
            std::vector<Rational> row(n);
            // sigma starts as t, so F^(k)(sigma)/k! starts as the polynomial itself.
            for (int i = 0; i <= d.degree() && i < static_cast<int>(n); ++i)
                row[static_cast<size_t>(i)] = d.coefficient(i) / fact;
            states.push_back(std::move(row));
        }
        return states;
    };
    std::vector<std::vector<Rational>> ps = init_states(p);
    std::vector<std::vector<Rational>> qs = init_states(q_poly);

    auto binom = [](long a, long b) {
        Rational r(1);
        for (long i = 1; i <= b; ++i) r = r * Rational(a - b + i) / Rational(i);
        return r;
    };

    std::vector<Rational> sigma(n);
    sigma[1] = Rational(1);
    std::vector<Rational> sigma_q(n); // sigma(q t)
    sigma_q[1] = q;
    const Rational q0 = q_poly.coefficient(0);

    Rational q_pow = q; // q^m
    for (size_t m = 2; m < n; ++m) {
        q_pow *= q;
        Rational pivot = q0 * (q - q_pow);
        if (pivot.is_zero())
            throw std::logic_error("solve_schroder: vanishing pivot at step " + std::to_string(m));

        Rational rhs; // [t^m] of sigma(qt) * Q(sigma)
        for (size_t e = 1; e <= m; ++e)
            if (!sigma_q[e].is_zero()) rhs += sigma_q[e] * qs[0][m - e];
        Rational c = ps[0][m] - rhs;
        Rational s = -c / pivot;
        sigma[m] = s;
        sigma_q[m] = s * q_pow;
        if (s.is_zero()) continue;

        // sigma gained s*t^m: refresh the Taylor states from the old ones.
        auto update = [&](std::vector<std::vector<Rational>>& states) {
            const long deg = static_cast<long>(states.size()) - 1;
            for (long k = 0; k <= deg; ++k) {
                Rational s_pow(1);
                for (long j = 1; k + j <= deg; ++j) {
                    s_pow *= s;
                    Rational f = binom(k + j, j) * s_pow;
                    const std::vector<Rational>& src = states[static_cast<size_t>(k + j)];
                    std::vector<Rational>& dst = states[static_cast<size_t>(k)];
                    for (size_t e = 0; e + j * m < n; ++e)
                        if (!src[e].is_zero()) dst[e + static_cast<size_t>(j) * m] += f * src[e];
                }
            }
        };
        update(ps);
        update(qs);
    }

    sigma.erase(sigma.begin()); // valuation 1
    return TruncatedSeries(1, std::move(sigma));
}

// The Schroder solution together with its compositional inverse tau, which
// solves tau(R(x)) = q tau(x) with tau'(0) = 1. All three defining residuals
// are certified to the full order before the pair is returned.
struct SchroderPair {
    ValidatedMap map;
    TruncatedSeries sigma;
    TruncatedSeries tau;
    long order;
};

namespace detail {
inline void require_zero(const TruncatedSeries& r, long order, const std::string& what) {
    if (r.order() < order)
        throw InsufficientOrderError(what + ": residual not certified far enough", order);
    if (!truncate(r, order).is_zero_to_order())
        throw std::logic_error(what + ": nonzero residual at exponent " +
                               std::to_string(r.valuation()));
}

// For a polynomial map, tau comes straight out of its own functional
// equation tau(P(x)) = q tau(x): the t^m coefficient gives
// tau_m (q - q^m) = [x^m] sum_{k<m} tau_k P^k, with tau_1 = 1 fixing the
// scale. The running power P^k has small coefficients (independent of tau),
// so this costs far less than reverting sigma when tau's coefficients are
// large.
inline TruncatedSeries solve_koenigs_polynomial(const ValidatedMap& map, long order) {
    const Polynomial& p = map.R.num();
    const size_t n = static_cast<size_t>(order);
    std::vector<Rational> tau(n);
    tau[1] = Rational(1);

    auto mul_poly = [&](const std::vector<Rational>& s) {
        std::vector<Rational> out(n);
        for (size_t e = 0; e < n; ++e) {
            if (s[e].is_zero()) continue;
            for (int d = 0; d <= p.degree() && e + static_cast<size_t>(d) < n; ++d)
                out[e + static_cast<size_t>(d)] += s[e] * p.coefficient(d);
        }
        return out;
    };

    std::vector<Rational> ppow(n); // P^m
    for (int d = 0; d <= p.degree() && d < static_cast<int>(n); ++d)
        ppow[static_cast<size_t>(d)] = p.coefficient(d);
    std::vector<Rational> s = ppow; // sum_{k<=m} tau_k P^k, starting with tau_1 P
    Rational q_pow = map.q;

    for (size_t m = 2; m < n; ++m) {
        ppow = mul_poly(ppow);
        q_pow *= map.q;
        Rational pivot = map.q - q_pow;
        if (pivot.is_zero())
            throw std::logic_error("solve_koenigs: vanishing pivot at step " + std::to_string(m));
        Rational tm = s[m] / pivot;
        tau[m] = tm;
        if (tm.is_zero()) continue;
        for (size_t e = m; e < n; ++e)
            if (!ppow[e].is_zero()) s[e] += tm * ppow[e];
    }
    tau.erase(tau.begin());
    return TruncatedSeries(1, std::move(tau));
}
} // namespace detail

inline SchroderPair solve_koenigs(const ValidatedMap& map, long order) {
    TruncatedSeries sigma = solve_schroder(map, order);
    TruncatedSeries tau = map.R.den().degree() == 0
                              ? detail::solve_koenigs_polynomial(map, order)
                              : reversion(sigma);

    detail::require_zero(eval_ratfun(map.R, sigma, order) - scale_argument(sigma, map.q),
                         order, "solve_koenigs: R(sigma(t)) - sigma(qt)");
    TruncatedSeries r_series = expand(map.R, order);
    detail::require_zero(compose(tau, r_series) - tau * map.q,
                         order, "solve_koenigs: tau(R(x)) - q tau(x)");
    detail::require_zero(compose(tau, sigma) - TruncatedSeries::identity(order),
                         order, "solve_koenigs: tau(sigma(t)) - t");

    return SchroderPair{map, std::move(sigma), std::move(tau), order};
}

// For R = qt/(at+1) the equation has the rational solution
// sigma = (q-1)t / (at + (q-1)); this is the only case where sigma is
// rational, and the only admissible homographies have that shape.
inline RationalFunction homography_closed_form(const ValidatedMap& map) {
    if (!map.is_homography)
        throw std::invalid_argument("homography_closed_form: map is not a homography");
    Rational d0 = map.R.den().coefficient(0);
    Rational a = map.R.den().coefficient(1) / d0;
    Rational qm1 = map.q - Rational(1);
    Polynomial t = Polynomial::variable();
    return RationalFunction(t * qm1, t * a + Polynomial(qm1));
}

// Trace of the constants-field argument: solving f(R(x)) = f(x), f(0) = 0,
// coefficient by coefficient forces f_n (q^n - 1) = -[x^n](f_<n(R) - f_<n),
// and every pivot q^n - 1 is nonzero. The trace lists those pivots and the
// (necessarily zero) solved series.
struct ConstantsTrace {
    Rational q;
    long order;
    std::vector<Rational> factors; // q^n - 1 for n = 1 .. order-1
    bool all_nonzero;
    TruncatedSeries solved;
};

inline ConstantsTrace constants_check(const ValidatedMap& map, long order) {
    if (order < 2) throw std::invalid_argument("constants_check: order must be at least 2");
    TruncatedSeries r_series = expand(map.R, order);
    TruncatedSeries comp = TruncatedSeries::zero(order); // f_<n composed with R
    TruncatedSeries r_pow = r_series;
    std::vector<Rational> f(static_cast<size_t>(order));

    ConstantsTrace trace{map.q, order, {}, true, TruncatedSeries::zero(order)};
    Rational q_pow(1);
    for (long m = 1; m < order; ++m) {
        q_pow *= map.q;
        Rational factor = q_pow - Rational(1);
        trace.factors.push_back(factor);
        if (factor.is_zero()) {
            trace.all_nonzero = false;
            continue;
        }
        Rational fm = -comp.coeff(m) / factor;
        f[static_cast<size_t>(m)] = fm;
        if (!fm.is_zero()) comp = comp + r_pow * fm;
        if (m + 1 < order) r_pow = truncate(r_pow * r_series, order);
    }
    f.erase(f.begin());
    trace.solved = TruncatedSeries(1, std::move(f));
    return trace;
}

} // namespace ritt
