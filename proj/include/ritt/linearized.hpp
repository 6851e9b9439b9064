#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ritt/bell.hpp"
#include "ritt/poincare.hpp"
#include "ritt/rational_function.hpp"
#include "ritt/series.hpp"

namespace ritt {

// Outcome of an exact residual computation: the residual series is known
// modulo x^order_checked, and `zero` says whether every known coefficient
// vanishes. `first_nonzero` is the exponent of the first offending
// coefficient otherwise.
struct ResidualReport {
    bool zero = false;
    long order_checked = 0;
    std::optional<long> first_nonzero;
    std::string note;
};

namespace detail {
inline ResidualReport report_residual(const TruncatedSeries& r, std::string note = {}) {
    ResidualReport rep;
    rep.order_checked = r.order();
    rep.zero = r.is_zero_to_order();
    if (!rep.zero) rep.first_nonzero = r.valuation();
    rep.note = std::move(note);
    return rep;
}
} // namespace detail

// Row n of the linearized system: applying the substitution operator to the
// n-th derivative y_n gives
//   y_n(R) = diagonal * y_n + sum_{k<n} lower[k-1] * y_k,
// with diagonal = q / (R')^n and exact rational-function coefficients.
struct LinearizedRow {
    int n = 0;
    RationalFunction diagonal;
    std::vector<RationalFunction> lower; // lower[k-1] multiplies y_k, k = 1..n-1
};

// Rows 1..n_max by triangular elimination. Differentiating the eigenvalue
// equation n times gives sum_k B_{n,k}(R',...,R^{(n-k+1)}) y_k(R) = q y_n;
// since B_{n,n} = (R')^n, dividing out the top term and substituting the
// previously computed rows isolates y_n(R).
inline std::vector<LinearizedRow> linearize_rows(const ValidatedMap& map, int n_max) {
    if (n_max < 1) throw std::invalid_argument("linearize_rows: n must be positive");
    std::vector<RationalFunction> r_derivs; // R', R'', ...
    RationalFunction d = map.R;
    for (int i = 1; i <= n_max; ++i) {
        d = d.derivative();
        r_derivs.push_back(d);
    }
    const RationalFunction q_rf(map.q);

    std::vector<LinearizedRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        LinearizedRow row;
        row.n = n;
        RationalFunction rp_inv_n = pow(r_derivs[0], -static_cast<long>(n));
        row.diagonal = q_rf * rp_inv_n;
        if (n > 1) {
            // b[k-1] = B_{n,k}(R', ..., R^{(n-k+1)}) for k = 1..n-1.
            std::vector<RationalFunction> b;
            for (int k = 1; k < n; ++k) {
                std::vector<RationalFunction> args(r_derivs.begin(),
                                                   r_derivs.begin() + (n - k + 1));
                b.push_back(bell(n, k).evaluate(args));
            }
            for (int k = 1; k < n; ++k) {
                RationalFunction sum = b[static_cast<size_t>(k - 1)] *
                                       rows[static_cast<size_t>(k - 1)].diagonal;
                for (int m = k + 1; m < n; ++m)
                    sum = sum + b[static_cast<size_t>(m - 1)] *
                                rows[static_cast<size_t>(m - 1)].lower[static_cast<size_t>(k - 1)];
                row.lower.push_back(-(rp_inv_n * sum));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline LinearizedRow linearize_row(const ValidatedMap& map, int n) {
    return linearize_rows(map, n).back();
}

// Instantiates the row identity at y_k = tau^(k) and reports the exact
// residual tau^(n)(R) - diagonal * tau^(n) - sum_k lower * tau^(k). The pair
// must leave at least 10 checkable coefficients after n differentiations.
inline ResidualReport verify_row(const LinearizedRow& row, const SchroderPair& pair) {
    long needed = row.n + 10;
    if (pair.order < needed)
        throw InsufficientOrderError("verify_row: pair order too small", needed);

    std::vector<TruncatedSeries> tau_derivs; // tau^(1) .. tau^(n)
    TruncatedSeries d = pair.tau;
    for (int i = 1; i <= row.n; ++i) {
        d = derive(d);
        tau_derivs.push_back(d);
    }
    const TruncatedSeries& top = tau_derivs.back();
    long cap = top.order();
    TruncatedSeries r_series = expand(pair.map.R, pair.order);

    TruncatedSeries residual = compose(top, r_series) -
                               expand(row.diagonal, cap) * top;
    for (int k = 1; k < row.n; ++k)
        residual = residual - expand(row.lower[static_cast<size_t>(k - 1)], cap) *
                              tau_derivs[static_cast<size_t>(k - 1)];
    return detail::report_residual(residual);
}

// The inhomogeneous shift: with z = (tau')^n tau^(1-n) and omega = tau^(n)/z,
// the row identity becomes omega(R) = omega + b (R')^n / (q z), where
// b = sum_{k<n} lower * tau^(k). Both sides are returned and the functional
// identity is certified before returning.
struct OmegaShift {
    TruncatedSeries omega;
    TruncatedSeries rhs;
    ResidualReport residual;
};

inline OmegaShift omega_shift(const SchroderPair& pair, int n) {
    if (n < 2) throw std::invalid_argument("omega_shift: n must be at least 2");
    long needed = n + 10;
    if (pair.order < needed)
        throw InsufficientOrderError("omega_shift: pair order too small", needed);

    std::vector<LinearizedRow> rows = linearize_rows(pair.map, n);
    const LinearizedRow& row = rows.back();

    std::vector<TruncatedSeries> tau_derivs;
    TruncatedSeries d = pair.tau;
    for (int i = 1; i <= n; ++i) {
        d = derive(d);
        tau_derivs.push_back(d);
    }
    long cap = tau_derivs.back().order();

    TruncatedSeries z = pow(tau_derivs[0], n) * pow(pair.tau, 1 - static_cast<long>(n));
    TruncatedSeries z_inv = invert(z);
    TruncatedSeries omega = tau_derivs.back() * z_inv;

    TruncatedSeries b = TruncatedSeries::zero(cap);
    for (int k = 1; k < n; ++k)
        b = b + expand(row.lower[static_cast<size_t>(k - 1)], cap) *
                tau_derivs[static_cast<size_t>(k - 1)];
    TruncatedSeries rp_n = expand(pow(pair.map.R.derivative(), n), cap);
    TruncatedSeries rhs = b * rp_n * z_inv * (Rational(1) / pair.map.q);

    TruncatedSeries r_series = expand(pair.map.R, pair.order);
    TruncatedSeries residual = compose(omega, r_series) - omega - rhs;
    OmegaShift out{std::move(omega), std::move(rhs), detail::report_residual(residual)};
    if (!out.residual.zero)
        throw std::logic_error("omega_shift: functional identity failed at exponent " +
                               std::to_string(*out.residual.first_nonzero));
    return out;
}

} // namespace ritt
