#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ritt/linalg.hpp"
#include "ritt/linearized.hpp"
#include "ritt/poincare.hpp"
#include "ritt/rational_function.hpp"
#include "ritt/series.hpp"

namespace ritt {

// (tau')^r = A(x) tau^j with r != 0. Detector output is the primitive
// representative: minimal r > 0 in the canonical grid order, A normalized
// coprime with monic denominator, and ord_0(A) = -j.
struct RittEquationTau {
    long r = 0;
    long j = 0;
    RationalFunction A;
};

// (sigma')^r = t^j A(sigma(t)) as Laurent series in t. Conversion from the
// tau side keeps A and j and flips the sign of r.
struct RittEquationSigma {
    long r = 0;
    long j = 0;
    RationalFunction A;
};

inline RittEquationSigma to_sigma(const RittEquationTau& eq) {
    return RittEquationSigma{-eq.r, eq.j, eq.A};
}

// Explicit search box. No effective bound on (r, j, deg A) is known, so every
// bound is an input; `order` is the series order the pair must provide and
// `margin` the slack between the Pade congruence modulus 2*deg_max + margin
// and the degrees of freedom 2*(deg_max + 1).
struct DetectionBounds {
    int r_max = 6;
    int j_max = 8;
    int deg_max = 12;
    long order = 96;
    long margin = 64;

    static DetectionBounds defaults() { return DetectionBounds{}; }

    // Fits the margin to a caller-chosen order: the default 64 when the order
    // affords it, everything above 2*deg_max + j_max otherwise. The full
    // order still backs the mandatory re-verification of any hit.
    static DetectionBounds with_order(int r_max, int j_max, int deg_max, long order) {
        DetectionBounds b;
        b.r_max = r_max;
        b.j_max = j_max;
        b.deg_max = deg_max;
        b.order = order;
        b.margin = std::min<long>(64, order - 2 * static_cast<long>(deg_max) - j_max);
        b.validate();
        return b;
    }

    void validate() const {
        if (r_max < 1 || j_max < 0 || deg_max < 0)
            throw std::invalid_argument("DetectionBounds: need r_max >= 1, j_max >= 0, deg_max >= 0");
        if (margin < 16)
            throw std::invalid_argument("DetectionBounds: margin must be at least 16");
        if (order < 2 * static_cast<long>(deg_max) + j_max + margin)
            throw std::invalid_argument("DetectionBounds: order must be at least 2*deg_max + j_max + margin");
    }
};

enum class DetectionOutcome { homography, hit, no_hit_within_bounds };

inline std::string to_string(DetectionOutcome o) {
    switch (o) {
        case DetectionOutcome::homography: return "homography";
        case DetectionOutcome::hit: return "hit";
        default: return "no_hit_within_bounds";
    }
}

struct DetectionReport {
    DetectionOutcome outcome = DetectionOutcome::no_hit_within_bounds;
    std::optional<RittEquationTau> equation_tau;
    std::optional<RittEquationSigma> equation_sigma;
    std::optional<RationalFunction> sigma_closed_form; // homography outcome only
    DetectionBounds bounds;
    std::vector<long> residual_orders_checked;
    std::string conditional_statement;
};

// Exact residual of (tau')^r - A(x) tau^j at the full order of the pair.
// Candidates with ord_0(A) != -j are rejected structurally before any
// series work: with ord tau = 1 and ord tau' = 0 the identity forces it.
inline ResidualReport verify_equation_tau(const SchroderPair& pair, const RittEquationTau& eq) {
    if (eq.r == 0) throw std::invalid_argument("verify_equation_tau: r must be nonzero");
    ResidualReport rep;
    if (eq.A.is_zero() || eq.A.ord_at_zero() != -eq.j) {
        rep.zero = false;
        rep.order_checked = 0;
        rep.note = "structural rejection: ord_0(A) must equal -j";
        return rep;
    }
    TruncatedSeries tau_prime = derive(pair.tau);
    TruncatedSeries a_series = expand(eq.A, pair.order + std::labs(eq.j) + 2);
    TruncatedSeries residual = pow(tau_prime, eq.r) - a_series * pow(pair.tau, eq.j);
    return detail::report_residual(residual);
}

// Exact residual of (sigma')^r - t^j A(sigma(t)); A may have a pole at 0,
// which the Laurent composition absorbs since sigma(0) = 0.
inline ResidualReport verify_equation_sigma(const SchroderPair& pair, const RittEquationSigma& eq) {
    if (eq.r == 0) throw std::invalid_argument("verify_equation_sigma: r must be nonzero");
    if (eq.A.is_zero()) {
        ResidualReport rep;
        rep.note = "structural rejection: A must be nonzero";
        return rep;
    }
    TruncatedSeries sigma_prime = derive(pair.sigma);
    long va = eq.A.ord_at_zero();
    TruncatedSeries a_series = expand(eq.A, pair.order + std::labs(va) + 2);
    TruncatedSeries residual =
        pow(sigma_prime, eq.r) - shift(compose(a_series, pair.sigma), eq.j);
    return detail::report_residual(residual);
}

namespace detail {

// Fixed word-size prime for the rank pre-filter (2^61 - 1, Mersenne).
inline constexpr unsigned long long kFilterPrime = 2305843009213693951ULL;

inline unsigned long long mul_mod(unsigned long long a, unsigned long long b) {
    return static_cast<unsigned long long>(
        static_cast<unsigned __int128>(a) * b % kFilterPrime);
}

inline unsigned long long pow_mod(unsigned long long a, unsigned long long e) {
    unsigned long long acc = 1;
    while (e) {
        if (e & 1) acc = mul_mod(acc, a);
        a = mul_mod(a, a);
        e >>= 1;
    }
    return acc;
}

// Value of a rational modulo the filter prime; false when the denominator
// vanishes there (then nothing can be concluded from this prime).
inline bool rational_mod(const Rational& x, unsigned long long& out) {
    const mpz_class p(static_cast<unsigned long>(kFilterPrime));
    mpz_class num = x.numerator() % p;
    mpz_class den = x.denominator() % p;
    if (den == 0) return false;
    if (num < 0) num += p;
    out = mul_mod(num.get_ui(), pow_mod(den.get_ui(), kFilterPrime - 2));
    return true;
}

// Rank of the congruence system modulo the filter prime. Rank over Q is at
// least the rank modulo any prime, so full column rank here proves the
// rational kernel is trivial and the expensive exact elimination can be
// skipped. A denominator divisible by the prime makes the reduction
// unusable, in which case we report "not full" and let the exact path run.
inline bool full_rank_mod_p(const TruncatedSeries& t_series, int deg_max, long modulus) {
    const size_t dof = static_cast<size_t>(deg_max) + 1;
    const size_t cols = 2 * dof;
    std::vector<std::vector<unsigned long long>> m(static_cast<size_t>(modulus),
                                                   std::vector<unsigned long long>(cols, 0));
    for (long row = 0; row < modulus; ++row) {
        if (row <= deg_max) m[static_cast<size_t>(row)][static_cast<size_t>(row)] = 1;
        for (long i = 0; i <= deg_max && i <= row; ++i) {
            unsigned long long v;
            if (!rational_mod(t_series.coeff(row - i), v)) return false;
            m[static_cast<size_t>(row)][dof + static_cast<size_t>(i)] =
                v == 0 ? 0 : kFilterPrime - v;
        }
    }
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < m.size(); ++c) {
        size_t sel = rank;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[rank]);
        unsigned long long inv = pow_mod(m[rank][c], kFilterPrime - 2);
        for (size_t j = c; j < cols; ++j) m[rank][j] = mul_mod(m[rank][j], inv);
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            unsigned long long f = m[i][c];
            for (size_t j = c; j < cols; ++j) {
                unsigned long long sub = mul_mod(f, m[rank][j]);
                m[i][j] = m[i][j] >= sub ? m[i][j] - sub : m[i][j] + kFilterPrime - sub;
            }
        }
        ++rank;
    }
    return rank == cols;
}

// Candidate from one grid point: solve p(x) - d(x) * (x^j s) = 0 mod x^K
// for deg p, deg d <= deg_max with d nonzero, where s = (tau')^r tau^(-j).
// The kernel vector choice is canonical (first RREF nullspace basis vector),
// and A = p / (x^j d) is the unique normalized representative.
inline std::optional<RittEquationTau> pade_candidate(const TruncatedSeries& t_series, long r,
                                                     long j, int deg_max, long modulus) {
    if (full_rank_mod_p(t_series, deg_max, modulus)) return std::nullopt;
    const size_t dof = static_cast<size_t>(deg_max) + 1;
    const size_t cols = 2 * dof;
    Matrix m(static_cast<size_t>(modulus), std::vector<Rational>(cols));
    for (long row = 0; row < modulus; ++row) {
        if (row <= deg_max) m[static_cast<size_t>(row)][static_cast<size_t>(row)] = Rational(1);
        for (long i = 0; i <= deg_max && i <= row; ++i)
            m[static_cast<size_t>(row)][dof + static_cast<size_t>(i)] = -t_series.coeff(row - i);
    }
    for (const std::vector<Rational>& v : nullspace(std::move(m), cols)) {
        Polynomial p(std::vector<Rational>(v.begin(), v.begin() + static_cast<long>(dof)));
        Polynomial d(std::vector<Rational>(v.begin() + static_cast<long>(dof), v.end()));
        if (d.is_zero() || p.is_zero()) continue;
        RationalFunction a = j >= 0
            ? RationalFunction(p, Polynomial::monomial(static_cast<int>(j), Rational(1)) * d)
            : RationalFunction(Polynomial::monomial(static_cast<int>(-j), Rational(1)) * p, d);
        if (a.ord_at_zero() != -j) continue; // valuation read off and checked
        return RittEquationTau{r, j, a};
    }
    return std::nullopt;
}

inline unsigned detect_threads() {
    if (const char* env = std::getenv("RITT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return hw > 8 ? 8 : hw;
}

} // namespace detail

// Grid search for (tau')^r = A(x) tau^j over r = 1..r_max and |j| <= j_max
// in canonical order (increasing r, then increasing |j|, positive j first).
// Negative r is never searched: inverting both sides maps it to the r > 0
// representative. Grid points are independent and evaluated in chunks of up
// to RITT_THREADS workers; the first verified hit in canonical order wins
// regardless of completion order.
inline DetectionReport detect(const SchroderPair& pair, const DetectionBounds& bounds) {
    bounds.validate();
    DetectionReport report;
    report.bounds = bounds;
    if (pair.map.is_homography) {
        // no series needed: sigma is rational, the search does not apply
        report.outcome = DetectionOutcome::homography;
        report.sigma_closed_form = homography_closed_form(pair.map);
        report.conditional_statement = "homography";
        return report;
    }
    if (pair.order < bounds.order)
        throw std::invalid_argument("detect: pair order " + std::to_string(pair.order) +
                                    " is below the bounds order " + std::to_string(bounds.order));

    // The congruence modulus; the j_max = 0 corner can only afford
    // pair.order - 1 known coefficients of s, which still leaves the margin.
    const long modulus = std::min(2 * static_cast<long>(bounds.deg_max) + bounds.margin,
                                  pair.order - 1);
    const long work = std::min(pair.order, modulus + bounds.j_max + 2);

    TruncatedSeries tau_w = truncate(pair.tau, work);
    TruncatedSeries tau_prime_w = truncate(derive(pair.tau), work);
    TruncatedSeries tau_inv_w = invert(tau_w);

    std::vector<TruncatedSeries> tp_pow{tau_prime_w}; // tp_pow[r-1] = (tau')^r
    for (int r = 2; r <= bounds.r_max; ++r) tp_pow.push_back(tp_pow.back() * tau_prime_w);
    std::vector<TruncatedSeries> t_pos{TruncatedSeries::constant(Rational(1), work)};
    std::vector<TruncatedSeries> t_neg{t_pos[0]}; // powers of tau / tau^-1
    for (int j = 1; j <= bounds.j_max; ++j) {
        t_pos.push_back(t_pos.back() * tau_w);
        t_neg.push_back(t_neg.back() * tau_inv_w);
    }

    std::vector<std::pair<long, long>> grid;
    for (long r = 1; r <= bounds.r_max; ++r)
        for (long a = 0; a <= bounds.j_max; ++a) {
            grid.emplace_back(r, a);
            if (a > 0) grid.emplace_back(r, -a);
        }

    auto candidate_at = [&](size_t idx) {
        auto [r, j] = grid[idx];
        const TruncatedSeries& tj = j >= 0 ? t_neg[static_cast<size_t>(j)]
                                           : t_pos[static_cast<size_t>(-j)];
        TruncatedSeries t_series = shift(tp_pow[static_cast<size_t>(r - 1)] * tj, j);
        return detail::pade_candidate(t_series, r, j, bounds.deg_max, modulus);
    };

    const unsigned nthreads = detail::detect_threads();
    std::vector<std::optional<RittEquationTau>> candidates(grid.size());
    for (size_t chunk = 0; chunk < grid.size(); chunk += nthreads) {
        size_t end = std::min(grid.size(), chunk + nthreads);
        if (nthreads > 1 && end - chunk > 1) {
            std::vector<std::thread> pool;
            std::exception_ptr first_error;
            std::mutex err_mutex;
            for (size_t i = chunk; i < end; ++i)
                pool.emplace_back([&, i] {
                    try {
                        candidates[i] = candidate_at(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                });
            for (std::thread& th : pool) th.join();
            if (first_error) std::rethrow_exception(first_error);
        } else {
            for (size_t i = chunk; i < end; ++i) candidates[i] = candidate_at(i);
        }

        for (size_t i = chunk; i < end; ++i) {
            if (!candidates[i]) continue;
            ResidualReport tau_rep = verify_equation_tau(pair, *candidates[i]);
            if (!tau_rep.zero) continue; // spurious congruence solution
            RittEquationSigma eq_sigma = to_sigma(*candidates[i]);
            ResidualReport sigma_rep = verify_equation_sigma(pair, eq_sigma);
            if (!sigma_rep.zero) continue;
            report.outcome = DetectionOutcome::hit;
            report.equation_tau = *candidates[i];
            report.equation_sigma = eq_sigma;
            report.residual_orders_checked = {tau_rep.order_checked, sigma_rep.order_checked};
            report.conditional_statement = "hit";
            return report;
        }
    }

    report.outcome = DetectionOutcome::no_hit_within_bounds;
    report.residual_orders_checked = {modulus};
    report.conditional_statement = "no hit within bounds";
    return report;
}

// detect with the conclusion spelled out: a no-hit refutes only the finite
// grid, while existence of some type-(A) equation is equivalent to
// differential algebraicity, so the outcome is evidence, never a proof.
inline DetectionReport transcendence_report(const SchroderPair& pair,
                                            const DetectionBounds& bounds) {
    DetectionReport report = detect(pair, bounds);
    switch (report.outcome) {
        case DetectionOutcome::hit:
            report.conditional_statement =
                "hit: (tau')^" + std::to_string(report.equation_tau->r) + " = A(x) * tau^" +
                std::to_string(report.equation_tau->j) +
                " with A = " + to_expression_string(report.equation_tau->A) +
                "; equivalently (sigma')^" + std::to_string(report.equation_sigma->r) +
                " = t^" + std::to_string(report.equation_sigma->j) +
                " * A(sigma). Differential algebraicity of the Koenigs function over Q(x) is "
                "equivalent to the existence of a type-(A) equation, and this one is certified "
                "with exactly zero residual at the reported orders, so tau (and sigma) are "
                "differentially algebraic.";
            break;
        case DetectionOutcome::homography:
            report.conditional_statement =
                "homography: sigma is itself the rational function " +
                to_expression_string(*report.sigma_closed_form, "t") +
                ", the only case in which sigma is rational; transcendence analysis does not "
                "apply and detection is skipped.";
            break;
        case DetectionOutcome::no_hit_within_bounds:
            report.conditional_statement =
                "no hit within bounds: differential algebraicity of sigma is EQUIVALENT to the "
                "existence of SOME type-(A) equation (y')^r = A(x) y^j; this search refuted only "
                "the finite grid r <= " + std::to_string(bounds.r_max) + ", |j| <= " +
                std::to_string(bounds.j_max) + ", deg A <= " + std::to_string(bounds.deg_max) +
                " at series order " + std::to_string(bounds.order) +
                ", so the outcome is evidence of differential transcendence, never a proof.";
            break;
    }
    return report;
}

} // namespace ritt
