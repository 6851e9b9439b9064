#include <catch2/catch_amalgamated.hpp>

#include "ritt/series.hpp"
#include "test_support.hpp"

using namespace ritt;

namespace {
TruncatedSeries S(long val, std::initializer_list<Rational> coeffs) {
    return TruncatedSeries(val, std::vector<Rational>(coeffs));
}

// exp(x) truncated: coefficients 1/n!.
TruncatedSeries exp_series(long order) {
    std::vector<Rational> c(static_cast<size_t>(order));
    Rational f(1);
    c[0] = f;
    for (long n = 1; n < order; ++n) {
        f /= Rational(n);
        c[static_cast<size_t>(n)] = f;
    }
    return TruncatedSeries(0, std::move(c));
}
} // namespace

TEST_CASE("series representation invariants") {
    TruncatedSeries f = S(0, {Rational(0), Rational(0), Rational(3)});
    CHECK(f.valuation() == 2); // canonical: leading zeros become valuation
    CHECK(f.order() == 3);
    TruncatedSeries z = S(1, {Rational(0), Rational(0)});
    CHECK(z.is_zero_to_order());
    CHECK(z.valuation() == 3);
    CHECK(z.order() == 3);
    CHECK(f.coeff(0).is_zero());
    CHECK(f.coeff(2) == Rational(3));
    CHECK_THROWS_AS(f.coeff(3), std::out_of_range);
}

TEST_CASE("series addition and multiplication") {
    SECTION("(x + x^2) + (-x) keeps the tighter order") {
        TruncatedSeries a = S(1, {Rational(1), Rational(1)}); // order 3
        TruncatedSeries b = TruncatedSeries::monomial(Rational(-1), 1, 5);
        TruncatedSeries sum = a + b;
        CHECK(sum.valuation() == 2);
        CHECK(sum.order() == 3);
        CHECK(sum.coeff(2) == Rational(1));
    }
    SECTION("x^-1 * x = 1") {
        TruncatedSeries inv = TruncatedSeries::monomial(Rational(1), -1, 4);
        TruncatedSeries x = TruncatedSeries::identity(4);
        TruncatedSeries p = inv * x;
        CHECK(p.valuation() == 0);
        CHECK(p.coeff(0) == Rational(1));
    }
    SECTION("exp(x) * exp(-x) = 1 to order 8") {
        TruncatedSeries e = exp_series(8);
        TruncatedSeries em = scale_argument(e, Rational(-1));
        TruncatedSeries p = e * em;
        CHECK(p.order() == 8);
        CHECK(agree_to_order(p, TruncatedSeries::constant(Rational(1), 8), 8));
    }
    SECTION("mul order bookkeeping: min(val_a + order_b, val_b + order_a)") {
        TruncatedSeries a = S(2, {Rational(1), Rational(1)});  // val 2, order 4
        TruncatedSeries b = S(-1, {Rational(1), Rational(2), Rational(3)}); // val -1, order 2
        CHECK((a * b).order() == std::min(2L + 2L, -1L + 4L));
        CHECK((a * b).valuation() == 1);
    }
}

TEST_CASE("series inversion") {
    SECTION("geometric series") {
        TruncatedSeries g = invert(S(0, {Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0)}));
        for (long e = 0; e < 5; ++e) CHECK(g.coeff(e) == Rational(1));
    }
    SECTION("invert(x) = x^-1") {
        TruncatedSeries i = invert(TruncatedSeries::identity(6));
        CHECK(i.valuation() == -1);
        CHECK(i.coeff(-1) == Rational(1));
    }
    SECTION("(1+x)^-2 binomial oracle") {
        TruncatedSeries sq = S(0, {Rational(1), Rational(2), Rational(1), Rational(0), Rational(0), Rational(0)});
        TruncatedSeries inv = invert(sq);
        for (long e = 0; e < 6; ++e)
            CHECK(inv.coeff(e) == Rational((e % 2 == 0 ? 1 : -1) * (e + 1)));
    }
    CHECK_THROWS_AS(invert(TruncatedSeries::zero(5)), std::domain_error);
}

TEST_CASE("series derivative") {
    TruncatedSeries f = S(1, {Rational(1), Rational(1, 2)});
    TruncatedSeries d = derive(f);
    CHECK(d.coeff(0) == Rational(1));
    CHECK(d.coeff(1) == Rational(1));
    CHECK(d.order() == f.order() - 1);

    TruncatedSeries c = derive(TruncatedSeries::constant(Rational(1), 10));
    CHECK(c.is_zero_to_order());
    CHECK(c.order() == 9);

    TruncatedSeries l = derive(TruncatedSeries::monomial(Rational(1), -1, 3));
    CHECK(l.valuation() == -2);
    CHECK(l.coeff(-2) == Rational(-1));
}

TEST_CASE("series powers") {
    TruncatedSeries x = TruncatedSeries::identity(6);
    CHECK(pow(x, 2).valuation() == 2);
    CHECK(pow(x, 2).coeff(2) == Rational(1));

    TruncatedSeries f = S(0, {Rational(1), Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)});
    TruncatedSeries one = pow(f, 0);
    CHECK(one.coeff(0) == Rational(1));

    TruncatedSeries m = pow(f, -2); // (1+x)^-2
    for (long e = 0; e < 4; ++e)
        CHECK(m.coeff(e) == Rational((e % 2 == 0 ? 1 : -1) * (e + 1)));

    CHECK_THROWS_AS(pow(TruncatedSeries::zero(4), -1), std::domain_error);
}

TEST_CASE("series composition") {
    SECTION("right-composition with identity") {
        TruncatedSeries f = S(-2, {Rational(3), Rational(0), Rational(5), Rational(7)});
        TruncatedSeries c = compose(f, TruncatedSeries::identity(20));
        CHECK(agree_to_order(c, f, f.order()));
    }
    SECTION("(x^2) o (x + x^2) = x^2 + 2x^3 + x^4") {
        TruncatedSeries g = S(1, {Rational(1), Rational(1), Rational(0), Rational(0), Rational(0)});
        TruncatedSeries c = compose(pow(TruncatedSeries::identity(6), 2), g);
        CHECK(c.coeff(2) == Rational(1));
        CHECK(c.coeff(3) == Rational(2));
        CHECK(c.coeff(4) == Rational(1));
        CHECK(c.coeff(5).is_zero());
    }
    SECTION("exp o 2x has coefficients 2^n/n!") {
        TruncatedSeries c = compose(exp_series(10), TruncatedSeries::monomial(Rational(2), 1, 10));
        Rational expect(1);
        for (long n = 0; n < 10; ++n) {
            if (n > 0) expect = expect * Rational(2) / Rational(n);
            CHECK(c.coeff(n) == expect);
        }
    }
    SECTION("g(0) != 0 is rejected") {
        TruncatedSeries g = S(0, {Rational(1), Rational(1)});
        CHECK_THROWS_AS(compose(exp_series(4), g), std::domain_error);
    }
}

TEST_CASE("series reversion") {
    SECTION("reversion of x") {
        TruncatedSeries r = reversion(TruncatedSeries::identity(8));
        CHECK(agree_to_order(r, TruncatedSeries::identity(8), 8));
    }
    SECTION("reversion of x + x^2: signed Catalan numbers") {
        TruncatedSeries f = S(1, {Rational(1), Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)});
        TruncatedSeries r = reversion(f);
        long expect[] = {1, -1, 2, -5, 14, -42};
        for (long n = 1; n <= 6; ++n) CHECK(r.coeff(n) == Rational(expect[n - 1]));
        // compose-and-check both ways
        CHECK(agree_to_order(compose(f, r), TruncatedSeries::identity(7), 7));
        CHECK(agree_to_order(compose(r, f), TruncatedSeries::identity(7), 7));
    }
    SECTION("reversion of e^x - 1 is log(1+x)") {
        TruncatedSeries f = exp_series(12) - TruncatedSeries::constant(Rational(1), 12);
        TruncatedSeries r = reversion(f);
        for (long n = 1; n < 12; ++n)
            CHECK(r.coeff(n) == Rational(n % 2 == 1 ? 1 : -1, n));
        CHECK(agree_to_order(compose(f, r), TruncatedSeries::identity(12), 12));
    }
    CHECK_THROWS_AS(reversion(S(0, {Rational(1), Rational(1)})), std::domain_error);
    CHECK_THROWS_AS(reversion(S(2, {Rational(1)})), std::domain_error);
    CHECK_THROWS_AS(reversion(TruncatedSeries::zero(5)), std::domain_error);
}

TEST_CASE("expand rational functions") {
    Polynomial x = Polynomial::variable();
    SECTION("geometric: 1/(1-x)") {
        TruncatedSeries s = expand(RationalFunction(Polynomial(Rational(1)),
                                                    Polynomial(Rational(1)) - x), 4);
        CHECK(s.order() == 4);
        for (long e = 0; e < 4; ++e) CHECK(s.coeff(e) == Rational(1));
    }
    SECTION("Laurent: 4/(4x - x^2) = x^-1 + 1/4 + x/16 + x^2/64") {
        RationalFunction f(Polynomial(Rational(4)), x * Rational(4) - x * x);
        TruncatedSeries s = expand(f, 3);
        CHECK(s.valuation() == -1);
        CHECK(s.order() == 3);
        CHECK(s.coeff(-1) == Rational(1));
        CHECK(s.coeff(0) == Rational(1, 4));
        CHECK(s.coeff(1) == Rational(1, 16));
        CHECK(s.coeff(2) == Rational(1, 64));
    }
    SECTION("polynomials expand exactly") {
        TruncatedSeries s = expand(RationalFunction(x * x + x * Rational(2)), 10);
        CHECK(s.valuation() == 1);
        CHECK(s.coeff(1) == Rational(2));
        CHECK(s.coeff(2) == Rational(1));
        for (long e = 3; e < 10; ++e) CHECK(s.coeff(e).is_zero());
    }
    SECTION("zero function expands to zero-to-order") {
        CHECK(expand(RationalFunction(), 6).is_zero_to_order());
        CHECK(expand(RationalFunction(), 6).order() == 6);
    }
}

TEST_CASE("series algebra properties", "[property]") {
    std::mt19937 rng(777);
    SECTION("ring axioms at guaranteed order") {
        for (int it = 0; it < 200; ++it) {
            TruncatedSeries a = testing::random_series(rng, static_cast<long>(rng() % 3), 6);
            TruncatedSeries b = testing::random_series(rng, static_cast<long>(rng() % 3), 6);
            TruncatedSeries c = testing::random_series(rng, static_cast<long>(rng() % 3), 6);
            TruncatedSeries lhs = (a * b) * c;
            TruncatedSeries rhs = a * (b * c);
            long k = std::min(lhs.order(), rhs.order());
            CHECK(agree_to_order(lhs, rhs, k));
            TruncatedSeries dl = a * (b + c);
            TruncatedSeries dr = a * b + a * c;
            k = std::min(dl.order(), dr.order());
            CHECK(agree_to_order(dl, dr, k));
        }
    }
    SECTION("invert round trip on units") {
        for (int it = 0; it < 200; ++it) {
            TruncatedSeries u = testing::random_series(rng, 0, 8);
            TruncatedSeries p = u * invert(u);
            CHECK(agree_to_order(p, TruncatedSeries::constant(Rational(1), p.order()), p.order()));
        }
    }
    SECTION("reversion round trips") {
        for (int it = 0; it < 200; ++it) {
            TruncatedSeries f = testing::random_series(rng, 1, 8);
            TruncatedSeries g = reversion(f);
            TruncatedSeries fg = compose(f, g);
            TruncatedSeries gf = compose(g, f);
            CHECK(agree_to_order(fg, TruncatedSeries::identity(fg.order()), fg.order()));
            CHECK(agree_to_order(gf, TruncatedSeries::identity(gf.order()), gf.order()));
        }
    }
    SECTION("chain rule") {
        for (int it = 0; it < 200; ++it) {
            TruncatedSeries f = testing::random_series(rng, static_cast<long>(rng() % 2), 7);
            TruncatedSeries g = testing::random_series(rng, 1, 7);
            TruncatedSeries lhs = derive(compose(f, g));
            TruncatedSeries rhs = compose(derive(f), g) * derive(g);
            long k = std::min(lhs.order(), rhs.order());
            CHECK(agree_to_order(lhs, rhs, k));
        }
    }
    SECTION("expand is a ring homomorphism") {
        for (int it = 0; it < 200; ++it) {
            RationalFunction f = testing::random_rational_function(rng, 3);
            RationalFunction g = testing::random_rational_function(rng, 3);
            TruncatedSeries lhs = expand(f * g, 8);
            TruncatedSeries rhs = expand(f, 12) * expand(g, 12);
            CHECK(agree_to_order(lhs, rhs, 8));
        }
    }
}
