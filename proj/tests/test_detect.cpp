#include <catch2/catch_amalgamated.hpp>

#include "ritt/detect.hpp"
#include "ritt/parse.hpp"
#include "ritt/poincare.hpp"
#include "test_support.hpp"

using namespace ritt;

namespace {
ValidatedMap map_of(const std::string& src) {
    return validate_map(parse_expression(src, "z"));
}
RationalFunction rf_of(const std::string& src) { return parse_expression(src, "x"); }

DetectionBounds small_bounds() { return DetectionBounds::with_order(4, 4, 6, 2 * 6 + 4 + 24); }
} // namespace

TEST_CASE("detection bounds validation") {
    CHECK_THROWS_AS(DetectionBounds::with_order(4, 6, 8, 30), std::invalid_argument); // margin 8
    DetectionBounds b = DetectionBounds::with_order(4, 6, 8, 200);
    CHECK(b.margin == 64); // capped at the default; the full order still backs re-verification
    CHECK(DetectionBounds::with_order(4, 6, 8, 52).margin == 52 - 16 - 6);
    DetectionBounds d = DetectionBounds::defaults();
    CHECK(d.order == 2 * 12 + 8 + 64);
    d.r_max = 0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("detector hits") {
    DetectionBounds b = small_bounds();
    SECTION("z^2 + 2z: (1, 0, 1/(1+x))") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), b.order);
        DetectionReport rep = detect(pair, b);
        REQUIRE(rep.outcome == DetectionOutcome::hit);
        CHECK(rep.equation_tau->r == 1);
        CHECK(rep.equation_tau->j == 0);
        CHECK(rep.equation_tau->A == rf_of("1/(1+x)"));
        CHECK(rep.equation_sigma->r == -1);
        CHECK(rep.equation_sigma->j == 0);
    }
    SECTION("4z - 4z^2: (2, 1, 1/(x - x^2))") {
        SchroderPair pair = solve_koenigs(map_of("4*z - 4*z^2"), b.order);
        DetectionReport rep = detect(pair, b);
        REQUIRE(rep.outcome == DetectionOutcome::hit);
        CHECK(rep.equation_tau->r == 2);
        CHECK(rep.equation_tau->j == 1);
        CHECK(rep.equation_tau->A == rf_of("1/(x - x^2)"));
        CHECK(rep.equation_tau->A.ord_at_zero() == -1);
    }
    SECTION("z^3 - 6z^2 + 9z: (2, 1, 4/(4x - x^2))") {
        SchroderPair pair = solve_koenigs(map_of("z^3 - 6*z^2 + 9*z"), b.order);
        DetectionReport rep = detect(pair, b);
        REQUIRE(rep.outcome == DetectionOutcome::hit);
        CHECK(rep.equation_tau->r == 2);
        CHECK(rep.equation_tau->j == 1);
        CHECK(rep.equation_tau->A == rf_of("4/(4*x - x^2)"));
    }
}

TEST_CASE("negative control and homography outcomes") {
    SECTION("z^2 + 3z: no hit within small bounds") {
        DetectionBounds b = DetectionBounds::with_order(2, 2, 4, 2 * 4 + 2 + 16);
        SchroderPair pair = solve_koenigs(map_of("z^2 + 3*z"), b.order);
        DetectionReport rep = transcendence_report(pair, b);
        CHECK(rep.outcome == DetectionOutcome::no_hit_within_bounds);
        CHECK(rep.conditional_statement.find("EQUIVALENT") != std::string::npos);
        CHECK(rep.conditional_statement.find("never a proof") != std::string::npos);
    }
    SECTION("homography short-circuits with the closed form") {
        ValidatedMap m = map_of("2*z/(3*z+1)");
        SchroderPair pair = solve_koenigs(m, small_bounds().order);
        DetectionReport rep = transcendence_report(pair, small_bounds());
        CHECK(rep.outcome == DetectionOutcome::homography);
        REQUIRE(rep.sigma_closed_form);
        CHECK(*rep.sigma_closed_form == homography_closed_form(m));
    }
    SECTION("pair order below bounds order is rejected") {
        DetectionBounds b = small_bounds();
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), b.order - 1);
        CHECK_THROWS_AS(detect(pair, b), std::invalid_argument);
    }
}

TEST_CASE("detector determinism") {
    DetectionBounds b = small_bounds();
    SchroderPair pair = solve_koenigs(map_of("4*z - 4*z^2"), b.order);
    DetectionReport r1 = detect(pair, b);
    DetectionReport r2 = detect(pair, b);
    REQUIRE(r1.outcome == DetectionOutcome::hit);
    CHECK(r1.equation_tau->r == r2.equation_tau->r);
    CHECK(r1.equation_tau->j == r2.equation_tau->j);
    CHECK(r1.equation_tau->A == r2.equation_tau->A);

    SECTION("same result under forced worker counts") {
        for (const char* threads : {"1", "3"}) {
            setenv("RITT_THREADS", threads, 1);
            DetectionReport rt = detect(pair, b);
            CHECK(rt.equation_tau->r == r1.equation_tau->r);
            CHECK(rt.equation_tau->j == r1.equation_tau->j);
            CHECK(rt.equation_tau->A == r1.equation_tau->A);
        }
        unsetenv("RITT_THREADS");
    }
}

TEST_CASE("detector with j_max = 0 still searches the full modulus window") {
    DetectionBounds b = DetectionBounds::with_order(2, 0, 4, 2 * 4 + 0 + 16);
    SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), b.order);
    DetectionReport rep = detect(pair, b);
    REQUIRE(rep.outcome == DetectionOutcome::hit);
    CHECK(rep.equation_tau->r == 1);
    CHECK(rep.equation_tau->j == 0);
}

TEST_CASE("to_sigma and sigma-side verification") {
    DetectionBounds b = small_bounds();
    SECTION("sigma' = 1 + sigma for e^t - 1") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 40);
        RittEquationTau eq{1, 0, rf_of("1/(1+x)")};
        RittEquationSigma seq = to_sigma(eq);
        CHECK(seq.r == -1);
        CHECK(seq.j == 0);
        ResidualReport rep = verify_equation_sigma(pair, seq);
        CHECK(rep.zero);
    }
    SECTION("(sigma')^2 = sigma(1 - sigma)/t for sin^2 sqrt(t)") {
        SchroderPair pair = solve_koenigs(map_of("4*z - 4*z^2"), 40);
        RittEquationSigma seq = to_sigma(RittEquationTau{2, 1, rf_of("1/(x - x^2)")});
        ResidualReport rep = verify_equation_sigma(pair, seq);
        CHECK(rep.zero);
    }
    SECTION("scaling (r, j, A) -> (2r, 2j, A^2) commutes with to_sigma and still verifies") {
        SchroderPair pair = solve_koenigs(map_of("4*z - 4*z^2"), 40);
        RittEquationTau eq{2, 1, rf_of("1/(x - x^2)")};
        RittEquationTau doubled{2 * eq.r, 2 * eq.j, eq.A * eq.A};
        CHECK(verify_equation_tau(pair, doubled).zero);
        RittEquationSigma sd = to_sigma(doubled);
        CHECK(sd.r == 2 * to_sigma(eq).r);
        CHECK(sd.j == 2 * to_sigma(eq).j);
        CHECK(sd.A == to_sigma(eq).A * to_sigma(eq).A);
        CHECK(verify_equation_sigma(pair, sd).zero);
        // ... but the detector reports the primitive representative
        DetectionReport rep = detect(pair, small_bounds());
        CHECK(rep.equation_tau->r == 2);
        CHECK(rep.equation_tau->j == 1);
    }
}

TEST_CASE("tau-side verification") {
    SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 40);
    SECTION("the true equation verifies") {
        ResidualReport rep = verify_equation_tau(pair, RittEquationTau{1, 0, rf_of("1/(1+x)")});
        CHECK(rep.zero);
        CHECK(rep.order_checked >= 39);
    }
    SECTION("perturbing A breaks the identity with a reported order") {
        ResidualReport rep =
            verify_equation_tau(pair, RittEquationTau{1, 0, rf_of("(1 + x^6)/(1+x)")});
        CHECK_FALSE(rep.zero);
        CHECK(rep.first_nonzero.has_value());
    }
    SECTION("ord mismatch is rejected structurally") {
        ResidualReport rep = verify_equation_tau(pair, RittEquationTau{1, 1, rf_of("1/(1+x)")});
        CHECK_FALSE(rep.zero);
        CHECK(rep.note.find("structural") != std::string::npos);
        CHECK(rep.order_checked == 0); // no series work happened
    }
    SECTION("homography tau equation: tau' = (1-x)^-2 for 2z/(z+1)") {
        SchroderPair hpair = solve_koenigs(map_of("2*z/(z+1)"), 40);
        ResidualReport rep =
            verify_equation_tau(hpair, RittEquationTau{1, 0, rf_of("1/(1 - 2*x + x^2)")});
        CHECK(rep.zero);
    }
    SECTION("r = 0 is rejected") {
        CHECK_THROWS_AS(verify_equation_tau(pair, RittEquationTau{0, 0, rf_of("1")}),
                        std::invalid_argument);
    }
}

TEST_CASE("negative control: random rational impostors for tau are rejected") {
    std::mt19937 rng(991);
    SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 40);
    RittEquationTau eq{1, 0, rf_of("1/(1+x)")};
    int rejected = 0;
    for (int it = 0; it < 25; ++it) {
        // F(0) = 0, F'(0) = 1, F rational, substituted for tau in the equation
        Polynomial x = Polynomial::variable();
        Polynomial num = x + testing::random_polynomial(rng, 3) * x * x;
        Polynomial den = Polynomial(Rational(1)) + testing::random_polynomial(rng, 2) * x * x;
        RationalFunction f(num, den);
        TruncatedSeries fs = expand(f, 40);
        TruncatedSeries residual =
            pow(derive(fs), eq.r) - expand(eq.A, 44) * pow(fs, eq.j);
        if (!truncate(residual, 38).is_zero_to_order()) ++rejected;
    }
    CHECK(rejected == 25);
}
