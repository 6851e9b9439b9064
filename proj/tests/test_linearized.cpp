#include <catch2/catch_amalgamated.hpp>

#include "ritt/linearized.hpp"
#include "ritt/parse.hpp"
#include "ritt/poincare.hpp"

using namespace ritt;

namespace {
ValidatedMap map_of(const std::string& src) {
    return validate_map(parse_expression(src, "z"));
}
} // namespace

TEST_CASE("row 1 is q/R' with no lower part") {
    for (const char* src : {"z^2 + 2*z", "4*z - 4*z^2", "2*z/(3*z+1)"}) {
        ValidatedMap m = map_of(src);
        LinearizedRow row = linearize_row(m, 1);
        CHECK(row.n == 1);
        CHECK(row.diagonal == RationalFunction(m.q) / m.R.derivative());
        CHECK(row.lower.empty());
    }
}

TEST_CASE("row 2 lower coefficient is -q R''/(R')^3") {
    ValidatedMap m = map_of("z^2 + 2*z");
    LinearizedRow row = linearize_row(m, 2);
    RationalFunction rp = m.R.derivative();
    CHECK(row.diagonal == RationalFunction(m.q) / (rp * rp));
    REQUIRE(row.lower.size() == 1);
    RationalFunction expect = -(RationalFunction(m.q) * rp.derivative()) / pow(rp, 3);
    CHECK(row.lower[0] == expect);
}

TEST_CASE("linear map: all lower coefficients vanish, diagonal q^(1-n)") {
    ValidatedMap m = map_of("5*z");
    for (int n = 1; n <= 4; ++n) {
        LinearizedRow row = linearize_row(m, n);
        CHECK(row.diagonal == RationalFunction(pow(Rational(5), 1 - n)));
        for (const RationalFunction& a : row.lower) CHECK(a.is_zero());
    }
}

TEST_CASE("diagonal is always q/(R')^n") {
    ValidatedMap m = map_of("z^3 - 6*z^2 + 9*z");
    std::vector<LinearizedRow> rows = linearize_rows(m, 5);
    for (const LinearizedRow& row : rows)
        CHECK(row.diagonal == RationalFunction(m.q) / pow(m.R.derivative(), row.n));
}

TEST_CASE("verify_row certifies the identity on tau derivatives") {
    SECTION("n = 1 is the Koenigs derivative identity") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 40);
        ResidualReport rep = verify_row(linearize_row(pair.map, 1), pair);
        CHECK(rep.zero);
        CHECK(rep.order_checked >= 30);
    }
    SECTION("n = 2, 3 on z^2 + 2z at order >= 30") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 40);
        for (int n : {2, 3}) {
            ResidualReport rep = verify_row(linearize_row(pair.map, n), pair);
            CHECK(rep.zero);
            CHECK(rep.order_checked >= 30);
        }
    }
    SECTION("n = 2 on 4z - 4z^2") {
        SchroderPair pair = solve_koenigs(map_of("4*z - 4*z^2"), 36);
        ResidualReport rep = verify_row(linearize_row(pair.map, 2), pair);
        CHECK(rep.zero);
    }
    SECTION("rows hold for a homography too") {
        SchroderPair pair = solve_koenigs(map_of("2*z/(3*z+1)"), 32);
        for (int n : {1, 2, 3}) {
            ResidualReport rep = verify_row(linearize_row(pair.map, n), pair);
            CHECK(rep.zero);
        }
    }
    SECTION("insufficient order names the required order") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 12);
        try {
            verify_row(linearize_row(pair.map, 4), pair);
            FAIL("expected InsufficientOrderError");
        } catch (const InsufficientOrderError& e) {
            CHECK(e.required() == 14);
        }
    }
}

TEST_CASE("omega shift identity") {
    SECTION("n = 2 on z^2 + 2z") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 36);
        OmegaShift os = omega_shift(pair, 2);
        CHECK(os.residual.zero);
        CHECK(os.residual.order_checked >= 25);
    }
    SECTION("n = 3 on z^2 + 2z at order >= 25") {
        SchroderPair pair = solve_koenigs(map_of("z^2 + 2*z"), 40);
        OmegaShift os = omega_shift(pair, 3);
        CHECK(os.residual.zero);
        CHECK(os.residual.order_checked >= 25);
    }
    SECTION("linear map: rhs vanishes and omega is invariant") {
        SchroderPair pair = solve_koenigs(map_of("5*z"), 24);
        OmegaShift os = omega_shift(pair, 2);
        CHECK(os.rhs.is_zero_to_order());
        CHECK(os.omega.is_zero_to_order()); // tau = x exactly, so tau'' = 0
        CHECK(os.residual.zero);
    }
}
