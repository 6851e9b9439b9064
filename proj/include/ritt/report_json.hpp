#pragma once

#include <string>

#include "json.hpp"

#include "ritt/bell.hpp"
#include "ritt/detect.hpp"
#include "ritt/linearized.hpp"
#include "ritt/poincare.hpp"
#include "ritt/rational.hpp"
#include "ritt/rational_function.hpp"
#include "ritt/series.hpp"

// Bit-stable JSON building blocks: ordered keys, rationals as exact strings
// in lowest terms, series with explicit valuation and order. Rational
// function expressions are emitted in the input grammar so they can be fed
// back through the parser.
namespace ritt::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const TruncatedSeries& s) {
    Json coeffs = Json::array();
    for (const Rational& c : s.window()) coeffs.push_back(c.str());
    return Json{{"valuation", s.valuation()}, {"order", s.order()}, {"coefficients", coeffs}};
}

inline Json to_json(const RationalFunction& f, const std::string& var) {
    return Json{{"num", to_expression_string(f.num(), var)},
                {"den", to_expression_string(f.den(), var)}};
}

inline Json to_json(const RittEquationTau& eq) {
    return Json{{"r", eq.r}, {"j", eq.j}, {"A", to_json(eq.A, "x")}};
}

inline Json to_json(const RittEquationSigma& eq) {
    return Json{{"r", eq.r}, {"j", eq.j}, {"A", to_json(eq.A, "x")}};
}

inline Json to_json(const DetectionBounds& b) {
    return Json{{"r_max", b.r_max},
                {"j_max", b.j_max},
                {"deg_max", b.deg_max},
                {"order", b.order},
                {"margin", b.margin}};
}

inline Json to_json(const ResidualReport& r) {
    Json j{{"zero", r.zero}, {"order_checked", r.order_checked}};
    j["first_nonzero"] = r.first_nonzero ? Json(*r.first_nonzero) : Json(nullptr);
    j["note"] = r.note;
    return j;
}

inline Json to_json(const ValidatedMap& m) {
    return Json{{"map", to_json(m.R, "z")},
                {"q", m.q.str()},
                {"num_degree", m.num_degree},
                {"den_degree", m.den_degree},
                {"is_homography", m.is_homography},
                {"abs_q_gt_one", m.abs_q_gt_one}};
}

inline Json to_json(const BellPolynomial& b) {
    Json monomials = Json::array();
    for (const auto& [exps, c] : b.terms) {
        Json e = Json::array();
        for (int x : exps) e.push_back(x);
        monomials.push_back(Json{{"coefficient", c.str()}, {"exponents", e}});
    }
    return Json{{"n", b.n}, {"k", b.k}, {"monomials", monomials}, {"text", to_string(b)}};
}

inline Json to_json(const LinearizedRow& row) {
    Json lower = Json::array();
    for (size_t k = 1; k <= row.lower.size(); ++k)
        lower.push_back(Json{{"k", k}, {"A", to_json(row.lower[k - 1], "x")}});
    return Json{{"n", row.n}, {"diagonal", to_json(row.diagonal, "x")}, {"lower", lower}};
}

inline Json to_json(const ConstantsTrace& t) {
    Json factors = Json::array();
    for (const Rational& f : t.factors) factors.push_back(f.str());
    return Json{{"q", t.q.str()},
                {"order", t.order},
                {"factors", factors},
                {"all_nonzero", t.all_nonzero},
                {"solved_f", to_json(t.solved)}};
}

inline Json to_json(const DetectionReport& r) {
    Json j{{"outcome", to_string(r.outcome)}, {"bounds", to_json(r.bounds)}};
    j["equation_tau"] = r.equation_tau ? to_json(*r.equation_tau) : Json(nullptr);
    j["equation_sigma"] = r.equation_sigma ? to_json(*r.equation_sigma) : Json(nullptr);
    j["sigma_closed_form"] =
        r.sigma_closed_form ? to_json(*r.sigma_closed_form, "t") : Json(nullptr);
    Json orders = Json::array();
    for (long o : r.residual_orders_checked) orders.push_back(o);
    j["residual_orders_checked"] = orders;
    j["conditional_statement"] = r.conditional_statement;
    return j;
}

inline Json make_report(const std::string& command, Json inputs) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"inputs", std::move(inputs)}};
}

} // namespace ritt::report
