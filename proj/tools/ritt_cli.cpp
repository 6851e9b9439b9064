// Command-line surface: expression parsing, command dispatch, and reporting
// in either a fixed human-readable layout or bit-stable JSON.
//
// Exit codes: 0 success / verified hit; 3 refuted outcome (detect found no
// hit within bounds, or verify found a nonzero residual); 4 homography input
// to detect; 1 usage or expression parse error; 2 internal precondition
// failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ritt/bell.hpp"
#include "ritt/detect.hpp"
#include "ritt/linearized.hpp"
#include "ritt/parse.hpp"
#include "ritt/poincare.hpp"
#include "ritt/report_json.hpp"
#include "ritt/series.hpp"

namespace {

using ritt::report::Json;

struct Output {
    bool json = false;
    std::string out_path;

    void emit(const std::string& human, const Json& report) const {
        std::string text = json ? report.dump(2) + "\n" : human;
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot open output file: " + out_path);
            f << text;
        }
    }
};

std::string residual_line(const ritt::ResidualReport& r) {
    std::ostringstream os;
    if (r.zero) {
        os << "residual exactly zero to order " << r.order_checked;
    } else if (!r.note.empty()) {
        os << r.note;
    } else {
        os << "nonzero residual, first offending exponent " << *r.first_nonzero
           << " (checked to order " << r.order_checked << ")";
    }
    return os.str();
}

std::string describe_map(const ritt::ValidatedMap& map) {
    std::ostringstream os;
    os << "map R(z) = " << ritt::to_expression_string(map.R, "z") << "\n"
       << "multiplier q = R'(0) = " << map.q.str() << (map.abs_q_gt_one ? "  (|q| > 1)" : "  (|q| <= 1)")
       << "\n"
       << "degrees (" << map.num_degree << ", " << map.den_degree << "), homography: "
       << (map.is_homography ? "yes" : "no") << "\n";
    return os.str();
}

int run_solve(const std::string& map_src, long order, const Output& out) {
    ritt::ValidatedMap map = ritt::validate_map(ritt::parse_expression(map_src, "z"));
    ritt::SchroderPair pair = ritt::solve_koenigs(map, order);

    Json report = ritt::report::make_report("solve", Json{{"map", map_src}, {"order", order}});
    report["map"] = ritt::report::to_json(map);
    report["sigma"] = ritt::report::to_json(pair.sigma);
    report["tau"] = ritt::report::to_json(pair.tau);
    std::ostringstream os;
    os << describe_map(map);
    if (map.is_homography) {
        ritt::RationalFunction cf = ritt::homography_closed_form(map);
        report["sigma_closed_form"] = ritt::report::to_json(cf, "t");
        os << "sigma is rational: sigma(t) = " << ritt::to_expression_string(cf, "t") << "\n";
    } else {
        report["sigma_closed_form"] = Json(nullptr);
    }
    os << "sigma(t) = " << ritt::to_string(pair.sigma, "t") << "\n"
       << "tau(x)   = " << ritt::to_string(pair.tau, "x") << "\n"
       << "certified: R(sigma(t)) = sigma(q t), tau(R(x)) = q tau(x), tau(sigma(t)) = t, all to order "
       << pair.order << "\n";
    out.emit(os.str(), report);
    return 0;
}

int run_detect(const std::string& map_src, const ritt::DetectionBounds& bounds, const Output& out) {
    ritt::ValidatedMap map = ritt::validate_map(ritt::parse_expression(map_src, "z"));
    long pair_order = map.is_homography ? 2 : bounds.order;
    ritt::SchroderPair pair = ritt::solve_koenigs(map, pair_order);
    ritt::DetectionReport result = ritt::transcendence_report(pair, bounds);

    Json report = ritt::report::make_report(
        "detect", Json{{"map", map_src}, {"bounds", ritt::report::to_json(bounds)}});
    report["map"] = ritt::report::to_json(map);
    report["result"] = ritt::report::to_json(result);

    std::ostringstream os;
    os << describe_map(map) << "outcome: " << ritt::to_string(result.outcome) << "\n";
    if (result.equation_tau) {
        os << "equation (tau side):   (tau')^" << result.equation_tau->r << " = A(x) * tau^"
           << result.equation_tau->j
           << ",  A = " << ritt::to_expression_string(result.equation_tau->A, "x") << "\n";
        os << "equation (sigma side): (sigma')^" << result.equation_sigma->r << " = t^"
           << result.equation_sigma->j << " * A(sigma)\n";
        os << "residual orders checked:";
        for (long o : result.residual_orders_checked) os << " " << o;
        os << "\n";
    }
    if (result.sigma_closed_form)
        os << "sigma(t) = " << ritt::to_expression_string(*result.sigma_closed_form, "t") << "\n";
    os << result.conditional_statement << "\n";
    out.emit(os.str(), report);

    switch (result.outcome) {
        case ritt::DetectionOutcome::hit: return 0;
        case ritt::DetectionOutcome::no_hit_within_bounds: return 3;
        case ritt::DetectionOutcome::homography: return 4;
    }
    return 2;
}

int run_verify(const std::string& map_src, const std::string& side, long r, long j,
               const std::string& a_src, long order, const Output& out) {
    ritt::ValidatedMap map = ritt::validate_map(ritt::parse_expression(map_src, "z"));
    ritt::RationalFunction a = ritt::parse_expression(a_src, "x");
    ritt::SchroderPair pair = ritt::solve_koenigs(map, order);

    ritt::ResidualReport rep;
    if (side == "tau") {
        rep = ritt::verify_equation_tau(pair, ritt::RittEquationTau{r, j, a});
    } else {
        rep = ritt::verify_equation_sigma(pair, ritt::RittEquationSigma{r, j, a});
    }

    Json report = ritt::report::make_report(
        "verify", Json{{"map", map_src}, {"side", side}, {"r", r}, {"j", j}, {"A", a_src},
                       {"order", order}});
    report["map"] = ritt::report::to_json(map);
    report["residual"] = ritt::report::to_json(rep);

    std::ostringstream os;
    os << describe_map(map);
    if (side == "tau")
        os << "checking (tau')^" << r << " = A(x) * tau^" << j << " with A = " << a_src << "\n";
    else
        os << "checking (sigma')^" << r << " = t^" << j << " * A(sigma) with A = " << a_src << "\n";
    os << residual_line(rep) << "\n";
    out.emit(os.str(), report);
    return rep.zero ? 0 : 3;
}

int run_bell(int n, int k, const Output& out) {
    ritt::BellPolynomial b = ritt::bell(n, k);
    Json report = ritt::report::make_report("bell", Json{{"n", n}, {"k", k}});
    report["bell"] = ritt::report::to_json(b);
    std::ostringstream os;
    os << "B_{" << n << "," << k << "} = " << ritt::to_string(b) << "\n";
    out.emit(os.str(), report);
    return 0;
}

int run_linearize(const std::string& map_src, int n, bool verify, long order, const Output& out) {
    ritt::ValidatedMap map = ritt::validate_map(ritt::parse_expression(map_src, "z"));
    std::vector<ritt::LinearizedRow> rows = ritt::linearize_rows(map, n);
    const ritt::LinearizedRow& row = rows.back();

    Json report = ritt::report::make_report(
        "linearize", Json{{"map", map_src}, {"n", n}, {"verify", verify}, {"order", order}});
    report["map"] = ritt::report::to_json(map);
    report["row"] = ritt::report::to_json(row);

    std::ostringstream os;
    os << describe_map(map) << "row n = " << n << ":\n"
       << "  diagonal q/(R')^" << n << " = " << ritt::to_expression_string(row.diagonal, "x")
       << "\n";
    for (size_t k = 1; k <= row.lower.size(); ++k)
        os << "  A_{" << n << "," << k
           << "} = " << ritt::to_expression_string(row.lower[k - 1], "x") << "\n";

    if (verify) {
        ritt::SchroderPair pair = ritt::solve_koenigs(map, order);
        Json checks = Json::array();
        for (const ritt::LinearizedRow& rw : rows) {
            ritt::ResidualReport rep = ritt::verify_row(rw, pair);
            checks.push_back(Json{{"n", rw.n}, {"residual", ritt::report::to_json(rep)}});
            os << "verify n = " << rw.n << ": " << residual_line(rep) << "\n";
        }
        report["verification"] = checks;
    } else {
        report["verification"] = Json(nullptr);
    }
    out.emit(os.str(), report);
    return 0;
}

int run_constants_check(const std::string& map_src, long order, const Output& out) {
    ritt::ValidatedMap map = ritt::validate_map(ritt::parse_expression(map_src, "z"));
    ritt::ConstantsTrace trace = ritt::constants_check(map, order);

    Json report =
        ritt::report::make_report("constants-check", Json{{"map", map_src}, {"order", order}});
    report["map"] = ritt::report::to_json(map);
    report["trace"] = ritt::report::to_json(trace);

    std::ostringstream os;
    os << describe_map(map) << "forcing factors q^n - 1 for n = 1.." << order - 1 << ":";
    for (const ritt::Rational& f : trace.factors) os << " " << f.str();
    os << "\nall nonzero: " << (trace.all_nonzero ? "yes" : "no")
       << "\nsolved f with f(R(x)) = f(x), f(0) = 0: "
       << (trace.solved.is_zero_to_order() ? "identically zero" : "NONZERO") << " to order "
       << trace.solved.order() << "\n";
    out.emit(os.str(), report);
    return trace.all_nonzero && trace.solved.is_zero_to_order() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Schroder/Koenigs linearization and Ritt type-(A) equation detection"};
    app.require_subcommand(1);

    std::string map_src, a_src, side = "tau", out_path;
    long order = 0, r = 1, j = 0;
    int n = 1, k = 1;
    bool json = false, verify = false;
    int r_max = 6, j_max = 8, deg_max = 12;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_flag("--json", json, "emit the JSON report instead of text");
        cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the Schroder and Koenigs equations");
    solve->add_option("--map", map_src, "rational map in z fixing 0")->required();
    solve->add_option("--order", order, "series order")->required();
    add_output(solve);

    CLI::App* detect = app.add_subcommand("detect", "search for a Ritt type-(A) equation");
    detect->add_option("--map", map_src, "rational map in z fixing 0")->required();
    long detect_order = 0;
    detect->add_option("--order", detect_order, "series order (default 2*deg-max + j-max + 64)");
    detect->add_option("--r-max", r_max, "largest derivative exponent r searched");
    detect->add_option("--j-max", j_max, "largest |j| searched");
    detect->add_option("--deg-max", deg_max, "largest degree of num/den of A");
    add_output(detect);

    CLI::App* verify_cmd = app.add_subcommand("verify", "certify a candidate equation exactly");
    verify_cmd->add_option("--map", map_src, "rational map in z fixing 0")->required();
    verify_cmd->add_option("--side", side, "tau or sigma")
        ->check(CLI::IsMember({"tau", "sigma"}))
        ->required();
    verify_cmd->add_option("--r", r, "exponent on the derivative")->required();
    verify_cmd->add_option("--j", j, "exponent j")->required();
    verify_cmd->add_option("--A", a_src, "rational function A in x")->required();
    long verify_order = 64;
    verify_cmd->add_option("--order", verify_order, "series order (default 64)");
    add_output(verify_cmd);

    CLI::App* bell_cmd = app.add_subcommand("bell", "print a partial Bell polynomial");
    bell_cmd->add_option("--n", n, "weight n")->required();
    bell_cmd->add_option("--k", k, "degree k")->required();
    add_output(bell_cmd);

    CLI::App* linearize = app.add_subcommand("linearize", "coefficients of the linearized row n");
    linearize->add_option("--map", map_src, "rational map in z fixing 0")->required();
    linearize->add_option("--n", n, "row index")->required();
    linearize->add_flag("--verify", verify, "also certify rows 1..n on series");
    long linearize_order = 48;
    linearize->add_option("--order", linearize_order, "series order for --verify (default 48)");
    int max_n = 6;
    linearize->add_option("--max-n", max_n,
                          "largest row index exposed (default 6; coefficients grow quickly)");
    add_output(linearize);

    CLI::App* constants = app.add_subcommand("constants-check", "forcing factors of the constants field");
    constants->add_option("--map", map_src, "rational map in z fixing 0")->required();
    constants->add_option("--order", order, "series order")->required();
    add_output(constants);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Output out{json, out_path};
    try {
        if (solve->parsed()) return run_solve(map_src, order, out);
        if (detect->parsed()) {
            ritt::DetectionBounds bounds =
                detect_order > 0
                    ? ritt::DetectionBounds::with_order(r_max, j_max, deg_max, detect_order)
                    : [&] {
                          ritt::DetectionBounds b = ritt::DetectionBounds::defaults();
                          b.r_max = r_max;
                          b.j_max = j_max;
                          b.deg_max = deg_max;
                          b.order = 2 * static_cast<long>(deg_max) + j_max + b.margin;
                          b.validate();
                          return b;
                      }();
            return run_detect(map_src, bounds, out);
        }
        if (verify_cmd->parsed()) return run_verify(map_src, side, r, j, a_src, verify_order, out);
        if (bell_cmd->parsed()) return run_bell(n, k, out);
        if (linearize->parsed()) {
            if (n > max_n)
                throw std::invalid_argument("linearize: n = " + std::to_string(n) +
                                            " exceeds --max-n = " + std::to_string(max_n));
            return run_linearize(map_src, n, verify, linearize_order, out);
        }
        if (constants->parsed()) return run_constants_check(map_src, order, out);
    } catch (const ritt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
