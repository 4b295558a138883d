#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohrlab/acceptance.hpp"

namespace {

using bohrlab::ConcaveFamily;
using bohrlab::RadiusProblem;
using bohrlab::RadiusResult;
using bohrlab::RadiusVariant;
using bohrlab::SchwarzOrder;
using bohrlab::VanishingOrderSpec;
using ordered_json = nlohmann::ordered_json;

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// stdout by default; LF line endings either way
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file: " + out_path);
    }
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
}

struct ProblemArgs {
    int thm = 1;
    double alpha = 0.0;
    double p = 0.0;
    bool has_alpha = false;
    bool has_p = false;
    int n_start = 1;
    std::string m0 = "1";
    std::string m1 = "1";
    std::string m2 = "1";
    std::string h = "n";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--thm", thm, "theorem variant: 1, 2, or 4")->required();
        cmd->add_option("--alpha", alpha, "opening angle parameter in [1, 2]")
            ->each([this](const std::string&) { has_alpha = true; });
        cmd->add_option("--p", p, "pole location in (0, 1)")
            ->each([this](const std::string&) { has_p = true; });
        cmd->add_option("--N", n_start, "first index of the coefficient sum");
        cmd->add_option("--m0", m0, "order of w0: positive integer or 'inf'");
        cmd->add_option("--m1", m1, "order of w1 (variant 2): positive integer or 'inf'");
        cmd->add_option("--m2", m2, "order of w2 (variant 2): positive integer or 'inf'");
        cmd->add_option("--h", h, "vanishing-order spec (variant 2): 'n' or 'a*n+b'");
    }

    RadiusProblem build() const {
        const RadiusVariant variant = bohrlab::variant_from_code(thm);
        const bool pole = variant == RadiusVariant::PoleRogosinski;
        if (pole && (!has_p || has_alpha)) {
            throw std::invalid_argument("variant 4 takes --p (and no --alpha)");
        }
        if (!pole && (!has_alpha || has_p)) {
            throw std::invalid_argument("variants 1 and 2 take --alpha (and no --p)");
        }
        RadiusProblem prob{pole ? ConcaveFamily::pole(p) : ConcaveFamily::opening_angle(alpha),
                           variant,
                           n_start,
                           SchwarzOrder::parse(m0),
                           SchwarzOrder::parse(m1),
                           SchwarzOrder::parse(m2),
                           VanishingOrderSpec::parse(h)};
        prob.validate();
        return prob;
    }
};

ordered_json radius_json(const ProblemArgs& args, const RadiusProblem& prob,
                         const RadiusResult& res) {
    const bool schwarz = prob.variant == RadiusVariant::AngleSchwarz;
    ordered_json j;
    j["variant"] = args.thm;
    if (prob.family.kind() == bohrlab::FamilyKind::OpeningAngle) {
        j["alpha"] = prob.family.alpha();
    } else {
        j["p"] = prob.family.p();
    }
    j["N"] = prob.N;
    j["m0"] = prob.m0.to_string();
    j["m1"] = schwarz ? ordered_json(prob.m1.to_string()) : ordered_json(nullptr);
    j["m2"] = schwarz ? ordered_json(prob.m2.to_string()) : ordered_json(nullptr);
    j["h"] = schwarz ? ordered_json(prob.h.to_string()) : ordered_json(nullptr);
    j["root"] = res.root;
    j["reported_radius"] = res.reported_radius;
    j["capped"] = res.capped;
    j["residual"] = res.residual;
    const auto closed = bohrlab::closed_form_radius(prob);
    j["closed_form"] = closed ? ordered_json(*closed) : ordered_json(nullptr);
    j["bracket"] = {res.bracket_lo, res.bracket_hi};
    j["iterations"] = res.iterations;
    return j;
}

int cmd_radius(const ProblemArgs& args, double tol, const std::string& format,
               const std::string& out) {
    const RadiusProblem prob = args.build();
    const RadiusResult res = bohrlab::find_radius(prob, tol);
    const auto closed = bohrlab::closed_form_radius(prob);
    const bool schwarz = prob.variant == RadiusVariant::AngleSchwarz;

    std::ostringstream text;
    if (format == "json") {
        text << radius_json(args, prob, res).dump(2) << "\n";
    } else if (format == "csv") {
        text << "variant,alpha,p,N,m0,m1,m2,h,root,reported_radius,capped,residual,closed_form\n";
        text << args.thm << ",";
        text << (args.has_alpha ? num17(prob.family.alpha()) : "") << ",";
        text << (args.has_p ? num17(prob.family.p()) : "") << ",";
        text << prob.N << "," << prob.m0.to_string() << ",";
        text << (schwarz ? prob.m1.to_string() : "") << ",";
        text << (schwarz ? prob.m2.to_string() : "") << ",";
        text << (schwarz ? prob.h.to_string() : "") << ",";
        text << num17(res.root) << "," << num17(res.reported_radius) << ",";
        text << (res.capped ? "true" : "false") << "," << num17(res.residual) << ",";
        text << (closed ? num17(*closed) : "") << "\n";
    } else {
        text << "variant = " << args.thm << "\n";
        if (args.has_alpha) {
            text << "alpha = " << num17(prob.family.alpha()) << "\n";
        } else {
            text << "p = " << num17(prob.family.p()) << "\n";
        }
        text << "N = " << prob.N << "\n";
        text << "m0 = " << prob.m0.to_string() << "\n";
        if (schwarz) {
            text << "m1 = " << prob.m1.to_string() << "\n";
            text << "m2 = " << prob.m2.to_string() << "\n";
            text << "h = " << prob.h.to_string() << "\n";
        }
        text << "root = " << num17(res.root) << "\n";
        text << "reported_radius = " << num17(res.reported_radius) << "\n";
        text << "capped = " << (res.capped ? "true" : "false") << "\n";
        text << "residual = " << num17(res.residual) << "\n";
        text << "bracket = [" << num17(res.bracket_lo) << ", " << num17(res.bracket_hi) << "]\n";
        text << "iterations = " << res.iterations << "\n";
        if (closed) {
            text << "closed_form = " << num17(*closed) << "\n";
        }
    }
    emit(text.str(), out);
    return 0;
}

int cmd_coeffs(bool has_alpha, double alpha, bool has_p, double p, int n_min, int n_max,
               const std::string& format, const std::string& out) {
    if (has_alpha == has_p) {
        throw std::invalid_argument("give exactly one of --alpha or --p");
    }
    if (n_min < 1 || n_max < n_min) {
        throw std::invalid_argument("coefficient range must satisfy 1 <= n-min <= n-max");
    }
    std::ostringstream text;
    const auto value = [&](int n) { return has_alpha ? bohrlab::coeff_a(alpha, n) : bohrlab::coeff_c(p, n); };
    if (format == "json") {
        ordered_json j;
        j["family"] = has_alpha ? "opening_angle" : "pole";
        if (has_alpha) {
            j["alpha"] = alpha;
        } else {
            j["p"] = p;
        }
        ordered_json rows = ordered_json::array();
        for (int n = n_min; n <= n_max; ++n) {
            rows.push_back(ordered_json{{"n", n}, {"coefficient", value(n)}});
        }
        j["coefficients"] = rows;
        text << j.dump(2) << "\n";
    } else {
        text << "n,coefficient\n";
        for (int n = n_min; n <= n_max; ++n) {
            text << n << "," << num17(value(n)) << "\n";
        }
    }
    emit(text.str(), out);
    return 0;
}

int cmd_scan(const ProblemArgs& args, int points, double x_max_arg, double tol,
             const std::string& out) {
    const RadiusProblem prob = args.build();
    if (points < 2) {
        throw std::invalid_argument("scan needs at least 2 points");
    }
    const bool pole = prob.family.kind() == bohrlab::FamilyKind::Pole;
    const double domain_end =
        pole ? prob.family.p() * (1.0 - 1e-12) : 1.0 - 1e-9;
    double x_top = x_max_arg > 0.0 ? x_max_arg : domain_end;
    if (x_top > domain_end) {
        throw std::invalid_argument("x-max exceeds the evaluation domain");
    }
    const auto value = [&](double x) {
        switch (prob.variant) {
            case RadiusVariant::AngleRogosinski:
                return bohrlab::eval_f(prob.family.alpha(), prob.N, prob.m0, x);
            case RadiusVariant::AngleSchwarz:
                return bohrlab::eval_k(prob.family.alpha(), prob.N, prob.m0, prob.m1, prob.m2,
                                       prob.h, x)
                    .mid();
            case RadiusVariant::PoleRogosinski:
                return bohrlab::eval_g(prob.family.p(), prob.N, prob.m0, x);
        }
        throw std::logic_error("unreachable");
    };
    const RadiusResult res = bohrlab::find_radius(prob, tol);

    std::ostringstream text;
    text << "x,value,is_root\n";
    bool root_emitted = false;
    for (int i = 0; i < points; ++i) {
        const double x = x_top * i / (points - 1);
        if (!root_emitted && res.root <= x) {
            text << num17(res.root) << "," << num17(value(res.root)) << ",1\n";
            root_emitted = true;
            if (res.root == x) {
                continue;
            }
        }
        text << num17(x) << "," << num17(value(x)) << ",0\n";
    }
    if (!root_emitted) {
        text << num17(res.root) << "," << num17(value(res.root)) << ",1\n";
    }
    emit(text.str(), out);
    return 0;
}

int cmd_verify(const bohrlab::CertificationConfig& cfg, double radius_scale,
               const std::string& format, const std::string& out) {
    cfg.validate();
    const bohrlab::VerificationReport report = bohrlab::run_default_suite(cfg, radius_scale);
    std::ostringstream text;
    if (format == "text") {
        text << (report.passed() ? "passed" : "FAILED") << ", " << report.checks_run
             << " checks, worst margin excess " << num17(report.worst_margin) << "\n";
        for (const auto& [check, margin] : report.worst_by_check) {
            text << "  " << check << ": worst margin " << num17(margin) << "\n";
        }
        for (const auto& v : report.violations) {
            text << "  violation: " << v.check << " [" << v.params << "] margin "
                 << num17(v.margin) << " > " << num17(v.limit) << "\n";
        }
    } else {
        ordered_json j;
        j["seed"] = cfg.seed;
        j["samples"] = cfg.samples;
        j["theta_grid"] = cfg.theta_grid;
        j["radius_grid"] = cfg.radius_grid;
        j["tolerance"] = cfg.tolerance;
        j["series_order"] = cfg.series_order;
        j["radius_scale"] = radius_scale;
        j["checks_run"] = report.checks_run;
        j["passed"] = report.passed();
        j["worst_margin"] = report.worst_margin;
        ordered_json worst = ordered_json::object();
        for (const auto& [check, margin] : report.worst_by_check) {
            worst[check] = margin;
        }
        j["worst_by_check"] = worst;
        ordered_json violations = ordered_json::array();
        for (const auto& v : report.violations) {
            violations.push_back(ordered_json{
                {"check", v.check}, {"params", v.params}, {"margin", v.margin}, {"limit", v.limit}});
        }
        j["violations"] = violations;
        text << j.dump(2) << "\n";
    }
    emit(text.str(), out);
    return report.passed() ? 0 : 1;
}

int cmd_selftest(std::uint64_t seed, bool negative_control) {
    bohrlab::AcceptanceOptions opts;
    opts.seed = seed;
    if (negative_control) {
        // deliberately perturb one recurrence coefficient so the oracle
        // comparison must fail
        opts.coeff_a_override = [](double alpha, int n) {
            return bohrlab::coeff_a(alpha, n) * (n == 7 ? 1.0 + 1e-6 : 1.0);
        };
    }
    const auto results = bohrlab::run_acceptance(opts);
    for (const auto& r : results) {
        std::printf("%s  %d  %-52s %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
    }
    return bohrlab::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohr-Rogosinski radii for concave univalent function families"};
    app.require_subcommand(1);
    // keep the short -h free for the vanishing-order spec option --h
    app.set_help_flag("--help", "print help");
    const auto add_subcommand = [&](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help");
        return cmd;
    };

    // radius
    ProblemArgs radius_args;
    double tol = 1e-12;
    std::string format = "text";
    std::string out_path;
    CLI::App* radius_cmd = add_subcommand("radius", "solve a radius equation");
    radius_args.add_to(radius_cmd);
    radius_cmd->add_option("--tol", tol, "bracket width tolerance");
    radius_cmd->add_option("--format", format, "text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    radius_cmd->add_option("--out", out_path, "write output to this file");

    // coeffs
    double co_alpha = 0.0, co_p = 0.0;
    bool co_has_alpha = false, co_has_p = false;
    int n_min = 1, n_max = 10;
    std::string co_format = "csv";
    std::string co_out;
    CLI::App* coeffs_cmd = add_subcommand("coeffs", "tabulate extremal coefficients");
    coeffs_cmd->add_option("--alpha", co_alpha, "opening angle parameter in [1, 2]")
        ->each([&](const std::string&) { co_has_alpha = true; });
    coeffs_cmd->add_option("--p", co_p, "pole location in (0, 1)")
        ->each([&](const std::string&) { co_has_p = true; });
    coeffs_cmd->add_option("--n-min", n_min, "first index (default 1)");
    coeffs_cmd->add_option("--n-max", n_max, "last index")->required();
    coeffs_cmd->add_option("--format", co_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    coeffs_cmd->add_option("--out", co_out, "write output to this file");

    // scan
    ProblemArgs scan_args;
    int points = 200;
    double scan_x_max = 0.0;
    double scan_tol = 1e-12;
    std::string scan_out;
    CLI::App* scan_cmd = add_subcommand("scan", "tabulate a radius function on a grid");
    scan_args.add_to(scan_cmd);
    scan_cmd->add_option("--points", points, "number of grid rows");
    scan_cmd->add_option("--x-max", scan_x_max, "right end of the grid (default: domain end)");
    scan_cmd->add_option("--tol", scan_tol, "root tolerance for the flagged row");
    scan_cmd->add_option("--out", scan_out, "write output to this file");

    // verify
    bohrlab::CertificationConfig cfg;
    double radius_scale = 0.9;
    std::string verify_format = "json";
    std::string verify_out;
    CLI::App* verify_cmd = add_subcommand("verify", "run the certification suite");
    verify_cmd->add_option("--seed", cfg.seed, "root seed for all sampling");
    verify_cmd->add_option("--samples", cfg.samples, "base sample count");
    verify_cmd->add_option("--theta-grid", cfg.theta_grid, "angular samples per circle");
    verify_cmd->add_option("--radius-grid", cfg.radius_grid, "radial probes per functional");
    verify_cmd->add_option("--tolerance", cfg.tolerance, "slack accepted on each margin");
    verify_cmd->add_option("--order", cfg.series_order, "series truncation order");
    verify_cmd->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    verify_cmd->add_option("--radius-scale", radius_scale,
                           "probe radius as a fraction of each computed radius");
    verify_cmd->add_option("--format", verify_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    verify_cmd->add_option("--out", verify_out, "write the report to this file");

    // selftest
    std::uint64_t selftest_seed = 42;
    bool negative_control = false;
    CLI::App* selftest_cmd = add_subcommand("selftest", "run the acceptance battery");
    selftest_cmd->add_option("--seed", selftest_seed, "seed for the randomized criteria");
    selftest_cmd->add_flag("--negative-control", negative_control)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (radius_cmd->parsed()) {
            return cmd_radius(radius_args, tol, format, out_path);
        }
        if (coeffs_cmd->parsed()) {
            return cmd_coeffs(co_has_alpha, co_alpha, co_has_p, co_p, n_min, n_max, co_format,
                              co_out);
        }
        if (scan_cmd->parsed()) {
            return cmd_scan(scan_args, points, scan_x_max, scan_tol, scan_out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(cfg, radius_scale, verify_format, verify_out);
        }
        if (selftest_cmd->parsed()) {
            return cmd_selftest(selftest_seed, negative_control);
        }
    } catch (const bohrlab::NoSignChangeError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const bohrlab::EnclosureTooWideError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
