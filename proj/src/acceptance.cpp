#include "bohrlab/acceptance.hpp"

#include <cmath>
#include <cstdio>

namespace bohrlab {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

CriterionResult closed_form_angle() {
    static const double alphas[] = {1.0, 1.1, 1.25, 1.5, 1.75, 2.0};
    double worst = 0.0;
    for (const double alpha : alphas) {
        const RadiusProblem prob{ConcaveFamily::opening_angle(alpha),
                                 RadiusVariant::AngleRogosinski, 1, SchwarzOrder::inf()};
        const double root = find_radius(prob, 1e-12).root;
        const double q = std::pow(2.0, 1.0 / alpha);
        worst = std::max(worst, std::fabs(root - (q - 1.0) / (q + 1.0)));
    }
    return {1, "closed-form radii, opening-angle family", worst <= 1e-10, worst,
            "max |root - closed form| = " + fmt(worst) + " over 6 alpha values"};
}

CriterionResult closed_form_pole() {
    static const double ps[] = {0.25, 0.5, 0.75};
    double worst = 0.0;
    bool below_pole = true;
    for (const double p : ps) {
        const RadiusProblem prob{ConcaveFamily::pole(p), RadiusVariant::PoleRogosinski, 1,
                                 SchwarzOrder::inf()};
        const double root = find_radius(prob, 1e-12).root;
        // smaller root of p r^2 - 2 (p^2 + p + 1) r + p = 0 (roots multiply to 1)
        const double c1 = p * p + p + 1.0;
        const double expected = p / (c1 + std::sqrt(c1 * c1 - p * p));
        worst = std::max(worst, std::fabs(root - expected));
        below_pole = below_pole && root < p;
    }
    return {2, "closed-form radii, pole family", worst <= 1e-10 && below_pole, worst,
            "max |root - quadratic root| = " + fmt(worst) +
                (below_pole ? ", all roots below the pole" : ", root at or past the pole")};
}

CriterionResult classical_radius() {
    const double err = std::fabs(classical_br_radius(1) - (std::sqrt(5.0) - 2.0));
    return {3, "classical Bohr-Rogosinski radius", err <= 1e-10, err,
            "|R_1 - (sqrt(5) - 2)| = " + fmt(err)};
}

CriterionResult coefficient_oracle(const AcceptanceOptions& opts) {
    static const double alphas[] = {1.0, 1.25, 1.5, 1.75, 2.0};
    const auto coeff = [&](double alpha, int n) {
        return opts.coeff_a_override ? opts.coeff_a_override(alpha, n) : coeff_a(alpha, n);
    };
    double worst_rel = 0.0;
    for (const double alpha : alphas) {
        for (int n = 1; n <= 60; ++n) {
            const double oracle = coeff_a_binomial_oracle(alpha, n);
            worst_rel = std::max(worst_rel, std::fabs(coeff(alpha, n) - oracle) / oracle);
        }
    }
    double worst_exact = 0.0;
    for (int n = 1; n <= 60; ++n) {
        worst_exact = std::max(worst_exact, std::fabs(coeff(1.0, n) - 1.0));
        worst_exact = std::max(worst_exact, std::fabs(coeff(2.0, n) - n));
    }
    const bool ok = worst_rel <= 1e-12 && worst_exact <= 1e-12;
    return {4, "coefficient recurrence vs binomial-convolution oracle", ok,
            std::max(worst_rel, worst_exact),
            "max relative error " + fmt(worst_rel) + ", max error at alpha = 1, 2: " +
                fmt(worst_exact)};
}

CriterionResult sharpness_crossings(const CertificationConfig& cfg) {
    const VerificationReport report = run_sharpness_block(cfg, 1e-6);
    return {5, "sharpness crossings at the computed radii", report.passed(), report.worst_margin,
            report.passed() ? "all 12 crossings strict"
                            : report.violations.front().check + " failed: " +
                                  report.violations.front().params};
}

CriterionResult tail_domination(const CertificationConfig& cfg) {
    const VerificationReport report = run_tail_domination_block(cfg, 500);
    return {6, "tail-domination property suite", report.passed(),
            report.worst_by_check.at("tail_domination"),
            report.passed() ? "500 samples, worst margin " +
                                  fmt(report.worst_by_check.at("tail_domination"))
                            : "violation: " + report.violations.front().params};
}

CriterionResult pole_coeff_bound(const CertificationConfig& cfg) {
    const VerificationReport report = run_pole_coeff_block(cfg, 200);
    return {7, "pole coefficient-bound suite", report.passed(),
            report.worst_by_check.at("pole_coeff_bound"),
            report.passed() ? "200 subordinates, worst ratio " +
                                  fmt(report.worst_by_check.at("pole_coeff_bound"))
                            : "violation: " + report.violations.front().params};
}

CriterionResult inequality_suite(const CertificationConfig& cfg) {
    const VerificationReport report = run_inequality_block(cfg, 100, 0.9);
    return {8, "inequality suite at 90% of each radius", report.passed(), report.worst_margin,
            report.passed() ? "12 x 100 evaluations, all margins within tolerance"
                            : "violation: " + report.violations.front().params};
}

CriterionResult monotonicity_grids() {
    static const double alphas[] = {1.0, 1.5, 2.0};
    static const double ps[] = {0.25, 0.5, 0.75};
    static const int ns[] = {1, 2, 5};
    const SchwarzOrder orders[] = {SchwarzOrder(1), SchwarzOrder(2), SchwarzOrder::inf()};
    constexpr int kGrid = 200;
    double worst_drop = 0.0;  // most negative successive difference, as a drop
    std::string where = "all grids strictly increasing";
    bool ok = true;

    const auto scan = [&](const std::string& tag, double x_top,
                          const std::function<double(double)>& value) {
        double prev = value(0.0);
        for (int i = 1; i < kGrid; ++i) {
            const double x = x_top * i / (kGrid - 1);
            const double curr = value(x);
            const double diff = curr - prev;
            if (diff <= -1e-13) {
                ok = false;
                if (-diff > worst_drop) {
                    worst_drop = -diff;
                    where = tag + " near x = " + fmt(x);
                }
            }
            prev = curr;
        }
    };

    for (const double alpha : alphas) {
        for (const int n : ns) {
            for (const SchwarzOrder& m : orders) {
                scan("F alpha=" + fmt(alpha), 1.0 - 1e-9,
                     [&](double x) { return eval_f(alpha, n, m, x); });
                scan("K alpha=" + fmt(alpha), 1.0 - 1e-9, [&](double x) {
                    return eval_k(alpha, n, m, m, m, VanishingOrderSpec::identity(), x).mid();
                });
            }
        }
    }
    for (const double p : ps) {
        for (const int n : ns) {
            for (const SchwarzOrder& m : orders) {
                scan("G p=" + fmt(p), p * (1.0 - 1e-12),
                     [&](double x) { return eval_g(p, n, m, x); });
            }
        }
    }
    return {9, "monotonicity grids for the three radius functions", ok, worst_drop, where};
}

}  // namespace

double coeff_a_binomial_oracle(double alpha, int n) {
    // (1+z)^alpha has coefficients C(alpha, k), (1-z)^{-alpha} has C(alpha+k-1, k)
    std::vector<double> plus(static_cast<std::size_t>(n) + 1);
    std::vector<double> minus(static_cast<std::size_t>(n) + 1);
    plus[0] = 1.0;
    minus[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        plus[static_cast<std::size_t>(k)] =
            plus[static_cast<std::size_t>(k) - 1] * (alpha - k + 1.0) / k;
        minus[static_cast<std::size_t>(k)] =
            minus[static_cast<std::size_t>(k) - 1] * (alpha + k - 1.0) / k;
    }
    double c_n = 0.0;
    for (int k = 0; k <= n; ++k) {
        c_n += plus[static_cast<std::size_t>(k)] * minus[static_cast<std::size_t>(n - k)];
    }
    return c_n / (2.0 * alpha);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    CertificationConfig cfg;
    cfg.seed = opts.seed;
    std::vector<CriterionResult> results;
    results.push_back(closed_form_angle());
    results.push_back(closed_form_pole());
    results.push_back(classical_radius());
    results.push_back(coefficient_oracle(opts));
    results.push_back(sharpness_crossings(cfg));
    results.push_back(tail_domination(cfg));
    results.push_back(pole_coeff_bound(cfg));
    results.push_back(inequality_suite(cfg));
    results.push_back(monotonicity_grids());
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results) {
        if (!r.passed) {
            return false;
        }
    }
    return true;
}

}  // namespace bohrlab
