#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bohrlab/radius.hpp"
#include "bohrlab/schwarz.hpp"

namespace bohrlab {

struct CertificationConfig {
    int samples = 500;       // base sample count for the randomized blocks
    std::uint64_t seed = 42;
    int theta_grid = 64;     // angular samples for modulus maxima on |z| = r
    int radius_grid = 16;    // radial probes for the monotonicity block
    double tolerance = 1e-9; // slack accepted on each inequality margin
    int series_order = 128;  // truncation order for harness series work
    int threads = 0;         // 0 = hardware default, capped by BOHR_LAB_THREADS

    void validate() const;
};

// one failed check: `margin` exceeded `limit`
struct Violation {
    std::string check;
    std::string params;
    double margin;
    double limit;
};

struct VerificationReport {
    long checks_run = 0;
    std::vector<Violation> violations;
    // most positive margin - limit over every check (<= 0 when all pass)
    double worst_margin = -std::numeric_limits<double>::infinity();
    // largest raw margin seen per check id
    std::map<std::string, double> worst_by_check;

    bool passed() const { return violations.empty(); }
    void record(const std::string& check, const std::string& params, double margin, double limit);
    void merge(const VerificationReport& other);
};

// Every check returns a margin LHS - RHS where the LHS carries the certified
// closed-form remainder of each truncated sum, so a nonpositive margin
// survives the true infinite sums. Checks pass when margin <= tolerance.

// tail domination under subordination: for g = f_alpha o w,
// sum_{n>=N} |b_n| r^n - sum_{n>=N} A_n r^n, valid claim for r <= 1/3
double check_tail_domination(double alpha, const SchwarzFunction& w, int N, double r,
                             const CertificationConfig& cfg);

// |g(w0(z))| + sum_{n>=N} |b_n| r^n - 1/(2 alpha) for g = f_alpha o w,
// maximized over the theta grid on |z| = r
double check_angle_rogosinski(double alpha, const SchwarzFunction& w0, const SchwarzFunction& w,
                              int N, double r, const CertificationConfig& cfg);

// |f(w0(z))| + |f'(w1(z))| |w2(z)| + sum_{n>=N} A_n r^{h(n)} - 1/(2 alpha)
// for f = f_alpha, with the monomial choice w*_n(z) = z^{h(n)}
double check_angle_schwarz(double alpha, const SchwarzFunction& w0, const SchwarzFunction& w1,
                           const SchwarzFunction& w2, const VanishingOrderSpec& h, int N, double r,
                           const CertificationConfig& cfg);

// |g(w0(z))| + sum_{n>=N} |b_n| r^n - p/(1+p)^2 for g = k_p o w, r < p
double check_pole_rogosinski(double p, const SchwarzFunction& w0, const SchwarzFunction& w, int N,
                             double r, const CertificationConfig& cfg);

// max_{1<=n<=n_max} |b_n| / c_n(p) for g = k_p o w; at most 1 for genuine
// subordinates
double check_pole_coeff_bound(double p, const SchwarzFunction& w, int n_max,
                              const CertificationConfig& cfg);

// Extremal-functional margins just below and above the computed radius, with
// the monomial Schwarz choices that attain equality. A genuine radius gives
// below <= 0 <= above with strict inequality beyond roundoff.
struct SharpnessScan {
    double below;
    double above;
};
SharpnessScan sharpness_scan(const RadiusProblem& problem, double epsilon,
                             const CertificationConfig& cfg = {});

// twelve parameter combinations spanning the three variants, N in {1,2},
// finite and infinite orders, identity and 2n+1 vanishing schedules
const std::vector<RadiusProblem>& standard_problem_set();

// suite blocks (deterministic given seed and config; sample evaluation may
// run on several threads, results are merged in sample order)
VerificationReport run_tail_domination_block(const CertificationConfig& cfg, int num_samples);
VerificationReport run_pole_coeff_block(const CertificationConfig& cfg, int num_samples);
VerificationReport run_inequality_block(const CertificationConfig& cfg, int samples_per_problem,
                                        double radius_scale);
VerificationReport run_sharpness_block(const CertificationConfig& cfg, double epsilon);
VerificationReport run_monotonicity_block(const CertificationConfig& cfg);

// the full certification suite; radius_scale rescales the probe radius of the
// inequality block (0.9 probes inside the radius, anything above 1 must fail
// on the extremal rows)
VerificationReport run_default_suite(const CertificationConfig& cfg, double radius_scale = 0.9);

}  // namespace bohrlab
