#include "bohrlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace bohrlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t block, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ (block * 0x9e3779b97f4a7c15ULL)) + index);
}

int env_thread_cap() {
    static const int cap = [] {
        const char* raw = std::getenv("BOHR_LAB_THREADS");
        if (raw == nullptr) {
            return 0;
        }
        const int value = std::atoi(raw);
        return value > 0 ? value : 1;
    }();
    return cap;
}

int resolve_threads(const CertificationConfig& cfg) {
    int threads = cfg.threads;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) {
            threads = 1;
        }
        threads = std::min(threads, 8);
    }
    if (env_thread_cap() > 0) {
        threads = std::min(threads, env_thread_cap());
    }
    return std::max(threads, 1);
}

// static partition; bodies write to index-addressed slots so the merge is
// independent of scheduling
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// upper bound for sum_{n>T} M (t/s)^n, the Cauchy-estimate remainder of a
// series whose modulus is at most M on |z| = s
double cauchy_tail(double bound_on_circle, double s, double t, int truncation) {
    if (t <= 0.0) {
        return 0.0;
    }
    const double q = t / s;
    return bound_on_circle * std::pow(q, truncation + 1) / (1.0 - q);
}

double derivative_bound(double alpha, double s) {
    return std::pow(1.0 + s, alpha - 1.0) / std::pow(1.0 - s, alpha + 1.0);
}

// sum_{n=N}^{T} |b_n| r^n plus the certified remainder of the dropped tail,
// where bound_on_circle majorizes |g| on |z| = s, r < s
double abs_tail_sum(const TruncatedSeries& g, int N, double r, double s, double bound_on_circle) {
    double sum = 0.0;
    double r_pow = std::pow(r, N);
    for (int n = N; n <= g.order(); ++n) {
        sum += std::abs(g[n]) * r_pow;
        r_pow *= r;
    }
    return sum + cauchy_tail(bound_on_circle, s, r, g.order());
}

Complex theta_point(double r, int j, int grid) {
    const double angle = 2.0 * std::numbers::pi * j / grid;
    return Complex(r * std::cos(angle), r * std::sin(angle));
}

SchwarzFunction extremal_input(SchwarzOrder m) {
    return m.is_inf() ? SchwarzFunction::zero() : SchwarzFunction::monomial(m.value());
}

SchwarzFunction random_input(SchwarzOrder m, std::uint64_t seed) {
    if (m.is_inf()) {
        return SchwarzFunction::zero();
    }
    const int num_factors = static_cast<int>(splitmix64(seed) % 4);
    return SchwarzFunction::sample(m.value(), num_factors, splitmix64(seed + 1));
}

double domain_cap(const RadiusProblem& prob) {
    if (prob.family.kind() == FamilyKind::Pole) {
        return prob.family.p() * (1.0 - 1e-9);
    }
    return 1.0 - 1e-9;
}

std::string problem_tag(const RadiusProblem& prob) {
    std::string tag = "thm" + std::to_string(variant_code(prob.variant));
    if (prob.family.kind() == FamilyKind::OpeningAngle) {
        tag += " alpha=" + fmt(prob.family.alpha());
    } else {
        tag += " p=" + fmt(prob.family.p());
    }
    tag += " N=" + std::to_string(prob.N) + " m0=" + prob.m0.to_string();
    if (prob.variant == RadiusVariant::AngleSchwarz) {
        tag += " m1=" + prob.m1.to_string() + " m2=" + prob.m2.to_string() +
               " h=" + prob.h.to_string();
    }
    return tag;
}

}  // namespace

void CertificationConfig::validate() const {
    if (samples < 1) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    if (theta_grid < 8) {
        throw std::invalid_argument("theta grid must have at least 8 angles");
    }
    if (radius_grid < 2) {
        throw std::invalid_argument("radius grid must have at least 2 probes");
    }
    if (tolerance < 0.0) {
        throw std::invalid_argument("tolerance must be nonnegative");
    }
    if (series_order < 8) {
        throw std::invalid_argument("series order must be at least 8");
    }
}

void VerificationReport::record(const std::string& check, const std::string& params, double margin,
                                double limit) {
    ++checks_run;
    worst_margin = std::max(worst_margin, margin - limit);
    auto [it, inserted] = worst_by_check.try_emplace(check, margin);
    if (!inserted) {
        it->second = std::max(it->second, margin);
    }
    if (margin > limit) {
        violations.push_back(Violation{check, params, margin, limit});
    }
}

void VerificationReport::merge(const VerificationReport& other) {
    checks_run += other.checks_run;
    worst_margin = std::max(worst_margin, other.worst_margin);
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    for (const auto& [check, margin] : other.worst_by_check) {
        auto [it, inserted] = worst_by_check.try_emplace(check, margin);
        if (!inserted) {
            it->second = std::max(it->second, margin);
        }
    }
}

double check_tail_domination(double alpha, const SchwarzFunction& w, int N, double r,
                             const CertificationConfig& cfg) {
    if (!(r >= 0.0 && r <= 1.0 / 3.0 + 1e-15)) {
        throw std::invalid_argument("tail domination is claimed for r <= 1/3 only");
    }
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    const int order = cfg.series_order;
    const TruncatedSeries f = family_series(ConcaveFamily::opening_angle(alpha), order);
    const TruncatedSeries g = compose(f, w.to_series(order));
    const double s = 0.5 * (1.0 + r);
    const double lhs = abs_tail_sum(g, N, r, s, f_alpha_eval(alpha, s));
    // the majorant side is truncated at the same order (conservative direction)
    double rhs = 0.0;
    double r_pow = std::pow(r, N);
    for (int n = N; n <= order; ++n) {
        rhs += std::abs(f[n]) * r_pow;
        r_pow *= r;
    }
    return lhs - rhs;
}

double check_angle_rogosinski(double alpha, const SchwarzFunction& w0, const SchwarzFunction& w,
                              int N, double r, const CertificationConfig& cfg) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::invalid_argument("radius must lie in [0, 1)");
    }
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    const int order = cfg.series_order;
    const TruncatedSeries f = family_series(ConcaveFamily::opening_angle(alpha), order);
    const TruncatedSeries g = compose(f, w.to_series(order));
    const double s = 0.5 * (1.0 + r);
    const double tail = abs_tail_sum(g, N, r, s, f_alpha_eval(alpha, s));
    double eval_max = 0.0;
    for (int j = 0; j < cfg.theta_grid; ++j) {
        const Complex zeta = w0.eval(theta_point(r, j, cfg.theta_grid));
        const double t = std::abs(zeta);
        const double s0 = 0.5 * (1.0 + t);
        const double v =
            std::abs(eval(g, zeta)) + cauchy_tail(f_alpha_eval(alpha, s0), s0, t, order);
        eval_max = std::max(eval_max, v);
    }
    return eval_max + tail - 0.5 / alpha;
}

double check_angle_schwarz(double alpha, const SchwarzFunction& w0, const SchwarzFunction& w1,
                           const SchwarzFunction& w2, const VanishingOrderSpec& h, int N, double r,
                           const CertificationConfig& cfg) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::invalid_argument("radius must lie in [0, 1)");
    }
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    const int order = cfg.series_order;
    const TruncatedSeries f = family_series(ConcaveFamily::opening_angle(alpha), order);
    const TruncatedSeries fp = derivative(f);
    int end = 0;
    const double sum_term =
        h_sum_head(alpha, N, h, r, order, &end) + h_sum_tail_bound(alpha, h, r, end);
    double eval_max = 0.0;
    for (int j = 0; j < cfg.theta_grid; ++j) {
        const Complex z = theta_point(r, j, cfg.theta_grid);
        const Complex zeta0 = w0.eval(z);
        const double t0 = std::abs(zeta0);
        const double s0 = 0.5 * (1.0 + t0);
        double v = std::abs(eval(f, zeta0)) + cauchy_tail(f_alpha_eval(alpha, s0), s0, t0, order);
        const double t2 = std::abs(w2.eval(z));
        if (t2 > 0.0) {
            const Complex zeta1 = w1.eval(z);
            const double t1 = std::abs(zeta1);
            const double s1 = 0.5 * (1.0 + t1);
            v += (std::abs(eval(fp, zeta1)) +
                  cauchy_tail(derivative_bound(alpha, s1), s1, t1, order - 1)) *
                 t2;
        }
        eval_max = std::max(eval_max, v);
    }
    return eval_max + sum_term - 0.5 / alpha;
}

double check_pole_rogosinski(double p, const SchwarzFunction& w0, const SchwarzFunction& w, int N,
                             double r, const CertificationConfig& cfg) {
    if (!(r >= 0.0 && r < p)) {
        throw std::invalid_argument("radius must lie in [0, p)");
    }
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    const int order = cfg.series_order;
    const TruncatedSeries k = family_series(ConcaveFamily::pole(p), order);
    const TruncatedSeries g = compose(k, w.to_series(order));
    const double s = 0.5 * (r + p);
    const double tail = abs_tail_sum(g, N, r, s, k_p_eval(p, s));
    double eval_max = 0.0;
    for (int j = 0; j < cfg.theta_grid; ++j) {
        const Complex zeta = w0.eval(theta_point(r, j, cfg.theta_grid));
        const double t = std::abs(zeta);
        const double s0 = 0.5 * (t + p);
        const double v = std::abs(eval(g, zeta)) + cauchy_tail(k_p_eval(p, s0), s0, t, order);
        eval_max = std::max(eval_max, v);
    }
    return eval_max + tail - p / ((1.0 + p) * (1.0 + p));
}

double check_pole_coeff_bound(double p, const SchwarzFunction& w, int n_max,
                              const CertificationConfig& cfg) {
    if (n_max < 1 || n_max > cfg.series_order) {
        throw std::invalid_argument("coefficient range must lie within the series order");
    }
    const TruncatedSeries k = family_series(ConcaveFamily::pole(p), cfg.series_order);
    const TruncatedSeries g = compose(k, w.to_series(cfg.series_order));
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        worst = std::max(worst, std::abs(g[n]) / coeff_c(p, n));
    }
    return worst;
}

SharpnessScan sharpness_scan(const RadiusProblem& prob, double epsilon,
                             const CertificationConfig& cfg) {
    prob.validate();
    if (epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be nonnegative");
    }
    const RadiusResult res = find_radius(prob, 1e-12);
    const double lo = res.root - epsilon;
    const double hi = res.root + epsilon;
    if (lo < 0.0 || hi >= domain_cap(prob)) {
        throw std::invalid_argument("epsilon leaves the evaluation domain");
    }
    const auto margin = [&](double r) {
        switch (prob.variant) {
            case RadiusVariant::AngleRogosinski:
                return check_angle_rogosinski(prob.family.alpha(), extremal_input(prob.m0),
                                              SchwarzFunction::monomial(1), prob.N, r, cfg);
            case RadiusVariant::AngleSchwarz:
                return check_angle_schwarz(prob.family.alpha(), extremal_input(prob.m0),
                                           extremal_input(prob.m1), extremal_input(prob.m2),
                                           prob.h, prob.N, r, cfg);
            case RadiusVariant::PoleRogosinski:
                return check_pole_rogosinski(prob.family.p(), extremal_input(prob.m0),
                                             SchwarzFunction::monomial(1), prob.N, r, cfg);
        }
        throw std::logic_error("unreachable");
    };
    return SharpnessScan{margin(lo), margin(hi)};
}

const std::vector<RadiusProblem>& standard_problem_set() {
    static const std::vector<RadiusProblem> problems = [] {
        const SchwarzOrder inf = SchwarzOrder::inf();
        const VanishingOrderSpec id = VanishingOrderSpec::identity();
        const VanishingOrderSpec odd = VanishingOrderSpec::affine(2, 1);
        std::vector<RadiusProblem> set;
        const auto angle = [&](double a, RadiusVariant v, int N, SchwarzOrder m0, SchwarzOrder m1,
                               SchwarzOrder m2, VanishingOrderSpec h) {
            set.push_back(RadiusProblem{ConcaveFamily::opening_angle(a), v, N, m0, m1, m2, h});
        };
        const auto pole = [&](double p, int N, SchwarzOrder m0) {
            set.push_back(RadiusProblem{ConcaveFamily::pole(p), RadiusVariant::PoleRogosinski, N,
                                        m0, 1, 1, id});
        };
        angle(1.0, RadiusVariant::AngleRogosinski, 1, inf, 1, 1, id);
        angle(2.0, RadiusVariant::AngleRogosinski, 1, inf, 1, 1, id);
        angle(1.5, RadiusVariant::AngleRogosinski, 2, 1, 1, 1, id);
        angle(2.0, RadiusVariant::AngleRogosinski, 2, 3, 1, 1, id);
        angle(1.0, RadiusVariant::AngleSchwarz, 1, 1, 1, 1, id);
        angle(1.5, RadiusVariant::AngleSchwarz, 2, 2, 1, 2, id);
        angle(2.0, RadiusVariant::AngleSchwarz, 1, inf, 2, inf, odd);
        angle(1.5, RadiusVariant::AngleSchwarz, 1, 1, inf, 2, odd);
        angle(1.0, RadiusVariant::AngleSchwarz, 2, inf, inf, inf, id);
        pole(0.5, 1, inf);
        pole(0.25, 2, 1);
        pole(0.75, 1, 2);
        return set;
    }();
    return problems;
}

VerificationReport run_tail_domination_block(const CertificationConfig& cfg, int num_samples) {
    static const double alphas[] = {1.0, 1.5, 2.0};
    static const int ns[] = {1, 2, 3};
    static const double radii[] = {0.1, 0.2, 1.0 / 3.0};
    struct Row {
        std::string params;
        double margin;
        double b1_excess;
    };
    std::vector<Row> rows(static_cast<std::size_t>(num_samples));
    parallel_for(num_samples, resolve_threads(cfg), [&](int i) {
        const int combo = i % 27;
        const double alpha = alphas[combo / 9];
        const int n_start = ns[(combo / 3) % 3];
        const double r = radii[combo % 3];
        const std::uint64_t s = derive_seed(cfg.seed, 1, static_cast<std::uint64_t>(i));
        const int m = 1 + static_cast<int>(splitmix64(s) % 3);
        const int factors = static_cast<int>(splitmix64(s + 1) % 4);
        const SchwarzFunction w = SchwarzFunction::sample(m, factors, splitmix64(s + 2));
        const double margin = check_tail_domination(alpha, w, n_start, r, cfg);
        // |g'(0)| <= |f'(0)| = 1; the first composed coefficient only needs a
        // short series
        const TruncatedSeries f8 = family_series(ConcaveFamily::opening_angle(alpha), 8);
        const TruncatedSeries g8 = compose(f8, w.to_series(8));
        rows[static_cast<std::size_t>(i)] =
            Row{"alpha=" + fmt(alpha) + " N=" + std::to_string(n_start) + " r=" + fmt(r) +
                    " m=" + std::to_string(m) + " sample=" + std::to_string(i),
                margin, std::abs(g8[1]) - 1.0};
    });
    VerificationReport report;
    for (const Row& row : rows) {
        report.record("tail_domination", row.params, row.margin, cfg.tolerance);
        report.record("subordination_b1", row.params, row.b1_excess, 1e-12);
    }
    return report;
}

VerificationReport run_pole_coeff_block(const CertificationConfig& cfg, int num_samples) {
    static const double ps[] = {0.3, 0.5, 0.7};
    std::vector<std::pair<std::string, double>> rows(static_cast<std::size_t>(num_samples));
    parallel_for(num_samples, resolve_threads(cfg), [&](int i) {
        const double p = ps[i % 3];
        const std::uint64_t s = derive_seed(cfg.seed, 2, static_cast<std::uint64_t>(i));
        const int m = 1 + static_cast<int>(splitmix64(s) % 3);
        const int factors = static_cast<int>(splitmix64(s + 1) % 4);
        const SchwarzFunction w = SchwarzFunction::sample(m, factors, splitmix64(s + 2));
        const double ratio = check_pole_coeff_bound(p, w, 30, cfg);
        rows[static_cast<std::size_t>(i)] = {
            "p=" + fmt(p) + " m=" + std::to_string(m) + " sample=" + std::to_string(i), ratio};
    });
    VerificationReport report;
    for (const auto& [params, ratio] : rows) {
        report.record("pole_coeff_bound", params, ratio, 1.0 + cfg.tolerance);
    }
    return report;
}

VerificationReport run_inequality_block(const CertificationConfig& cfg, int samples_per_problem,
                                        double radius_scale) {
    const std::vector<RadiusProblem>& problems = standard_problem_set();
    const int count = static_cast<int>(problems.size()) * samples_per_problem;
    std::vector<double> radii(problems.size());
    for (std::size_t k = 0; k < problems.size(); ++k) {
        radii[k] = std::min(find_radius(problems[k], 1e-12).reported_radius * radius_scale,
                            domain_cap(problems[k]));
    }
    struct Row {
        std::string check;
        std::string params;
        double margin;
    };
    std::vector<Row> rows(static_cast<std::size_t>(count));
    parallel_for(count, resolve_threads(cfg), [&](int t) {
        const std::size_t k = static_cast<std::size_t>(t) / samples_per_problem;
        const int j = t % samples_per_problem;
        const RadiusProblem& prob = problems[k];
        const double r = radii[k];
        const std::uint64_t s = derive_seed(cfg.seed, 3, static_cast<std::uint64_t>(t));
        const bool extremal = j == 0;  // row 0 probes the equality case
        std::string check;
        double margin = 0.0;
        switch (prob.variant) {
            case RadiusVariant::AngleRogosinski: {
                check = "angle_rogosinski";
                const SchwarzFunction w0 =
                    extremal ? extremal_input(prob.m0) : random_input(prob.m0, s);
                const SchwarzFunction w =
                    extremal ? SchwarzFunction::monomial(1)
                             : random_input(1 + static_cast<int>(splitmix64(s + 7) % 3), s + 11);
                margin = check_angle_rogosinski(prob.family.alpha(), w0, w, prob.N, r, cfg);
                break;
            }
            case RadiusVariant::AngleSchwarz: {
                check = "angle_schwarz";
                const SchwarzFunction w0 =
                    extremal ? extremal_input(prob.m0) : random_input(prob.m0, s);
                const SchwarzFunction w1 =
                    extremal ? extremal_input(prob.m1) : random_input(prob.m1, s + 13);
                const SchwarzFunction w2 =
                    extremal ? extremal_input(prob.m2) : random_input(prob.m2, s + 17);
                margin = check_angle_schwarz(prob.family.alpha(), w0, w1, w2, prob.h, prob.N, r,
                                             cfg);
                break;
            }
            case RadiusVariant::PoleRogosinski: {
                check = "pole_rogosinski";
                const SchwarzFunction w0 =
                    extremal ? extremal_input(prob.m0) : random_input(prob.m0, s);
                const SchwarzFunction w =
                    extremal ? SchwarzFunction::monomial(1)
                             : random_input(1 + static_cast<int>(splitmix64(s + 7) % 3), s + 11);
                margin = check_pole_rogosinski(prob.family.p(), w0, w, prob.N, r, cfg);
                break;
            }
        }
        rows[static_cast<std::size_t>(t)] =
            Row{check,
                problem_tag(prob) + " r=" + fmt(r) + " sample=" + std::to_string(j) +
                    (extremal ? " extremal" : ""),
                margin};
    });
    VerificationReport report;
    for (const Row& row : rows) {
        report.record(row.check, row.params, row.margin, cfg.tolerance);
    }
    return report;
}

VerificationReport run_sharpness_block(const CertificationConfig& cfg, double epsilon) {
    VerificationReport report;
    for (const RadiusProblem& prob : standard_problem_set()) {
        const SharpnessScan scan = sharpness_scan(prob, epsilon, cfg);
        const std::string tag = problem_tag(prob) + " eps=" + fmt(epsilon);
        report.record("sharpness_below", tag, scan.below, -1e-9);
        report.record("sharpness_above", tag, -scan.above, -1e-9);
    }
    return report;
}

VerificationReport run_monotonicity_block(const CertificationConfig& cfg) {
    VerificationReport report;
    for (const RadiusProblem& prob : standard_problem_set()) {
        const double r_top = find_radius(prob, 1e-12).reported_radius;
        const auto lhs = [&](double r) {
            switch (prob.variant) {
                case RadiusVariant::AngleRogosinski:
                    return check_angle_rogosinski(prob.family.alpha(), extremal_input(prob.m0),
                                                  SchwarzFunction::monomial(1), prob.N, r, cfg);
                case RadiusVariant::AngleSchwarz:
                    return check_angle_schwarz(prob.family.alpha(), extremal_input(prob.m0),
                                               extremal_input(prob.m1), extremal_input(prob.m2),
                                               prob.h, prob.N, r, cfg);
                case RadiusVariant::PoleRogosinski:
                    return check_pole_rogosinski(prob.family.p(), extremal_input(prob.m0),
                                                 SchwarzFunction::monomial(1), prob.N, r, cfg);
            }
            throw std::logic_error("unreachable");
        };
        double prev = lhs(0.0);
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 1; i < cfg.radius_grid; ++i) {
            const double r = r_top * i / (cfg.radius_grid - 1);
            const double curr = lhs(r);
            worst = std::max(worst, prev - curr);
            prev = curr;
        }
        report.record("radial_monotonicity", problem_tag(prob), worst, 1e-12);
    }
    return report;
}

VerificationReport run_default_suite(const CertificationConfig& cfg, double radius_scale) {
    cfg.validate();
    VerificationReport report;
    report.merge(run_tail_domination_block(cfg, cfg.samples));
    report.merge(run_pole_coeff_block(cfg, std::max(1, cfg.samples * 2 / 5)));
    report.merge(run_inequality_block(cfg, std::max(1, cfg.samples / 5), radius_scale));
    report.merge(run_sharpness_block(cfg, 1e-6));
    report.merge(run_monotonicity_block(cfg));
    return report;
}

}  // namespace bohrlab
