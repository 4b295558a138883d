#include "bohrlab/radius.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>

namespace bohrlab {

namespace {

constexpr double kAngleEndOffset = 1e-9;
constexpr double kPoleEndOffset = 1e-12;
constexpr int kEnclosureCutoffStart = 256;
constexpr int kEnclosureCutoffMax = 1 << 16;

}  // namespace

VanishingOrderSpec VanishingOrderSpec::identity() {
    return VanishingOrderSpec(Mode::Identity, 1, 0);
}

VanishingOrderSpec VanishingOrderSpec::affine(int beta, int gamma) {
    if (beta < 1 || gamma < 0) {
        throw std::invalid_argument("affine schedule needs beta >= 1 and gamma >= 0");
    }
    return VanishingOrderSpec(Mode::Affine, beta, gamma);
}

VanishingOrderSpec VanishingOrderSpec::table(int first_n, std::vector<int> values, int beta,
                                             int gamma) {
    if (first_n < 1) {
        throw std::invalid_argument("table must start at index 1 or later");
    }
    if (values.empty()) {
        throw std::invalid_argument("table must not be empty");
    }
    if (beta < 1 || gamma < 0) {
        throw std::invalid_argument("table certificate needs beta >= 1 and gamma >= 0");
    }
    int prev = 0;
    for (const int v : values) {
        if (v < 1 || v < prev) {
            throw std::invalid_argument("table values must be positive and nondecreasing");
        }
        prev = v;
    }
    VanishingOrderSpec spec(Mode::Table, beta, gamma);
    spec.table_first_ = first_n;
    spec.table_ = std::move(values);
    return spec;
}

VanishingOrderSpec VanishingOrderSpec::parse(const std::string& text) {
    if (text == "n") {
        return identity();
    }
    // a*n+b (the "*" is optional)
    std::size_t pos = 0;
    auto read_int = [&](int& out) {
        std::size_t used = 0;
        try {
            out = std::stoi(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad vanishing-order spec: " + text);
        }
        pos += used;
    };
    int a = 0;
    read_int(a);
    if (pos < text.size() && text[pos] == '*') {
        ++pos;
    }
    if (pos >= text.size() || text[pos] != 'n') {
        throw std::invalid_argument("bad vanishing-order spec: " + text);
    }
    ++pos;
    int b = 0;
    if (pos < text.size()) {
        if (text[pos] != '+') {
            throw std::invalid_argument("bad vanishing-order spec: " + text);
        }
        ++pos;
        const std::string rest = text.substr(pos);
        std::size_t used = 0;
        try {
            b = std::stoi(rest, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad vanishing-order spec: " + text);
        }
        if (used != rest.size()) {
            throw std::invalid_argument("bad vanishing-order spec: " + text);
        }
        pos = text.size();
    }
    if (pos != text.size()) {
        throw std::invalid_argument("bad vanishing-order spec: " + text);
    }
    if (a == 1 && b == 0) {
        return identity();
    }
    return affine(a, b);
}

bool VanishingOrderSpec::is_identity() const {
    return mode_ == Mode::Identity;
}

int VanishingOrderSpec::exact_range_end() const {
    if (mode_ == Mode::Table) {
        return table_first_ + static_cast<int>(table_.size()) - 1;
    }
    return INT_MAX;
}

int VanishingOrderSpec::first_index() const {
    return mode_ == Mode::Table ? table_first_ : 1;
}

long long VanishingOrderSpec::h(int n) const {
    switch (mode_) {
        case Mode::Identity:
            return n;
        case Mode::Affine:
            return static_cast<long long>(beta_) * n + gamma_;
        case Mode::Table:
            if (n < table_first_ || n > exact_range_end()) {
                throw std::out_of_range("vanishing order is not tabulated at this index");
            }
            return table_[static_cast<std::size_t>(n - table_first_)];
    }
    throw std::logic_error("unreachable");
}

std::string VanishingOrderSpec::to_string() const {
    switch (mode_) {
        case Mode::Identity:
            return "n";
        case Mode::Affine:
            return std::to_string(beta_) + "*n+" + std::to_string(gamma_);
        case Mode::Table:
            return "table[" + std::to_string(table_first_) + ".." +
                   std::to_string(exact_range_end()) + "]";
    }
    return {};
}

int variant_code(RadiusVariant v) {
    switch (v) {
        case RadiusVariant::AngleRogosinski:
            return 1;
        case RadiusVariant::AngleSchwarz:
            return 2;
        case RadiusVariant::PoleRogosinski:
            return 4;
    }
    throw std::logic_error("unreachable");
}

RadiusVariant variant_from_code(int code) {
    switch (code) {
        case 1:
            return RadiusVariant::AngleRogosinski;
        case 2:
            return RadiusVariant::AngleSchwarz;
        case 4:
            return RadiusVariant::PoleRogosinski;
        default:
            throw std::invalid_argument("theorem selector must be 1, 2, or 4");
    }
}

void RadiusProblem::validate() const {
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    const bool pole = family.kind() == FamilyKind::Pole;
    if (variant == RadiusVariant::PoleRogosinski && !pole) {
        throw std::invalid_argument("the pole variant requires a pole family");
    }
    if (variant != RadiusVariant::PoleRogosinski && pole) {
        throw std::invalid_argument("opening-angle variants require an opening-angle family");
    }
    if (variant == RadiusVariant::AngleSchwarz && h.first_index() > N) {
        throw std::invalid_argument("vanishing-order table must start at or before N");
    }
}

double eval_f(double alpha, int N, SchwarzOrder m0, double x) {
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::invalid_argument("evaluation point must lie in [0, 1)");
    }
    double value = f_alpha_tail(alpha, x, N) - 0.5 / alpha;
    if (!m0.is_inf()) {
        value += f_alpha_eval(alpha, pow_order(x, m0));
    }
    return value;
}

double h_sum_head(double alpha, int N, const VanishingOrderSpec& h, double x, int cutoff,
                  int* end_out) {
    const int end = std::min(cutoff, h.exact_range_end());
    if (end_out != nullptr) {
        *end_out = end;
    }
    if (end < N) {
        return 0.0;
    }
    const std::vector<double> a = coeff_a_table(alpha, end);
    double sum = 0.0;
    for (int n = N; n <= end; ++n) {
        sum += a[static_cast<std::size_t>(n)] * std::pow(x, static_cast<double>(h.h(n)));
    }
    return sum;
}

double h_sum_tail_bound(double alpha, const VanishingOrderSpec& h, double x, int end) {
    if (x == 0.0) {
        return 0.0;
    }
    const double base = std::pow(x, static_cast<double>(h.beta()));
    if (base == 0.0) {
        return 0.0;
    }
    return std::pow(x, static_cast<double>(h.gamma())) * f_alpha_tail(alpha, base, end + 1);
}

Interval eval_k(double alpha, int N, SchwarzOrder m0, SchwarzOrder m1, SchwarzOrder m2,
                const VanishingOrderSpec& h, double x, int cutoff, double max_width) {
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::invalid_argument("evaluation point must lie in [0, 1)");
    }
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    double base = distortion_term(alpha, x, m1, m2) - 0.5 / alpha;
    if (!m0.is_inf()) {
        base += f_alpha_eval(alpha, pow_order(x, m0));
    }
    if (h.is_identity()) {
        const double exact = base + f_alpha_tail(alpha, x, N);
        return Interval{exact, exact};
    }
    int end = 0;
    const double head = h_sum_head(alpha, N, h, x, cutoff, &end);
    const double tail = h_sum_tail_bound(alpha, h, x, end);
    const Interval out{base + head, base + head + tail};
    if (out.width() > max_width) {
        throw EnclosureTooWideError("h-sum enclosure width " + std::to_string(out.width()) +
                                    " exceeds the configured bound");
    }
    return out;
}

double eval_g(double p, int N, SchwarzOrder m0, double x) {
    if (!(x >= 0.0 && x < p)) {
        throw std::invalid_argument("evaluation point must lie in [0, p)");
    }
    double value = k_p_tail(p, x, N) - p / ((1.0 + p) * (1.0 + p));
    if (!m0.is_inf()) {
        value += k_p_eval(p, pow_order(x, m0));
    }
    return value;
}

namespace {

// interval-valued evaluator bound to a problem; `tight` asks for an enclosure
// narrow enough to locate the root, endpoint sign checks pass false
using IntervalEvaluator = std::function<Interval(double x, bool tight)>;

IntervalEvaluator make_evaluator(const RadiusProblem& prob, double tol) {
    switch (prob.variant) {
        case RadiusVariant::AngleRogosinski: {
            const double alpha = prob.family.alpha();
            return [alpha, N = prob.N, m0 = prob.m0](double x, bool) {
                const double v = eval_f(alpha, N, m0, x);
                return Interval{v, v};
            };
        }
        case RadiusVariant::PoleRogosinski: {
            const double p = prob.family.p();
            return [p, N = prob.N, m0 = prob.m0](double x, bool) {
                const double v = eval_g(p, N, m0, x);
                return Interval{v, v};
            };
        }
        case RadiusVariant::AngleSchwarz: {
            const double alpha = prob.family.alpha();
            const double half_width_limit = tol / 10.0;
            return [alpha, prob, half_width_limit](double x, bool tight) {
                Interval iv{};
                for (int cutoff = kEnclosureCutoffStart;; cutoff *= 2) {
                    iv = eval_k(alpha, prob.N, prob.m0, prob.m1, prob.m2, prob.h, x, cutoff);
                    if (!tight && (iv.lo > 0.0 || iv.hi < 0.0)) {
                        return iv;  // sign certified, width irrelevant
                    }
                    if (0.5 * iv.width() < half_width_limit) {
                        return iv;
                    }
                    if (cutoff >= kEnclosureCutoffMax ||
                        cutoff >= prob.h.exact_range_end()) {
                        throw EnclosureTooWideError(
                            "cannot certify the h-sum at x = " + std::to_string(x) +
                            "; enclosure width " + std::to_string(iv.width()));
                    }
                }
            };
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

RadiusResult find_radius(const RadiusProblem& prob, double tol) {
    prob.validate();
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    const bool pole = prob.family.kind() == FamilyKind::Pole;
    const double x_max =
        pole ? prob.family.p() * (1.0 - kPoleEndOffset) : 1.0 - kAngleEndOffset;
    const IntervalEvaluator evaluate = make_evaluator(prob, tol);

    if (evaluate(0.0, false).hi >= 0.0) {
        throw NoSignChangeError("evaluator is not negative at 0");
    }
    if (evaluate(x_max, false).lo <= 0.0) {
        throw NoSignChangeError("evaluator is not positive near the domain end");
    }

    double lo = 0.0;
    double hi = x_max;
    double f_lo = evaluate(0.0, true).mid();
    double f_hi = 0.0;  // filled on first tight evaluation of hi
    bool have_f_hi = false;
    int iterations = 0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double value = evaluate(mid, true).mid();
        ++iterations;
        if (value > 0.0) {
            hi = mid;
            f_hi = value;
            have_f_hi = true;
        } else {
            lo = mid;
            f_lo = value;
        }
    }
    if (!have_f_hi) {
        f_hi = evaluate(hi, true).mid();
    }

    // secant polish inside the bracket; bisection already certifies the root,
    // this only trims the residual
    double root = 0.5 * (lo + hi);
    double best = std::fabs(evaluate(root, true).mid());
    double a = lo, b = hi, fa = f_lo, fb = f_hi;
    for (int step = 0; step < 3 && fb != fa; ++step) {
        const double candidate = b - fb * (b - a) / (fb - fa);
        if (!(candidate > lo && candidate < hi)) {
            break;
        }
        const double fc = evaluate(candidate, true).mid();
        if (std::fabs(fc) < best) {
            best = std::fabs(fc);
            root = candidate;
        }
        if ((fc > 0.0) == (fb > 0.0)) {
            b = candidate;
            fb = fc;
        } else {
            a = candidate;
            fa = fc;
        }
        if (fc == 0.0) {
            break;
        }
    }

    RadiusResult result;
    result.root = root;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    result.residual = best;
    result.iterations = iterations;
    if (prob.variant == RadiusVariant::AngleRogosinski) {
        // cap at 1/3 only when the whole bracket certifies the overshoot, so
        // a root equal to 1/3 up to roundoff stays uncapped
        result.capped = lo > 1.0 / 3.0;
        result.reported_radius = std::min(root, 1.0 / 3.0);
    } else {
        result.capped = false;
        result.reported_radius = root;
    }
    return result;
}

std::optional<double> closed_form_radius(const RadiusProblem& prob) {
    if (prob.N != 1 || !prob.m0.is_inf()) {
        return std::nullopt;
    }
    if (prob.variant == RadiusVariant::AngleRogosinski) {
        const double q = std::pow(2.0, 1.0 / prob.family.alpha());
        return (q - 1.0) / (q + 1.0);
    }
    if (prob.variant == RadiusVariant::PoleRogosinski) {
        // smaller root of p r^2 - 2 (p^2 + p + 1) r + p = 0; the two roots
        // multiply to 1, so the stable form divides out the larger one
        const double p = prob.family.p();
        const double c1 = p * p + p + 1.0;
        return p / (c1 + std::sqrt(c1 * c1 - p * p));
    }
    return std::nullopt;
}

double classical_br_radius(int N) {
    if (N < 1) {
        throw std::invalid_argument("N must be a positive integer");
    }
    const auto value = [N](double r) {
        return 2.0 * (1.0 + r) * std::pow(r, N) - (1.0 - r) * (1.0 - r);
    };
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace bohrlab
