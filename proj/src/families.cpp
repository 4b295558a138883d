#include "bohrlab/families.hpp"

#include <cmath>
#include <stdexcept>

namespace bohrlab {

namespace {

void require_alpha(double alpha) {
    if (!(alpha >= 1.0 && alpha <= 2.0)) {
        throw std::invalid_argument("opening-angle parameter must lie in [1, 2]");
    }
}

void require_pole(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("pole location must lie in (0, 1)");
    }
}

// term of the pole series in the overflow-safe product form
//   c_n(p) x^n = [p (1 - p^{2n}) / (1 - p^2)] (x/p)^n
double pole_term(double p, double x, int n) {
    const double ratio = x / p;
    return p * (1.0 - std::pow(p, 2 * n)) / (1.0 - p * p) * std::pow(ratio, n);
}

}  // namespace

SchwarzOrder::SchwarzOrder(int m) : value_(m), infinite_(false) {
    if (m < 1) {
        throw std::invalid_argument("Schwarz order must be a positive integer");
    }
}

SchwarzOrder SchwarzOrder::inf() {
    return SchwarzOrder();
}

SchwarzOrder SchwarzOrder::parse(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") {
        return inf();
    }
    std::size_t used = 0;
    int m = 0;
    try {
        m = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("order must be a positive integer or 'inf'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("order must be a positive integer or 'inf'");
    }
    return SchwarzOrder(m);
}

int SchwarzOrder::value() const {
    if (infinite_) {
        throw std::logic_error("infinite Schwarz order has no integer value");
    }
    return value_;
}

std::string SchwarzOrder::to_string() const {
    return infinite_ ? "inf" : std::to_string(value_);
}

double pow_order(double x, SchwarzOrder m) {
    if (m.is_inf()) {
        return 0.0;
    }
    return std::pow(x, static_cast<double>(m.value()));
}

ConcaveFamily ConcaveFamily::opening_angle(double alpha) {
    require_alpha(alpha);
    return ConcaveFamily(FamilyKind::OpeningAngle, alpha);
}

ConcaveFamily ConcaveFamily::pole(double p) {
    require_pole(p);
    return ConcaveFamily(FamilyKind::Pole, p);
}

double ConcaveFamily::alpha() const {
    if (kind_ != FamilyKind::OpeningAngle) {
        throw std::logic_error("alpha is defined for the opening-angle family only");
    }
    return param_;
}

double ConcaveFamily::p() const {
    if (kind_ != FamilyKind::Pole) {
        throw std::logic_error("p is defined for the pole family only");
    }
    return param_;
}

double coeff_a(double alpha, int n) {
    require_alpha(alpha);
    if (n < 1) {
        throw std::invalid_argument("coefficient index must be at least 1");
    }
    double c_prev = 1.0;          // c_0
    double c_curr = 2.0 * alpha;  // c_1
    for (int k = 1; k < n; ++k) {
        const double c_next = (2.0 * alpha * c_curr + (k - 1.0) * c_prev) / (k + 1.0);
        c_prev = c_curr;
        c_curr = c_next;
    }
    return c_curr / (2.0 * alpha);
}

std::vector<double> coeff_a_table(double alpha, int n_max) {
    require_alpha(alpha);
    if (n_max < 1) {
        throw std::invalid_argument("coefficient range must reach at least 1");
    }
    std::vector<double> a(static_cast<std::size_t>(n_max) + 1, 0.0);
    double c_prev = 1.0;
    double c_curr = 2.0 * alpha;
    a[1] = 1.0;
    for (int k = 1; k < n_max; ++k) {
        const double c_next = (2.0 * alpha * c_curr + (k - 1.0) * c_prev) / (k + 1.0);
        c_prev = c_curr;
        c_curr = c_next;
        a[static_cast<std::size_t>(k) + 1] = c_curr / (2.0 * alpha);
    }
    return a;
}

double f_alpha_eval(double alpha, double x) {
    require_alpha(alpha);
    if (!(std::fabs(x) < 1.0)) {
        throw std::invalid_argument("f_alpha is defined for |x| < 1");
    }
    return (std::pow((1.0 + x) / (1.0 - x), alpha) - 1.0) / (2.0 * alpha);
}

Complex f_alpha_eval(double alpha, Complex z) {
    require_alpha(alpha);
    // (1+z)/(1-z) maps the disk onto the right half-plane, so the principal
    // power is the analytic branch
    return (std::pow((1.0 + z) / (1.0 - z), alpha) - 1.0) / (2.0 * alpha);
}

double f_alpha_tail(double alpha, double x, int N) {
    require_alpha(alpha);
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::invalid_argument("tail argument must lie in [0, 1)");
    }
    if (N < 1) {
        throw std::invalid_argument("tail start must be at least 1");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x <= 0.9) {
        // forward summation: positive terms with at most linear coefficient
        // growth, geometric decay, no cancellation
        double c_prev = 1.0;
        double c_curr = 2.0 * alpha;
        double x_pow = x;
        for (int k = 1; k < N; ++k) {
            const double c_next = (2.0 * alpha * c_curr + (k - 1.0) * c_prev) / (k + 1.0);
            c_prev = c_curr;
            c_curr = c_next;
            x_pow *= x;
        }
        double sum = 0.0;
        for (int n = N;; ++n) {
            const double term = c_curr / (2.0 * alpha) * x_pow;
            sum += term;
            if (term <= sum * 1e-18 || term == 0.0) {
                break;
            }
            const double c_next = (2.0 * alpha * c_curr + (n - 1.0) * c_prev) / (n + 1.0);
            c_prev = c_curr;
            c_curr = c_next;
            x_pow *= x;
        }
        return sum;
    }
    // near the singularity the closed form dominates the head, so the
    // difference route has no cancellation
    double head = 0.0;
    double c_prev = 1.0;
    double c_curr = 2.0 * alpha;
    double x_pow = x;
    for (int n = 1; n < N; ++n) {
        head += c_curr / (2.0 * alpha) * x_pow;
        const double c_next = (2.0 * alpha * c_curr + (n - 1.0) * c_prev) / (n + 1.0);
        c_prev = c_curr;
        c_curr = c_next;
        x_pow *= x;
    }
    return std::max(f_alpha_eval(alpha, x) - head, 0.0);
}

double coeff_c(double p, int n) {
    require_pole(p);
    if (n < 1) {
        throw std::invalid_argument("coefficient index must be at least 1");
    }
    return (1.0 - std::pow(p, 2 * n)) / ((1.0 - p * p) * std::pow(p, n - 1));
}

double k_p_eval(double p, double x) {
    require_pole(p);
    if (!(x >= 0.0 && x < p)) {
        throw std::invalid_argument("k_p is evaluated on [0, p)");
    }
    return p * x / ((p - x) * (1.0 - p * x));
}

Complex k_p_eval(double p, Complex z) {
    require_pole(p);
    return p * z / ((p - z) * (1.0 - p * z));
}

double k_p_tail(double p, double x, int N) {
    require_pole(p);
    if (!(x >= 0.0 && x < p)) {
        throw std::invalid_argument("tail argument must lie in [0, p)");
    }
    if (N < 1) {
        throw std::invalid_argument("tail start must be at least 1");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x <= 0.9 * p) {
        double sum = 0.0;
        for (int n = N;; ++n) {
            const double term = pole_term(p, x, n);
            sum += term;
            if (term <= sum * 1e-18 || term == 0.0) {
                break;
            }
        }
        return sum;
    }
    double head = 0.0;
    for (int n = 1; n < N; ++n) {
        head += pole_term(p, x, n);
    }
    return std::max(k_p_eval(p, x) - head, 0.0);
}

double distortion_term(double alpha, double x, SchwarzOrder m1, SchwarzOrder m2) {
    require_alpha(alpha);
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::invalid_argument("distortion argument must lie in [0, 1)");
    }
    if (m2.is_inf()) {
        return 0.0;
    }
    const double y = pow_order(x, m1);
    return pow_order(x, m2) * std::pow(1.0 + y, alpha - 1.0) / std::pow(1.0 - y, alpha + 1.0);
}

double extremal_distance(const ConcaveFamily& family) {
    if (family.kind() == FamilyKind::OpeningAngle) {
        return 1.0 / (2.0 * family.alpha());
    }
    const double p = family.p();
    return p / ((1.0 + p) * (1.0 + p));
}

ExtremalData extremal_data(const ConcaveFamily& family) {
    return ExtremalData{family, extremal_distance(family), 1.0};
}

TruncatedSeries family_series(const ConcaveFamily& family, int order) {
    TruncatedSeries s(order);
    if (family.kind() == FamilyKind::OpeningAngle) {
        const std::vector<double> a = coeff_a_table(family.alpha(), std::max(order, 1));
        for (int n = 1; n <= order; ++n) {
            s[n] = Complex(a[static_cast<std::size_t>(n)]);
        }
    } else {
        const double p = family.p();
        for (int n = 1; n <= order; ++n) {
            const double c = coeff_c(p, n);
            if (!std::isfinite(c)) {
                throw std::invalid_argument("pole series coefficient overflows at this order");
            }
            s[n] = Complex(c);
        }
    }
    return s;
}

}  // namespace bohrlab
