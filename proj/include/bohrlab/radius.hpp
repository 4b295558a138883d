#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "bohrlab/families.hpp"

namespace bohrlab {

// no sign change over the search interval: the evaluator is not negative at
// 0+ or not positive near the domain end, which indicates invalid parameters
struct NoSignChangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the certified enclosure of the h-sum cannot be narrowed enough at the
// requested point; the term cutoff (or the declared table) is too short
struct EnclosureTooWideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vanishing-order schedule h(n) for the coefficient-sum term, together with
// the affine certificate h(n) >= beta*n + gamma that makes the tail of
// sum_{n>=N} A_n x^{h(n)} boundable in closed form.
class VanishingOrderSpec {
  public:
    static VanishingOrderSpec identity();              // h(n) = n
    static VanishingOrderSpec affine(int beta, int gamma);  // h(n) = beta*n + gamma
    // explicit values h(first_n), h(first_n + 1), ...; beyond the table only
    // the affine lower bound is known
    static VanishingOrderSpec table(int first_n, std::vector<int> values, int beta, int gamma);
    // "n" or "a*n+b" with integer a >= 1, b >= 0 (the "*" may be omitted)
    static VanishingOrderSpec parse(const std::string& text);

    bool is_identity() const;
    int beta() const { return beta_; }
    int gamma() const { return gamma_; }

    // last index with an exactly known h value; INT_MAX when h is known everywhere
    int exact_range_end() const;
    int first_index() const;
    long long h(int n) const;

    std::string to_string() const;

    friend bool operator==(const VanishingOrderSpec& a, const VanishingOrderSpec& b) = default;

  private:
    enum class Mode { Identity, Affine, Table };
    VanishingOrderSpec(Mode mode, int beta, int gamma) : mode_(mode), beta_(beta), gamma_(gamma) {}
    Mode mode_;
    int beta_;
    int gamma_;
    int table_first_ = 1;
    std::vector<int> table_;
};

enum class RadiusVariant {
    AngleRogosinski,  // |g(w0(z))| + coefficient tail, opening-angle family
    AngleSchwarz,     // |f(w0)| + |f'(w1)||w2| + sum A_n |w*_n|, opening-angle family
    PoleRogosinski,   // |g(w0(z))| + coefficient tail, pole family
};

int variant_code(RadiusVariant v);                       // 1, 2, 4
RadiusVariant variant_from_code(int code);

struct RadiusProblem {
    ConcaveFamily family;
    RadiusVariant variant;
    int N = 1;
    SchwarzOrder m0 = SchwarzOrder(1);
    SchwarzOrder m1 = SchwarzOrder(1);  // AngleSchwarz only
    SchwarzOrder m2 = SchwarzOrder(1);  // AngleSchwarz only
    VanishingOrderSpec h = VanishingOrderSpec::identity();  // AngleSchwarz only

    void validate() const;
};

struct RadiusResult {
    double root = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool capped = false;    // AngleRogosinski only: root exceeded 1/3
    double reported_radius = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// F(x) = sum_{n>=N} A_n x^n + f_alpha(x^{m0}) - 1/(2 alpha), exact
double eval_f(double alpha, int N, SchwarzOrder m0, double x);

// K(x) = sum_{n>=N} A_n x^{h(n)} + f_alpha(x^{m0}) + distortion - 1/(2 alpha)
// as a certified enclosure: the h-sum is evaluated termwise up to `cutoff`
// (and never past the exactly known range of h) and the remainder is bounded
// above by x^gamma * sum_{n>head_end} A_n x^{beta n}. For the identity
// schedule the sum collapses to the exact tail and the enclosure is a point.
Interval eval_k(double alpha, int N, SchwarzOrder m0, SchwarzOrder m1, SchwarzOrder m2,
                const VanishingOrderSpec& h, double x, int cutoff = 256,
                double max_width = std::numeric_limits<double>::infinity());

// G(x) = sum_{n>=N} c_n(p) x^n + k_p(x^{m0}) - p/(1+p)^2, exact, 0 <= x < p
double eval_g(double p, int N, SchwarzOrder m0, double x);

// head sum_{n=N}^{end} A_n x^{h(n)} with end = min(cutoff, exact range of h);
// used by both the radius enclosure and the inequality harness
double h_sum_head(double alpha, int N, const VanishingOrderSpec& h, double x, int cutoff,
                  int* end_out = nullptr);

// certified upper bound for sum_{n>end} A_n x^{h(n)}
double h_sum_tail_bound(double alpha, const VanishingOrderSpec& h, double x, int end);

// Bisection on the certified-sign evaluator over [0, x_max], where x_max is
// 1 - 1e-9 for the opening-angle family and p (1 - 1e-12) for the pole family,
// followed by a bracket-bound secant polish. The bracket is authoritative:
// the returned root lies strictly inside it and the width is at most tol.
RadiusResult find_radius(const RadiusProblem& problem, double tol = 1e-12);

// closed forms from the N = 1, m0 = inf specializations:
//   opening angle: (2^{1/alpha} - 1) / (2^{1/alpha} + 1)
//   pole: smaller root of p r^2 - 2 (p^2 + p + 1) r + p = 0
std::optional<double> closed_form_radius(const RadiusProblem& problem);

// unique root in (0,1) of 2 (1+r) r^N - (1-r)^2 = 0
double classical_br_radius(int N);

}  // namespace bohrlab
