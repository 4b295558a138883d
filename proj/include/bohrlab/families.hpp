#pragma once

#include <string>
#include <vector>

#include "bohrlab/truncated_series.hpp"

namespace bohrlab {

// Vanishing order m of a Schwarz-function slot. Infinity is a first-class
// value: the corresponding term is replaced by its pointwise limit
// (x^inf = 0 on [0,1)), which is how the corollary-style radii arise.
class SchwarzOrder {
  public:
    SchwarzOrder(int m);  // NOLINT(google-explicit-constructor) - orders convert freely
    static SchwarzOrder inf();
    static SchwarzOrder parse(const std::string& text);  // integer or "inf"

    bool is_inf() const { return infinite_; }
    int value() const;
    std::string to_string() const;

    friend bool operator==(const SchwarzOrder& a, const SchwarzOrder& b) = default;

  private:
    SchwarzOrder() : value_(0), infinite_(true) {}
    int value_;
    bool infinite_;
};

// x^m with the infinite-order limit x^inf = 0, for 0 <= x < 1
double pow_order(double x, SchwarzOrder m);

enum class FamilyKind { OpeningAngle, Pole };

// Parameter record for the two families: concave univalent maps with opening
// angle pi*alpha at infinity (alpha in [1,2]) and concave univalent maps with
// a simple pole at p in (0,1).
class ConcaveFamily {
  public:
    static ConcaveFamily opening_angle(double alpha);
    static ConcaveFamily pole(double p);

    FamilyKind kind() const { return kind_; }
    double alpha() const;
    double p() const;

    friend bool operator==(const ConcaveFamily& a, const ConcaveFamily& b) = default;

  private:
    ConcaveFamily(FamilyKind kind, double param) : kind_(kind), param_(param) {}
    FamilyKind kind_;
    double param_;
};

// Distance from the extremal function's origin value to its image boundary,
// with the normalization |f'(0)| = 1 that every radius equation divides out.
struct ExtremalData {
    ConcaveFamily family;
    double dist_to_boundary;
    double normalization;
};

// Taylor coefficient A_n of the opening-angle extremal function
//   f_alpha(z) = (1/(2 alpha)) (((1+z)/(1-z))^alpha - 1),
// computed from the three-term recurrence
//   (n+1) c_{n+1} = 2 alpha c_n + (n-1) c_{n-1},  c_0 = 1, c_1 = 2 alpha,
// which follows from (1 - z^2) g' = 2 alpha g for g = ((1+z)/(1-z))^alpha.
double coeff_a(double alpha, int n);

// A_0..A_n_max in one recurrence pass (A_0 = 0)
std::vector<double> coeff_a_table(double alpha, int n_max);

// closed-form f_alpha; the real overload requires |x| < 1
double f_alpha_eval(double alpha, double x);
Complex f_alpha_eval(double alpha, Complex z);

// exact tail sum_{n>=N} A_n x^n for 0 <= x < 1
double f_alpha_tail(double alpha, double x, int N);

// Taylor coefficient c_n(p) = (1 - p^{2n}) / ((1 - p^2) p^{n-1}) of the pole
// extremal function k_p(z) = p z / ((p - z)(1 - p z))
double coeff_c(double p, int n);

// closed-form k_p; the real overload requires 0 <= x < p
double k_p_eval(double p, double x);
Complex k_p_eval(double p, Complex z);

// exact tail sum_{n>=N} c_n(p) x^n for 0 <= x < p
double k_p_tail(double p, double x, int N);

// x^{m2} (1 + x^{m1})^{alpha-1} / (1 - x^{m1})^{alpha+1}; zero when m2 = inf,
// and x^{m1} = 0 when m1 = inf
double distortion_term(double alpha, double x, SchwarzOrder m1, SchwarzOrder m2);

// 1/(2 alpha) for the opening-angle family, p/(1+p)^2 for the pole family
double extremal_distance(const ConcaveFamily& family);

ExtremalData extremal_data(const ConcaveFamily& family);

// extremal function as a truncated series (f_alpha or k_p)
TruncatedSeries family_series(const ConcaveFamily& family, int order);

}  // namespace bohrlab
