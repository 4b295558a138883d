#pragma once

#include <complex>
#include <vector>

namespace bohrlab {

using Complex = std::complex<double>;

// Taylor polynomial c[0] + c[1] z + ... + c[T] z^T standing in for a power
// series truncated at order T. Arithmetic truncates to the smaller operand
// order, so a result never claims more coefficients than its inputs carried.
class TruncatedSeries {
  public:
    static constexpr int kDefaultOrder = 256;

    // zero series of the given order
    explicit TruncatedSeries(int order);
    // takes ownership; order = coeffs.size() - 1, all entries must be finite
    explicit TruncatedSeries(std::vector<Complex> coeffs);

    static TruncatedSeries constant(Complex value, int order = kDefaultOrder);
    static TruncatedSeries identity(int order = kDefaultOrder);  // z
    static TruncatedSeries monomial(int degree, int order = kDefaultOrder);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    // coefficient of z^n; zero beyond the truncation order
    Complex coeff(int n) const;
    Complex& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }
    const Complex& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

    // index of the first nonzero coefficient; order()+1 for the zero series
    int valuation() const;

    // copy truncated (or zero-extended) to the given order
    TruncatedSeries truncated(int order) const;

  private:
    std::vector<Complex> coeffs_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(Complex scale, const TruncatedSeries& s);

// Taylor coefficients of outer(inner(z)) through the common truncation order.
// inner must have zero constant term.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// s^alpha for real alpha, via the coefficient recurrence obtained from
// (s^alpha)' * s = alpha * s' * s^alpha. s must have constant term exactly 1.
TruncatedSeries real_pow(const TruncatedSeries& s, double alpha);

// termwise derivative; drops the truncation order by one
TruncatedSeries derivative(const TruncatedSeries& s);

// Horner evaluation of the degree-T partial sum
Complex eval(const TruncatedSeries& s, Complex z);

}  // namespace bohrlab
