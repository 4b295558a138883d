#include "bohrlab/truncated_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bohrlab {

namespace {

void require_finite(const std::vector<Complex>& coeffs) {
    for (const auto& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("series coefficient is not finite");
        }
    }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order) {
    if (order < 0) {
        throw std::invalid_argument("series order must be nonnegative");
    }
    coeffs_.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("series needs at least the constant term");
    }
    require_finite(coeffs_);
}

TruncatedSeries TruncatedSeries::constant(Complex value, int order) {
    TruncatedSeries s(order);
    s[0] = value;
    return s;
}

TruncatedSeries TruncatedSeries::identity(int order) {
    return monomial(1, order);
}

TruncatedSeries TruncatedSeries::monomial(int degree, int order) {
    if (degree < 0) {
        throw std::invalid_argument("monomial degree must be nonnegative");
    }
    TruncatedSeries s(order);
    if (degree <= order) {
        s[degree] = Complex(1.0);
    }
    return s;
}

Complex TruncatedSeries::coeff(int n) const {
    if (n < 0) {
        throw std::invalid_argument("coefficient index must be nonnegative");
    }
    if (n > order()) {
        return Complex(0.0);
    }
    return coeffs_[static_cast<std::size_t>(n)];
}

int TruncatedSeries::valuation() const {
    for (int n = 0; n <= order(); ++n) {
        if (coeffs_[static_cast<std::size_t>(n)] != Complex(0.0)) {
            return n;
        }
    }
    return order() + 1;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    TruncatedSeries out(order);
    const int top = std::min(order, this->order());
    for (int n = 0; n <= top; ++n) {
        out[n] = coeffs_[static_cast<std::size_t>(n)];
    }
    return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int t = std::min(a.order(), b.order());
    TruncatedSeries out(t);
    for (int n = 0; n <= t; ++n) {
        out[n] = a[n] + b[n];
    }
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int t = std::min(a.order(), b.order());
    TruncatedSeries out(t);
    for (int n = 0; n <= t; ++n) {
        out[n] = a[n] - b[n];
    }
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int t = std::min(a.order(), b.order());
    TruncatedSeries out(t);
    const int va = a.valuation();
    const int vb = b.valuation();
    if (va + vb > t) {
        return out;
    }
    // Cauchy product; leading exact zeros are skipped so that products of
    // high-valuation series (Schwarz expansions, accumulated inner powers)
    // cost only the populated range.
    for (int n = va + vb; n <= t; ++n) {
        Complex acc(0.0);
        for (int i = va; i <= n - vb; ++i) {
            acc += a[i] * b[n - i];
        }
        out[n] = acc;
    }
    return out;
}

TruncatedSeries operator*(Complex scale, const TruncatedSeries& s) {
    TruncatedSeries out(s.order());
    for (int n = 0; n <= s.order(); ++n) {
        out[n] = scale * s[n];
    }
    return out;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (inner.coeff(0) != Complex(0.0)) {
        throw std::invalid_argument("composition requires inner constant term zero");
    }
    const int t = std::min(outer.order(), inner.order());
    const TruncatedSeries in = inner.truncated(t);
    const int v = in.valuation();

    TruncatedSeries out(t);
    out[0] = outer[0];
    if (v > t) {
        return out;  // inner is identically zero: outer(0)
    }
    // accumulate outer[n] * inner^n; inner^n vanishes to order n*v, so the
    // loop stops once the power leaves the truncation window
    TruncatedSeries power = in;
    for (int n = 1; n <= outer.order() && n * v <= t; ++n) {
        if (n > 1) {
            power = power * in;
        }
        const Complex c = outer[n];
        if (c != Complex(0.0)) {
            for (int k = n * v; k <= t; ++k) {
                out[k] += c * power[k];
            }
        }
    }
    return out;
}

TruncatedSeries real_pow(const TruncatedSeries& s, double alpha) {
    if (s.coeff(0) != Complex(1.0)) {
        throw std::invalid_argument("real_pow requires constant term exactly 1");
    }
    const int t = s.order();
    TruncatedSeries u(t);
    u[0] = Complex(1.0);
    for (int n = 1; n <= t; ++n) {
        Complex acc(0.0);
        for (int k = 1; k <= n; ++k) {
            acc += ((alpha + 1.0) * k - n) * s[k] * u[n - k];
        }
        u[n] = acc / static_cast<double>(n);
    }
    return u;
}

TruncatedSeries derivative(const TruncatedSeries& s) {
    const int t = std::max(s.order() - 1, 0);
    TruncatedSeries out(t);
    for (int n = 0; n + 1 <= s.order(); ++n) {
        out[n] = static_cast<double>(n + 1) * s[n + 1];
    }
    return out;
}

Complex eval(const TruncatedSeries& s, Complex z) {
    Complex acc = s[s.order()];
    for (int n = s.order() - 1; n >= 0; --n) {
        acc = acc * z + s[n];
    }
    return acc;
}

}  // namespace bohrlab
