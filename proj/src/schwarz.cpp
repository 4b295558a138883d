#include "bohrlab/schwarz.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bohrlab {

namespace {

// uniform in [0,1) from the top 53 bits; avoids std::uniform_real_distribution,
// whose output is implementation-defined and would break seed reproducibility
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// series of a single factor (mu - z)/(1 - conj(mu) z):
//   mu + sum_{j>=1} conj(mu)^{j-1} (|mu|^2 - 1) z^j
TruncatedSeries factor_series(Complex mu, int order) {
    TruncatedSeries f(order);
    f[0] = mu;
    const Complex step = std::conj(mu);
    const double scale = std::norm(mu) - 1.0;
    Complex power(1.0);
    for (int j = 1; j <= order; ++j) {
        f[j] = power * scale;
        power *= step;
    }
    return f;
}

}  // namespace

SchwarzFunction SchwarzFunction::sample(int m, int num_factors, std::uint64_t seed) {
    if (m < 1) {
        throw std::invalid_argument("vanishing order must be at least 1");
    }
    if (num_factors < 0) {
        throw std::invalid_argument("number of factors must be nonnegative");
    }
    std::mt19937_64 rng(seed);
    SchwarzFunction w;
    w.vanishing_order = m;
    w.seed = seed;
    w.damping = 0.1 + 0.9 * uniform01(rng);
    w.factors.reserve(static_cast<std::size_t>(num_factors));
    for (int k = 0; k < num_factors; ++k) {
        const double radius = 0.05 + 0.85 * uniform01(rng);
        const double angle = 2.0 * std::numbers::pi * uniform01(rng);
        w.factors.push_back(Complex(radius * std::cos(angle), radius * std::sin(angle)));
    }
    return w;
}

SchwarzFunction SchwarzFunction::monomial(int m) {
    if (m < 1) {
        throw std::invalid_argument("vanishing order must be at least 1");
    }
    SchwarzFunction w;
    w.vanishing_order = m;
    w.damping = 1.0;
    return w;
}

SchwarzFunction SchwarzFunction::zero() {
    SchwarzFunction w;
    w.vanishing_order = 1;
    w.damping = 0.0;
    return w;
}

Complex SchwarzFunction::eval(Complex z) const {
    if (is_zero()) {
        return Complex(0.0);
    }
    Complex value = damping * std::pow(z, vanishing_order);
    for (const Complex& mu : factors) {
        value *= (mu - z) / (1.0 - std::conj(mu) * z);
    }
    return value;
}

TruncatedSeries SchwarzFunction::to_series(int order) const {
    TruncatedSeries out(order);
    if (is_zero() || vanishing_order > order) {
        return out;
    }
    TruncatedSeries acc = TruncatedSeries::constant(Complex(damping), order);
    for (const Complex& mu : factors) {
        acc = acc * factor_series(mu, order);
    }
    // shift by z^m: leading coefficients stay exact zeros
    for (int n = 0; n + vanishing_order <= order; ++n) {
        out[n + vanishing_order] = acc[n];
    }
    return out;
}

}  // namespace bohrlab
