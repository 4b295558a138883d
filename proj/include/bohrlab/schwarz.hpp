#pragma once

#include <cstdint>

#include "bohrlab/truncated_series.hpp"

namespace bohrlab {

// Structured self-map of the unit disk vanishing to order m at the origin:
//
//   w(z) = damping * z^m * prod_k (mu_k - z) / (1 - conj(mu_k) z)
//
// with |mu_k| <= 0.9 and damping in [0, 1]. Every Blaschke factor maps the
// disk into itself, so |w(z)| <= |z|^m; keeping the factor points away from
// the unit circle makes w analytic past the closed disk and its Taylor
// coefficients decay geometrically.
struct SchwarzFunction {
    int vanishing_order = 1;
    std::vector<Complex> factors;
    double damping = 1.0;
    std::uint64_t seed = 0;

    // deterministic pseudo-random member of the order-m class; the damping is
    // drawn from [0.1, 1.0) and factor points from the annulus 0.05 <= |mu| <= 0.9
    static SchwarzFunction sample(int m, int num_factors, std::uint64_t seed);

    // w(z) = z^m, the extremal choice in every sharpness argument
    static SchwarzFunction monomial(int m);

    // w == 0, the pointwise limit of z^m as m grows
    static SchwarzFunction zero();

    bool is_zero() const { return damping == 0.0; }

    // evaluation from the factored form (no truncation error)
    Complex eval(Complex z) const;

    // Taylor expansion through the given order; the first vanishing_order
    // coefficients are exact zeros
    TruncatedSeries to_series(int order) const;
};

}  // namespace bohrlab
