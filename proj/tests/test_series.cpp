#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bohrlab/families.hpp"
#include "bohrlab/schwarz.hpp"
#include "bohrlab/truncated_series.hpp"

using namespace bohrlab;

namespace {

TruncatedSeries from_reals(std::vector<double> values) {
    std::vector<Complex> coeffs(values.begin(), values.end());
    return TruncatedSeries(std::move(coeffs));
}

// 1/(1-z) truncated
TruncatedSeries geometric(int order) {
    TruncatedSeries s(order);
    for (int n = 0; n <= order; ++n) {
        s[n] = Complex(1.0);
    }
    return s;
}

}  // namespace

TEST_CASE("addition and subtraction") {
    const TruncatedSeries a = from_reals({1.0, 1.0});
    const TruncatedSeries b = from_reals({1.0, -1.0});
    const TruncatedSeries sum = a + b;
    CHECK(sum.coeff(0) == Complex(2.0));
    CHECK(sum.coeff(1) == Complex(0.0));

    const TruncatedSeries zero(1);
    const TruncatedSeries same = a + zero;
    CHECK(same.coeff(0) == a.coeff(0));
    CHECK(same.coeff(1) == a.coeff(1));

    // order drops to the smaller operand
    CHECK((TruncatedSeries(7) + TruncatedSeries(3)).order() == 3);
}

TEST_CASE("extremal series of neighbouring families add coefficientwise") {
    const TruncatedSeries f1 = family_series(ConcaveFamily::opening_angle(1.0), 8);
    const TruncatedSeries f2 = family_series(ConcaveFamily::opening_angle(2.0), 8);
    const TruncatedSeries sum = f1 + f2;
    CHECK(sum.coeff(2).real() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("multiplication") {
    const TruncatedSeries a = from_reals({1.0, 1.0, 0.0});
    const TruncatedSeries b = from_reals({1.0, -1.0, 0.0});
    const TruncatedSeries prod = a * b;
    CHECK(prod.coeff(0) == Complex(1.0));
    CHECK(prod.coeff(1) == Complex(0.0));
    CHECK(prod.coeff(2) == Complex(-1.0));

    // (z/(1-z))^2 has coefficient n-1 at z^n
    TruncatedSeries g = geometric(64);
    g[0] = Complex(0.0);
    const TruncatedSeries sq = g * g;
    for (int n = 2; n <= 64; ++n) {
        CHECK(sq.coeff(n).real() == doctest::Approx(n - 1.0).epsilon(1e-15));
    }

    const TruncatedSeries one = TruncatedSeries::constant(Complex(1.0), 64);
    const TruncatedSeries same = sq * one;
    for (int n = 0; n <= 64; ++n) {
        CHECK(same.coeff(n) == sq.coeff(n));
    }
}

TEST_CASE("composition with the identity is exact") {
    const TruncatedSeries f = family_series(ConcaveFamily::opening_angle(1.7), 96);
    const TruncatedSeries composed = compose(f, TruncatedSeries::identity(96));
    REQUIRE(composed.order() == f.order());
    for (int n = 0; n <= f.order(); ++n) {
        CHECK(composed.coeff(n) == f.coeff(n));
    }
}

TEST_CASE("composition with z^2 doubles the exponents") {
    TruncatedSeries g = geometric(40);
    g[0] = Complex(0.0);  // z/(1-z)
    const TruncatedSeries composed = compose(g, TruncatedSeries::monomial(2, 40));
    for (int n = 1; n <= 40; ++n) {
        const double expected = n % 2 == 0 ? 1.0 : 0.0;
        CHECK(std::abs(composed.coeff(n) - Complex(expected)) < 1e-15);
    }
}

TEST_CASE("composition rejects a nonzero inner constant term") {
    const TruncatedSeries f = geometric(8);
    CHECK_THROWS_AS(compose(f, geometric(8)), std::invalid_argument);
}

TEST_CASE("composition against the closed-form oracle at a point") {
    const double alpha = 1.5;
    const TruncatedSeries f = family_series(ConcaveFamily::opening_angle(alpha), 256);
    const SchwarzFunction w = SchwarzFunction::sample(1, 2, 11);
    const TruncatedSeries g = compose(f, w.to_series(256));
    const Complex direct = f_alpha_eval(alpha, w.eval(Complex(0.2)));
    CHECK(std::abs(eval(g, Complex(0.2)) - direct) <= 1e-9);
}

TEST_CASE("composition oracle over 200 random pairs") {
    const double alphas[] = {1.0, 1.25, 1.5, 1.75, 2.0};
    const double points[] = {-0.3, -0.17, -0.05, 0.08, 0.21, 0.3};
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = alphas[trial % 5];
        const int m = 1 + trial % 3;
        const SchwarzFunction w = SchwarzFunction::sample(m, trial % 4, 1000 + trial);
        const TruncatedSeries f = family_series(ConcaveFamily::opening_angle(alpha), 256);
        const TruncatedSeries g = compose(f, w.to_series(256));
        for (const double x : points) {
            const Complex via_series = eval(g, Complex(x));
            const Complex direct = f_alpha_eval(alpha, w.eval(Complex(x)));
            CHECK(std::abs(via_series - direct) <= 1e-8);
        }
    }
}

TEST_CASE("real_pow basics") {
    const TruncatedSeries s = from_reals({1.0, 1.0, 0.0});
    const TruncatedSeries sq = real_pow(s, 2.0);
    CHECK(sq.coeff(0).real() == doctest::Approx(1.0));
    CHECK(sq.coeff(1).real() == doctest::Approx(2.0));
    CHECK(sq.coeff(2).real() == doctest::Approx(1.0));

    // (1+z)/(1-z) = 1 + 2 sum z^n
    TruncatedSeries ratio = geometric(48);
    for (int n = 1; n <= 48; ++n) {
        ratio[n] = Complex(2.0);
    }
    const TruncatedSeries first = real_pow(ratio, 1.0);
    for (int n = 1; n <= 48; ++n) {
        CHECK(first.coeff(n).real() == doctest::Approx(2.0).epsilon(1e-14));
    }
    const TruncatedSeries second = real_pow(ratio, 2.0);
    for (int n = 1; n <= 48; ++n) {
        CHECK(second.coeff(n).real() == doctest::Approx(4.0 * n).epsilon(1e-13));
    }
}

TEST_CASE("real_pow rejects constant term != 1") {
    CHECK_THROWS_AS(real_pow(from_reals({2.0, 1.0}), 1.5), std::invalid_argument);
}

TEST_CASE("real_pow inverse consistency") {
    TruncatedSeries ratio = geometric(64);
    for (int n = 1; n <= 64; ++n) {
        ratio[n] = Complex(2.0);
    }
    for (const double alpha : {1.0, 1.5, 2.0}) {
        const TruncatedSeries prod = real_pow(ratio, alpha) * real_pow(ratio, -alpha);
        CHECK(std::abs(prod.coeff(0) - Complex(1.0)) < 1e-10);
        for (int n = 1; n <= 64; ++n) {
            CHECK(std::abs(prod.coeff(n)) < 1e-10);
        }
    }
}

TEST_CASE("derivative") {
    const TruncatedSeries z2 = TruncatedSeries::monomial(2, 4);
    const TruncatedSeries d = derivative(z2);
    CHECK(d.order() == 3);
    CHECK(d.coeff(1) == Complex(2.0));

    // Koebe function z/(1-z)^2 has A_n = n, so the derivative coefficient at
    // z^{n-1} is n^2
    const TruncatedSeries koebe = family_series(ConcaveFamily::opening_angle(2.0), 32);
    const TruncatedSeries kd = derivative(koebe);
    for (int n = 1; n <= 32; ++n) {
        CHECK(kd.coeff(n - 1).real() == doctest::Approx(n * n).epsilon(1e-13));
    }

    const TruncatedSeries flat = derivative(TruncatedSeries::constant(Complex(3.0), 0));
    CHECK(flat.order() == 0);
    CHECK(flat.coeff(0) == Complex(0.0));
}

TEST_CASE("evaluation") {
    CHECK(eval(from_reals({1.0, 1.0}), Complex(0.5)).real() == doctest::Approx(1.5));
    const TruncatedSeries f1 = family_series(ConcaveFamily::opening_angle(1.0), 256);
    CHECK(std::abs(eval(f1, Complex(1.0 / 3.0)) - Complex(0.5)) <= 1e-15);
    CHECK(eval(f1, Complex(0.0)) == f1.coeff(0));
}

TEST_CASE("schwarz samples are deterministic and within the lemma bound") {
    const SchwarzFunction a = SchwarzFunction::sample(2, 3, 99);
    const SchwarzFunction b = SchwarzFunction::sample(2, 3, 99);
    REQUIRE(a.factors.size() == b.factors.size());
    CHECK(a.damping == b.damping);
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
        CHECK(a.factors[k] == b.factors[k]);
    }
    CHECK(std::abs(a.eval(Complex(0.5))) <= 0.25);

    const SchwarzFunction mono = SchwarzFunction::monomial(3);
    CHECK(mono.eval(Complex(0.5)) == Complex(0.125));
    const SchwarzFunction plain = SchwarzFunction::sample(3, 0, 7);
    CHECK(std::abs(plain.eval(Complex(0.5)) - plain.damping * Complex(0.125)) < 1e-16);
}

TEST_CASE("schwarz bound on circles of several radii") {
    for (int m = 1; m <= 3; ++m) {
        const SchwarzFunction w = SchwarzFunction::sample(m, m, 400 + m);
        for (int ri = 1; ri <= 9; ++ri) {
            const double r = 0.1 * ri;
            for (int j = 0; j < 64; ++j) {
                const double angle = 2.0 * 3.14159265358979324 * j / 64;
                const Complex z(r * std::cos(angle), r * std::sin(angle));
                CHECK(std::abs(w.eval(z)) <= std::pow(r, m) + 1e-12);
            }
        }
    }
}

TEST_CASE("schwarz series expansion") {
    const TruncatedSeries mono = SchwarzFunction::monomial(2).to_series(6);
    CHECK(mono.coeff(0) == Complex(0.0));
    CHECK(mono.coeff(1) == Complex(0.0));
    CHECK(mono.coeff(2) == Complex(1.0));
    CHECK(mono.coeff(3) == Complex(0.0));

    // single real factor: rho z^m (mu - z)/(1 - mu z) expanded by hand
    SchwarzFunction w;
    w.vanishing_order = 2;
    w.factors = {Complex(0.4)};
    w.damping = 0.8;
    const TruncatedSeries s = w.to_series(24);
    CHECK(s.coeff(0) == Complex(0.0));
    CHECK(s.coeff(1) == Complex(0.0));
    CHECK(std::abs(s.coeff(2) - Complex(0.8 * 0.4)) < 1e-15);
    for (int j = 1; j + 2 <= 24; ++j) {
        const double expected = 0.8 * std::pow(0.4, j - 1) * (0.4 * 0.4 - 1.0);
        CHECK(std::abs(s.coeff(j + 2) - Complex(expected)) < 1e-15);
    }

    // coefficients of a bounded-by-one function stay below one in modulus
    const SchwarzFunction sampled = SchwarzFunction::sample(1, 3, 2024);
    const TruncatedSeries ss = sampled.to_series(128);
    for (int n = 0; n <= 128; ++n) {
        CHECK(std::abs(ss.coeff(n)) <= 1.0 + 1e-12);
    }
    // and the expansion agrees with the factored form on a grid
    for (int j = 0; j < 16; ++j) {
        const double angle = 2.0 * 3.14159265358979324 * j / 16;
        const Complex z(0.3 * std::cos(angle), 0.3 * std::sin(angle));
        CHECK(std::abs(eval(ss, z) - sampled.eval(z)) < 1e-12);
    }

    const TruncatedSeries none = SchwarzFunction::zero().to_series(8);
    CHECK(none.valuation() == 9);
}

TEST_CASE("series constructor rejects non-finite coefficients") {
    std::vector<Complex> bad = {Complex(1.0), Complex(std::nan("")), Complex(0.0)};
    CHECK_THROWS_AS(TruncatedSeries(std::move(bad)), std::invalid_argument);
}
