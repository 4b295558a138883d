#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bohrlab/acceptance.hpp"
#include "bohrlab/families.hpp"
#include "bohrlab/schwarz.hpp"

using namespace bohrlab;

TEST_CASE("coeff_a closed forms at the endpoints") {
    for (int n = 1; n <= 40; ++n) {
        CHECK(coeff_a(1.0, n) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(coeff_a(2.0, n) == doctest::Approx(static_cast<double>(n)).epsilon(1e-14));
    }
    CHECK(coeff_a(1.37, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(coeff_a(0.9, 3), std::invalid_argument);
    CHECK_THROWS_AS(coeff_a(2.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(coeff_a(1.5, 0), std::invalid_argument);
}

TEST_CASE("coeff_a matches the binomial-convolution oracle") {
    for (const double alpha : {1.0, 1.25, 1.5, 1.75, 2.0}) {
        for (int n = 1; n <= 60; ++n) {
            const double oracle = coeff_a_binomial_oracle(alpha, n);
            CHECK(std::fabs(coeff_a(alpha, n) - oracle) <= 1e-12 * oracle);
        }
    }
}

TEST_CASE("coeff_a is positive and nondecreasing in alpha") {
    const double alphas[] = {1.0, 1.2, 1.45, 1.7, 2.0};
    for (std::size_t i = 0; i + 1 < 5; ++i) {
        const auto low = coeff_a_table(alphas[i], 60);
        const auto high = coeff_a_table(alphas[i + 1], 60);
        for (int n = 1; n <= 60; ++n) {
            CHECK(low[static_cast<std::size_t>(n)] > 0.0);
            CHECK(low[static_cast<std::size_t>(n)] <=
                  high[static_cast<std::size_t>(n)] * (1.0 + 1e-14));
        }
    }
}

TEST_CASE("f_alpha closed form") {
    CHECK(f_alpha_eval(1.3, 0.0) == 0.0);
    CHECK(f_alpha_eval(1.0, 1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-15));
    const double x = 3.0 - 2.0 * std::sqrt(2.0);
    CHECK(f_alpha_eval(2.0, x) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(f_alpha_eval(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("f_alpha_tail") {
    CHECK(f_alpha_tail(1.4, 0.3, 1) == doctest::Approx(f_alpha_eval(1.4, 0.3)).epsilon(1e-15));
    CHECK(f_alpha_tail(1.0, 1.0 / 3.0, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(f_alpha_tail(1.8, 0.0, 9) == 0.0);
}

TEST_CASE("tail plus head reproduces the closed form") {
    for (const double alpha : {1.0, 1.5, 2.0}) {
        for (const double x : {0.05, 0.3, 0.6, 0.95}) {
            for (const int n_start : {1, 2, 7, 30}) {
                double head = 0.0;
                for (int n = 1; n < n_start; ++n) {
                    head += coeff_a(alpha, n) * std::pow(x, n);
                }
                const double whole = f_alpha_tail(alpha, x, n_start) + head;
                CHECK(whole ==
                      doctest::Approx(f_alpha_eval(alpha, x)).epsilon(1e-13));
            }
        }
    }
    for (const double p : {0.3, 0.6}) {
        for (const double x : {0.1 * p, 0.5 * p, 0.97 * p}) {
            for (const int n_start : {1, 2, 9}) {
                double head = 0.0;
                for (int n = 1; n < n_start; ++n) {
                    head += coeff_c(p, n) * std::pow(x, n);
                }
                const double whole = k_p_tail(p, x, n_start) + head;
                CHECK(whole == doctest::Approx(k_p_eval(p, x)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("coeff_c closed form") {
    for (const double p : {0.2, 0.5, 0.8}) {
        CHECK(coeff_c(p, 1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(coeff_c(p, 2) == doctest::Approx((1.0 + p * p) / p).epsilon(1e-15));
    }
    CHECK(coeff_c(0.5, 3) == doctest::Approx(5.25).epsilon(1e-15));
    CHECK_THROWS_AS(coeff_c(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(coeff_c(1.0, 1), std::invalid_argument);
}

TEST_CASE("pole coefficients satisfy the defining identity") {
    for (const double p : {0.25, 0.5, 0.75}) {
        for (int n = 1; n <= 40; ++n) {
            const double lhs =
                coeff_c(p, n) * std::pow(p, n - 1) * (1.0 - p * p) + std::pow(p, 2 * n);
            CHECK(lhs == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("k_p closed form") {
    CHECK(k_p_eval(0.7, 0.0) == 0.0);
    CHECK(k_p_eval(0.5, 0.25) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    CHECK_THROWS_AS(k_p_eval(0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(k_p_eval(0.5, 0.7), std::invalid_argument);

    // 60-term partial sum vs the closed form at x = p/2
    const double p = 0.62;
    double partial = 0.0;
    for (int n = 1; n <= 60; ++n) {
        partial += coeff_c(p, n) * std::pow(p / 2.0, n);
    }
    CHECK(std::fabs(partial - k_p_eval(p, p / 2.0)) <= 1e-10);
}

TEST_CASE("k_p_tail") {
    CHECK(k_p_tail(0.5, 0.2, 1) == doctest::Approx(k_p_eval(0.5, 0.2)).epsilon(1e-15));
    CHECK(k_p_tail(0.5, 0.25, 2) == doctest::Approx(4.0 / 7.0 - 0.25).epsilon(1e-14));
    CHECK(k_p_tail(0.4, 0.0, 5) == 0.0);
}

TEST_CASE("distortion term") {
    CHECK(distortion_term(1.6, 0.4, SchwarzOrder(2), SchwarzOrder::inf()) == 0.0);
    CHECK(distortion_term(1.0, 0.5, SchwarzOrder(1), SchwarzOrder(1)) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(distortion_term(2.0, 0.0, SchwarzOrder(3), SchwarzOrder(2)) == 0.0);
    // m1 = inf freezes the distortion factor at 1
    CHECK(distortion_term(1.5, 0.3, SchwarzOrder::inf(), SchwarzOrder(2)) ==
          doctest::Approx(0.09).epsilon(1e-15));
}

TEST_CASE("extremal distances") {
    CHECK(extremal_distance(ConcaveFamily::opening_angle(1.0)) == doctest::Approx(0.5));
    CHECK(extremal_distance(ConcaveFamily::opening_angle(2.0)) == doctest::Approx(0.25));
    CHECK(extremal_distance(ConcaveFamily::pole(0.5)) == doctest::Approx(2.0 / 9.0));
    const ExtremalData data = extremal_data(ConcaveFamily::pole(0.5));
    CHECK(data.normalization == 1.0);
    CHECK(data.dist_to_boundary == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(ConcaveFamily::opening_angle(0.99), std::invalid_argument);
    CHECK_THROWS_AS(ConcaveFamily::pole(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ConcaveFamily::pole(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ConcaveFamily::opening_angle(1.5).p(), std::logic_error);
}

TEST_CASE("schwarz order parsing") {
    CHECK(SchwarzOrder::parse("3").value() == 3);
    CHECK(SchwarzOrder::parse("inf").is_inf());
    CHECK_THROWS_AS(SchwarzOrder::parse("0"), std::invalid_argument);
    CHECK_THROWS_AS(SchwarzOrder::parse("2x"), std::invalid_argument);
    CHECK(pow_order(0.5, SchwarzOrder(3)) == doctest::Approx(0.125));
    CHECK(pow_order(0.5, SchwarzOrder::inf()) == 0.0);
}

TEST_CASE("growth bound for subordinates of f_alpha") {
    for (const double alpha : {1.0, 1.5, 2.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            const SchwarzFunction w = SchwarzFunction::sample(1, trial % 4, 7000 + trial);
            for (const double x : {-0.3, -0.12, 0.07, 0.2, 0.3}) {
                const Complex g = f_alpha_eval(alpha, w.eval(Complex(x)));
                CHECK(std::abs(g) <= f_alpha_eval(alpha, std::fabs(x)) + 1e-9);
            }
        }
    }
}
