#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bohrlab/verify.hpp"

namespace bohrlab {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    double worst;        // worst observed error/margin for the criterion
    std::string detail;  // first failure, or a short summary when passing
};

struct AcceptanceOptions {
    std::uint64_t seed = 42;
    // test hook: replaces the recurrence-backed coefficient path checked
    // against the binomial-convolution oracle (negative control)
    std::function<double(double alpha, int n)> coeff_a_override;
};

// Runs the full battery of self-checks, one result per criterion:
//   1 closed-form radii, opening-angle family
//   2 closed-form radii, pole family
//   3 classical Bohr-Rogosinski radius
//   4 coefficient recurrence vs binomial-convolution oracle
//   5 sharpness crossings at the computed radii
//   6 tail-domination property suite
//   7 pole coefficient-bound suite
//   8 inequality suite at 90% of each radius
//   9 monotonicity grids for the three radius functions
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);

// A_n by expanding (1+z)^alpha and (1-z)^{-alpha} with generalized binomial
// coefficients and convolving; independent of the recurrence path
double coeff_a_binomial_oracle(double alpha, int n);

}  // namespace bohrlab
