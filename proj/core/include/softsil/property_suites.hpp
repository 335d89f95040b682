#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace softsil {

struct SuiteCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // worst case found, or the failing input
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCheck> checks;
    double seconds = 0.0;

    bool passed() const;
    std::size_t failures() const;
};

/// Commutativity, associativity, monotonicity and the neutral element on
/// `triples` random triples (tolerance 1e-9) for every T-conorm family and
/// parameter grid; `average` is required to break associativity. Also the
/// max lower bound, absorbing 1, the Hamacher coincidences and a continuity probe.
SuiteReport run_tconorm_axiom_suite(std::uint64_t seed, int triples = 10000);

/// CDF monotonicity, limits at +-1e6, symmetry, reversal, squares, pdf against
/// central differences, and Gamma(p=1) against Exponential, over every family
/// and variant.
SuiteReport run_distribution_suite();

/// erf, erfc and the regularized lower incomplete gamma against long-double
/// reference expansions, plus gamma(1/2, x) / Gamma(1/2) = erf(sqrt(x)).
SuiteReport run_special_function_suite();

/// finite_difference_check on a fixed random 32x32 scene for every benchmark
/// distribution (with and without squares) under probabilistic, einstein and yager(p=2).
SuiteReport run_gradient_suite(std::uint64_t seed);

/// All of the above in order.
std::vector<SuiteReport> run_selftest(std::uint64_t seed);

}  // namespace softsil
