#pragma once

// Statistical test battery for the Monte Carlo harness: Kolmogorov-Smirnov
// (one- and two-sample), chi-square, Anderson-Darling normality, a runs test
// for exchangeability, and binomial three-sigma gates.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace levelloop {

struct test_result {
    double statistic = 0.0;
    double p_value = 1.0;
    bool pass = false; // against the threshold the caller configured
};

// Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

// One-sample KS against a right-continuous reference CDF. The statistic is
// the sup over sample points of both one-sided gaps, which is conservative
// for discrete references. p-value uses the Stephens small-sample correction.
// Throws sample_too_small below 30 points.
test_result ks_test_cdf(std::vector<double> sample,
                        const std::function<double(double)>& cdf,
                        double p_threshold);

// Convenience references named by the report schema.
double exp1_cdf(double x);
// Geometric number of trials (support {scale, 2*scale, ...}),
// P[N <= n] = 1 - (1-p)^n.
std::function<double(double)> geometric_cdf(double p, double scale);

// Two-sample KS; ties are handled by advancing both samples through the tied
// value before reading the gap.
test_result ks_test_two_sample(std::vector<double> a, std::vector<double> b,
                               double p_threshold);

// Exact sup-distance between the scaled-geometric CDF (success p, step
// `scale`) and Exp(1). Used as the analytic oracle for how close a dyadic
// transition-time ladder can possibly sit to the exponential law.
double ks_distance_geometric_vs_exp1(double p, double scale);

// Chi-square goodness of fit: observed counts vs expected probabilities
// (expected renormalized over the kept cells). dof = cells - 1.
test_result chi_square_test(const std::vector<double>& observed_counts,
                            const std::vector<double>& expected_probs,
                            double p_threshold);

// Anderson-Darling normality with estimated mean and variance; pass/fail at
// the 1% level (adjusted statistic against critical value 1.092).
test_result anderson_darling_normality(std::vector<double> sample);

// Wald-Wolfowitz runs test (above/below the sample median), two-sided at the
// given significance; statistic is the normal z-score.
test_result runs_test(const std::vector<double>& sample, double significance);

// |phat - p| <= 3 sqrt(p(1-p)/n) gate used throughout the acceptance suite.
struct binomial_gate {
    double p_hat = 0.0;
    double p_expected = 0.0;
    double sigma = 0.0;
    bool pass = false;
};
binomial_gate binomial_three_sigma(std::size_t successes, std::size_t trials,
                                   double p_expected);

// Regularized incomplete gamma Q(a, x) (upper), exposed for tests.
double gamma_q(double a, double x);

double normal_cdf(double x);

// Sample helpers.
double mean_of(const std::vector<double>& xs);
double stderr_of_mean(const std::vector<double>& xs);

} // namespace levelloop
