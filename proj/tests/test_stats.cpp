#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levelloop/errors.hpp"
#include "levelloop/rng.hpp"
#include "levelloop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace levelloop;

TEST_CASE("kolmogorov tail values") {
    // Classical table points of the Kolmogorov distribution.
    CHECK(kolmogorov_q(1.3581) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(kolmogorov_q(1.2238) == doctest::Approx(0.10).epsilon(0.01));
    CHECK(kolmogorov_q(1.6276) == doctest::Approx(0.01).epsilon(0.02));
    CHECK(kolmogorov_q(0.0) == 1.0);
}

TEST_CASE("gamma_q sanity against chi-square landmarks") {
    // Chi-square with 1 dof at 3.841 -> p ~ 0.05; 5 dof at 11.07 -> ~0.05.
    CHECK(gamma_q(0.5, 3.841 / 2.0) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(gamma_q(2.5, 11.07 / 2.0) == doctest::Approx(0.05).epsilon(0.01));
}

TEST_CASE("ks accepts its own reference and needs 30 points") {
    random_stream s(7, 100);
    std::vector<double> sample;
    for (int i = 0; i < 2000; ++i) sample.push_back(-std::log(1.0 - s.uniform()));
    const auto r = ks_test_cdf(sample, exp1_cdf, 0.001);
    CHECK(r.pass);

    std::vector<double> tiny(sample.begin(), sample.begin() + 10);
    CHECK_THROWS_AS(ks_test_cdf(tiny, exp1_cdf, 0.001), sample_too_small);
}

TEST_CASE("ks on exact reference quantiles is below 1/n") {
    const int n = 200;
    std::vector<double> sample;
    for (int i = 1; i <= n; ++i) {
        const double u = (i - 0.5) / n;
        sample.push_back(-std::log(1.0 - u));
    }
    const auto r = ks_test_cdf(sample, exp1_cdf, 0.001);
    CHECK(r.statistic < 1.0 / n + 1e-12);
}

TEST_CASE("ks p-values are roughly uniform under the null") {
    // Meta-test: p > 0.001 must hold in >= 99% of trials (it is designed to
    // fail 0.1% of the time).
    random_stream s(11, 3);
    int pass = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> sample;
        for (int i = 0; i < 120; ++i) sample.push_back(-std::log(1.0 - s.uniform()));
        pass += ks_test_cdf(sample, exp1_cdf, 0.001).pass;
    }
    CHECK(pass >= 198);
}

TEST_CASE("ks power: Exp(1) sample against Exp(2) reference") {
    random_stream s(13, 5);
    std::vector<double> sample;
    for (int i = 0; i < 1000; ++i) sample.push_back(-std::log(1.0 - s.uniform()));
    const auto r = ks_test_cdf(
        sample, [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-2.0 * x); }, 0.001);
    CHECK(r.p_value < 0.001);
    CHECK_FALSE(r.pass);
}

TEST_CASE("two-sample ks separates and accepts") {
    random_stream s(17, 9);
    std::vector<double> a, b, c;
    for (int i = 0; i < 1500; ++i) {
        a.push_back(s.gaussian());
        b.push_back(s.gaussian());
        c.push_back(s.gaussian() + 0.35);
    }
    CHECK(ks_test_two_sample(a, b, 0.001).pass);
    CHECK_FALSE(ks_test_two_sample(a, c, 0.001).pass);
}

TEST_CASE("geometric cdf and analytic distance to Exp(1)") {
    const auto cdf = geometric_cdf(0.5, 1.0);
    CHECK(cdf(0.5) == 0.0);
    CHECK(cdf(1.0) == doctest::Approx(0.5));
    CHECK(cdf(2.7) == doctest::Approx(0.75));

    // Dyadic ladder: success 2^-7 at step 2^-7 is close to Exp(1), and the
    // distance shrinks as the ladder refines.
    const double d6 = ks_distance_geometric_vs_exp1(std::pow(2.0, -7), std::pow(2.0, -7));
    const double d8 = ks_distance_geometric_vs_exp1(std::pow(2.0, -9), std::pow(2.0, -9));
    CHECK(d6 > 0.001);
    CHECK(d6 < 0.01);
    CHECK(d8 < d6);

    // Coarse ladder is visibly far from exponential.
    CHECK(ks_distance_geometric_vs_exp1(0.25, 0.25) > 0.05);
}

TEST_CASE("chi-square accepts matching counts and rejects skewed ones") {
    random_stream s(19, 21);
    std::vector<double> counts(6, 0.0);
    const std::vector<double> probs = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.03125};
    for (int i = 0; i < 4000; ++i) {
        double u = s.uniform();
        std::size_t cell = 0;
        double acc = probs[0];
        while (cell + 1 < probs.size() && u > acc) acc += probs[++cell];
        counts[cell] += 1.0;
    }
    CHECK(chi_square_test(counts, probs, 0.001).pass);

    std::vector<double> skewed = {400, 400, 400, 400, 400, 2000};
    CHECK_FALSE(chi_square_test(skewed, probs, 0.001).pass);
}

TEST_CASE("anderson-darling separates normal from exponential") {
    random_stream s(23, 2);
    std::vector<double> normal, expo;
    for (int i = 0; i < 1000; ++i) {
        normal.push_back(2.0 + 0.5 * s.gaussian());
        expo.push_back(-std::log(1.0 - s.uniform()));
    }
    CHECK(anderson_darling_normality(normal).pass);
    CHECK_FALSE(anderson_darling_normality(expo).pass);
}

TEST_CASE("runs test accepts iid and rejects a trend") {
    random_stream s(29, 4);
    std::vector<double> iid, trend;
    for (int i = 0; i < 400; ++i) {
        iid.push_back(s.gaussian());
        trend.push_back(0.01 * i + s.gaussian() * 0.1);
    }
    CHECK(runs_test(iid, 0.05).pass);
    CHECK_FALSE(runs_test(trend, 0.05).pass);
}

TEST_CASE("binomial three-sigma gate") {
    const auto g = binomial_three_sigma(5000, 10000, 0.5);
    CHECK(g.pass);
    const auto far = binomial_three_sigma(5300, 10000, 0.5);
    CHECK_FALSE(far.pass);
}
