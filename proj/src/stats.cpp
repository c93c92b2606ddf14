#include "levelloop/stats.hpp"

#include "levelloop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace levelloop {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Stephens' small-sample scaling for the one-sample statistic.
double ks_p_value_one_sample(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_q(d * (sn + 0.12 + 0.11 / sn));
}

} // namespace

double exp1_cdf(double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); }

std::function<double(double)> geometric_cdf(double p, double scale) {
    return [p, scale](double x) {
        if (x < scale) return 0.0;
        const double n = std::floor(x / scale + 1e-9);
        return 1.0 - std::pow(1.0 - p, n);
    };
}

test_result ks_test_cdf(std::vector<double> sample,
                        const std::function<double(double)>& cdf,
                        double p_threshold) {
    if (sample.size() < 30) throw sample_too_small("ks_test: need at least 30 points");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, (i + 1) / n - f);
        d = std::max(d, f - i / n);
    }
    test_result r;
    r.statistic = d;
    r.p_value = ks_p_value_one_sample(d, sample.size());
    r.pass = r.p_value > p_threshold;
    return r;
}

test_result ks_test_two_sample(std::vector<double> a, std::vector<double> b,
                               double p_threshold) {
    if (a.size() < 30 || b.size() < 30)
        throw sample_too_small("ks_test_two_sample: need at least 30 points per sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
    const double sn = std::sqrt(ne);
    test_result r;
    r.statistic = d;
    r.p_value = kolmogorov_q(d * (sn + 0.12 + 0.11 / sn));
    r.pass = r.p_value > p_threshold;
    return r;
}

double ks_distance_geometric_vs_exp1(double p, double scale) {
    // The geometric CDF is a step function jumping at k*scale; on each flat
    // piece the sup against the continuous exponential is attained at the
    // piece's endpoints.
    double d = 0.0;
    double survival = 1.0; // (1-p)^k
    for (int k = 0; k < 100000; ++k) {
        const double left = std::exp(-k * scale);        // Exp(1) survival at k*scale
        const double right = std::exp(-(k + 1) * scale); // ... at (k+1)*scale
        d = std::max(d, std::abs(survival - left));
        d = std::max(d, std::abs(survival - right));
        survival *= 1.0 - p;
        if (survival < 1e-12 && right < 1e-12) break;
    }
    return d;
}

namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return 1.0;
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

test_result chi_square_test(const std::vector<double>& observed_counts,
                            const std::vector<double>& expected_probs,
                            double p_threshold) {
    if (observed_counts.size() != expected_probs.size() || observed_counts.size() < 2)
        throw sample_too_small("chi_square_test: need >= 2 matching cells");
    double total = 0.0, ptotal = 0.0;
    for (double c : observed_counts) total += c;
    for (double p : expected_probs) ptotal += p;
    double stat = 0.0;
    for (std::size_t i = 0; i < observed_counts.size(); ++i) {
        const double expected = total * expected_probs[i] / ptotal;
        const double diff = observed_counts[i] - expected;
        stat += diff * diff / expected;
    }
    const double dof = static_cast<double>(observed_counts.size() - 1);
    test_result r;
    r.statistic = stat;
    r.p_value = gamma_q(dof / 2.0, stat / 2.0);
    r.pass = r.p_value > p_threshold;
    return r;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

test_result anderson_darling_normality(std::vector<double> sample) {
    const std::size_t n = sample.size();
    if (n < 20) throw sample_too_small("anderson_darling: need at least 20 points");
    std::sort(sample.begin(), sample.end());
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : sample) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n - 1);
    const double sd = std::sqrt(var);

    double a2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = normal_cdf((sample[i] - mean) / sd);
        const double zrev = normal_cdf((sample[n - 1 - i] - mean) / sd);
        const double lo = std::clamp(zi, 1e-12, 1.0 - 1e-12);
        const double hi = std::clamp(zrev, 1e-12, 1.0 - 1e-12);
        a2 += (2.0 * i + 1.0) * (std::log(lo) + std::log1p(-hi));
    }
    a2 = -static_cast<double>(n) - a2 / static_cast<double>(n);
    const double adjusted =
        a2 * (1.0 + 0.75 / static_cast<double>(n) + 2.25 / (static_cast<double>(n) * n));
    test_result r;
    r.statistic = adjusted;
    r.p_value = adjusted > 1.092 ? 0.005 : 0.5; // pass/fail at the 1% critical value
    r.pass = adjusted <= 1.092;
    return r;
}

test_result runs_test(const std::vector<double>& sample, double significance) {
    const std::size_t n = sample.size();
    if (n < 20) throw sample_too_small("runs_test: need at least 20 points");
    std::vector<double> sorted(sample);
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[(n - 1) / 2] + sorted[n / 2]);

    // Signs relative to the median; ties dropped.
    std::vector<int> signs;
    signs.reserve(n);
    for (double x : sample) {
        if (x > median)
            signs.push_back(1);
        else if (x < median)
            signs.push_back(-1);
    }
    std::size_t n1 = 0, n2 = 0, runs = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 1)
            ++n1;
        else
            ++n2;
        if (s != prev) ++runs;
        prev = s;
    }
    if (n1 == 0 || n2 == 0) throw sample_too_small("runs_test: degenerate sample");
    const double N1 = static_cast<double>(n1), N2 = static_cast<double>(n2);
    const double m = 2.0 * N1 * N2 / (N1 + N2) + 1.0;
    const double v = 2.0 * N1 * N2 * (2.0 * N1 * N2 - N1 - N2) /
                     ((N1 + N2) * (N1 + N2) * (N1 + N2 - 1.0));
    const double z = (static_cast<double>(runs) - m) / std::sqrt(v);
    test_result r;
    r.statistic = z;
    r.p_value = 2.0 * (1.0 - normal_cdf(std::abs(z)));
    r.pass = r.p_value > significance;
    return r;
}

binomial_gate binomial_three_sigma(std::size_t successes, std::size_t trials,
                                   double p_expected) {
    binomial_gate g;
    g.p_expected = p_expected;
    g.p_hat = trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
    g.sigma = trials == 0
                  ? std::numeric_limits<double>::infinity()
                  : std::sqrt(p_expected * (1.0 - p_expected) / static_cast<double>(trials));
    g.pass = std::abs(g.p_hat - p_expected) <= 3.0 * g.sigma;
    return g;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stderr_of_mean(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    v /= static_cast<double>(xs.size() - 1);
    return std::sqrt(v / static_cast<double>(xs.size()));
}

} // namespace levelloop
