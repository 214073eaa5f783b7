#include "ym2/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ym2 {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::vector<double> bin_means(const std::vector<double>& series, std::size_t bin_size) {
    std::size_t nb = series.size() / bin_size;
    std::vector<double> bins(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < bin_size; ++i) s += series[b * bin_size + i];
        bins[b] = s / static_cast<double>(bin_size);
    }
    return bins;
}

} // namespace

double integrated_autocorrelation(const std::vector<double>& series) {
    std::size_t n = series.size();
    if (n < 2) return 0.5;
    double m = mean_of(series);
    double var = 0.0;
    for (double x : series) var += (x - m) * (x - m);
    var /= static_cast<double>(n);
    if (var <= 0.0) return 0.5;

    double tau = 0.5;
    // window capped so a near-nonstationary series cannot go quadratic
    std::size_t w_max = std::min<std::size_t>(n / 2, 10000);
    for (std::size_t w = 1; w <= w_max; ++w) {
        double cov = 0.0;
        for (std::size_t i = 0; i + w < n; ++i) cov += (series[i] - m) * (series[i + w] - m);
        cov /= static_cast<double>(n - w);
        tau += cov / var;
        if (static_cast<double>(w) >= 6.0 * tau) break;
    }
    return std::max(tau, 0.5);
}

McEstimate jackknife(const std::vector<double>& series, std::size_t bin_size) {
    if (bin_size < 1) throw std::domain_error("bin size must be at least 1");
    if (series.size() < 2 * bin_size)
        throw std::domain_error("series too short for the requested bin size");
    std::vector<double> bins = bin_means(series, bin_size);
    std::size_t nb = bins.size();
    double m = mean_of(bins);
    double ss = 0.0;
    for (double b : bins) ss += (b - m) * (b - m);
    McEstimate est;
    est.mean = m;
    est.stderr_ = std::sqrt(ss / (static_cast<double>(nb) * static_cast<double>(nb - 1)));
    est.n = nb * bin_size;
    est.tau = integrated_autocorrelation(series);
    return est;
}

McEstimate jackknife_functional(const std::vector<std::vector<double>>& series,
                                std::size_t bin_size,
                                const std::function<double(const std::vector<double>&)>& f) {
    if (series.empty()) throw std::domain_error("no series given");
    if (bin_size < 1) throw std::domain_error("bin size must be at least 1");
    std::size_t n = series[0].size();
    for (const auto& s : series)
        if (s.size() != n) throw std::domain_error("series lengths differ");
    if (n < 2 * bin_size) throw std::domain_error("series too short for the requested bin size");

    std::size_t k = series.size();
    std::vector<std::vector<double>> bins(k);
    for (std::size_t j = 0; j < k; ++j) bins[j] = bin_means(series[j], bin_size);
    std::size_t nb = bins[0].size();

    std::vector<double> full(k);
    for (std::size_t j = 0; j < k; ++j) full[j] = mean_of(bins[j]);
    double theta = f(full);

    // Leave-one-bin-out estimates, the bin removed from every series at once.
    std::vector<double> loo(nb);
    std::vector<double> means(k);
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t j = 0; j < k; ++j)
            means[j] = (full[j] * static_cast<double>(nb) - bins[j][b]) / static_cast<double>(nb - 1);
        loo[b] = f(means);
    }
    double loo_mean = mean_of(loo);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);

    McEstimate est;
    est.mean = theta;
    est.stderr_ = std::sqrt(ss * static_cast<double>(nb - 1) / static_cast<double>(nb));
    est.n = nb * bin_size;
    double tau = 0.5;
    for (const auto& s : series) tau = std::max(tau, integrated_autocorrelation(s));
    est.tau = tau;
    return est;
}

} // namespace ym2
