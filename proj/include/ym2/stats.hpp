#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ym2 {

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;   // samples entering the estimate
    double tau = 0.5;    // integrated autocorrelation time
};

// Integrated autocorrelation time with the automatic window rule: the sum
// over lags is cut at the smallest W satisfying W >= 6 * tau_int(W).
// Never below the iid value 1/2.
double integrated_autocorrelation(const std::vector<double>& series);

// Binned jackknife mean and error of one series. Bins of bin_size samples
// absorb autocorrelation; tau is reported from the unbinned series.
McEstimate jackknife(const std::vector<double>& series, std::size_t bin_size);

// Jackknife error of f applied to the means of several equal-length series
// measured on the same sweeps (for composite statistics like a product of
// loop expectations minus the expectation of the product). Deleting one bin
// removes it from every series simultaneously, preserving cross-correlations.
McEstimate jackknife_functional(const std::vector<std::vector<double>>& series,
                                std::size_t bin_size,
                                const std::function<double(const std::vector<double>&)>& f);

} // namespace ym2
