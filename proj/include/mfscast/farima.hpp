#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfscast/dates.hpp"

namespace mfs {

struct TimeSeries {
    std::vector<double> values;
    Date start_day{0};
};

struct FarimaModel {
    std::vector<double> ar;  // phi_1..phi_p
    std::vector<double> ma;  // theta_1..theta_q
    double d = 0.0;
    double sigma2 = 1.0;
    int truncation = 100;  // K terms kept of the (1-B)^d expansion
    double mean = 0.0;     // removed before fitting, added back to forecasts
    bool d_clamped = false;
};

struct DEstimate {
    double d = 0.0;
    bool clamped = false;
};

struct ArmaFit {
    std::vector<double> ar;
    std::vector<double> ma;
    double sigma2 = 0.0;
};

// pi_0..pi_K of (1-B)^d via pi_k = pi_{k-1} (k-1-d)/k; enforces |d| < 0.5
std::vector<double> frac_diff_coeffs(double d, int K);
// same recursion without the |d| bound (integer-d checks in tests)
std::vector<double> frac_diff_coeffs_unchecked(double d, int K);

// Y_t = sum_{k=0..min(t,K)} pi_k X_{t-k}
std::vector<double> frac_difference(std::span<const double> series, double d, int K);
std::vector<double> apply_frac_filter(std::span<const double> series,
                                      std::span<const double> coeffs);

// Exact inverse of frac_difference at the same truncation: solves
// X_t = Y_t - sum_{k=1..min(t,K)} pi_k(d) X_{t-k}, so the round trip
// frac_integrate(frac_difference(X)) returns X up to rounding.
std::vector<double> frac_integrate(std::span<const double> series, double d, int K);

// Log-periodogram (GPH) regression over the lowest floor(sqrt(n)) Fourier
// frequencies; the estimate is clamped into [-0.49, 0.49] with a flag.
DEstimate estimate_d(std::span<const double> series);

// Conditional-sum-of-squares ARMA(p, q) for a zero-mean series: Nelder-Mead
// from a Yule-Walker start with a root-distance penalty keeping phi/theta
// stationary and invertible; sigma2 = CSS / n.
ArmaFit fit_arma(std::span<const double> series, int p, int q);

// Two-stage fit: d by estimate_d, then ARMA on the fractionally differenced,
// mean-centered series.
FarimaModel fit_farima(std::span<const double> series, int p, int q, int K = 100);
// same, with (p, q) chosen over {0, 1, 2}^2 by corrected AIC
FarimaModel fit_farima_auto(std::span<const double> series, int K = 100);

// h-step forecasts on the original scale
std::vector<double> forecast(const FarimaModel& model, std::span<const double> series, int h);

// Gaussian-innovation sample path (ARMA recursion, then fractional
// integration after a burn-in); deterministic per seed.
TimeSeries simulate_farima(const FarimaModel& model, int n, std::uint64_t seed);

void save_model(const std::string& path, const FarimaModel& model);
FarimaModel load_model(const std::string& path);

}  // namespace mfs
