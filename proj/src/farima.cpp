#include "mfscast/farima.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>

#include "mfscast/errors.hpp"
#include "mfscast/optim.hpp"
#include "mfscast/rng.hpp"

namespace mfs {

std::vector<double> frac_diff_coeffs_unchecked(double d, int K) {
    if (K < 1) throw ParameterError("truncation K must be >= 1");
    std::vector<double> pi(K + 1);
    pi[0] = 1.0;
    for (int k = 1; k <= K; ++k) pi[k] = pi[k - 1] * (k - 1 - d) / k;
    return pi;
}

std::vector<double> frac_diff_coeffs(double d, int K) {
    if (!(std::abs(d) < 0.5))
        throw ParameterError("fractional differencing parameter must satisfy |d| < 0.5");
    return frac_diff_coeffs_unchecked(d, K);
}

std::vector<double> apply_frac_filter(std::span<const double> series,
                                      std::span<const double> coeffs) {
    const std::size_t K = coeffs.size() - 1;
    std::vector<double> out(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) {
        const std::size_t kmax = std::min(t, K);
        double acc = 0.0;
        for (std::size_t k = 0; k <= kmax; ++k) acc += coeffs[k] * series[t - k];
        out[t] = acc;
    }
    return out;
}

std::vector<double> frac_difference(std::span<const double> series, double d, int K) {
    return apply_frac_filter(series, frac_diff_coeffs(d, K));
}

std::vector<double> frac_integrate(std::span<const double> series, double d, int K) {
    const auto pi = frac_diff_coeffs(d, K);
    std::vector<double> out(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) {
        const std::size_t kmax = std::min(t, static_cast<std::size_t>(K));
        double acc = series[t];
        for (std::size_t k = 1; k <= kmax; ++k) acc -= pi[k] * out[t - k];
        out[t] = acc;
    }
    return out;
}

DEstimate estimate_d(std::span<const double> series) {
    const int n = static_cast<int>(series.size());
    if (n < 32) throw ParameterError("estimate_d needs a series of length >= 32");
    double mu = 0.0;
    for (double v : series) mu += v;
    mu /= n;

    const int m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    std::vector<double> lx, ly;
    for (int j = 1; j <= m; ++j) {
        const double lambda = 2.0 * std::numbers::pi * j / n;
        double re = 0.0, im = 0.0;
        for (int t = 0; t < n; ++t) {
            const double v = series[t] - mu;
            re += v * std::cos(lambda * t);
            im += v * std::sin(lambda * t);
        }
        const double power = (re * re + im * im) / (2.0 * std::numbers::pi * n);
        if (power <= 0.0) continue;  // an exactly-zero ordinate carries no information
        lx.push_back(std::log(4.0 * std::sin(lambda / 2.0) * std::sin(lambda / 2.0)));
        ly.push_back(std::log(power));
    }
    if (lx.size() < 2)
        throw DegenerateError("periodogram vanishes at the low frequencies (constant series?)");

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / lx.size(), my = sy / ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    DEstimate est;
    est.d = -sxy / sxx;
    if (est.d > 0.49) {
        est.d = 0.49;
        est.clamped = true;
    } else if (est.d < -0.49) {
        est.d = -0.49;
        est.clamped = true;
    }
    return est;
}

namespace {

// smallest root modulus of c_0 + c_1 z + ... (Durand-Kerner); infinity for
// a constant polynomial
double min_root_modulus(const std::vector<double>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-14) --deg;
    if (deg == 0) return std::numeric_limits<double>::infinity();

    std::vector<std::complex<double>> c(deg + 1);
    for (int k = 0; k <= deg; ++k) c[k] = coeffs[k] / coeffs[deg];
    std::vector<std::complex<double>> r(deg);
    const std::complex<double> seed{0.4, 0.9};
    r[0] = seed;
    for (int i = 1; i < deg; ++i) r[i] = r[i - 1] * seed;

    for (int iter = 0; iter < 200; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> num = c[deg];
            for (int k = deg - 1; k >= 0; --k) num = num * r[i] + c[k];
            std::complex<double> den{1.0, 0.0};
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= r[i] - r[j];
            if (den == 0.0) den = {1e-12, 0.0};
            const auto delta = num / den;
            r[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-13) break;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& root : r) best = std::min(best, std::abs(root));
    return best;
}

// 1 - a_1 z - ... (AR) given signs +; for MA pass theta with flipped signs
std::vector<double> char_poly(std::span<const double> a, double sign) {
    std::vector<double> c(a.size() + 1);
    c[0] = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) c[i + 1] = sign * a[i];
    return c;
}

constexpr double kRootMargin = 1e-7;

// 0 when every root is safely outside the unit circle, positive otherwise
double root_violation(std::span<const double> phi, std::span<const double> theta) {
    double v = 0.0;
    if (!phi.empty()) {
        const double m = min_root_modulus(char_poly(phi, -1.0));
        v += std::max(0.0, 1.0 + kRootMargin - m);
    }
    if (!theta.empty()) {
        const double m = min_root_modulus(char_poly(theta, +1.0));
        v += std::max(0.0, 1.0 + kRootMargin - m);
    }
    return v;
}

// conditional sum of squares with residuals zero before t = p
double css(std::span<const double> x, std::span<const double> phi, std::span<const double> theta,
           std::vector<double>& e) {
    const int n = static_cast<int>(x.size());
    const int p = static_cast<int>(phi.size()), q = static_cast<int>(theta.size());
    e.assign(n, 0.0);
    double acc = 0.0;
    for (int t = p; t < n; ++t) {
        double z = x[t];
        for (int i = 1; i <= p; ++i) z -= phi[i - 1] * x[t - i];
        for (int j = 1; j <= q && t - j >= 0; ++j) z -= theta[j - 1] * e[t - j];
        e[t] = z;
        acc += z * z;
    }
    return acc;
}

// Yule-Walker AR(p) start values via Levinson-Durbin
std::vector<double> yule_walker(std::span<const double> x, int p) {
    const int n = static_cast<int>(x.size());
    std::vector<double> gamma(p + 1, 0.0);
    for (int k = 0; k <= p; ++k) {
        for (int t = k; t < n; ++t) gamma[k] += x[t] * x[t - k];
        gamma[k] /= n;
    }
    std::vector<double> phi(p, 0.0), prev(p, 0.0);
    if (gamma[0] <= 0.0) return phi;
    double err = gamma[0];
    for (int k = 1; k <= p; ++k) {
        double acc = gamma[k];
        for (int j = 1; j < k; ++j) acc -= prev[j - 1] * gamma[k - j];
        const double refl = acc / err;
        phi = prev;
        phi[k - 1] = refl;
        for (int j = 1; j < k; ++j) phi[j - 1] = prev[j - 1] - refl * prev[k - 1 - j];
        err *= (1.0 - refl * refl);
        if (err <= 0.0) break;
        prev = phi;
    }
    return phi;
}

}  // namespace

ArmaFit fit_arma(std::span<const double> series, int p, int q) {
    if (p < 0 || q < 0 || p > 5 || q > 5)
        throw ParameterError("ARMA orders must lie in [0, 5]");
    const int n = static_cast<int>(series.size());
    if (n < 10 * (p + q + 1))
        throw ParameterError("series too short for ARMA(" + std::to_string(p) + ", " +
                             std::to_string(q) + "): need length >= 10 (p + q + 1)");

    double var = 0.0;
    for (double v : series) var += v * v;
    var /= n;
    if (p + q == 0) {
        if (var <= 0.0) throw DegenerateError("fit_arma on a zero-variance series");
        return {{}, {}, var};
    }
    if (var <= 0.0) throw DegenerateError("fit_arma on a zero-variance series");

    std::vector<double> scratch;
    const double penalty_scale = 100.0 * n * var;
    const auto objective = [&](std::span<const double> params) {
        const std::span<const double> phi = params.subspan(0, p);
        const std::span<const double> theta = params.subspan(p, q);
        return css(series, phi, theta, scratch) + penalty_scale * root_violation(phi, theta);
    };

    std::vector<std::vector<double>> starts;
    {
        std::vector<double> s(p + q, 0.0);
        const auto yw = yule_walker(series, p);
        std::copy(yw.begin(), yw.end(), s.begin());
        starts.push_back(s);
        starts.emplace_back(p + q, 0.0);
        starts.emplace_back(p + q, 0.1);
        starts.emplace_back(p + q, -0.1);
    }

    bool found = false;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best;
    for (const auto& start : starts) {
        const std::vector<double> steps(p + q, 0.1);
        auto r = minimize_simplex(objective, start, steps, 3000 + 1000 * (p + q), 1e-10);
        const std::span<const double> phi{r.x.data(), static_cast<std::size_t>(p)};
        const std::span<const double> theta{r.x.data() + p, static_cast<std::size_t>(q)};
        if (root_violation(phi, theta) > 0.0) continue;
        if (r.fmin < best_obj) {
            best_obj = r.fmin;
            best = r.x;
            found = true;
        }
    }
    if (!found)
        throw ConvergenceError("ARMA estimation found no stationary, invertible optimum",
                               best_obj / n);

    ArmaFit fit;
    fit.ar.assign(best.begin(), best.begin() + p);
    fit.ma.assign(best.begin() + p, best.end());
    fit.sigma2 = css(series, fit.ar, fit.ma, scratch) / n;
    if (fit.sigma2 <= 0.0) throw DegenerateError("ARMA residual variance vanished");
    return fit;
}

namespace {

FarimaModel assemble(double mu, const DEstimate& de, const ArmaFit& arma, int K) {
    FarimaModel model;
    model.ar = arma.ar;
    model.ma = arma.ma;
    model.d = de.d;
    model.d_clamped = de.clamped;
    model.sigma2 = arma.sigma2;
    model.truncation = K;
    model.mean = mu;
    return model;
}

}  // namespace

FarimaModel fit_farima(std::span<const double> series, int p, int q, int K) {
    if (series.empty()) throw DegenerateError("fit_farima on an empty series");
    double mu = 0.0;
    for (double v : series) mu += v;
    mu /= static_cast<double>(series.size());
    std::vector<double> x(series.begin(), series.end());
    for (double& v : x) v -= mu;

    const DEstimate de = estimate_d(x);
    const auto y = frac_difference(x, de.d, K);
    return assemble(mu, de, fit_arma(y, p, q), K);
}

FarimaModel fit_farima_auto(std::span<const double> series, int K) {
    if (series.empty()) throw DegenerateError("fit_farima on an empty series");
    double mu = 0.0;
    for (double v : series) mu += v;
    mu /= static_cast<double>(series.size());
    std::vector<double> x(series.begin(), series.end());
    for (double& v : x) v -= mu;

    const DEstimate de = estimate_d(x);
    const auto y = frac_difference(x, de.d, K);
    const double n = static_cast<double>(y.size());

    bool found = false;
    double best_aicc = std::numeric_limits<double>::infinity();
    ArmaFit best;
    std::string last_error = "no ARMA order could be fitted";
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= 2; ++q) {
            const double k = p + q + 1;
            if (n - k - 1.0 <= 0.0) continue;
            try {
                auto fit = fit_arma(y, p, q);
                const double aicc =
                    n * std::log(fit.sigma2) + 2.0 * k + 2.0 * k * (k + 1.0) / (n - k - 1.0);
                if (aicc < best_aicc) {
                    best_aicc = aicc;
                    best = std::move(fit);
                    found = true;
                }
            } catch (const Error& e) {
                last_error = e.what();
            }
        }
    }
    if (!found) throw ConvergenceError(last_error, std::numeric_limits<double>::quiet_NaN());
    return assemble(mu, de, best, K);
}

std::vector<double> forecast(const FarimaModel& model, std::span<const double> series, int h) {
    if (h < 1) throw ParameterError("forecast horizon must be >= 1");
    if (series.empty()) throw ParameterError("forecast of an empty series");
    const int n = static_cast<int>(series.size());
    const int p = static_cast<int>(model.ar.size());
    const int q = static_cast<int>(model.ma.size());
    const auto pi = frac_diff_coeffs(model.d, model.truncation);

    std::vector<double> x(series.begin(), series.end());
    for (double& v : x) v -= model.mean;
    std::vector<double> y = apply_frac_filter(x, pi);

    std::vector<double> e;
    css(y, model.ar, model.ma, e);
    y.resize(n + h, 0.0);
    e.resize(n + h, 0.0);  // future innovations replaced by their mean 0
    for (int t = n; t < n + h; ++t) {
        double v = 0.0;
        for (int i = 1; i <= p && t - i >= 0; ++i) v += model.ar[i - 1] * y[t - i];
        for (int j = 1; j <= q && t - j >= 0; ++j) v += model.ma[j - 1] * e[t - j];
        y[t] = v;
    }

    // invert the differencing for the new points against the known history
    x.resize(n + h, 0.0);
    std::vector<double> out(h);
    for (int t = n; t < n + h; ++t) {
        double v = y[t];
        const int kmax = std::min(t, model.truncation);
        for (int k = 1; k <= kmax; ++k) v -= pi[k] * x[t - k];
        x[t] = v;
        out[t - n] = v + model.mean;
    }
    return out;
}

TimeSeries simulate_farima(const FarimaModel& model, int n, std::uint64_t seed) {
    if (n < 1) throw ParameterError("simulation length must be >= 1");
    if (model.sigma2 < 0.0) throw ParameterError("sigma2 must be nonnegative");
    const auto pi = frac_diff_coeffs(model.d, model.truncation);  // validates d
    const int p = static_cast<int>(model.ar.size());
    const int q = static_cast<int>(model.ma.size());

    Rng rng(seed);
    const double sd = std::sqrt(model.sigma2);
    const int burn = std::max(2 * model.truncation, 200);
    const int total = burn + n;
    std::vector<double> z(total), w(total);
    for (int t = 0; t < total; ++t) z[t] = sd * rng.gaussian();
    for (int t = 0; t < total; ++t) {
        double v = z[t];
        for (int i = 1; i <= p && t - i >= 0; ++i) v += model.ar[i - 1] * w[t - i];
        for (int j = 1; j <= q && t - j >= 0; ++j) v += model.ma[j - 1] * z[t - j];
        w[t] = v;
    }
    std::vector<double> tail(w.begin() + burn, w.end());
    TimeSeries ts;
    ts.values = frac_integrate(tail, model.d, model.truncation);
    for (double& v : ts.values) v += model.mean;
    ts.start_day = Date{0};
    return ts;
}

void save_model(const std::string& path, const FarimaModel& model) {
    nlohmann::json j;
    j["p"] = model.ar.size();
    j["q"] = model.ma.size();
    j["d"] = model.d;
    j["phi"] = model.ar;
    j["theta"] = model.ma;
    j["sigma2"] = model.sigma2;
    j["K"] = model.truncation;
    j["mean"] = model.mean;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing model file: " + path);
}

FarimaModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("model file is not valid JSON: " + path);
    try {
        FarimaModel model;
        model.ar = j.at("phi").get<std::vector<double>>();
        model.ma = j.at("theta").get<std::vector<double>>();
        model.d = j.at("d").get<double>();
        model.sigma2 = j.at("sigma2").get<double>();
        model.truncation = j.at("K").get<int>();
        model.mean = j.at("mean").get<double>();
        if (j.at("p").get<std::size_t>() != model.ar.size() ||
            j.at("q").get<std::size_t>() != model.ma.size())
            throw ParseError("model file order fields disagree with coefficient arrays: " + path);
        if (!(std::abs(model.d) < 0.5) || model.sigma2 <= 0.0 || model.truncation < 1)
            throw ParseError("model file violates parameter bounds: " + path);
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file " + path + ": " + e.what());
    }
}

}  // namespace mfs
