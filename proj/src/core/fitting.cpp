#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fitting.hpp"
#include "theory.hpp"

namespace strmat {

namespace {

struct SampleStats {
    double sum = 0.0;      // sum s_i
    double sum_log = 0.0;  // sum ln s_i
    double count = 0.0;
};

// log-likelihood of the surmise with mean pinned to n+1, up to no constant
double loglike(double g, std::size_t n, const SampleStats& st) {
    const double np1 = static_cast<double>(n) + 1.0;
    const double b = (g + 1.0) / np1;
    return st.count * ((g + 1.0) * std::log(b) - std::lgamma(g + 1.0)) + g * st.sum_log -
           b * st.sum;
}

double dloglike(double g, std::size_t n, const SampleStats& st) {
    const double np1 = static_cast<double>(n) + 1.0;
    return st.count * (std::log((g + 1.0) / np1) + 1.0 - digamma(g + 1.0)) + st.sum_log -
           st.sum / np1;
}

double d2loglike(double g, const SampleStats& st) {
    return st.count * (1.0 / (g + 1.0) - trigamma(g + 1.0));  // strictly negative
}

}  // namespace

GammaFit fit_gamma(std::span<const double> spacings, std::size_t n, double gamma_init) {
    if (spacings.size() < 10)
        throw std::invalid_argument("fit_gamma: need at least 10 spacing samples");

    SampleStats st;
    double mean = 0.0, var = 0.0;
    for (double s : spacings) mean += s;
    mean /= static_cast<double>(spacings.size());
    for (double s : spacings) var += (s - mean) * (s - mean);
    var /= static_cast<double>(spacings.size());
    if (!(mean > 0.0) || !(var > 0.0))
        throw std::invalid_argument("fit_gamma: samples must be positive and non-degenerate");
    for (double s : spacings) {
        const double sf = std::max(s, 1e-12);  // floor keeps ln s finite
        st.sum += sf;
        st.sum_log += std::log(sf);
    }
    st.count = static_cast<double>(spacings.size());

    double center = gamma_init;
    if (!std::isfinite(center)) {
        // moment estimate from var = (n+1)^2/(gamma+1) under the pinned mean
        const double np1 = static_cast<double>(n) + 1.0;
        center = std::max(-0.5, np1 * np1 / var - 1.0);
    }
    double lo = std::max(-0.9, center - 3.0);
    double hi = center + 3.0;

    // golden-section on the concave log-likelihood
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = loglike(x1, n, st), f2 = loglike(x2, n, st);
    for (int it = 0; it < 200 && (b - a) > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = loglike(x2, n, st);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = loglike(x1, n, st);
        }
    }
    double g = 0.5 * (a + b);

    // one Newton refinement
    const double d2 = d2loglike(g, st);
    if (d2 < 0.0) {
        double step = dloglike(g, n, st) / d2;
        double g_new = g - step;
        if (g_new > lo && g_new < hi) g = g_new;
    }

    GammaFit out;
    out.gamma = g;
    out.samples = spacings.size();
    out.log_likelihood = loglike(g, n, st);
    const double info = -d2loglike(g, st);
    out.stderr_gamma = info > 0.0 ? 1.0 / std::sqrt(info) : 0.0;
    out.at_bound = (g - lo) < 1e-6 || (hi - g) < 1e-6;
    return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw std::invalid_argument("linear_fit: size mismatch");
    if (n < 3) throw std::invalid_argument("linear_fit: need at least 3 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: zero variance in x");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    const double s2 = ss_res / static_cast<double>(n - 2);
    fit.stderr_slope = std::sqrt(s2 / sxx);
    fit.stderr_intercept = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
    return fit;
}

}  // namespace strmat
