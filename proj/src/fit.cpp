#include "rainbow/fit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rainbow {

ScalingFit fit_scaling(const std::vector<double>& ns, const std::vector<double>& means,
                       const std::vector<double>& stderrs) {
    if (ns.size() != means.size()) throw std::invalid_argument("fit_scaling: ns and means differ in length");
    if (!stderrs.empty() && stderrs.size() != ns.size())
        throw std::invalid_argument("fit_scaling: stderrs length mismatch");
    ScalingFit fit;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(means[i] > 0.0) || !(ns[i] > 1.0)) {
            std::ostringstream w;
            w << "excluded n=" << ns[i] << " (mean " << means[i] << ")";
            fit.warnings.push_back(w.str());
            continue;
        }
        fit.ns.push_back(ns[i]);
        fit.means.push_back(means[i]);
        fit.stderrs.push_back(stderrs.empty() ? 0.0 : stderrs[i]);
    }
    const std::size_t m = fit.ns.size();
    if (m < 2) return fit;

    std::vector<double> x(m), y(m);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = std::log(fit.ns[i]);
        y[i] = std::log(fit.means[i]);
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        fit.warnings.push_back("all grid points share one n");
        return fit;
    }
    fit.b = sxy / sxx;
    const double log_a = my - fit.b * mx;
    fit.a = std::exp(log_a);

    double ss = 0.0, log_c = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (log_a + fit.b * x[i]);
        ss += r * r;
        log_c += y[i] - (0.5 * x[i] + std::log(x[i]));
    }
    fit.residual = std::sqrt(ss);
    log_c /= static_cast<double>(m);
    fit.sqrtlog_a = std::exp(log_c);
    ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (log_c + 0.5 * x[i] + std::log(x[i]));
        ss += r * r;
    }
    fit.sqrtlog_residual = std::sqrt(ss);
    fit.ok = m >= 3;
    if (!fit.ok) fit.warnings.push_back("fewer than three grid points");
    return fit;
}

MeanStats mean_stats(const std::vector<double>& xs) {
    MeanStats s;
    s.count = static_cast<int>(xs.size());
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double v : xs) sum += v;
    s.mean = sum / s.count;
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : xs) ss += (v - s.mean) * (v - s.mean);
        s.sem = std::sqrt(ss / (s.count - 1) / s.count);
    }
    return s;
}

}  // namespace rainbow
