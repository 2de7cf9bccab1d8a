#pragma once

#include <string>
#include <vector>

namespace rainbow {

/// Least-squares fits of per-n means on log-log axes: the power law
/// mean ~ a n^b and the one-parameter model mean ~ a sqrt(n) ln(n).
/// Residuals are root-sum-square in log space.
struct ScalingFit {
    bool ok = false;  // at least three usable points
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;
    double sqrtlog_a = 0.0;
    double sqrtlog_residual = 0.0;
    std::vector<double> ns;
    std::vector<double> means;
    std::vector<double> stderrs;
    std::vector<std::string> warnings;
};

/// Non-positive means are dropped with a warning. Two usable points are still
/// fitted, but ok needs three.
ScalingFit fit_scaling(const std::vector<double>& ns, const std::vector<double>& means,
                       const std::vector<double>& stderrs = {});

struct MeanStats {
    double mean = 0.0;
    double sem = 0.0;  // standard error of the mean
    int count = 0;
};

MeanStats mean_stats(const std::vector<double>& xs);

}  // namespace rainbow
