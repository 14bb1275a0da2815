#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coexrisk/engine.hpp"

namespace coexrisk {

enum class Metric { degradation, unfairness };
enum class BaselineKind { standalone, wifi_entrant };

std::string_view to_string(Metric m);
std::string_view to_string(BaselineKind b);
Metric parse_metric(std::string_view s);
BaselineKind parse_baseline_kind(std::string_view s);

/// (R_baseline - R) / R_baseline; nullopt when the baseline is zero.
std::optional<double> degradation(double baseline_mbps, double mbps);

/// Jain's index (sum R)^2 / (n sum R^2); nullopt for an empty or all-zero list.
std::optional<double> jain(const std::vector<double>& mbps);

inline double unfairness(double j) { return 1.0 - j; }

struct CcdfPoint {
    double value = 0.0;
    double probability = 0.0;
};

/// P(X > v) at each distinct sample value, preceded by (min - eps, 1).
std::vector<CcdfPoint> empirical_ccdf(std::vector<double> samples);

inline constexpr double kCcdfEpsilon = 1e-9;

/// Linear interpolation between order statistics, p in [0, 100].
double percentile(std::vector<double> samples, double p);

struct RiskSeries {
    Metric metric = Metric::degradation;
    BaselineKind baseline = BaselineKind::standalone;
    std::string label;
    std::vector<double> samples;
    std::vector<CcdfPoint> ccdf;
    int excluded_zero_baseline = 0;
    int excluded_all_zero = 0;
};

/// Degradation pools population-A APs over all realizations against the
/// chosen baseline. Unfairness is one sample per realization over the
/// population-A throughputs of the coexistence world; `baseline` only labels it.
RiskSeries aggregate(const CampaignResult& campaign, Metric metric, BaselineKind baseline);

/// "<scenario>_<tech>_<nA>x<nB>_<plan>_<scheme>"
std::string series_label(const RunConfig& config);

}  // namespace coexrisk
