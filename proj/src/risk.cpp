#include "coexrisk/risk.hpp"

#include <algorithm>
#include <cmath>

namespace coexrisk {

std::string_view to_string(Metric m) { return m == Metric::degradation ? "degradation" : "unfairness"; }

std::string_view to_string(BaselineKind b) {
    return b == BaselineKind::standalone ? "standalone" : "wifi_entrant";
}

Metric parse_metric(std::string_view s) {
    if (s == "degradation") return Metric::degradation;
    if (s == "unfairness") return Metric::unfairness;
    throw ConfigError("unknown metric '" + std::string(s) + "' (expected degradation or unfairness)");
}

BaselineKind parse_baseline_kind(std::string_view s) {
    if (s == "standalone") return BaselineKind::standalone;
    if (s == "wifi_entrant") return BaselineKind::wifi_entrant;
    throw ConfigError("unknown baseline '" + std::string(s) + "' (expected standalone or wifi_entrant)");
}

std::optional<double> degradation(double baseline_mbps, double mbps) {
    if (baseline_mbps == 0.0) return std::nullopt;
    return (baseline_mbps - mbps) / baseline_mbps;
}

std::optional<double> jain(const std::vector<double>& mbps) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double r : mbps) {
        sum += r;
        sum_sq += r * r;
    }
    if (mbps.empty() || sum_sq == 0.0) return std::nullopt;
    return sum * sum / (static_cast<double>(mbps.size()) * sum_sq);
}

std::vector<CcdfPoint> empirical_ccdf(std::vector<double> samples) {
    if (samples.empty()) throw RuntimeError("CCDF of an empty sample set");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    std::vector<CcdfPoint> out;
    out.push_back({samples.front() - kCcdfEpsilon, 1.0});
    for (std::size_t i = 0; i < samples.size();) {
        std::size_t j = i;
        while (j < samples.size() && samples[j] == samples[i]) ++j;
        out.push_back({samples[i], static_cast<double>(samples.size() - j) / n});
        i = j;
    }
    return out;
}

double percentile(std::vector<double> samples, double p) {
    if (samples.empty()) throw RuntimeError("percentile of an empty sample set");
    std::sort(samples.begin(), samples.end());
    const double rank = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (rank - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

std::string series_label(const RunConfig& c) {
    return std::string(to_string(c.scenario)) + "_" + std::string(to_string(c.tech_b)) + "_" +
           std::to_string(c.n_pop_a) + "x" + std::to_string(c.n_pop_b) + "_" + std::string(to_string(c.plan)) + "_" +
           std::string(to_string(c.scheme_b));
}

RiskSeries aggregate(const CampaignResult& campaign, Metric metric, BaselineKind baseline) {
    RiskSeries s;
    s.metric = metric;
    s.baseline = baseline;
    s.label = series_label(campaign.config) + "_" + std::string(to_string(metric));
    if (metric == Metric::degradation) s.label += "_vs_" + std::string(to_string(baseline));

    for (const RealizationResult& r : campaign.realizations) {
        if (metric == Metric::unfairness) {
            std::vector<double> incumbents;
            for (const ApResult& ap : r.coexistence.aps)
                if (ap.population == Population::a) incumbents.push_back(ap.throughput_mbps);
            if (const auto j = jain(incumbents))
                s.samples.push_back(unfairness(*j));
            else
                ++s.excluded_all_zero;
            continue;
        }
        const auto& base = baseline == BaselineKind::standalone ? r.standalone : r.wifi_entrant;
        if (!base)
            throw ConfigError("campaign has no " + std::string(to_string(baseline)) +
                              " baseline (set engine.baseline)");
        // Population-A APs come first in every report, in id order.
        for (const ApResult& ap : r.coexistence.aps) {
            if (ap.population != Population::a) continue;
            const ApResult& b = base->aps[static_cast<std::size_t>(ap.ap)];
            if (const auto d = degradation(b.throughput_mbps, ap.throughput_mbps))
                s.samples.push_back(*d);
            else
                ++s.excluded_zero_baseline;
        }
    }
    if (!s.samples.empty()) s.ccdf = empirical_ccdf(s.samples);
    return s;
}

}  // namespace coexrisk
