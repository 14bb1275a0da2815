#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coexrisk/phy.hpp"
#include "coexrisk/propagation.hpp"
#include "coexrisk/scenario.hpp"
#include "coexrisk/spectrum.hpp"

namespace coexrisk {

enum class BaselineSet { standalone, wifi_entrant, both };

std::string_view to_string(BaselineSet b);
BaselineSet parse_baseline_set(std::string_view s);

struct RunConfig {
    ScenarioKind scenario = ScenarioKind::indoor;
    int n_pop_a = 10;
    int n_pop_b = 10;
    Technology tech_a = Technology::wifi;
    Technology tech_b = Technology::wifi;

    PlanMode plan = PlanMode::indoor_19;
    SelectionScheme scheme_a = SelectionScheme::random;
    SelectionScheme scheme_b = SelectionScheme::random;

    /// 0 selects the scenario default (3000 indoor, 1500 outdoor).
    int realizations = 0;
    std::uint64_t seed = 1;
    int parallelism = 1;
    BaselineSet baselines = BaselineSet::both;

    IndoorGeometry indoor;
    OutdoorGeometry outdoor;
    std::string locations_file;  // empty: synthetic outdoor locations
    /// Area used for density reporting; 0 means the study area.
    double reference_area_km2 = 0.0;

    PropagationParams propagation;
    ModelParams model;
    std::string rate_table_file;

    int effective_realizations() const;
    bool wants(BaselineSet b) const { return baselines == BaselineSet::both || baselines == b; }
    /// Throws ConfigError naming the offending key.
    void validate() const;
};

struct RealizationResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    double density_per_km2 = 0.0;
    ThroughputReport coexistence;
    std::optional<ThroughputReport> standalone;
    std::optional<ThroughputReport> wifi_entrant;
};

struct CampaignResult {
    RunConfig config;
    std::vector<RealizationResult> realizations;
};

/// Evaluates coexistence and the requested baselines on one shared
/// deployment, shadowing table and channel draw.
RealizationResult run_realization(const RunConfig& config, std::size_t index);
RealizationResult run_realization(const RunConfig& config, std::size_t index, const std::vector<Vec3>& locations);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Realizations 0..N-1, ordered by index whatever the parallelism.
CampaignResult run_campaign(const RunConfig& config, const ProgressFn& progress = {});

}  // namespace coexrisk
