#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coexrisk/config.hpp"
#include "coexrisk/risk.hpp"

namespace coexrisk {

inline constexpr const char* kVersion = "1.0.0";

/// Degradation against every baseline the campaign carries, then unfairness.
std::vector<RiskSeries> campaign_series(const CampaignResult& campaign);

/// Writes per_ap.csv, summary.json and ccdf.csv into `out_dir`.
void write_run(const Settings& settings, const CampaignResult& campaign, const std::filesystem::path& out_dir);

void write_per_ap_csv(const Settings& settings, const CampaignResult& campaign, const std::filesystem::path& path);
void write_ccdf_csv(const Settings& settings, const std::vector<RiskSeries>& series, const std::filesystem::path& path);
void write_summary_json(const Settings& settings, const CampaignResult& campaign, const std::vector<RiskSeries>& series,
                        const std::filesystem::path& path);

/// Rebuilds settings and campaign from a per_ap.csv written by write_run.
struct StoredRun {
    Settings settings;
    CampaignResult campaign;
};
StoredRun read_per_ap_csv(const std::filesystem::path& path);

/// Re-derives ccdf.csv from `run_dir`/per_ap.csv into `out_dir`. The run
/// directory is only read.
void chart(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir);

using SweepProgressFn = std::function<void(std::size_t point, std::size_t points, std::size_t done, std::size_t total)>;

/// One ccdf CSV per (axis value, entrant technology) plus summary.json.
/// Returns the file names written, in order.
std::vector<std::string> run_sweep(const Settings& settings, const std::filesystem::path& out_dir,
                                   const SweepProgressFn& progress = {});

}  // namespace coexrisk
