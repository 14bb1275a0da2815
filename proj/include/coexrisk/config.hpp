#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coexrisk/engine.hpp"

namespace coexrisk {

enum class SweepAxis { entrant_count, channel_mode, entrant_tech, scenario };

std::string_view to_string(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view s);

struct SweepSpec {
    SweepAxis axis = SweepAxis::entrant_count;
    std::vector<std::string> values;
    std::vector<Technology> techs{Technology::wifi, Technology::laa, Technology::lteu};
};

struct Settings {
    RunConfig run;
    SweepSpec sweep;
};

/// Sets one "section.key" entry. Throws ConfigError naming the key.
void set_value(Settings& s, std::string_view key, std::string_view value);
std::string get_value(const Settings& s, std::string_view key);

/// Every known key in file order.
const std::vector<std::string>& config_keys();

/// "key = value" for every key that affects results, effective values.
/// engine.parallelism is left out.
std::vector<std::pair<std::string, std::string>> config_echo(const Settings& s);

/// INI text with [scenario], [spectrum], [propagation], [cs], [mac], [phy],
/// [engine] and [sweep] sections. `base_dir` resolves relative file paths.
Settings parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
Settings load_config(const std::filesystem::path& path);

/// Loads the rate table file named by phy.rate_table, if any, into the model.
void load_external_tables(Settings& s);

/// Applies one sweep value to a copy of `base`.
RunConfig apply_sweep_value(const RunConfig& base, SweepAxis axis, std::string_view value);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace coexrisk
