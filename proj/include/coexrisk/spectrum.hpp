#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace coexrisk {

enum class PlanMode { indoor_19, outdoor_11, non_dfs_4, single_1 };
enum class SelectionScheme { random, sense, single };

std::string_view to_string(PlanMode m);
std::string_view to_string(SelectionScheme s);
PlanMode parse_plan_mode(std::string_view s);
SelectionScheme parse_selection_scheme(std::string_view s);

struct Channel {
    int number = 0;          // IEEE 5 GHz channel number
    double center_hz = 0.0;  // 5000 MHz + 5 MHz * number
};

struct ChannelPlan {
    PlanMode mode = PlanMode::indoor_19;
    std::vector<Channel> channels;
    double bandwidth_hz = 20e6;

    std::size_t size() const { return channels.size(); }
};

ChannelPlan make_plan(PlanMode mode);

/// AP id -> index into the plan.
struct ChannelAssignment {
    SelectionScheme scheme = SelectionScheme::random;
    std::map<int, int> channel;
};

ChannelAssignment assign_random(std::span<const int> aps, const ChannelPlan& plan, std::uint64_t seed);

/// Each entrant picks uniformly among the channels carrying the fewest
/// incumbents. Entrants do not see each other.
ChannelAssignment assign_sense(std::span<const int> entrant_aps, const ChannelAssignment& incumbents,
                               const ChannelPlan& plan, std::uint64_t seed);

/// Every AP on the first channel of the plan.
ChannelAssignment assign_single(std::span<const int> aps, const ChannelPlan& plan);

/// First adjacent channel: centers exactly one bandwidth apart.
bool adjacent(const ChannelPlan& plan, int c1, int c2);

}  // namespace coexrisk
