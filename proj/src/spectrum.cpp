#include "coexrisk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "coexrisk/rng.hpp"
#include "coexrisk/types.hpp"

namespace coexrisk {

namespace {

void require_non_empty(const ChannelPlan& plan) {
    if (plan.channels.empty()) throw ConfigError("channel plan is empty");
}

void add_range(ChannelPlan& plan, int first, int last) {
    for (int n = first; n <= last; n += 4) plan.channels.push_back(Channel{n, (5000.0 + 5.0 * n) * 1e6});
}

}  // namespace

std::string_view to_string(PlanMode m) {
    switch (m) {
    case PlanMode::indoor_19: return "indoor_19";
    case PlanMode::outdoor_11: return "outdoor_11";
    case PlanMode::non_dfs_4: return "non_dfs_4";
    case PlanMode::single_1: return "single_1";
    }
    return "?";
}

std::string_view to_string(SelectionScheme s) {
    switch (s) {
    case SelectionScheme::random: return "random";
    case SelectionScheme::sense: return "sense";
    case SelectionScheme::single: return "single";
    }
    return "?";
}

PlanMode parse_plan_mode(std::string_view s) {
    if (s == "indoor_19") return PlanMode::indoor_19;
    if (s == "outdoor_11") return PlanMode::outdoor_11;
    if (s == "non_dfs_4") return PlanMode::non_dfs_4;
    if (s == "single_1") return PlanMode::single_1;
    throw ConfigError("unknown channel plan '" + std::string(s) +
                      "' (expected indoor_19, outdoor_11, non_dfs_4 or single_1)");
}

SelectionScheme parse_selection_scheme(std::string_view s) {
    if (s == "random") return SelectionScheme::random;
    if (s == "sense") return SelectionScheme::sense;
    if (s == "single") return SelectionScheme::single;
    throw ConfigError("unknown channel selection '" + std::string(s) + "' (expected random, sense or single)");
}

ChannelPlan make_plan(PlanMode mode) {
    ChannelPlan plan;
    plan.mode = mode;
    switch (mode) {
    case PlanMode::indoor_19:
        add_range(plan, 36, 64);
        add_range(plan, 100, 140);
        break;
    case PlanMode::outdoor_11: add_range(plan, 100, 140); break;
    case PlanMode::non_dfs_4: add_range(plan, 36, 48); break;
    case PlanMode::single_1: add_range(plan, 36, 36); break;
    }
    return plan;
}

ChannelAssignment assign_random(std::span<const int> aps, const ChannelPlan& plan, std::uint64_t seed) {
    require_non_empty(plan);
    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(plan.size()) - 1);
    ChannelAssignment out;
    out.scheme = SelectionScheme::random;
    for (int ap : aps) out.channel[ap] = pick(rng);
    return out;
}

ChannelAssignment assign_sense(std::span<const int> entrant_aps, const ChannelAssignment& incumbents,
                               const ChannelPlan& plan, std::uint64_t seed) {
    require_non_empty(plan);
    std::vector<int> load(plan.size(), 0);
    for (const auto& [ap, ch] : incumbents.channel) {
        if (ch < 0 || ch >= static_cast<int>(plan.size()))
            throw ConfigError("incumbent AP " + std::to_string(ap) + " assigned outside the plan");
        ++load[static_cast<std::size_t>(ch)];
    }
    const int fewest = *std::min_element(load.begin(), load.end());
    std::vector<int> ties;
    for (std::size_t c = 0; c < load.size(); ++c) {
        if (load[c] == fewest) ties.push_back(static_cast<int>(c));
    }

    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    std::vector<int> ordered(entrant_aps.begin(), entrant_aps.end());
    std::sort(ordered.begin(), ordered.end());
    ChannelAssignment out;
    out.scheme = SelectionScheme::sense;
    for (int ap : ordered) out.channel[ap] = ties[pick(rng)];
    return out;
}

ChannelAssignment assign_single(std::span<const int> aps, const ChannelPlan& plan) {
    require_non_empty(plan);
    ChannelAssignment out;
    out.scheme = SelectionScheme::single;
    for (int ap : aps) out.channel[ap] = 0;
    return out;
}

bool adjacent(const ChannelPlan& plan, int c1, int c2) {
    const double gap = std::abs(plan.channels.at(static_cast<std::size_t>(c1)).center_hz -
                                plan.channels.at(static_cast<std::size_t>(c2)).center_hz);
    return std::abs(gap - plan.bandwidth_hz) < 1.0;
}

}  // namespace coexrisk
