#include "coexrisk/types.hpp"

#include <string>

namespace coexrisk {

std::string_view to_string(Technology t) {
    switch (t) {
    case Technology::wifi: return "wifi";
    case Technology::laa: return "laa";
    case Technology::lteu: return "lteu";
    }
    return "?";
}

std::string_view to_string(Population p) { return p == Population::a ? "A" : "B"; }

std::string_view to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::indoor: return "indoor";
    case ScenarioKind::indoor_no_walls: return "indoor_no_walls";
    case ScenarioKind::outdoor: return "outdoor";
    }
    return "?";
}

Technology parse_technology(std::string_view s) {
    if (s == "wifi") return Technology::wifi;
    if (s == "laa") return Technology::laa;
    if (s == "lteu") return Technology::lteu;
    throw ConfigError("unknown technology '" + std::string(s) + "' (expected wifi, laa or lteu)");
}

ScenarioKind parse_scenario_kind(std::string_view s) {
    if (s == "indoor") return ScenarioKind::indoor;
    if (s == "indoor_no_walls") return ScenarioKind::indoor_no_walls;
    if (s == "outdoor") return ScenarioKind::outdoor;
    throw ConfigError("unknown scenario kind '" + std::string(s) +
                      "' (expected indoor, indoor_no_walls or outdoor)");
}

}  // namespace coexrisk
