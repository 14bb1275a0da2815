#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coexrisk {

enum class Technology { wifi, laa, lteu };
enum class Population { a, b };
enum class ScenarioKind { indoor, indoor_no_walls, outdoor };
enum class NodeKind { ap, user };

/// Listen-before-talk technologies contend for the medium; LTE-U does not.
constexpr bool is_lbt(Technology t) { return t != Technology::lteu; }
constexpr bool is_lte(Technology t) { return t != Technology::wifi; }

std::string_view to_string(Technology t);
std::string_view to_string(Population p);
std::string_view to_string(ScenarioKind k);
Technology parse_technology(std::string_view s);
ScenarioKind parse_scenario_kind(std::string_view s);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Vec3& a, const Vec3& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

inline double distance_2d(const Vec3& a, const Vec3& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Errors. Each maps to one C API status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: counts, config keys and values, malformed files.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure while simulating or writing results.
class RuntimeError : public Error {
public:
    using Error::Error;
};

class IoError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

// Unit helpers. Power arithmetic is linear (mW) internally.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

constexpr double kSpeedOfLight = 299792458.0;

}  // namespace coexrisk
