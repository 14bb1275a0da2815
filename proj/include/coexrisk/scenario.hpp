#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "coexrisk/types.hpp"

namespace coexrisk {

struct Box {
    Vec3 lo;
    Vec3 hi;
    bool contains(const Vec3& p) const {
        return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y && p.z > lo.z && p.z < hi.z;
    }
};

struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    bool contains_open(double x, double y) const { return x > x0 && x < x1 && y > y0 && y < y1; }
};

struct Building {
    Rect footprint;
    int floors = 3;
};

/// 2-D wall segment, extruded over one floor.
struct Wall {
    double x0, y0, x1, y1;
};

struct SiteLayout {
    ScenarioKind kind = ScenarioKind::indoor;
    std::vector<Box> apartments;
    std::vector<Building> buildings;
    std::vector<Wall> walls;
    Rect study_area;
    bool internal_walls_present = false;
    double floor_height_m = 3.0;
};

struct Node {
    int id = 0;
    NodeKind kind = NodeKind::ap;
    Population population = Population::a;
    Technology technology = Technology::wifi;
    Vec3 position;
    std::optional<int> associated_ap;
};

/// AP `i` has node id `i`; its user has id `ap_count() + i`. Population-A APs
/// come first.
struct Deployment {
    SiteLayout layout;
    std::vector<Node> nodes;
    std::uint64_t seed = 0;
    int n_pop_a = 0;
    int n_pop_b = 0;

    int ap_count() const { return n_pop_a + n_pop_b; }
    const Node& ap(int i) const { return nodes[static_cast<std::size_t>(i)]; }
    const Node& user_of(int ap_id) const {
        return nodes[static_cast<std::size_t>(ap_count() + ap_id)];
    }
    /// APs per km^2 over the given area (defaults to the study area).
    double density_per_km2(std::optional<double> area_km2 = std::nullopt) const;
};

struct IndoorGeometry {
    int apartments_per_stripe = 10;
    double apartment_size_m = 10.0;
    double apartment_height_m = 3.0;
    double corridor_m = 10.0;
};

struct OutdoorGeometry {
    double area_width_m = 346.0;
    double area_height_m = 389.0;
    int synthetic_locations = 20;
    double min_ap_spacing_m = 5.0;
    int building_count = 40;
    double building_depth_m = 20.0;
    double apartment_width_m = 10.0;
    int min_apartments = 3;
    int max_apartments = 10;
    int min_floors = 3;
    int max_floors = 5;
    double floor_height_m = 3.0;
    double user_radius_m = 50.0;
    double user_height_m = 1.5;
};

SiteLayout dual_stripe_layout(bool walls, const IndoorGeometry& geo = {});

Deployment generate_indoor(std::uint64_t seed, int n_pop_a, int n_pop_b, bool walls,
                           const IndoorGeometry& geo = {});

/// An empty `locations` span means synthetic locations.
Deployment generate_outdoor(std::uint64_t seed, std::span<const Vec3> locations, int n_pop_a,
                            int n_pop_b, const OutdoorGeometry& geo = {});

/// Reads "x y" pairs (meters), one per line; '#' starts a comment.
std::vector<Vec3> load_locations(const std::filesystem::path& path);
std::vector<Vec3> parse_locations(std::string_view text);

std::vector<Vec3> synthetic_locations(std::uint64_t seed, const OutdoorGeometry& geo = {});

struct Crossings {
    int walls = 0;
    int floors = 0;
    bool operator==(const Crossings&) const = default;
};

Crossings wall_crossings(const Vec3& a, const Vec3& b, const SiteLayout& layout);

/// Sets every node's technology from its population.
Deployment with_technologies(Deployment dep, Technology tech_a, Technology tech_b);

}  // namespace coexrisk
