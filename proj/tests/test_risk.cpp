#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "coexrisk/risk.hpp"

using namespace coexrisk;

namespace {

double ccdf_at(const std::vector<CcdfPoint>& c, double v) {
    // Right-continuous step: value of the last point at or below v.
    double p = 1.0;
    for (const CcdfPoint& pt : c)
        if (pt.value <= v) p = pt.probability;
    return p;
}

ApResult ap(int id, Population pop, double mbps) {
    ApResult r;
    r.ap = id;
    r.population = pop;
    r.throughput_mbps = mbps;
    return r;
}

CampaignResult toy_campaign() {
    CampaignResult c;
    c.config.n_pop_a = 2;
    c.config.n_pop_b = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        RealizationResult r;
        r.index = i;
        const double k = 1.0 + static_cast<double>(i);
        r.coexistence.aps = {ap(0, Population::a, 5.0 * k), ap(1, Population::a, i == 2 ? 0.0 : 2.0), ap(2, Population::b, 1.0)};
        ThroughputReport base;
        base.aps = {ap(0, Population::a, 10.0 * k), ap(1, Population::a, i == 1 ? 0.0 : 4.0)};
        r.standalone = base;
        c.realizations.push_back(r);
    }
    return c;
}

}  // namespace

TEST_CASE("degradation") {
    CHECK(*degradation(10.0, 2.5) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(*degradation(7.0, 7.0) == 0.0);
    CHECK(*degradation(5.0, 6.0) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK_FALSE(degradation(0.0, 1.0).has_value());
    CHECK(*degradation(3.0, 0.0) == 1.0);
}

TEST_CASE("Jain index and unfairness") {
    CHECK(*jain({1, 1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*jain({1, 0, 0, 0}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(*jain({2, 2, 4}) == doctest::Approx(64.0 / 72.0).epsilon(1e-12));
    CHECK(std::fabs(*jain({2, 2, 4}) - 0.8889) < 1e-4);
    CHECK_FALSE(jain({}).has_value());
    CHECK_FALSE(jain({0, 0, 0}).has_value());
    CHECK(unfairness(1.0) == 0.0);
    CHECK(unfairness(0.25) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("Jain bounds and scale invariance") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 70.0);
    std::uniform_int_distribution<int> len(1, 40);
    for (int trial = 0; trial < 5000; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        for (double& x : v) x = u(rng);
        const double n = static_cast<double>(v.size());
        const double j = *jain(v);
        REQUIRE(j >= 1.0 / n - 1e-12);
        REQUIRE(j <= 1.0 + 1e-12);
        REQUIRE(unfairness(j) <= 1.0 - 1.0 / n + 1e-12);
        std::vector<double> scaled = v;
        const double k = 0.01 + u(rng);
        for (double& x : scaled) x *= k;
        REQUIRE(*jain(scaled) == doctest::Approx(j).epsilon(1e-12));
    }
}

TEST_CASE("empirical CCDF") {
    const auto c = empirical_ccdf({3, 1, 2});
    REQUIRE(c.size() == 4);
    CHECK(c[0].probability == 1.0);
    CHECK(c[0].value < 1.0);
    CHECK(ccdf_at(c, 1.0) == doctest::Approx(2.0 / 3.0));
    CHECK(ccdf_at(c, 2.0) == doctest::Approx(1.0 / 3.0));
    CHECK(ccdf_at(c, 3.0) == 0.0);

    const auto point = empirical_ccdf({4.0, 4.0, 4.0});
    CHECK(ccdf_at(point, 4.0) == 0.0);
    CHECK(ccdf_at(point, 4.0 - 1e-6) == 1.0);
    CHECK_THROWS_AS(empirical_ccdf({}), RuntimeError);
}

TEST_CASE("CCDF is non-increasing and matches a direct count") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> u(-5, 5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> v(1 + static_cast<std::size_t>(trial % 50));
        for (double& x : v) x = u(rng) / 4.0;
        const auto c = empirical_ccdf(v);
        for (std::size_t i = 1; i < c.size(); ++i) {
            REQUIRE(c[i].probability <= c[i - 1].probability);
            REQUIRE(c[i].value > c[i - 1].value);
            const auto above = std::count_if(v.begin(), v.end(), [&](double x) { return x > c[i].value; });
            REQUIRE(c[i].probability == doctest::Approx(static_cast<double>(above) / static_cast<double>(v.size())));
        }
    }
}

TEST_CASE("percentiles interpolate linearly") {
    CHECK(percentile({1, 2, 3, 4, 5}, 50) == 3.0);
    CHECK(percentile({1, 2, 3, 4}, 50) == 2.5);
    CHECK(percentile({5, 1}, 0) == 1.0);
    CHECK(percentile({5, 1}, 100) == 5.0);
    CHECK(percentile({0, 10}, 25) == doctest::Approx(2.5));
}

TEST_CASE("aggregate degradation and unfairness") {
    const CampaignResult c = toy_campaign();
    const RiskSeries d = aggregate(c, Metric::degradation, BaselineKind::standalone);
    // Realization 1 has a zero baseline for AP 1.
    CHECK(d.samples.size() == 5);
    CHECK(d.excluded_zero_baseline == 1);
    CHECK(std::count(d.samples.begin(), d.samples.end(), 0.5) == 4);
    CHECK(std::count(d.samples.begin(), d.samples.end(), 1.0) == 1);

    const RiskSeries u = aggregate(c, Metric::unfairness, BaselineKind::standalone);
    CHECK(u.samples.size() == 3);
    CHECK(u.excluded_all_zero == 0);
    CHECK(u.samples[0] == doctest::Approx(unfairness(*jain({5.0, 2.0}))));
    CHECK(u.samples[2] == doctest::Approx(0.5));
    CHECK(u.ccdf.front().probability == 1.0);
    CHECK_THROWS_AS(aggregate(c, Metric::degradation, BaselineKind::wifi_entrant), ConfigError);
}

TEST_CASE("zero entrants give a step at zero") {
    CampaignResult c;
    c.config.n_pop_b = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        RealizationResult r;
        r.index = i;
        r.coexistence.aps = {ap(0, Population::a, 3.0 + static_cast<double>(i)), ap(1, Population::a, 1.0)};
        r.standalone = r.coexistence;
        c.realizations.push_back(r);
    }
    const RiskSeries d = aggregate(c, Metric::degradation, BaselineKind::standalone);
    CHECK(d.samples.size() == 8);
    for (double s : d.samples) CHECK(s == 0.0);
    REQUIRE(d.ccdf.size() == 2);
    CHECK(d.ccdf[1].value == 0.0);
    CHECK(d.ccdf[1].probability == 0.0);
}

TEST_CASE("labels and names") {
    RunConfig cfg;
    cfg.tech_b = Technology::laa;
    cfg.plan = PlanMode::single_1;
    cfg.scheme_b = SelectionScheme::single;
    CHECK(series_label(cfg) == "indoor_laa_10x10_single_1_single");
    for (Metric m : {Metric::degradation, Metric::unfairness}) CHECK(parse_metric(to_string(m)) == m);
    for (BaselineKind b : {BaselineKind::standalone, BaselineKind::wifi_entrant}) CHECK(parse_baseline_kind(to_string(b)) == b);
}
