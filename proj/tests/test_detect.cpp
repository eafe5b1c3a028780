#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "selfple/channel.hpp"
#include "selfple/detect.hpp"
#include "selfple/rng.hpp"

using namespace selfple;

namespace {

detect::ReferenceIdentity reference_at_origin(double gamma, double sigma) {
    detect::ReferenceIdentity id;
    id.node_id = "B";
    id.own_location = {0.0, 0.0, 0.0};
    id.self_gamma = gamma;
    id.shadow_sigma = sigma;
    return id;
}

detect::SuspectRecord record_with(const std::vector<double>& deltas) {
    detect::SuspectRecord rec;
    rec.suspect_id = "C";
    for (std::size_t i = 0; i < deltas.size(); ++i)
        rec.observations.push_back({static_cast<std::int64_t>(i), deltas[i]});
    return rec;
}

} // namespace

TEST_CASE("reference RSS prediction from a reported location") {
    const auto id = reference_at_origin(2.0, 6.0);
    // Unit constants and 1 m range: the prediction is the transmit power.
    const double c3 = detect::reference_c3_db(17.0, 0.0, id.self_gamma, 1.0);
    CHECK(detect::reference_rss_db(id, {1.0, 0.0, 0.0}, c3) == doctest::Approx(17.0));
    // Doubling the range at gamma = 2 drops the prediction by ~6.02 dB.
    const double at_50 = detect::reference_rss_db(id, {50.0, 0.0, 0.0}, c3);
    const double at_100 = detect::reference_rss_db(id, {100.0, 0.0, 0.0}, c3);
    CHECK(at_50 - at_100 == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(detect::reference_rss_db(id, {0.0, 0.0, 0.0}, c3), std::invalid_argument);
}

TEST_CASE("reference RSS composes with the channel path-loss model") {
    channel::ChannelParams p;
    p.ple = 3.5;
    p.shadow_sigma = 0.0;
    p.ref_distance = 1.0;
    p.prop_constant_db = -40.05;
    p.tx_power_dbm = 5.0;
    const auto id = reference_at_origin(3.5, 6.0);
    const double c3 =
        detect::reference_c3_db(p.tx_power_dbm, p.prop_constant_db, id.self_gamma, p.ref_distance);
    const double predicted = detect::reference_rss_db(id, {100.0, 0.0, 0.0}, c3);
    const double modeled = p.tx_power_dbm - channel::mean_path_loss_db(100.0, p);
    CHECK(predicted == doctest::Approx(modeled).epsilon(1e-12));
}

TEST_CASE("observations accumulate as actual minus reference") {
    detect::SuspectRecord rec;
    detect::record_observation(rec, 0, -61.0, -61.0);
    CHECK(rec.observations.back().delta_db == 0.0);
    detect::record_observation(rec, 1, -58.5, -61.0);
    CHECK(rec.observations.back().delta_db == doctest::Approx(2.5));
    CHECK_THROWS_AS(detect::record_observation(rec, 0, -60.0, -61.0), std::invalid_argument);
}

TEST_CASE("honest observations have zero mean; attackers shift by the range ratio") {
    channel::ChannelParams p;
    p.ple = 2.0;
    p.shadow_sigma = 6.0;
    p.ref_distance = 1.0;
    p.prop_constant_db = 0.0;
    p.tx_power_dbm = 0.0;
    const auto id = reference_at_origin(2.0, 6.0);
    const double c3 =
        detect::reference_c3_db(p.tx_power_dbm, p.prop_constant_db, id.self_gamma, p.ref_distance);
    const double reported_range = 100.0;
    const double ref_rss = detect::reference_rss_db(id, {reported_range, 0.0, 0.0}, c3);

    Rng gen(606);
    const int n = 10000;
    double honest_sum = 0.0, attacker_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        honest_sum += channel::sample_rss(reported_range, p, gen).rss_db - ref_rss;
        attacker_sum += channel::sample_rss(2.0 * reported_range, p, gen).rss_db - ref_rss;
    }
    CHECK(std::abs(honest_sum / n) < 3.0 * 6.0 / 100.0);
    // Range ratio 2 at gamma 2: the mean moves by 10 * 2 * log10(2) dB.
    const double shift = 10.0 * 2.0 * std::log10(2.0);
    CHECK(std::abs(attacker_sum / n) == doctest::Approx(shift).epsilon(0.03));
}

TEST_CASE("range test threshold reproduces the 3.84 sigma^2 / I rule at 5%") {
    const auto rec = record_with(std::vector<double>(25, 0.1));
    const auto result = detect::np_range_test(rec, 6.0, 25, 0.05);
    CHECK(result.threshold_sq == doctest::Approx(3.84 * 36.0 / 25.0).epsilon(0.002));
    CHECK(result.decision == detect::Decision::Trust); // rho = 0.1, threshold ~ 2.35
    const auto zero = detect::np_range_test(record_with(std::vector<double>(25, 0.0)), 6.0, 25, 0.3);
    CHECK(zero.decision == detect::Decision::Trust);
}

TEST_CASE("range test input contract") {
    const auto rec = record_with({0.1, 0.2});
    CHECK_THROWS_AS(detect::np_range_test(rec, 6.0, 3, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(detect::np_range_test(rec, 0.0, 2, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(detect::np_range_test(rec, 6.0, 2, 1.5), std::invalid_argument);
}

TEST_CASE("two-sided quantile region and chi-square region decide identically") {
    Rng gen(12);
    const double sigma = 4.0;
    const int window = 9;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> deltas(window);
        for (auto& d : deltas) d = gen.normal(0.0, sigma * gen.uniform(0.2, 2.0));
        const auto rec = record_with(deltas);
        const auto result = detect::np_range_test(rec, sigma, window, 0.05);
        const double z = oracles::kZ975;
        const bool two_sided = result.rho <= -z * sigma / 3.0 || result.rho >= z * sigma / 3.0;
        CHECK(two_sided == (result.decision == detect::Decision::Attacker));
    }
}

TEST_CASE("false-alarm rate matches the configured level across sigma and window") {
    for (double sigma : {4.0, 8.0, 12.0}) {
        for (int window : {9, 25, 100}) {
            Rng gen(derive_seed(99, static_cast<std::uint64_t>(sigma * 1000 + window)));
            int rejections = 0;
            const int trials = 10000;
            std::vector<double> deltas(window);
            for (int t = 0; t < trials; ++t) {
                for (auto& d : deltas) d = gen.normal(0.0, sigma);
                const auto rec = record_with(deltas);
                if (detect::np_range_test(rec, sigma, window, 0.05).decision ==
                    detect::Decision::Attacker)
                    ++rejections;
            }
            const double rate = static_cast<double>(rejections) / trials;
            CHECK(rate > 0.04);
            CHECK(rate < 0.06);
        }
    }
}

TEST_CASE("detection power grows with the range offset") {
    const double sigma = 6.0;
    const int window = 25;
    const double gamma = 2.0;
    std::vector<double> rates;
    for (double ratio : {1.0, 1.25, 1.5, 2.0, 3.0}) {
        Rng gen(derive_seed(31337, static_cast<std::uint64_t>(ratio * 100)));
        const double mean_shift = -10.0 * gamma * std::log10(ratio);
        int rejections = 0;
        const int trials = 1000;
        std::vector<double> deltas(window);
        for (int t = 0; t < trials; ++t) {
            for (auto& d : deltas) d = mean_shift + gen.normal(0.0, sigma);
            if (detect::np_range_test(record_with(deltas), sigma, window, 0.05).decision ==
                detect::Decision::Attacker)
                ++rejections;
        }
        rates.push_back(static_cast<double>(rejections) / trials);
    }
    for (std::size_t i = 1; i < rates.size(); ++i) CHECK(rates[i] >= rates[i - 1]);
    CHECK(rates.back() > 0.99);
}

TEST_CASE("announcement board requires strictly more than T distinct references") {
    detect::AnnouncementBoard board;
    CHECK(board.record_announcement("A", "C"));
    CHECK(board.record_announcement("B", "C"));
    CHECK(!board.record_announcement("B", "C")); // duplicates count once
    CHECK(board.distinct_announcers("C") == 2);
    CHECK(!board.confirmed("C", 2)); // exactly T is not enough
    CHECK(board.record_announcement("D", "C"));
    CHECK(board.confirmed("C", 2));
    // Monotone: more announcements never un-confirm.
    board.record_announcement("E", "C");
    CHECK(board.confirmed("C", 2));
    CHECK(board.distinct_announcers("unknown") == 0);
}

TEST_CASE("trust region band around the reported range") {
    const auto id = reference_at_origin(2.0, 6.0);
    const auto [inner, outer] = detect::trust_region_band(id, {100.0, 0.0, 0.0}, 6.0, 25, 0.05);
    CHECK(inner == doctest::Approx(76.3).epsilon(0.002));
    CHECK(outer == doctest::Approx(131.1).epsilon(0.002));
    CHECK(inner < 100.0);
    CHECK(outer > 100.0);
    // The band shrinks like 1/sqrt(I).
    const auto [inner2, outer2] = detect::trust_region_band(id, {100.0, 0.0, 0.0}, 6.0, 100, 0.05);
    CHECK(outer2 - inner2 < outer - inner);
    const auto [inner3, outer3] = detect::trust_region_band(id, {100.0, 0.0, 0.0}, 6.0, 400, 0.05);
    CHECK(outer3 - inner3 < outer2 - inner2);
}

TEST_CASE("event rows render to stable CSV") {
    detect::EventRow row;
    row.time = 7;
    row.detector_id = "B";
    row.suspect_id = "C";
    row.rho = -2.5;
    row.threshold = 2.352;
    row.decision = detect::Decision::Attacker;
    CHECK(detect::event_csv_header() == "time,detector_id,suspect_id,rho,threshold,decision");
    CHECK(detect::to_csv_row(row) == "7,B,C,-2.5,2.352,attacker");
}
