#include <doctest.h>

#include <cmath>
#include <set>

#include "mgms/channel.hpp"
#include "mgms/config.hpp"
#include "mgms/rng.hpp"

using namespace mgms;

namespace {

SystemConfig basic_config() {
    SystemConfig cfg;
    cfg.num_antennas = 4;
    cfg.num_groups = 3;
    cfg.users_per_group = {2, 1, 3};
    cfg.rng_seed = 42;
    return cfg;
}

} // namespace

TEST_CASE("derive_seed is deterministic and tag-sensitive") {
    auto a = derive_seed(1, {2, 3});
    CHECK(a == derive_seed(1, {2, 3}));
    std::set<std::uint64_t> seen{a};
    CHECK(seen.insert(derive_seed(1, {3, 2})).second);   // order matters
    CHECK(seen.insert(derive_seed(1, {2})).second);      // length matters
    CHECK(seen.insert(derive_seed(2, {2, 3})).second);   // master matters
    CHECK(seen.insert(derive_seed(1, {2, 3, 0})).second);
}

TEST_CASE("RngStream draws are reproducible and in range") {
    RngStream a(7), b(7);
    for (int i = 0; i < 100; ++i) {
        double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    RngStream c(9);
    for (int i = 0; i < 100; ++i) {
        double v = c.uniform(2.0, 5.0);
        CHECK(v >= 2.0);
        CHECK(v < 5.0);
    }
    CHECK(RngStream(1).uniform(0.5, 0.5) == 0.5);
    RngStream d(11);
    for (int i = 0; i < 100; ++i) {
        int k = d.uniform_index(3);
        CHECK(k >= 0);
        CHECK(k < 3);
    }
}

TEST_CASE("complex_normal has unit variance and zero mean") {
    RngStream s(123);
    const int n = 20000;
    std::complex<double> sum(0.0, 0.0);
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        auto z = s.complex_normal();
        sum += z;
        sum_sq += std::norm(z);
    }
    CHECK(std::abs(sum / double(n)) < 0.03);
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("pathloss_variance formula") {
    CHECK(pathloss_variance(1.0, std::pow(10.0, -0.5), 3.0) ==
          doctest::Approx(0.31623).epsilon(1e-4));
    CHECK(pathloss_variance(0.5, std::pow(10.0, -0.5), 3.0) ==
          doctest::Approx(2.52982).epsilon(1e-4));
    CHECK(pathloss_variance(1.0, 1.0, 0.0) == 1.0);
    CHECK_THROWS_AS(pathloss_variance(0.0, 1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(pathloss_variance(1.0, -1.0, 3.0), std::invalid_argument);
}

TEST_CASE("calibrate_pathloss_constant hits the boundary SNR") {
    SystemConfig cfg = basic_config();
    cfg.cell_radius = 1.0;
    cfg.noise_variance = 1.0;
    cfg.boundary_snr_db = -5.0;
    cfg.pathloss_exponent = 3.0;
    CHECK(calibrate_pathloss_constant(cfg) ==
          doctest::Approx(0.316228).epsilon(1e-6));
    cfg.boundary_snr_db = 0.0;
    CHECK(calibrate_pathloss_constant(cfg) == doctest::Approx(1.0));
    cfg.boundary_snr_db = -5.0;
    cfg.cell_radius = 2.0;
    CHECK(calibrate_pathloss_constant(cfg) ==
          doctest::Approx(2.52982).epsilon(1e-5));

    // Boundary calibration closes exactly: a user at distance R sees the
    // configured SNR.
    SystemConfig any = basic_config();
    any.cell_radius = 0.7;
    any.max_distance = 0.7;
    any.noise_variance = 2.5;
    any.boundary_snr_db = -5.0;
    double xi = calibrate_pathloss_constant(any);
    double beta_at_edge =
        pathloss_variance(any.cell_radius, xi, any.pathloss_exponent);
    double target = std::pow(10.0, any.boundary_snr_db / 10.0);
    CHECK(beta_at_edge / any.noise_variance ==
          doctest::Approx(target).epsilon(1e-12));
}

TEST_CASE("generate_drop determinism, bounds, and mean") {
    SystemConfig cfg = basic_config();
    RngStream s1(derive_seed(cfg.rng_seed, {0}));
    RngStream s2(derive_seed(cfg.rng_seed, {0}));
    UserDrop d1 = generate_drop(cfg, s1);
    UserDrop d2 = generate_drop(cfg, s2);
    REQUIRE(d1.distances.size() == 3);
    CHECK(d1.distances[2].size() == 3);
    for (size_t i = 0; i < d1.distances.size(); ++i) {
        CHECK(d1.distances[i] == d2.distances[i]);
        for (int k = 0; k < d1.distances[i].size(); ++k) {
            CHECK(d1.distances[i](k) >= cfg.min_distance);
            CHECK(d1.distances[i](k) <= cfg.max_distance);
        }
    }

    // Law-of-large-numbers check on the uniform distance distribution.
    SystemConfig big = basic_config();
    big.num_groups = 1;
    big.users_per_group = {1};
    RngStream s3(99);
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        sum += generate_drop(big, s3).distances[0](0);
    }
    double mean = sum / n;
    double center = 0.5 * (big.min_distance + big.max_distance);
    double half_width = 0.5 * (big.max_distance - big.min_distance);
    double se = half_width / std::sqrt(3.0) / std::sqrt(double(n));
    CHECK(std::abs(mean - center) < 3.0 * se);

    // Degenerate interval pins every distance.
    SystemConfig flat = basic_config();
    flat.min_distance = 0.5;
    flat.max_distance = 0.5;
    RngStream s4(5);
    UserDrop fd = generate_drop(flat, s4);
    for (const auto& group : fd.distances) {
        for (int k = 0; k < group.size(); ++k) {
            CHECK(group(k) == 0.5);
        }
    }
}

TEST_CASE("generate_channels determinism and construction identity") {
    SystemConfig cfg = basic_config();
    RngStream ds(derive_seed(cfg.rng_seed, {0}));
    UserDrop drop = generate_drop(cfg, ds);
    RngStream f1(derive_seed(cfg.rng_seed, {1}));
    RngStream f2(derive_seed(cfg.rng_seed, {1}));
    ChannelSet c1 = generate_channels(drop, cfg, f1);
    ChannelSet c2 = generate_channels(drop, cfg, f2);
    REQUIRE(c1.num_groups() == 3);
    CHECK(c1.num_antennas() == 4);
    CHECK(c1.users_in(2) == 3);
    CHECK(c1.total_users() == 6);
    for (int i = 0; i < 3; ++i) {
        CHECK(c1.channels[i] == c2.channels[i]);
        CHECK(c1.fading[i] == c2.fading[i]);
        CHECK(c1.beta[i] == c2.beta[i]);
        // h = sqrt(beta) g exactly, column by column.
        for (int k = 0; k < c1.users_in(i); ++k) {
            Eigen::VectorXcd expect =
                std::sqrt(c1.beta[i](k)) * c1.fading[i].col(k);
            CHECK((c1.channels[i].col(k) - expect).norm() == 0.0);
            CHECK(c1.beta[i](k) ==
                  pathloss_variance(drop.distances[i](k), drop.xi,
                                    cfg.pathloss_exponent));
        }
    }
}

TEST_CASE("fading entries have unit second moment") {
    SystemConfig cfg;
    cfg.num_antennas = 10;
    cfg.num_groups = 1;
    cfg.users_per_group = {1};
    RngStream ds(1);
    UserDrop drop = generate_drop(cfg, ds);
    double sum = 0.0;
    int count = 0;
    RngStream fs(2);
    for (int rep = 0; rep < 1000; ++rep) {
        ChannelSet c = generate_channels(drop, cfg, fs);
        sum += c.fading[0].squaredNorm();
        count += 10;
    }
    CHECK(sum / count == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("beta scaling doubles the channel norm") {
    SystemConfig cfg;
    cfg.num_antennas = 6;
    cfg.num_groups = 1;
    cfg.users_per_group = {1};
    cfg.noise_variance = 1.0;
    cfg.cell_radius = 1.0;
    cfg.min_distance = 1.0; // pin the user to the boundary, where beta = xi
    cfg.max_distance = 1.0;
    cfg.boundary_snr_db = 10.0 * std::log10(4.0); // xi = 4
    RngStream ds(3);
    UserDrop drop = generate_drop(cfg, ds);
    RngStream fs(4);
    ChannelSet c = generate_channels(drop, cfg, fs);
    CHECK(c.beta[0](0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c.channels[0].col(0).norm() ==
          doctest::Approx(2.0 * c.fading[0].col(0).norm()).epsilon(1e-12));
}

TEST_CASE("SystemConfig validation rejects bad shapes") {
    SystemConfig cfg = basic_config();
    CHECK_NOTHROW(cfg.validate());
    SystemConfig bad = cfg;
    bad.num_antennas = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.users_per_group = {2, 1}; // wrong length
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.users_per_group = {2, 0, 3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.power_budget = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.min_distance = 0.8;
    bad.max_distance = 0.4;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
