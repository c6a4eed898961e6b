#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "mgms/beamforming.hpp"
#include "mgms/rng.hpp"
#include "oracles.hpp"

using namespace mgms;

namespace {

Eigen::MatrixXcd random_fading(RngStream& s, int n, int k) {
    Eigen::MatrixXcd g(n, k);
    for (int c = 0; c < k; ++c) {
        for (int r = 0; r < n; ++r) {
            g(r, c) = s.complex_normal();
        }
    }
    return g;
}

ChannelSet make_channels(const std::vector<Eigen::MatrixXcd>& fading,
                         const std::vector<Eigen::VectorXd>& beta) {
    ChannelSet set;
    set.fading = fading;
    set.beta = beta;
    for (size_t i = 0; i < fading.size(); ++i) {
        Eigen::MatrixXcd h = fading[i];
        for (int k = 0; k < h.cols(); ++k) {
            h.col(k) *= std::sqrt(beta[i](k));
        }
        set.channels.push_back(std::move(h));
    }
    return set;
}

ChannelSet random_channels(RngStream& s, int n, const std::vector<int>& users) {
    std::vector<Eigen::MatrixXcd> fading;
    std::vector<Eigen::VectorXd> beta;
    for (int k : users) {
        fading.push_back(random_fading(s, n, k));
        Eigen::VectorXd b(k);
        for (int u = 0; u < k; ++u) {
            b(u) = 0.2 + 2.0 * s.uniform();
        }
        beta.push_back(b);
    }
    return make_channels(fading, beta);
}

} // namespace

TEST_CASE("evaluate_sinr closed forms") {
    RngStream s(41);

    SUBCASE("single group sees no interference") {
        ChannelSet set = random_channels(s, 4, {2});
        Eigen::MatrixXcd w = random_fading(s, 4, 1);
        auto sinr = evaluate_sinr(w, {0}, set, 2.0);
        REQUIRE(sinr.size() == 1);
        for (int k = 0; k < 2; ++k) {
            double expect =
                std::norm(w.col(0).dot(set.channels[0].col(k))) / 2.0;
            CHECK(sinr[0][k] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("orthogonal beams cancel cross terms") {
        // Groups live on disjoint antennas; beams matched to each group.
        Eigen::MatrixXcd g1 = Eigen::MatrixXcd::Zero(4, 1);
        g1(0, 0) = 1.0;
        Eigen::MatrixXcd g2 = Eigen::MatrixXcd::Zero(4, 1);
        g2(2, 0) = 1.0;
        ChannelSet set = make_channels(
            {g1, g2}, {Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)});
        Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(4, 2);
        w(0, 0) = 2.0;
        w(2, 1) = 3.0;
        auto sinr = evaluate_sinr(w, {0, 1}, set, 1.0);
        CHECK(sinr[0][0] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(sinr[1][0] == doctest::Approx(9.0).epsilon(1e-12));
    }
    SUBCASE("matches the scalar re-computation") {
        ChannelSet set = random_channels(s, 4, {2, 1, 3});
        Eigen::MatrixXcd w = random_fading(s, 4, 3);
        auto fast = evaluate_sinr(w, {0, 1, 2}, set, 1.7);
        auto slow = oracles::sinr_reference(w, {0, 1, 2}, set, 1.7);
        REQUIRE(fast.size() == slow.size());
        for (size_t i = 0; i < fast.size(); ++i) {
            REQUIRE(fast[i].size() == slow[i].size());
            for (size_t k = 0; k < fast[i].size(); ++k) {
                CHECK(fast[i][k] ==
                      doctest::Approx(slow[i][k]).epsilon(1e-12));
            }
        }
    }
    SUBCASE("rejects mismatched column counts") {
        ChannelSet set = random_channels(s, 4, {1, 1});
        Eigen::MatrixXcd w = random_fading(s, 4, 1);
        CHECK_THROWS_AS(evaluate_sinr(w, {0, 1}, set, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("pooled_covariance closed form") {
    RngStream s(42);
    ChannelSet set = random_channels(s, 4, {2, 1});
    const double power = 10.0, noise = 2.0;
    HpdMatrix r = pooled_covariance(set, {0, 1}, power, noise);

    std::vector<double> gains;
    for (int i : {0, 1}) {
        for (int k = 0; k < set.users_in(i); ++k) {
            gains.push_back(set.beta[i](k));
        }
    }
    double beta_h = harmonic_mean(gains);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(4, 4);
    double coef = power * beta_h / (noise * 3.0);
    for (int i : {0, 1}) {
        for (int k = 0; k < set.users_in(i); ++k) {
            expect += coef * set.fading[i].col(k) *
                      set.fading[i].col(k).adjoint();
        }
    }
    CHECK((r.matrix() - expect).norm() < 1e-12 * expect.norm());
}

TEST_CASE("asymptotic_beamformers: power, collinearity, symmetry") {
    RngStream s(43);
    const double power = 10.0, noise = 1.0;

    SUBCASE("total power is exactly the budget") {
        for (int trial = 0; trial < 10; ++trial) {
            ChannelSet set = random_channels(s, 6, {2, 3, 1});
            Eigen::MatrixXcd w =
                asymptotic_beamformers(set, {0, 1, 2}, power, noise);
            CHECK(w.squaredNorm() ==
                  doctest::Approx(power).epsilon(1e-9));
        }
    }
    SUBCASE("singleton slot is collinear with the whitened channel") {
        ChannelSet set = random_channels(s, 5, {1});
        Eigen::MatrixXcd w = asymptotic_beamformers(set, {0}, power, noise);
        HpdMatrix r = pooled_covariance(set, {0}, power, noise);
        Eigen::VectorXcd ref =
            r.solve(Eigen::VectorXcd(set.channels[0].col(0)));
        double cosine =
            std::abs(w.col(0).dot(ref)) / (w.col(0).norm() * ref.norm());
        CHECK(cosine == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("mirror-symmetric groups get equal power") {
        // Two single-user groups with channels that are unitary images of
        // each other and equal beta: the closed form must split power evenly.
        Eigen::MatrixXcd g1 = Eigen::MatrixXcd::Zero(4, 1);
        Eigen::MatrixXcd g2 = Eigen::MatrixXcd::Zero(4, 1);
        g1(0, 0) = std::complex<double>(0.8, 0.3);
        g1(1, 0) = std::complex<double>(-0.2, 0.5);
        g2(2, 0) = g1(0, 0);
        g2(3, 0) = g1(1, 0);
        Eigen::VectorXd b = Eigen::VectorXd::Ones(1) * 0.7;
        ChannelSet set = make_channels({g1, g2}, {b, b});
        Eigen::MatrixXcd w = asymptotic_beamformers(set, {0, 1}, power, noise);
        CHECK(w.col(0).squaredNorm() ==
              doctest::Approx(w.col(1).squaredNorm()).epsilon(1e-9));
        CHECK(w.squaredNorm() == doctest::Approx(power).epsilon(1e-9));
    }
    SUBCASE("min-SINR shortcut agrees with evaluating the closed form") {
        ChannelSet set = random_channels(s, 6, {2, 2});
        Eigen::MatrixXcd w = asymptotic_beamformers(set, {0, 1}, power, noise);
        auto sinr = evaluate_sinr(w, {0, 1}, set, noise);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& group : sinr) {
            for (double v : group) {
                worst = std::min(worst, v);
            }
        }
        CHECK(asymptotic_min_sinr(set, {0, 1}, power, noise) ==
              doctest::Approx(worst).epsilon(1e-12));
    }
}

TEST_CASE("solve_slot_beamformers closed-form cases") {
    RngStream s(44);
    PsaSettings psa;
    const double power = 10.0, noise = 1.0;

    SUBCASE("lone single-user group is a matched filter at full power") {
        ChannelSet set = random_channels(s, 5, {1});
        SlotBeamformers slot =
            solve_slot_beamformers(set, {0}, 0, power, noise, psa);
        const Eigen::VectorXcd h = set.channels[0].col(0);
        double expect = power * h.squaredNorm() / noise;
        CHECK(slot.sinr[0][0] == doctest::Approx(expect).epsilon(1e-6));
        double cosine = std::abs(slot.beamformers.col(0).dot(h)) /
                        (slot.beamformers.col(0).norm() * h.norm());
        CHECK(cosine >= 1.0 - 1e-6);
        CHECK(slot.beamformers.squaredNorm() ==
              doctest::Approx(power).epsilon(1e-9));
        CHECK(slot.min_rate ==
              doctest::Approx(std::log2(1.0 + slot.sinr[0][0])));
    }
    SUBCASE("orthogonal equal-norm singleton groups split the budget") {
        Eigen::MatrixXcd g1 = Eigen::MatrixXcd::Zero(4, 1);
        g1(0, 0) = 1.5;
        Eigen::MatrixXcd g2 = Eigen::MatrixXcd::Zero(4, 1);
        g2(1, 0) = 1.5;
        Eigen::VectorXd b = Eigen::VectorXd::Ones(1);
        ChannelSet set = make_channels({g1, g2}, {b, b});
        SlotBeamformers slot =
            solve_slot_beamformers(set, {0, 1}, 0, power, noise, psa);
        double expect = 0.5 * power * g1.squaredNorm() / noise;
        CHECK(slot.sinr[0][0] == doctest::Approx(expect).epsilon(1e-3));
        CHECK(slot.sinr[1][0] == doctest::Approx(expect).epsilon(1e-3));
        CHECK(slot.beamformers.squaredNorm() ==
              doctest::Approx(power).epsilon(1e-9));
    }
    SUBCASE("solution dominates the closed-form initializer") {
        for (int trial = 0; trial < 5; ++trial) {
            ChannelSet set = random_channels(s, 6, {2, 1, 2});
            std::vector<int> groups{0, 1, 2};
            SlotBeamformers slot =
                solve_slot_beamformers(set, groups, 0, power, noise, psa);
            CHECK(slot.beamformers.squaredNorm() ==
                  doctest::Approx(power).epsilon(1e-9));
            double start = asymptotic_min_sinr(set, groups, power, noise);
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& group : slot.sinr) {
                for (double v : group) {
                    worst = std::min(worst, v);
                }
            }
            CHECK(worst >= start * (1.0 - 1e-9));
            // Reported SINRs agree with the scalar reference.
            auto slow = oracles::sinr_reference(slot.beamformers, groups, set,
                                                noise);
            for (size_t i = 0; i < slow.size(); ++i) {
                for (size_t k = 0; k < slow[i].size(); ++k) {
                    CHECK(slot.sinr[i][k] ==
                          doctest::Approx(slow[i][k]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("two-antenna two-group solves reach the unrestricted optimum") {
    RngStream s(45);
    PsaSettings psa;
    const double power = 10.0, noise = 1.0;
    for (int trial = 0; trial < 8; ++trial) {
        ChannelSet set = random_channels(s, 2, {1, 1});
        SlotBeamformers slot =
            solve_slot_beamformers(set, {0, 1}, 0, power, noise, psa);
        double worst = std::min(slot.sinr[0][0], slot.sinr[1][0]);
        double oracle = oracles::two_group_bloch_oracle(
            set.channels[0].col(0), set.channels[1].col(0), power, noise);
        CHECK(worst >= oracle * (1.0 - 1e-2));
    }
}

TEST_CASE("min_throughput divides the worst rate by the slot count") {
    SlotBeamformers a;
    a.min_rate = 2.0;
    SlotBeamformers b;
    b.min_rate = 1.0;

    CHECK(min_throughput({a}) == doctest::Approx(2.0));
    CHECK(min_throughput({a, b}) == doctest::Approx(0.5));

    SlotBeamformers c;
    c.min_rate = 1.5;
    CHECK(min_throughput({a, b, c}) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(min_throughput({}), std::invalid_argument);
}
