#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "mgms/errors.hpp"
#include "mgms/numerics.hpp"
#include "mgms/rng.hpp"

using namespace mgms;

namespace {

Eigen::VectorXcd random_vector(RngStream& s, int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = s.complex_normal();
    }
    return v;
}

Eigen::MatrixXcd random_matrix(RngStream& s, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int c = 0; c < cols; ++c) {
        m.col(c) = random_vector(s, rows);
    }
    return m;
}

} // namespace

TEST_CASE("harmonic_mean basics") {
    CHECK(harmonic_mean({1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(harmonic_mean({1.0, 1.0 / 3.0}) == doctest::Approx(0.5));
    CHECK(harmonic_mean({2.0, 4.0, 8.0}) == doctest::Approx(24.0 / 7.0));
    CHECK_THROWS_AS(harmonic_mean({}), std::invalid_argument);
    CHECK_THROWS_AS(harmonic_mean({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(harmonic_mean({1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("HpdMatrix solves by factorization") {
    using C = std::complex<double>;
    RngStream s(31);

    SUBCASE("identity is a no-op") {
        HpdMatrix r(Eigen::MatrixXcd::Identity(3, 3));
        Eigen::MatrixXcd b = random_matrix(s, 3, 2);
        CHECK((r.solve(b) - b).norm() < 1e-14);
    }
    SUBCASE("scalar matrix halves") {
        HpdMatrix r(2.0 * Eigen::MatrixXcd::Identity(3, 3));
        Eigen::MatrixXcd b = random_matrix(s, 3, 2);
        CHECK((r.solve(b) - 0.5 * b).norm() < 1e-14);
    }
    SUBCASE("rank-one update matches the explicit inverse") {
        Eigen::VectorXcd u = random_vector(s, 4);
        Eigen::MatrixXcd a =
            Eigen::MatrixXcd::Identity(4, 4) + u * u.adjoint();
        HpdMatrix r(a);
        Eigen::VectorXcd b = random_vector(s, 4);
        Eigen::VectorXcd via_inverse = a.inverse() * b;
        CHECK((r.solve(b) - via_inverse).norm() < 1e-10 * via_inverse.norm());
    }
    SUBCASE("residual stays tiny across sizes") {
        for (int n : {4, 16, 64}) {
            for (int trial = 0; trial < 100; ++trial) {
                Eigen::MatrixXcd g = random_matrix(s, n, n);
                Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n);
                a.noalias() += g * g.adjoint();
                a = 0.5 * (a + a.adjoint().eval()); // scrub rounding asymmetry
                HpdMatrix r(a);
                Eigen::VectorXcd b = random_vector(s, n);
                Eigen::VectorXcd x = r.solve(b);
                CHECK((a * x - b).norm() <= 1e-10 * b.norm());
            }
        }
    }
    SUBCASE("rejects non-Hermitian input") {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
        a(0, 1) = C(0.5, 0.0);
        CHECK_THROWS_AS(HpdMatrix{a}, std::invalid_argument);
    }
    SUBCASE("reports the failing pivot for indefinite input") {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(3, 3);
        a(1, 1) = C(-1.0, 0.0);
        try {
            HpdMatrix r(a);
            FAIL("expected SingularityError");
        } catch (const SingularityError& e) {
            CHECK(e.pivot() == 1);
        }
    }
}

TEST_CASE("OrthonormalBasis append") {
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
    e1(0) = 1.0;
    Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(3);
    e2(1) = 1.0;

    SUBCASE("first vector is normalized") {
        OrthonormalBasis basis(3);
        Eigen::VectorXcd f = basis.append(2.0 * e1);
        CHECK((f - e1).norm() < 1e-15);
        CHECK(basis.size() == 1);
    }
    SUBCASE("orthogonal vector passes through") {
        OrthonormalBasis basis(3);
        basis.append(e1);
        Eigen::VectorXcd f = basis.append(e2);
        CHECK((f - e2).norm() < 1e-15);
    }
    SUBCASE("in-span vector is rejected") {
        OrthonormalBasis basis(3);
        basis.append(e1);
        CHECK_THROWS_AS(basis.append(e1), DegenerateDirectionError);
    }
    SUBCASE("random appends stay orthonormal") {
        RngStream s(77);
        const int n = 24;
        OrthonormalBasis basis(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXcd v(n);
            for (int k = 0; k < n; ++k) {
                v(k) = s.complex_normal();
            }
            basis.append(v);
        }
        const Eigen::MatrixXcd& q = basis.vectors();
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(q.col(i).norm() - 1.0) <= 1e-9);
            for (int j = 0; j < i; ++j) {
                CHECK(std::abs(q.col(i).dot(q.col(j))) <= 1e-8);
            }
        }
    }
}

TEST_CASE("phase_align pins the reference element") {
    using C = std::complex<double>;

    Eigen::VectorXcd v(2);
    v << C(1.0, 1.0), C(0.0, 0.0);
    Eigen::VectorXcd y = phase_align(v);
    CHECK(std::abs(y(0) - C(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(y(1)) < 1e-15);

    Eigen::VectorXcd w(3);
    w << C(2.0, 0.0), C(0.0, 0.0), C(0.0, 0.0);
    Eigen::VectorXcd z = phase_align(w);
    CHECK(std::abs(z(0) - C(1.0, 0.0)) < 1e-15);

    // Degenerate leading element falls through to the next one.
    Eigen::VectorXcd d(2);
    d << C(0.0, 0.0), C(0.0, 1.0);
    Eigen::VectorXcd a = phase_align(d);
    CHECK(std::abs(a(0)) < 1e-15);
    CHECK(std::abs(a(1) - C(1.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS(phase_align(Eigen::VectorXcd::Zero(3)),
                    DegenerateDirectionError);
}

TEST_CASE("phase_align is idempotent and geometry-preserving") {
    RngStream s(55);
    std::vector<Eigen::VectorXcd> raw;
    std::vector<Eigen::VectorXcd> aligned;
    for (int i = 0; i < 6; ++i) {
        Eigen::VectorXcd v = random_vector(s, 5);
        raw.push_back(v);
        aligned.push_back(phase_align(v));
    }
    for (const auto& y : aligned) {
        CHECK(std::abs(y.norm() - 1.0) < 1e-12);
        CHECK((phase_align(y) - y).norm() < 1e-12);
    }
    for (size_t i = 0; i < raw.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            double got = std::abs(aligned[i].dot(aligned[j]));
            double want = std::abs(raw[i].dot(raw[j])) /
                          (raw[i].norm() * raw[j].norm());
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}
