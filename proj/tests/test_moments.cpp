#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "varbounds/moments.hpp"

using namespace varbounds;

namespace {

QuantumState basis_state(int d, int k) {
    CVector v = CVector::Zero(d);
    v[k] = 1.0;
    return QuantumState::pure(v);
}

QuantumState random_mixed(std::mt19937_64& rng, int d) {
    CMatrix g(d, d);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return QuantumState::mixed(rho);
}

}  // namespace

TEST_CASE("spin-1 moments at |1>") {
    const auto l = spin1_operators();
    const auto s = basis_state(3, 0);
    CHECK(expectation(s, l.z) == doctest::Approx(1.0));
    CHECK(variance(s, l.x) == doctest::Approx(0.5));
    CHECK(variance(s, l.y) == doctest::Approx(0.5));
    CHECK(std::abs(covariance(s, l.x, l.y)) < 1e-14);
    CHECK(std::abs(commutator_expectation(s, l.x, l.y) - Complex(0.0, 1.0)) < 1e-14);
}

TEST_CASE("commutator of Pauli x and y at |0>") {
    const auto p = pauli_operators();
    const auto s = basis_state(2, 0);
    CHECK(std::abs(commutator_expectation(s, p.x, p.y) - Complex(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(anticommutator_expectation(s, p.x, p.y)) < 1e-14);
    CHECK(variance(s, p.x) == doctest::Approx(1.0));
}

TEST_CASE("Bloch-family covariance of sigma_x and sigma_z") {
    const auto p = pauli_operators();
    for (double theta : {0.3, 1.0, 2.0, std::numbers::pi}) {
        const std::array<double, 3> r{std::cos(theta / 2), std::sqrt(3.0) / 2 * std::sin(theta / 2),
                                      0.5 * std::sin(theta / 2)};
        const auto s = qubit_state_from_bloch(r);
        CHECK(covariance(s, p.x, p.z) == doctest::Approx(-0.25 * std::sin(theta)).epsilon(1e-12));
        CHECK(variance(s, p.x) == doctest::Approx(1.0 - r[0] * r[0]));
        CHECK(variance(s, p.z) == doctest::Approx(1.0 - r[2] * r[2]));
    }
}

TEST_CASE("deviation vector norm equals the variance") {
    std::mt19937_64 rng(21);
    for (int d : {2, 3, 5}) {
        const Observable a(oracle::random_hermitian(rng, d));
        const auto s = QuantumState::pure(oracle::random_state(rng, d));
        const auto f = deviation_vector(s, a);
        CHECK(f.norm_squared() == doctest::Approx(variance(s, a)).epsilon(1e-12));
        CHECK(std::abs(s.vector().dot(f.entries)) < 1e-12);
    }
    const auto mixed = QuantumState::mixed(CMatrix::Identity(2, 2) * 0.5);
    CHECK_THROWS_AS(deviation_vector(mixed, pauli_operators().x), Error);
}

TEST_CASE("moments agree with outcome-distribution oracles") {
    std::mt19937_64 rng(4);
    for (int d : {2, 3, 4, 6}) {
        for (int rep = 0; rep < 5; ++rep) {
            const CMatrix am = oracle::random_hermitian(rng, d);
            const CMatrix bm = oracle::random_hermitian(rng, d);
            const Observable a(am), b(bm);
            const auto pure = QuantumState::pure(oracle::random_state(rng, d));
            const auto mixed = random_mixed(rng, d);
            for (const auto* s : {&pure, &mixed}) {
                const auto m = moments(*s, a, b);
                CHECK(m.var_a == doctest::Approx(oracle::variance(s->density(), am)).epsilon(1e-10));
                CHECK(m.var_b == doctest::Approx(oracle::variance(s->density(), bm)).epsilon(1e-10));
                CHECK(std::abs(m.cov - oracle::covariance(s->density(), am, bm)) < 1e-10);
                CHECK(m.cov * m.cov <= m.var_a * m.var_b + 1e-12);
                CHECK(std::abs(m.comm_expect.real()) < 1e-15);
            }
        }
    }
}

TEST_CASE("pure state and its density give the same moments") {
    std::mt19937_64 rng(8);
    const int d = 4;
    const Observable a(oracle::random_hermitian(rng, d)), b(oracle::random_hermitian(rng, d));
    const auto pure = QuantumState::pure(oracle::random_state(rng, d));
    const auto as_density = QuantumState::mixed(pure.density());
    const auto m1 = moments(pure, a, b);
    const auto m2 = moments(as_density, a, b);
    CHECK(std::abs(m1.var_a - m2.var_a) < 1e-12);
    CHECK(std::abs(m1.var_b - m2.var_b) < 1e-12);
    CHECK(std::abs(m1.cov - m2.cov) < 1e-12);
    CHECK(std::abs(m1.comm_expect - m2.comm_expect) < 1e-12);
}

TEST_CASE("dimension mismatch is reported") {
    const auto s = basis_state(3, 0);
    try {
        variance(s, pauli_operators().x);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}
