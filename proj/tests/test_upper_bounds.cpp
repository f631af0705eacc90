#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "varbounds/upper_bounds.hpp"

using namespace varbounds;

namespace {

QuantumState basis_state(int d, int k) {
    CVector v = CVector::Zero(d);
    v[k] = 1.0;
    return QuantumState::pure(v);
}

QuantumState bloch_family(double theta) {
    return qubit_state_from_bloch(
        {std::cos(theta / 2), std::sqrt(3.0) / 2 * std::sin(theta / 2), 0.5 * std::sin(theta / 2)});
}

QuantumState qubit(double c, double s) {
    CVector v(2);
    v << c, s;
    return QuantumState::pure(v);
}

}  // namespace

TEST_CASE("reverse factor") {
    RVector c(3), d(3);
    c << 1.0, 2.0, 4.0;
    d << 0.5, 0.5, 3.0;
    const auto f = reverse_factor(c, d);
    REQUIRE(f);
    const double big = 12.0, small = 0.5;
    CHECK(f->factor == doctest::Approx((big + small) * (big + small) / (4 * big * small)));
    CHECK(f->factor >= 1.0);
    RVector flat = RVector::Constant(3, 0.7);
    CHECK(reverse_factor(flat, flat)->factor == doctest::Approx(1.0));
    RVector with_zero(3);
    with_zero << 1.0, 0.0, 2.0;
    CHECK_FALSE(reverse_factor(with_zero, d));
    with_zero[1] = 1e-14;
    CHECK_FALSE(reverse_factor(with_zero, d));
}

TEST_CASE("reverse fidelity product bound") {
    const auto p = pauli_operators();
    SUBCASE("eigenstate of B is undefined") {
        const auto r = reverse_fidelity_product_bound(basis_state(2, 0), p.x, p.z);
        CHECK_FALSE(r.defined);
        CHECK(std::isinf(r.value));
        CHECK_FALSE(r.reason.empty());
    }
    SUBCASE("tilted qubit against the permutation oracle") {
        const auto s = qubit(std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8));
        const auto r = reverse_fidelity_product_bound(s, p.x, p.z);
        REQUIRE(r.defined);
        const RVector c = oracle::weights(s.density(), p.x.matrix()).cwiseAbs();
        const RVector d = oracle::weights(s.density(), p.z.matrix()).cwiseAbs();
        CHECK(r.value == doctest::Approx(oracle::reverse_cs_min_pairing(c, d)).epsilon(1e-10));
        const double product = oracle::variance(s.density(), p.x.matrix()) * oracle::variance(s.density(), p.z.matrix());
        CHECK(r.value >= product - 1e-10);
    }
    SUBCASE("equal weights give factor one") {
        const auto r = reverse_fidelity_product_bound(basis_state(2, 0), p.x, p.y);
        REQUIRE(r.defined);
        CHECK(r.intermediates.at("omega") == doctest::Approx(1.0));
        CHECK(r.value == doctest::Approx(1.0));
    }
    SUBCASE("random instances") {
        std::mt19937_64 rng(14);
        for (int rep = 0; rep < 60; ++rep) {
            const int d = 2 + rep % 4;
            const Observable a(oracle::random_hermitian(rng, d)), b(oracle::random_hermitian(rng, d));
            const auto s = QuantumState::pure(oracle::random_state(rng, d));
            const auto r = reverse_fidelity_product_bound(s, a, b);
            REQUIRE(r.defined);
            const RVector c = oracle::weights(s.density(), a.matrix()).cwiseAbs();
            const RVector dd = oracle::weights(s.density(), b.matrix()).cwiseAbs();
            CHECK(r.value == doctest::Approx(oracle::reverse_cs_min_pairing(c, dd)).epsilon(1e-9));
            CHECK(r.value >= variance(s, a) * variance(s, b) - 1e-10);
            CHECK(r.intermediates.at("omega") >= 1.0);
        }
    }
}

TEST_CASE("reverse basis product bound") {
    const auto p = pauli_operators();
    SUBCASE("sigma_x eigenstate has a zero amplitude") {
        const auto plus = qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
        const OrthonormalBasis rotated(oracle::qubit_basis(std::numbers::pi / 8, 0.0));
        CHECK_FALSE(reverse_basis_product_bound(plus, p.x, p.y, rotated).defined);
        CHECK_FALSE(reverse_basis_product_bound(basis_state(2, 0), p.x, p.y, OrthonormalBasis::standard(2)).defined);
    }
    SUBCASE("rotated basis against a direct evaluation") {
        const auto s = qubit(std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8));
        const CMatrix u = oracle::qubit_basis(std::numbers::pi / 8, 0.3);
        const auto r = reverse_basis_product_bound(s, p.x, p.z, OrthonormalBasis(u));
        REQUIRE(r.defined);
        const CVector& psi = s.vector();
        const CMatrix id = CMatrix::Identity(2, 2);
        const CVector f = (p.x.matrix() - expectation(s, p.x) * id) * psi;
        const CVector g = (p.z.matrix() - expectation(s, p.z) * id) * psi;
        RVector al(2), be(2);
        for (int n = 0; n < 2; ++n) {
            al[n] = std::abs(u.col(n).dot(f));
            be[n] = std::abs(u.col(n).dot(g));
        }
        const double big = al.maxCoeff() * be.maxCoeff(), small = al.minCoeff() * be.minCoeff();
        const double lambda = (big + small) * (big + small) / (4 * big * small);
        const double expected = lambda * std::pow(al.dot(be), 2);
        CHECK(r.value == doctest::Approx(expected).epsilon(1e-10));
        CHECK(r.intermediates.at("lambda") == doctest::Approx(lambda).epsilon(1e-10));
        CHECK(r.value >= f.squaredNorm() * g.squaredNorm() - 1e-10);
    }
    SUBCASE("parallel amplitudes of equal size saturate") {
        const Observable b(2.0 * p.x.matrix());
        const OrthonormalBasis hadamard(oracle::qubit_basis(std::numbers::pi / 4, 0.0));
        const auto r = reverse_basis_product_bound(basis_state(2, 0), p.x, b, hadamard);
        REQUIRE(r.defined);
        CHECK(r.intermediates.at("lambda") == doctest::Approx(1.0));
        CHECK(r.value == doctest::Approx(4.0));
    }
    SUBCASE("random instances") {
        std::mt19937_64 rng(15);
        for (int rep = 0; rep < 60; ++rep) {
            const int d = 2 + rep % 4;
            const Observable a(oracle::random_hermitian(rng, d)), b(oracle::random_hermitian(rng, d));
            const auto s = QuantumState::pure(oracle::random_state(rng, d));
            const auto r = reverse_basis_product_bound(s, a, b, OrthonormalBasis(oracle::random_unitary(rng, d)));
            REQUIRE(r.defined);
            CHECK(r.value >= variance(s, a) * variance(s, b) - 1e-10);
        }
    }
}

TEST_CASE("Dunkl-Williams bounds") {
    const auto p = pauli_operators();
    SUBCASE("tight at |0> for sigma_x and sigma_y") {
        CHECK(dw_deviation_sum_bound(basis_state(2, 0), p.x, p.y).value == doctest::Approx(2.0));
        CHECK(dw_variance_sum_bound(basis_state(2, 0), p.x, p.y).value == doctest::Approx(2.0));
    }
    SUBCASE("Bloch family at pi") {
        const auto s = bloch_family(std::numbers::pi);
        const auto dev = dw_deviation_sum_bound(s, p.x, p.z);
        const auto var = dw_variance_sum_bound(s, p.x, p.z);
        CHECK(dev.value == doctest::Approx(std::sqrt(2.0) * std::sqrt(1.75)).epsilon(1e-12));
        CHECK(dev.value >= 1.0 + std::sqrt(3.0) / 2.0);
        CHECK(var.value == doctest::Approx(3.5 - std::sqrt(3.0)).epsilon(1e-12));
        CHECK(var.value >= 1.75);
        CHECK(var.intermediates.at("variance_of_difference") == doctest::Approx(1.75));
    }
    SUBCASE("perfect correlation") {
        const auto s = qubit(0.6, 0.8);
        const auto r = dw_deviation_sum_bound(s, p.x, p.x);
        CHECK_FALSE(r.defined);
        CHECK(std::isinf(r.value));
        CHECK_FALSE(dw_variance_sum_bound(s, p.x, p.x).defined);
    }
    SUBCASE("zero deviation") {
        const auto r = dw_variance_sum_bound(basis_state(2, 0), p.z, p.x);
        CHECK_FALSE(r.defined);
        CHECK(std::isinf(r.value));
    }
    SUBCASE("random pure and mixed instances") {
        std::mt19937_64 rng(16);
        for (int rep = 0; rep < 60; ++rep) {
            const int d = 2 + rep % 4;
            const CMatrix am = oracle::random_hermitian(rng, d), bm = oracle::random_hermitian(rng, d);
            const Observable a(am), b(bm);
            CMatrix rho = oracle::projector(oracle::random_state(rng, d));
            if (rep % 2) rho = 0.5 * rho + 0.5 * oracle::projector(oracle::random_state(rng, d));
            const auto s = rep % 2 ? QuantumState::mixed(rho) : QuantumState::pure_normalized(
                                                                     oracle::spectrum(rho).vectors.col(d - 1));
            const double va = oracle::variance(s.density(), am), vb = oracle::variance(s.density(), bm);
            const auto dev = dw_deviation_sum_bound(s, a, b);
            const auto var = dw_variance_sum_bound(s, a, b);
            REQUIRE(dev.defined);
            CHECK(dev.value >= std::sqrt(va) + std::sqrt(vb) - 1e-10);
            CHECK(var.value >= va + vb - 1e-10);
            CHECK(std::abs(covariance(s, a, b)) <= std::sqrt(va * vb) + 1e-10);
        }
    }
}

TEST_CASE("weak deviation comparison column") {
    const auto p = pauli_operators();
    const auto r = weak_deviation_sum(bloch_family(std::numbers::pi), p.x, p.z);
    CHECK(r.value == doctest::Approx(std::sqrt(1.75)));
}
