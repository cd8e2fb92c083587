#include <doctest.h>

#include <cmath>
#include <random>

#include "lossy/dilation.hpp"
#include "lossy/matrix.hpp"
#include "lossy/random.hpp"

using lossy::ComplexMatrix;
using lossy::cplx;
using lossy::DilatedUnitary;
using lossy::LossConvention;
using lossy::LossyTransform;

namespace {

const cplx I{0.0, 1.0};

/// The analytic 3x3 dilation of the lossy 50/50 splitter at eta = cos th:
/// system block (1/2)[[-c+i, -1+ic],[-1+ic, c-i]], loss column -s/sqrt2
/// and is/sqrt2, ancilla diagonal c.
ComplexMatrix analytic_dilated_splitter(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexMatrix{
        {0.5 * (-c + I), 0.5 * (-1.0 + I * c), cplx{-s * r, 0.0}},
        {0.5 * (-1.0 + I * c), 0.5 * (c - I), I * (s * r)},
        {cplx{-s * r, 0.0}, I * (s * r), cplx{c, 0.0}},
    };
}

}  // namespace

TEST_CASE("lossy beamsplitter family") {
    const LossyTransform t = lossy::lossy_beamsplitter(0.5);
    CHECK(t.matrix(0, 0) == cplx{-0.25, 0.5});
    CHECK(t.matrix(0, 1) == cplx{-0.5, 0.25});
    CHECK(t.matrix(1, 0) == cplx{-0.5, 0.25});
    CHECK(t.matrix(1, 1) == cplx{0.25, -0.5});
    CHECK(t.eta.has_value());
    CHECK(*t.eta == 0.5);
    // stored factors must reproduce the matrix
    CHECK(lossy::max_abs_diff(reconstruct(t.factors), t.matrix) < 1e-15);
    // every entry carries half the (eta-attenuated) power
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::norm(t.matrix(i, j)) == doctest::Approx((1 + 0.25) / 4.0).epsilon(1e-15));

    CHECK(is_unitary(lossy::lossy_beamsplitter(1.0).matrix, 1e-15));
    CHECK_THROWS_AS((void)lossy::lossy_beamsplitter(1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)lossy::lossy_beamsplitter(-0.1), std::invalid_argument);
}

TEST_CASE("dilated splitter matches the analytic three-mode unitary") {
    for (double theta : {M_PI / 3.0, 0.3, 1.2}) {
        const DilatedUnitary d = dilate(lossy::lossy_beamsplitter(std::cos(theta)));
        REQUIRE(d.matrix.rows() == 3);
        CHECK(lossy::max_abs_diff(d.matrix, analytic_dilated_splitter(theta)) < 1e-14);
        REQUIRE(d.thetas.size() == 1);
        CHECK(d.thetas[0] == doctest::Approx(theta).epsilon(1e-12));
        CHECK(d.system_ports == std::vector<int>{1, 2});
        CHECK(d.ancilla_ports == std::vector<int>{3});
    }
}

TEST_CASE("eta=0 is rank one: full reflection into the ancilla") {
    const DilatedUnitary d = dilate(lossy::lossy_beamsplitter(0.0));
    CHECK(d.matrix(2, 2) == cplx{0.0, 0.0});
    CHECK(d.matrix(0, 2).real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(is_unitary(d.matrix, 1e-12));
}

TEST_CASE("unitary input needs no ancilla and passes through") {
    std::mt19937_64 gen(31);
    const ComplexMatrix u = lossy::random_unitary(3, gen);
    const DilatedUnitary d = dilate(lossy::make_lossy_transform(u));
    CHECK(d.ancilla_ports.empty());
    CHECK(d.thetas.empty());
    CHECK(lossy::max_abs_diff(d.matrix, u) < 1e-12);
}

TEST_CASE("every deficient direction gets exactly one ancilla") {
    const ComplexMatrix diag_half{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{0.5, 0}}};
    const DilatedUnitary d = dilate(lossy::make_lossy_transform(diag_half));
    CHECK(d.system_ports == std::vector<int>{1, 2});
    CHECK(d.ancilla_ports == std::vector<int>{3});

    std::mt19937_64 gen(32);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix a = lossy::random_contraction(n, gen);
        const DilatedUnitary big = dilate(lossy::make_lossy_transform(a));
        const std::size_t total = big.matrix.rows();
        CHECK(is_unitary(big.matrix, 1e-10));
        ComplexMatrix block(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) block(r, c) = big.matrix(r, c);
        CHECK(lossy::max_abs_diff(block, a) < 1e-10);
        CHECK(big.ancilla_ports.size() == total - n);
        // coupling angles come out ascending: ancillas follow descending sigma
        for (std::size_t i = 0; i + 1 < big.thetas.size(); ++i)
            CHECK(big.thetas[i] <= big.thetas[i + 1] + 1e-12);
    }
}

TEST_CASE("singular values just above 1 are round-off, clamped") {
    const double bump = 1.0 + 5e-10;
    const ComplexMatrix slightly{{cplx{bump, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{bump, 0}}};
    const DilatedUnitary d = dilate(lossy::make_lossy_transform(slightly));
    CHECK(d.ancilla_ports.empty());
    CHECK(is_unitary(d.matrix, 1e-9));
}

TEST_CASE("gain is rejected") {
    const ComplexMatrix twice{{cplx{2, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{2, 0}}};
    CHECK_THROWS_AS((void)lossy::make_lossy_transform(twice), lossy::gain_error);
    const double over = 1.0 + 2e-9;
    const ComplexMatrix barely{{cplx{over, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{1, 0}}};
    CHECK_THROWS_AS((void)lossy::make_lossy_transform(barely), lossy::gain_error);
}

TEST_CASE("loss parameter under both conventions") {
    const LossyTransform t = lossy::lossy_beamsplitter(0.8);
    CHECK(loss_parameter(t, LossConvention::amplitude) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(loss_parameter(t, LossConvention::power) == doctest::Approx(0.36).epsilon(1e-15));

    const ComplexMatrix diag{{cplx{0.9, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{0.3, 0}}};
    const LossyTransform d = lossy::make_lossy_transform(diag);
    CHECK(loss_parameter(d, LossConvention::amplitude) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("loss convention names") {
    CHECK(lossy::loss_convention_from_string("amplitude") == LossConvention::amplitude);
    CHECK(lossy::loss_convention_from_string("power") == LossConvention::power);
    CHECK_THROWS_AS((void)lossy::loss_convention_from_string("db"), std::invalid_argument);
    CHECK(std::string(to_string(LossConvention::power)) == "power");
}

TEST_CASE("dilated unitary JSON round-trip") {
    const DilatedUnitary d = dilate(lossy::lossy_beamsplitter(0.25));
    const DilatedUnitary back = lossy::dilated_from_json(lossy::dilated_to_json(d));
    CHECK(back.matrix == d.matrix);
    CHECK(back.system_ports == d.system_ports);
    CHECK(back.ancilla_ports == d.ancilla_ports);
    CHECK(back.thetas == d.thetas);
}
