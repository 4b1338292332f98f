#include <doctest.h>

#include "qgf/classical.hpp"
#include "qgf/errors.hpp"

using namespace qgf;

namespace {

double cybe(const ClassicalR& r, int pole_order = 1) {
    return cybe_residual(r, spectral_points(21, 6, r.threading, pole_order));
}

ClassicalR constant_family(const std::string& name, int n, CMatrix m) {
    ClassicalR r;
    r.name = name;
    r.n = n;
    r.at = [m](cplx) { return m; };
    return r;
}

} // namespace

TEST_CASE("fundamental representations satisfy the Serre relations") {
    for (int n = 2; n <= 5; ++n) {
        auto rep = sl_fundamental(n);
        CHECK(representation_residual(rep) < 1e-14);
        CHECK_NOTHROW(check_root_normalization(rep));
    }
}

TEST_CASE("standard r solves CYBE; its pieces alone do not") {
    for (int n : {2, 3}) {
        auto rep = sl_fundamental(n);
        CHECK(cybe(standard_r(rep)) < 1e-12);
        CHECK(cybe(constant_family("casimir", n, casimir(rep))) > 0.1);
        CMatrix r = standard_r_matrix(rep);
        CMatrix anti = 0.5 * (r - flip_tensor(r, n));
        CHECK(cybe(constant_family("antisymmetric part", n, anti)) > 0.1);
    }
}

TEST_CASE("r + flip(r) is the Casimir") {
    auto rep = sl_fundamental(3);
    CMatrix r = standard_r_matrix(rep);
    CHECK((r + flip_tensor(r, 3) - casimir(rep)).norm() < 1e-14);
}

TEST_CASE("antisymmetric Cartan piece keeps CYBE") {
    auto rep = sl_fundamental(3);
    CMatrix h1 = rep.h[0], h2 = rep.h[1];
    CMatrix a = 0.37 * (kron(h1, h2) - kron(h2, h1));
    CHECK(cybe(standard_r(rep, a)) < 1e-12);
    CHECK(cybe(trig_family(rep, a)) < 1e-12);
}

TEST_CASE("trigonometric and twisted families") {
    CHECK(cybe(trig_family(sl_fundamental(2))) < 1e-12);
    CHECK(cybe(trig_family(sl_fundamental(4))) < 1e-12);
    CHECK(cybe(twisted_family(sl_fundamental(3), 2), 2) < 1e-12);
    CHECK_THROWS_AS(trig_r(sl_fundamental(2), 1.0), PoleAtPoint);
    CHECK_THROWS_AS(twisted_r(sl_fundamental(3), 3, 0.5), GradingInvalid);
    CHECK_THROWS_AS(twisted_r(sl_fundamental(2), 2, 0.5), GradingInvalid);
    CHECK_THROWS_AS(twisted_r(sl_fundamental(3), 2, -1.0), PoleAtPoint);
}

TEST_CASE("esoteric r for the shift map, N = 2..5") {
    for (int N = 2; N <= 5; ++N) {
        TauMap tau = esoteric_shift(N);
        CHECK(cybe(esoteric_r(N, tau, 0.6)) < 1e-12);
        CHECK(cybe(esoteric_r(N, tau, cplx(0.2, 0.5))) < 1e-12);
    }
}

TEST_CASE("esoteric r for other maps") {
    CHECK(cybe(esoteric_r(4, TauMap{{1}, {3}, {}}, 0.5)) < 1e-12);
    CHECK(cybe(esoteric_r(5, TauMap{{1, 2}, {3, 4}, {}}, 0.5)) < 1e-12);
    CHECK_THROWS_AS(esoteric_r(3, TauMap{{1, 2}, {2, 1}, {}}, 0.5), CyclicTauNotAllowedHere);
    CHECK_THROWS_AS(esoteric_r(3, TauMap{{1}, {1}, {}}, 0.5), CyclicTauNotAllowedHere);
}

TEST_CASE("esoteric Cartan part for sl(3) is the displayed one") {
    CMatrix phi = esoteric_phi(3, esoteric_shift(3));
    double A[3][3] = {{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(phi(i * 3 + j, i * 3 + j) - A[i][j] / 3) < 1e-13);
}

TEST_CASE("esoteric deformation vanishes at eps = 0") {
    CHECK(esoteric_deformation(3, esoteric_shift(3), 0.0, 1.3).norm() == 0.0);
}

TEST_CASE("classical limit of the sl(2) standard R") {
    auto rep = sl_fundamental(2);
    auto lim = classical_limit([](double h) { return sl2_standard_R(h, 2); }, standard_r_matrix(rep),
                               {1e-2, 1e-3, 1e-4});
    for (double r : lim.ratio) CHECK(r == doctest::Approx(10.0).epsilon(0.05));
    CHECK_THROWS_AS(classical_limit([](double h) { return sl2_standard_R(h, 2); },
                                    standard_r_matrix(rep), {0.0}),
                    InvalidInput);
    CHECK_THROWS_AS(sl2_standard_R(0.1, 0), TruncationTooCoarse);
}

TEST_CASE("quantum representations satisfy the commutation relations") {
    CHECK(quantum_rep_residual({{0.3}}, sl2_quantum_fundamental(0.3)) < 1e-13);
    std::vector<std::vector<double>> phi = {{0.3, -0.3}, {-0.3, 0.3}};
    CHECK(quantum_rep_residual(phi, sl2_quantum_loop(0.3, 0.7)) < 1e-13);
}

TEST_CASE("loop R in the representation matches the closed-form six-vertex R") {
    double hbar = 0.3, x = 0.02;
    CMatrix R = sl2_loop_R(hbar, x, 10);
    CMatrix C = trig_quantum_R(std::exp(hbar / 2), x);
    // gauge-invariant ratios a/b and c1 c2 / b^2
    auto ab = [](const CMatrix& m) { return m(0, 0) / m(1, 1); };
    auto cc = [](const CMatrix& m) { return m(1, 2) * m(2, 1) / (m(1, 1) * m(1, 1)); };
    CHECK(std::abs(ab(R) - ab(C)) < 1e-9);
    CHECK(std::abs(cc(R) - cc(C)) < 1e-9);
    CHECK_THROWS_AS(sl2_loop_R(hbar, 0.5, 4), TruncationTooCoarse);
}

TEST_CASE("a representation with the wrong weights is detected") {
    QuantumRep r = sl2_quantum_fundamental(0.3);
    r.weights = {{-0.5}, {0.5}};
    CHECK(quantum_rep_residual({{0.3}}, r) > 0.1);
}
