#include <doctest.h>

#include "qgf/elliptic.hpp"
#include "qgf/errors.hpp"

using namespace qgf;

TEST_CASE("default truncation") {
    CHECK(default_truncation(0.3) == 23);
    CHECK(default_truncation(0.0) == 1);
    CHECK_THROWS_AS(default_truncation(1.0), EpsOutOfDisk);
    CHECK_THROWS_AS(default_truncation(0.9), TruncationInsufficient);
}

TEST_CASE("YBE residual is nonincreasing in M once |eps|^M < 1e-6") {
    cplx q = 0.7, eps = cplx(0.2, 0.25);
    cplx u(0.21, 0.02), v(0.33, -0.01);
    double prev = 1e300;
    for (int M = 1; M <= 30; ++M) {
        auto R = [&](cplx w) { return elliptic_R(EllipticParams::from_u(q, eps, w, M)).R; };
        double r = ybe_residual(R, u, v);
        if (std::pow(std::abs(eps), M) < 1e-6) {
            CHECK(r <= prev * (1 + 1e-6) + 1e-15);
            prev = r;
        }
    }
    CHECK(prev < 1e-12);
}

TEST_CASE("eight-vertex pattern is exact") {
    for (int M : {1, 2, 5, 23}) {
        EllipticR R = elliptic_R(EllipticParams::from_u(0.8, 0.3, cplx(0.17, 0.01), M));
        CHECK(eight_vertex_sparse(R.R));
        CHECK(R.ratios[1] == cplx(1.0));
    }
    CMatrix bad = CMatrix::Identity(4, 4);
    bad(0, 1) = 1e-300;
    CHECK_FALSE(eight_vertex_sparse(bad));
}

TEST_CASE("the eps-linear term is R F1 - F1^t R") {
    cplx q = 0.8;
    EllipticParams p = EllipticParams::from_u(q, 0.0, cplx(0.23, 0.02));
    double h = 1e-5;
    auto at = [&](double e) {
        EllipticParams pe = p;
        pe.eps = e;
        pe.M = 4;
        return elliptic_R(pe).R;
    };
    CMatrix fd = (at(h) - at(-h)) / (2 * h);
    CHECK((fd - elliptic_first_order(q, p.x, p.sqrt_x)).norm() < 1e-8);
    CHECK(elliptic_first_order(q, p.x, p.sqrt_x).norm() > 0.1);
}

TEST_CASE("input guards") {
    CHECK_THROWS_AS(elliptic_R(EllipticParams::from_u(0.8, 1.2, 0.17)), EpsOutOfDisk);
    CHECK_THROWS_AS(elliptic_R(EllipticParams::from_u(0.8, 0.3, cplx(0, 10))), PoleAtPoint);
    CHECK_THROWS_AS(elliptic_R(EllipticParams::from_u(0.8, 0.3, 0.17, 500)), InvalidInput);
    CHECK_THROWS_AS(elliptic_classical_r(1.0, 5), EpsOutOfDisk);
    CHECK_THROWS_AS(elliptic_classical_r(0.3, 5).at(1.0), PoleAtPoint);
}

TEST_CASE("elliptic classical r at eps = 0 is the trigonometric r") {
    auto rep = sl_fundamental(2);
    auto r0 = elliptic_classical_r(0.0, 8);
    for (cplx u : {cplx(0.137, 0.05), cplx(0.41, -0.02), cplx(0.05, 0.1)}) {
        cplx x = std::exp(cplx(0, 2 * M_PI) * u);
        CHECK((r0.at(u) - principal_gauge(trig_r(rep, x), x)).norm() < 1e-13);
    }
}

TEST_CASE("elliptic classical r converges to a CYBE solution") {
    std::vector<std::pair<cplx, cplx>> pts = spectral_points(4, 3, Threading::Additive);
    double prev = 1e300;
    for (int n : {5, 10, 20, 30}) {
        double r = cybe_residual(elliptic_classical_r(0.3, n), pts);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1e-13);
}

TEST_CASE("YBE holds for complex q") {
    cplx q(0.6, 0.3), eps(0.1, 0.2);
    auto R = [&](cplx w) { return elliptic_R(EllipticParams::from_u(q, eps, w)).R; };
    CHECK(ybe_residual(R, cplx(0.1, 0.03), cplx(0.27, 0.0)) < 1e-10);
}
