#include <doctest.h>

#include <random>

#include "qgf/errors.hpp"
#include "qgf/scalars.hpp"

using namespace qgf;

namespace {

Scalar random_scalar(std::mt19937_64& g) {
    std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
    Scalar s(0);
    for (int k = 0; k < 3; ++k) {
        int cv = c(g);
        if (cv == 0) continue;
        s += Scalar(cv) * Scalar::variable("a", e(g)) * Scalar::variable("b", e(g));
    }
    if (s.is_zero()) s = Scalar(1);
    return s / (Scalar(1) - Scalar::variable("a") * Scalar::variable("b", e(g)));
}

} // namespace

TEST_CASE("field axioms hold on random rational functions") {
    std::mt19937_64 g(3);
    for (int i = 0; i < 40; ++i) {
        Scalar x = random_scalar(g), y = random_scalar(g), z = random_scalar(g);
        CHECK((x + y) - y == x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * x.inverse() == Scalar(1));
        CHECK((x / y) * y == x);
        CHECK((x - x).is_zero());
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 g(4);
    Substitution sub;
    sub.set("a", Scalar(2) * Scalar::variable("b", -1));
    for (int i = 0; i < 20; ++i) {
        Scalar x = random_scalar(g), y = random_scalar(g);
        CHECK(substitute(x * y, sub) == substitute(x, sub) * substitute(y, sub));
        CHECK(substitute(x + y, sub) == substitute(x, sub) + substitute(y, sub));
    }
}

TEST_CASE("sigma = x12 x21 collapses to 1 on the surface x21 = 1/x12") {
    Substitution sub;
    sub.set("x12", Scalar::variable("q")).set("x21", Scalar::variable("q", -1));
    Scalar s = Scalar::variable("x12") * Scalar::variable("x21");
    CHECK(substitute(s, sub).is_one());
}

TEST_CASE("numeric evaluation agrees with exact arithmetic") {
    std::mt19937_64 g(5);
    NumericPoint pt{{"a", {1.3, 0.2}}, {"b", {0.7, -0.4}}};
    for (int i = 0; i < 20; ++i) {
        Scalar x = random_scalar(g), y = random_scalar(g);
        auto lhs = eval_numeric(x * y + x, pt);
        auto rhs = eval_numeric(x, pt) * eval_numeric(y, pt) + eval_numeric(x, pt);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(rhs)));
    }
}

TEST_CASE("q-numbers") {
    Scalar q = Scalar::variable("q");
    CHECK(q_number(q, 3) == Scalar(1) + q + q * q);
    CHECK(q_factorial(q, 3) == (Scalar(1) + q) * (Scalar(1) + q + q * q));
}

TEST_CASE("division by zero is reported") {
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
}
