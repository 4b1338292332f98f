#include <doctest.h>

#include "qgf/deformations.hpp"
#include "qgf/errors.hpp"

using namespace qgf;

namespace {

AlgebraSpec a1(const Substitution& s) { return AlgebraSpec::generic(2, "x", 0).with_surface(s); }

Substitution admissible_surface() {
    Substitution s;
    s.set("x00", Scalar::variable("s")).set("x11", Scalar::variable("s"));
    s.set("x10", Scalar::variable("s", -1));
    return s;
}

size_t total(const Series& s) {
    size_t n = 0;
    for (auto& t : s) n += t.size();
    return n;
}

} // namespace

TEST_CASE("no admissible pairs for generic parameters") {
    CHECK(admissible_pairs(AlgebraSpec::generic(2)).admissible.empty());
}

TEST_CASE("rejected pair types report their conditions") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    DeformationPair p = make_pair(spec, 0, 1, PairType::MinusSigmaRho);
    CHECK_FALSE(p.admissible);
    CHECK(p.conditions.size() == 3);
    AlgebraSpec on = a1(admissible_surface());
    CHECK_FALSE(make_pair(on, 1, 0, PairType::SigmaRho).admissible);
    CHECK(make_pair(on, 1, 0).admissible);
}

TEST_CASE("eps-linear Yang-Baxter fails on a non-admissible surface") {
    Substitution s;
    s.set("x10", Scalar::variable("x00", -1)).set("x01", Scalar::variable("x11", -1));
    AlgebraSpec spec = a1(s);
    DeformationPair p = make_pair(spec, 1, 0);
    CHECK_FALSE(p.admissible);
    TCoefficients t(spec, 2);
    CHECK_THROWS_AS(eps_linear_yb_residual(t, p, 1), PairNotAdmissible);
    CHECK_FALSE(eps_linear_yb_residual(t, p, 1, false).is_zero());
}

TEST_CASE("eps-linear Hopf axioms on the admissible surface") {
    AlgebraSpec spec = a1(admissible_surface());
    CHECK(deformed_hopf_residuals(spec, make_pair(spec, 1, 0)).empty());
}

TEST_CASE("single-pair compound twist equals the elementary twist") {
    AlgebraSpec spec = a1(admissible_surface());
    TauMap tau{{1}, {0}, {}};
    Series c = compound_twist(spec, tau, 2).series(spec);
    Series e = elementary_twist(spec, make_pair(spec, 1, 0), 2).series(spec);
    for (int k = 0; k <= 2; ++k) CHECK((c[k] - e[k]).is_zero());
    for (auto& r : recursion_residual(spec, tau, compound_twist(spec, tau, 2), 2))
        CHECK(total(r) == 0);
}

TEST_CASE("twisted R at first order is -x_rr R1") {
    AlgebraSpec spec = a1(admissible_surface());
    DeformationPair p = make_pair(spec, 1, 0);
    Series F = elementary_twist(spec, p, 1).series(spec);
    TCoefficients t(spec, 3);
    Series TR = twist_R(t, F, 3, 1);
    Tensor r1(2);
    for (int g = 0; g <= 2; ++g) r1.add(r1_piece(t, p, g));
    auto keep = [](const Tensor::Key& k) { return (int)k[0].minus.size() <= 2; };
    CHECK((TR[1] + r1.scaled(spec.x(0, 0))).filtered(keep).is_zero());
}

TEST_CASE("twisted coproduct is coassociative through eps^2") {
    AlgebraSpec spec = a1(admissible_surface());
    Series F = elementary_twist(spec, make_pair(spec, 1, 0), 2).series(spec);
    for (int a = 0; a < 2; ++a) {
        CHECK(total(twisted_coassociativity(spec, F, gen_plus(a), 2)) == 0);
        CHECK(total(twisted_coassociativity(spec, F, gen_minus(a), 2)) == 0);
    }
}

TEST_CASE("tau map bookkeeping") {
    TauMap tau{{0, 1}, {1, 2}, {}};
    CHECK(tau.power(0, 2) == 2);
    CHECK_FALSE(tau.power(0, 3).has_value());
    CHECK(tau.chain_length(0, 10) == 2);
    CHECK_FALSE(tau.disjoint());
    CHECK(TauMap{{0}, {1}, {}}.disjoint());
}
