#include <doctest.h>

#include "qgf/classical.hpp"
#include "qgf/errors.hpp"
#include "qgf/standard_rmatrix.hpp"

using namespace qgf;

TEST_CASE("lowering derivative of a word") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    // d_{-1}(e1 e2 e1) = e2 e1 + x11^{-1} x12^{-1} e1 e2
    AlgebraElement w = AlgebraElement::word(Sign::Plus, word({0, 1, 0}));
    AlgebraElement d = apply_derivative(spec, Dir::Left, 0, w);
    CHECK(d.coeff(word({1, 0})) == Scalar(1));
    CHECK(d.coeff(word({0, 1})) == spec.xinv(0, 0) * spec.xinv(0, 1));
    CHECK(d.terms().size() == 2);
}

TEST_CASE("t from inversion agrees with both recursions") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    TCoefficients inv(spec, 3), left(spec, 3, TMethod::LeftRecursion),
        right(spec, 3, TMethod::RightRecursion);
    for (int l = 1; l <= 3; ++l)
        for (const Multiset& ms : multisets(2, l)) {
            CHECK(matrices_equal(inv.slice(ms).t, left.slice(ms).t));
            CHECK(matrices_equal(inv.slice(ms).t, right.slice(ms).t));
        }
}

TEST_CASE("recursion relations hold through grade 3") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    TCoefficients t(spec, 3);
    for (int l = 1; l <= 3; ++l) {
        CHECK(verify_recursion(t, l).empty());
        CHECK(verify_recursion_upper(t, l).empty());
    }
}

TEST_CASE("pairing matrix is singular on the sigma = 1 surface") {
    Substitution sub;
    sub.set("x21", Scalar::variable("x12", -1));
    AlgebraSpec spec = AlgebraSpec::generic(2).with_surface(sub);
    TCoefficients t(spec, 2);
    CHECK_THROWS_AS(t.slice({0, 1}), ObstructionPresent);
}

TEST_CASE("full Yang-Baxter body vanishes through grade 2") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    TCoefficients t(spec, 2);
    CHECK(yb_full_residual(t, 2).is_zero());
}

TEST_CASE("coassociativity of the coproduct") {
    AlgebraSpec spec = AlgebraSpec::generic(3);
    CHECK(coassociativity_residuals(spec).empty());
    CHECK(coproduct_homomorphism_residuals(spec).empty());
    CHECK(antipode_residuals(spec).empty());
}

TEST_CASE("numeric pairing agrees with the exact pairing") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    std::vector<std::vector<double>> phi = {{0.3, -0.2}, {0.15, 0.4}};
    NumericPoint pt;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            pt["x" + std::to_string(a + 1) + std::to_string(b + 1)] = std::exp(phi[a][b]);
    for (const Multiset& ms : {Multiset{0, 1}, Multiset{0, 0, 1}, Multiset{0, 1, 1, 1}}) {
        auto words = multiset_words(ms);
        Matrix S = pairing_matrix(spec, words);
        Eigen::MatrixXd N = numeric_pairing_matrix(phi, words);
        for (size_t i = 0; i < words.size(); ++i)
            for (size_t j = 0; j < words.size(); ++j)
                CHECK(std::abs(eval_numeric(S[i][j], pt) - N(i, j)) < 1e-12);
    }
}
