#include <doctest.h>

#include "qgf/constants.hpp"
#include "qgf/errors.hpp"

using namespace qgf;

namespace {

AlgebraSpec sigma_one() {
    Substitution sub;
    sub.set("x21", Scalar::variable("x12", -1));
    return AlgebraSpec::generic(2).with_surface(sub);
}

} // namespace

TEST_CASE("generic parameters have no constants at grade 2 and 3") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    for (int l = 2; l <= 3; ++l)
        for (const Multiset& ms : multisets(2, l)) CHECK(find_constants(spec, ms).empty());
}

TEST_CASE("sigma = 1 gives the constant xi1 xi2 - q21 xi2 xi1") {
    AlgebraSpec spec = sigma_one();
    auto cs = find_constants(spec, {0, 1});
    REQUIRE(cs.size() == 1);
    const AlgebraElement& c = cs[0];
    Scalar q21 = spec.xinv(1, 0);
    // proportional to xi1 xi2 - q21 xi2 xi1
    Scalar scale = c.coeff(word({0, 1}));
    CHECK(c.coeff(word({1, 0})) == -q21 * scale);
    CHECK(is_constant(spec, c, true));
    CHECK(is_constant(spec, mirror_constant(c), true));
}

TEST_CASE("constant operator acts on words of grade 3 by zero") {
    AlgebraSpec spec = sigma_one();
    auto c = find_constants(spec, {0, 1}).at(0);
    for (const Word& w : all_words(2, 3)) {
        AlgebraElement x = AlgebraElement::word(Sign::Plus, w);
        CHECK(constant_operator_apply(spec, c, x).is_zero());
    }
}

TEST_CASE("q11 = -1 gives the constant xi1 xi1") {
    Substitution sub;
    sub.set("x11", Scalar(-1));
    AlgebraSpec spec = AlgebraSpec::generic(2).with_surface(sub);
    auto cs = find_constants(spec, {0, 0});
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].terms().size() == 1);
}

TEST_CASE("Serre k = 2 coefficients") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    auto Q = serre_coefficients(spec, 0, 1, 2);
    Scalar q = spec.xinv(0, 0), qab = spec.xinv(0, 1);
    CHECK(Q[0] == Scalar(1));
    CHECK(Q[1] == -qab * (Scalar(1) + q));
    CHECK(Q[2] == qab * qab * q);
}

TEST_CASE("Serre constant off its surface is not a constant") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    SerreData d = serre_constant(spec, 0, 1, 2);
    CHECK_FALSE(is_constant(spec, d.constant, false));
    CHECK(is_constant(spec.with_surface(d.surface), d.constant, false));
}

TEST_CASE("exponential form of the Serre coefficients reverses the word order") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    for (int k = 1; k <= 3; ++k) {
        SerreData d = serre_constant(spec, 0, 1, k);
        AlgebraSpec on = spec.with_surface(d.surface);
        auto e = serre_coefficients_exp(on, 0, 1, k);
        AlgebraElement c(Sign::Plus);
        for (int m = 0; m <= k; ++m)
            c.add(Word(k - m, char(0)) + Word(1, char(1)) + Word(m, char(0)), e[m]);
        CHECK(is_constant(on, c, false));
    }
}

TEST_CASE("determinant of a 2-letter multiset") {
    AlgebraSpec spec = AlgebraSpec::generic(2);
    auto d = determinant_check(spec, {0, 1}, Scalar(1) - sigma(spec, 0, 1));
    CHECK(d.outcome == DeterminantCheck::ExactEqual);
    auto wrong = determinant_check(spec, {0, 1}, Scalar(1) + sigma(spec, 0, 1));
    CHECK(wrong.outcome == DeterminantCheck::Mismatch);
}

TEST_CASE("Cartan classification") {
    auto spec_of = [](std::vector<std::vector<int>> A) {
        int n = (int)A.size();
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
        std::vector<std::vector<Scalar>> x(n, std::vector<Scalar>(n));
        std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                x[a][b] = Scalar::variable("q", A[a][b]);
                w[a][b] = a == b ? 1 : 0;
            }
        return AlgebraSpec(labels, labels, x, w);
    };
    CHECK(cartan_classify(spec_of({{2, -1}, {-1, 2}})).kind == CartanData::Finite);
    CHECK(cartan_classify(spec_of({{2, -2}, {-2, 2}})).kind == CartanData::Affine);
    CHECK_THROWS_AS(cartan_classify(AlgebraSpec::generic(2)), NotOnSingleParameterSurface);
}
