#include "qgf/constants.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace qgf {

ConstantSystem constant_system(const AlgebraSpec& spec, const Multiset& ms) {
    ConstantSystem cs;
    cs.multiset = ms;
    cs.basis = multiset_words(ms);
    int n = (int)cs.basis.size();
    std::map<Word, int> idx;
    for (int i = 0; i < n; ++i) idx[cs.basis[i]] = i;
    cs.matrix.assign(n, std::vector<Scalar>(n));
    for (int r = 0; r < n; ++r) {
        const Word& w = cs.basis[r];
        int i1 = (unsigned char)w[0];
        Word rest = w.substr(1);
        // X^{rest with i1 inserted at p} weighted by q^{i1 rest_0} ... q^{i1 rest_{p-1}}
        Scalar c(1);
        for (std::size_t p = 0; p <= rest.size(); ++p) {
            Word v = rest.substr(0, p) + (char)i1 + rest.substr(p);
            cs.matrix[r][idx.at(v)] += c;
            if (p < rest.size()) c = c * spec.xinv(i1, (unsigned char)rest[p]);
        }
    }
    return cs;
}

bool is_constant(const AlgebraSpec& spec, const AlgebraElement& c, bool both_sides) {
    for (int g = 0; g < spec.n(); ++g) {
        if (!apply_derivative(spec, Dir::Left, g, c).is_zero()) return false;
        if (both_sides && !apply_derivative(spec, Dir::Right, g, c).is_zero()) return false;
    }
    return true;
}

std::vector<AlgebraElement> find_constants(const AlgebraSpec& spec, const Multiset& ms) {
    ConstantSystem cs = constant_system(spec, ms);
    std::vector<AlgebraElement> out;
    for (auto& v : nullspace(cs.matrix)) {
        AlgebraElement c(Sign::Plus);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) c.add(cs.basis[i], v[i]);
        if (!is_constant(spec, c, false))
            throw ObstructionPresent("nullspace vector is not annihilated by all derivatives");
        out.push_back(c);
    }
    return out;
}

AlgebraElement mirror_constant(const AlgebraElement& c) {
    AlgebraElement r(Sign::Minus);
    for (auto& [w, x] : c.terms()) r.add(Word(w.rbegin(), w.rend()), x);
    return r;
}

Scalar sigma(const AlgebraSpec& spec, int i, int j) { return spec.xinv(i, j) * spec.xinv(j, i); }

namespace {

long factorial(int n) {
    long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

Scalar claimed_distinct_determinant(const AlgebraSpec& spec, const Multiset& ms) {
    int n = (int)ms.size();
    if (std::set<int>(ms.begin(), ms.end()).size() != ms.size())
        throw InvalidInput("claimed determinant needs distinct letters");
    Scalar r(1);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int s = std::popcount(mask);
        if (s < 2) continue;
        Scalar prod(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((mask >> i & 1) && (mask >> j & 1)) prod = prod * sigma(spec, ms[i], ms[j]);
        long mult = factorial(n - s) * factorial(s - 2);
        r = r * (Scalar(1) - prod).pow((int)mult);
    }
    return r;
}

std::complex<double> numeric_determinant(const AlgebraSpec& spec, const Multiset& ms,
                                         const std::vector<std::complex<double>>& pt) {
    ConstantSystem cs = constant_system(spec, ms);
    int n = (int)cs.basis.size();
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cs.matrix[i][j].eval(pt);
    return m.partialPivLu().determinant();
}

namespace {

std::vector<VarId> spec_variables(const AlgebraSpec& spec) {
    std::set<VarId> vs;
    for (int a = 0; a < spec.n(); ++a)
        for (int b = 0; b < spec.n(); ++b)
            for (VarId v : spec.x(a, b).variables()) vs.insert(v);
    return {vs.begin(), vs.end()};
}

std::vector<std::complex<double>> random_point(const std::vector<VarId>& vars,
                                               std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mod(0.6, 1.6), arg(-M_PI, M_PI);
    std::vector<std::complex<double>> pt(kMaxVars, 1.0);
    for (VarId v : vars) pt[v] = std::polar(mod(rng), arg(rng));
    return pt;
}

} // namespace

DeterminantCheck determinant_check(const AlgebraSpec& spec, const Multiset& ms,
                                   const Scalar& claimed, int points, std::uint64_t seed,
                                   double tol) {
    DeterminantCheck res;
    if (ms.size() <= 3) {
        Scalar d = determinant(constant_system(spec, ms).matrix);
        if (claimed.is_zero()) {
            res.outcome = d.is_zero() ? DeterminantCheck::ExactEqual : DeterminantCheck::Mismatch;
            return res;
        }
        Scalar ratio = d / claimed;
        if (ratio.is_constant() && !ratio.is_zero()) {
            res.outcome = DeterminantCheck::ExactEqual;
            res.constant = ratio.numerator().is_zero()
                               ? 0.0
                               : ratio.eval(std::vector<std::complex<double>>(kMaxVars, 1.0));
        } else {
            res.outcome = DeterminantCheck::Mismatch;
        }
        return res;
    }
    std::mt19937_64 rng(seed);
    auto vars = spec_variables(spec);
    // Fix the constant at a reference point.
    auto ref = random_point(vars, rng);
    std::complex<double> c0 = claimed.eval(ref);
    if (std::abs(c0) < 1e-12) throw SingularReferencePoint("claimed product vanishes");
    res.constant = numeric_determinant(spec, ms, ref) / c0;
    if (std::abs(res.constant) < 1e-12) throw SingularReferencePoint("determinant vanishes");
    res.outcome = DeterminantCheck::NumericAgree;
    for (int i = 0; i < points; ++i) {
        auto pt = random_point(vars, rng);
        std::complex<double> d = numeric_determinant(spec, ms, pt);
        std::complex<double> c = claimed.eval(pt) * res.constant;
        double err = std::abs(d - c) / std::max(std::abs(c), 1e-300);
        res.max_rel_err = std::max(res.max_rel_err, err);
    }
    if (res.max_rel_err > tol) res.outcome = DeterminantCheck::Mismatch;
    return res;
}

Scalar q_binomial(const Scalar& q, int n, int m) {
    if (m < 0 || m > n) return Scalar();
    Scalar num(1), den(1);
    for (int i = 0; i < m; ++i) {
        num = num * q_number(q, n - i);
        den = den * q_number(q, i + 1);
    }
    return num / den;
}

std::vector<Scalar> serre_coefficients(const AlgebraSpec& spec, int alpha, int beta, int k) {
    Scalar q = spec.xinv(alpha, alpha);
    Scalar qab = spec.xinv(alpha, beta);
    std::vector<Scalar> Q;
    for (int m = 0; m <= k; ++m) {
        Scalar c = (-qab).pow(m) * q.pow(m * (m - 1) / 2) * q_binomial(q, k, m);
        Q.push_back(c);
    }
    return Q;
}

std::vector<Scalar> serre_coefficients_exp(const AlgebraSpec& spec, int alpha, int beta, int k) {
    Scalar p = spec.x(alpha, alpha);
    Scalar xab = spec.x(alpha, beta);
    std::vector<Scalar> Q;
    for (int m = 0; m <= k; ++m) {
        Scalar c = Scalar(m % 2 ? -1 : 1) * xab.pow(m) * p.pow(m * (m - 1) / 2) *
                   q_binomial(p, k, m);
        Q.push_back(c);
    }
    return Q;
}

SerreData serre_constant(const AlgebraSpec& spec, int alpha, int beta, int k, std::uint64_t seed) {
    if (k < 1) throw InvalidInput("serre order must be positive");
    if (alpha == beta) throw InvalidInput("serre constant needs two distinct generators");
    Scalar q = spec.xinv(alpha, alpha);
    std::mt19937_64 rng(seed);
    auto vars = spec_variables(spec);
    auto pt = random_point(vars, rng);
    for (int n = 1; n <= k; ++n) {
        Scalar d = q.pow(n) - Scalar(1);
        bool degenerate = d.is_zero();
        if (!degenerate) {
            try {
                degenerate = std::abs(d.eval(pt)) < 1e-9;
            } catch (const PoleAtPoint&) {
                degenerate = true;
            }
        }
        if (degenerate)
            throw RootOfUnityDegenerate("q^" + std::to_string(n) + " = 1 for the serre pair");
    }
    const Scalar& xba = spec.x(beta, alpha);
    if (!xba.is_monomial() || xba.variables().size() != 1 ||
        xba.numerator().lead().c != 1 || xba.numerator().lead().m[xba.variables()[0]] != 1)
        throw InvalidInput("x_{beta alpha} must be a free variable to impose the serre surface");
    SerreData d;
    d.k = k;
    d.alpha = alpha;
    d.beta = beta;
    // 1 - q^{k-1} sigma = 0 with q = 1/x_aa, sigma = 1/(x_ab x_ba)
    Scalar image = spec.x(alpha, alpha).pow(-(k - 1)) * spec.xinv(alpha, beta);
    d.surface.set(xba.variables()[0], image);
    AlgebraSpec on = spec.with_surface(d.surface);
    d.Q = serre_coefficients(on, alpha, beta, k);
    d.constant = AlgebraElement(Sign::Plus);
    for (int m = 0; m <= k; ++m) {
        Word w(m, (char)alpha);
        w += (char)beta;
        w += Word(k - m, (char)alpha);
        d.constant.add(w, d.Q[m]);
    }
    return d;
}

const char* cartan_kind_name(CartanData::Kind k) {
    switch (k) {
    case CartanData::Finite: return "finite";
    case CartanData::Affine: return "affine";
    default: return "other";
    }
}

namespace {

mpq_class rational_det(std::vector<std::vector<mpq_class>> a) {
    int n = (int)a.size();
    mpq_class d = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            mpq_class f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

} // namespace

CartanData cartan_classify(const AlgebraSpec& spec) {
    int n = spec.n();
    VarId base = -1;
    std::vector<std::vector<int>> e(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Scalar& x = spec.x(a, b);
            if (x.is_one()) continue;
            auto vs = x.variables();
            if (!x.is_monomial() || vs.size() != 1 || x.numerator().lead().c != 1)
                throw NotOnSingleParameterSurface("x_{" + spec.labels()[a] + spec.labels()[b] +
                                                  "} = " + x.str());
            if (base >= 0 && vs[0] != base)
                throw NotOnSingleParameterSurface("more than one base parameter");
            base = vs[0];
            e[a][b] = x.numerator().lead().m[base];
        }
    CartanData cd;
    cd.A.assign(n, std::vector<mpq_class>(n));
    for (int a = 0; a < n; ++a) {
        if (e[a][a] == 0) throw NotOnSingleParameterSurface("phi(a,a) vanishes");
        for (int b = 0; b < n; ++b) {
            cd.A[a][b] = mpq_class(e[a][b] + e[b][a], e[a][a]);
            cd.A[a][b].canonicalize();
        }
    }
    bool offdiag_ok = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && (cd.A[a][b] > 0 || cd.A[a][b].get_den() != 1)) offdiag_ok = false;
    std::vector<mpq_class> minors;
    for (int s = 1; s <= n; ++s) {
        std::vector<std::vector<mpq_class>> sub(s, std::vector<mpq_class>(s));
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) sub[i][j] = cd.A[i][j];
        minors.push_back(rational_det(sub));
    }
    bool proper_positive = true;
    for (int s = 0; s + 1 < n; ++s)
        if (minors[s] <= 0) proper_positive = false;
    if (offdiag_ok && proper_positive && minors.back() > 0) cd.kind = CartanData::Finite;
    else if (offdiag_ok && proper_positive && minors.back() == 0) cd.kind = CartanData::Affine;
    else cd.kind = CartanData::Other;
    return cd;
}

} // namespace qgf
