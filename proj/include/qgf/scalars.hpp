#pragma once

// Exact rational functions in invertible commuting variables.
//
// A Scalar is num / prod(f_i^k_i) where num is a Laurent polynomial with
// rational coefficients and each f_i is an interned primitive polynomial
// (no monomial factor, positive leading coefficient). Zero testing is exact:
// a Scalar is zero iff its numerator is the zero polynomial.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qgf/errors.hpp"

namespace qgf {

constexpr int kMaxVars = 24;

using VarId = int;

// Global, thread safe registry of variable names.
VarId var(const std::string& name);
const std::string& var_name(VarId v);
int num_vars();
bool has_var(const std::string& name);

struct Mono {
    std::array<int16_t, kMaxVars> e{};

    int16_t operator[](int i) const { return e[i]; }
    int16_t& operator[](int i) { return e[i]; }
    bool is_one() const;
    int total_degree() const;
    bool divides(const Mono& o) const; // as ordinary monomials
    Mono operator*(const Mono& o) const;
    Mono operator/(const Mono& o) const;
    Mono inverse() const;

    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    friend bool operator!=(const Mono& a, const Mono& b) { return a.e != b.e; }
    // lex order, variable 0 most significant
    friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
};

Mono mono_var(VarId v, int power = 1);

class Poly {
public:
    struct Term {
        Mono m;
        mpq_class c;
    };

    Poly() = default;
    explicit Poly(const mpq_class& c);
    Poly(const Mono& m, const mpq_class& c);
    static Poly variable(VarId v, int power = 1);
    static Poly from_terms(std::vector<Term> ts);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& lead() const { return terms_.front(); }
    const Term& trail() const { return terms_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const mpq_class& c) const;
    Poly shifted(const Mono& m) const; // multiply by Laurent monomial
    Poly& operator+=(const Poly& o) { return *this = *this + o; }

    // Exact quotient if f divides this, otherwise false.
    bool divide_exact(const Poly& f, Poly& quotient) const;

    Mono min_exponents() const;
    Mono max_exponents() const;
    // Splits this = c * m * p with p primitive integer polynomial, no monomial
    // factor, positive leading coefficient.
    void split(mpq_class& c, Mono& m, Poly& p) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& pt) const;
    std::string str() const;
    std::string key() const; // canonical serialization

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b);

private:
    std::vector<Term> terms_; // sorted by decreasing monomial
    void normalize();
    friend class Scalar;
};

// Interned denominator factors.
int intern_factor(const Poly& primitive);
const Poly& factor_poly(int id);

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : num_(mpq_class(v)) {}
    Scalar(int v) : num_(mpq_class(v)) {}
    Scalar(const mpq_class& v) : num_(v) {}
    explicit Scalar(const Poly& p) : num_(p) {}
    static Scalar variable(VarId v, int power = 1);
    static Scalar variable(const std::string& name, int power = 1);
    static Scalar monomial(const Mono& m, const mpq_class& c = 1);
    static Scalar rational(long p, long q);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_monomial() const; // c * x^m with unit denominator
    bool is_constant() const;
    mpq_class constant_value() const; // requires is_constant
    const Poly& numerator() const { return num_; }
    Poly denominator() const;
    const std::vector<std::pair<int, int>>& den_factors() const { return den_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar inverse() const;
    Scalar pow(int k) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::complex<double> eval(const std::vector<std::complex<double>>& pt,
                              double pole_tol = 1e-13) const;
    std::string str() const;

    // Variables occurring anywhere.
    std::vector<VarId> variables() const;

private:
    Poly num_;
    std::vector<std::pair<int, int>> den_; // (factor id, multiplicity), sorted
    void cancel();
    static Scalar from_parts(Poly num, std::vector<std::pair<int, int>> den);
};

enum class Op { Add, Sub, Mul, Div, Pow };
Scalar field_op(const Scalar& a, const Scalar& b, Op op);

// Homomorphism of the parameter field sending variables to Scalars.
class Substitution {
public:
    Substitution() = default;
    Substitution& set(VarId v, const Scalar& image);
    Substitution& set(const std::string& name, const Scalar& image);
    bool has(VarId v) const { return map_.count(v) > 0; }
    const std::map<VarId, Scalar>& assignments() const { return map_; }

    Scalar apply(const Scalar& s) const;
    Scalar apply(const Poly& p) const;
    // (this then other): apply this first, then other.
    Substitution then(const Substitution& other) const;

private:
    std::map<VarId, Scalar> map_;
    bool monomial_only() const;
};

Scalar substitute(const Scalar& s, const Substitution& sub);

using NumericPoint = std::map<std::string, std::complex<double>>;
std::complex<double> eval_numeric(const Scalar& s, const NumericPoint& pt,
                                  double pole_tol = 1e-13);
std::vector<std::complex<double>> point_vector(const NumericPoint& pt);

// q-numbers as Scalars.
Scalar q_number(const Scalar& q, int n);    // (q^n - 1)/(q - 1)
Scalar q_factorial(const Scalar& q, int n); // [1]_q ... [n]_q

} // namespace qgf
