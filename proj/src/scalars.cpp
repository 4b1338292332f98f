#include "qgf/scalars.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace qgf {

// ---------------------------------------------------------------------------
// variable registry

namespace {

struct VarRegistry {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, VarId> index;
};

VarRegistry& vars() {
    static VarRegistry r;
    return r;
}

} // namespace

VarId var(const std::string& name) {
    auto& r = vars();
    std::lock_guard<std::mutex> lk(r.mu);
    auto it = r.index.find(name);
    if (it != r.index.end()) return it->second;
    if ((int)r.names.size() >= kMaxVars)
        throw TooManyVariables("cannot register '" + name + "'");
    VarId id = (VarId)r.names.size();
    r.names.push_back(name);
    r.index.emplace(name, id);
    return id;
}

const std::string& var_name(VarId v) {
    auto& r = vars();
    std::lock_guard<std::mutex> lk(r.mu);
    return r.names.at(v);
}

int num_vars() {
    auto& r = vars();
    std::lock_guard<std::mutex> lk(r.mu);
    return (int)r.names.size();
}

bool has_var(const std::string& name) {
    auto& r = vars();
    std::lock_guard<std::mutex> lk(r.mu);
    return r.index.count(name) > 0;
}

// ---------------------------------------------------------------------------
// Mono

bool Mono::is_one() const {
    for (auto x : e)
        if (x) return false;
    return true;
}

int Mono::total_degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

bool Mono::divides(const Mono& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

Mono Mono::operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - o.e[i];
    return r;
}

Mono Mono::inverse() const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = -e[i];
    return r;
}

Mono mono_var(VarId v, int power) {
    Mono m;
    m.e[v] = (int16_t)power;
    return m;
}

// ---------------------------------------------------------------------------
// Poly

namespace {
inline bool term_gt(const Poly::Term& a, const Poly::Term& b) { return b.m < a.m; }
} // namespace

Poly::Poly(const mpq_class& c) {
    if (c != 0) terms_.push_back({Mono{}, c});
}

Poly::Poly(const Mono& m, const mpq_class& c) {
    if (c != 0) terms_.push_back({m, c});
}

Poly Poly::variable(VarId v, int power) { return Poly(mono_var(v, power), 1); }

Poly Poly::from_terms(std::vector<Term> ts) {
    Poly p;
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), term_gt);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i + 1;
        mpq_class c = terms_[i].c;
        while (j < terms_.size() && terms_[j].m == terms_[i].m) c += terms_[j++].c;
        if (c != 0) {
            terms_[out].m = terms_[i].m;
            terms_[out].c = c;
            ++out;
        }
        i = j;
    }
    terms_.resize(out);
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && o.terms_[j].m < terms_[i].m)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || terms_[i].m < o.terms_[j].m) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpq_class c = terms_[i].c + o.terms_[j].c;
            if (c != 0) r.terms_.push_back({terms_[i].m, c});
            ++i;
            ++j;
        }
    }
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    if (is_zero() || o.is_zero()) return r;
    if (o.terms_.size() == 1) {
        r.terms_ = terms_;
        for (auto& t : r.terms_) {
            t.m = t.m * o.terms_[0].m;
            t.c *= o.terms_[0].c;
        }
        return r;
    }
    if (terms_.size() == 1) return o * *this;
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (auto& a : terms_)
        for (auto& b : o.terms_) r.terms_.push_back({a.m * b.m, a.c * b.c});
    r.normalize();
    return r;
}

Poly Poly::scaled(const mpq_class& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

Poly Poly::shifted(const Mono& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.m = t.m * m;
    return r;
}

Mono Poly::min_exponents() const {
    Mono m;
    if (terms_.empty()) return m;
    m = terms_[0].m;
    for (auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.m.e[i]);
    return m;
}

Mono Poly::max_exponents() const {
    Mono m;
    if (terms_.empty()) return m;
    m = terms_[0].m;
    for (auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::max(m.e[i], t.m.e[i]);
    return m;
}

void Poly::split(mpq_class& c, Mono& m, Poly& p) const {
    if (terms_.empty()) {
        c = 0;
        m = Mono{};
        p = Poly();
        return;
    }
    m = min_exponents();
    mpz_class g = 0, l = 1;
    for (auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    }
    c = mpq_class(g, l);
    if (terms_[0].c < 0) c = -c;
    p = shifted(m.inverse()).scaled(1 / c);
}

namespace {

// this = q * f in the polynomial ring; f has no monomial factor.
bool poly_divide(const Poly& a, const Poly& f, Poly& q) {
    const auto& ft = f.terms();
    const auto& flead = ft.front();
    if (!flead.m.divides(a.lead().m)) return false;
    if (!ft.back().m.divides(a.trail().m)) return false;
    {
        Mono fa = f.max_exponents(), aa = a.max_exponents();
        if (!fa.divides(aa)) return false;
    }
    std::vector<Poly::Term> quot;
    Poly r = a;
    while (!r.is_zero()) {
        const Poly::Term rl = r.lead();
        if (!flead.m.divides(rl.m)) return false;
        Poly::Term qt{rl.m / flead.m, rl.c / flead.c};
        quot.push_back(qt);
        r = r - f * Poly(qt.m, qt.c);
        if (!r.is_zero() && !(r.lead().m < rl.m)) return false;
    }
    q = Poly::from_terms(std::move(quot));
    return true;
}

} // namespace

bool Poly::divide_exact(const Poly& f, Poly& quotient) const {
    if (f.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (is_zero()) {
        quotient = Poly();
        return true;
    }
    mpq_class c;
    Mono m;
    Poly p;
    f.split(c, m, p);
    Mono am = min_exponents();
    Poly a = shifted(am.inverse());
    Poly q;
    if (p.is_constant()) {
        q = a;
    } else if (!poly_divide(a, p, q)) {
        return false;
    }
    quotient = q.shifted(am / m).scaled(1 / c);
    return true;
}

std::complex<double> Poly::eval(const std::vector<std::complex<double>>& pt) const {
    std::complex<double> s = 0;
    for (auto& t : terms_) {
        std::complex<double> v = t.c.get_d();
        for (int i = 0; i < kMaxVars; ++i) {
            int e = t.m.e[i];
            if (!e) continue;
            if (i >= (int)pt.size()) throw PoleAtPoint("no value for variable " + var_name(i));
            v *= std::pow(pt[i], e);
        }
        s += v;
    }
    return s;
}

namespace {

std::string mono_str(const Mono& m) {
    std::string s;
    for (int i = 0; i < kMaxVars; ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += "*";
        s += var_name(i);
        if (m.e[i] != 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
}

} // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : terms_) {
        mpq_class c = t.c;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        std::string ms = mono_str(t.m);
        if (ms.empty()) {
            s += c.get_str();
        } else if (c == 1) {
            s += ms;
        } else {
            s += c.get_str() + "*" + ms;
        }
    }
    return s;
}

std::string Poly::key() const {
    std::string k;
    for (auto& t : terms_) {
        k.append(reinterpret_cast<const char*>(t.m.e.data()), sizeof(t.m.e));
        k += t.c.get_str();
        k += ';';
    }
    return k;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

bool operator<(const Poly& a, const Poly& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.terms_[i].m != b.terms_[i].m) return a.terms_[i].m < b.terms_[i].m;
        if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c;
    }
    return a.terms_.size() < b.terms_.size();
}

// ---------------------------------------------------------------------------
// factor registry

namespace {

constexpr std::size_t kFactorCap = 1u << 20;

struct FactorRegistry {
    std::mutex mu;
    std::unique_ptr<std::unique_ptr<Poly>[]> slots{new std::unique_ptr<Poly>[kFactorCap]};
    std::atomic<int> count{0};
    std::unordered_map<std::string, int> index;
};

FactorRegistry& factors() {
    static FactorRegistry r;
    return r;
}

int lookup_factor(const Poly& p) {
    auto& r = factors();
    std::lock_guard<std::mutex> lk(r.mu);
    auto it = r.index.find(p.key());
    return it == r.index.end() ? -1 : it->second;
}

} // namespace

int intern_factor(const Poly& p) {
    auto& r = factors();
    std::string k = p.key();
    std::lock_guard<std::mutex> lk(r.mu);
    auto it = r.index.find(k);
    if (it != r.index.end()) return it->second;
    int id = r.count.load();
    if ((std::size_t)id >= kFactorCap) throw Error("Internal", "factor registry full");
    r.slots[id] = std::make_unique<Poly>(p);
    r.index.emplace(std::move(k), id);
    r.count.store(id + 1);
    return id;
}

const Poly& factor_poly(int id) { return *factors().slots[id]; }

namespace {

// Writes p as a product of registered factors (greedy trial division) and a
// newly registered remainder.
std::vector<std::pair<int, int>> factor_over_registry(Poly p) {
    std::map<int, int> out;
    int id = lookup_factor(p);
    if (id >= 0) return {{id, 1}};
    int n = factors().count.load();
    Mono pmax = p.max_exponents();
    for (int i = 0; i < n && !p.is_constant(); ++i) {
        const Poly& f = factor_poly(i);
        if (f.size() > p.size() * 4 + 8) continue;
        if (!f.max_exponents().divides(pmax)) continue;
        Poly q;
        while (!p.is_constant() && poly_divide(p, f, q)) {
            out[i]++;
            p = q;
            pmax = p.max_exponents();
        }
    }
    if (!p.is_constant()) {
        mpq_class c;
        Mono m;
        Poly prim;
        p.split(c, m, prim);
        if (!prim.is_constant()) out[intern_factor(prim)]++;
    }
    return {out.begin(), out.end()};
}

std::vector<std::pair<int, int>> merge_max(const std::vector<std::pair<int, int>>& a,
                                           const std::vector<std::pair<int, int>>& b) {
    std::vector<std::pair<int, int>> r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            r.push_back({a[i].first, std::max(a[i].second, b[j].second)});
            ++i;
            ++j;
        }
    }
    return r;
}

std::vector<std::pair<int, int>> merge_add(const std::vector<std::pair<int, int>>& a,
                                           const std::vector<std::pair<int, int>>& b) {
    std::vector<std::pair<int, int>> r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            r.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return r;
}

// prod f^(have - sub) over have.
Poly cofactor(const std::vector<std::pair<int, int>>& have,
              const std::vector<std::pair<int, int>>& sub) {
    Poly r(mpq_class(1));
    std::size_t j = 0;
    for (auto& [id, k] : have) {
        while (j < sub.size() && sub[j].first < id) ++j;
        int s = (j < sub.size() && sub[j].first == id) ? sub[j].second : 0;
        for (int e = s; e < k; ++e) r = r * factor_poly(id);
    }
    return r;
}

// Removes factors of den that divide num; returns the reduced numerator.
void cancel_against(Poly& num, std::vector<std::pair<int, int>>& den) {
    if (num.is_zero()) {
        den.clear();
        return;
    }
    for (auto& [id, k] : den) {
        const Poly& f = factor_poly(id);
        while (k > 0) {
            Poly q;
            if (!num.divide_exact(f, q)) break;
            num = std::move(q);
            --k;
        }
    }
    den.erase(std::remove_if(den.begin(), den.end(), [](auto& p) { return p.second == 0; }),
              den.end());
}

} // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::variable(VarId v, int power) { return Scalar(Poly::variable(v, power)); }
Scalar Scalar::variable(const std::string& name, int power) {
    return variable(var(name), power);
}
Scalar Scalar::monomial(const Mono& m, const mpq_class& c) { return Scalar(Poly(m, c)); }
Scalar Scalar::rational(long p, long q) { return Scalar(mpq_class(p, q)); }

Scalar Scalar::from_parts(Poly num, std::vector<std::pair<int, int>> den) {
    Scalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.cancel();
    return s;
}

void Scalar::cancel() { cancel_against(num_, den_); }

bool Scalar::is_one() const {
    return den_.empty() && num_.size() == 1 && num_.lead().m.is_one() && num_.lead().c == 1;
}

bool Scalar::is_monomial() const { return den_.empty() && num_.size() == 1; }

bool Scalar::is_constant() const { return den_.empty() && num_.is_constant(); }

mpq_class Scalar::constant_value() const {
    if (!is_constant()) throw InvalidInput("scalar is not a constant: " + str());
    return num_.is_zero() ? mpq_class(0) : num_.lead().c;
}

Poly Scalar::denominator() const { return cofactor(den_, {}); }

Scalar Scalar::operator+(const Scalar& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (den_ == o.den_) {
        Poly n = num_ + o.num_;
        if (den_.empty()) {
            Scalar s;
            s.num_ = std::move(n);
            return s;
        }
        return from_parts(std::move(n), den_);
    }
    auto l = merge_max(den_, o.den_);
    Poly n = num_ * cofactor(l, den_) + o.num_ * cofactor(l, o.den_);
    return from_parts(std::move(n), std::move(l));
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.num_ = -s.num_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar();
    if (den_.empty() && o.den_.empty()) {
        Scalar s;
        s.num_ = num_ * o.num_;
        return s;
    }
    Poly a = num_, b = o.num_;
    auto da = den_, db = o.den_;
    cancel_against(b, da);
    cancel_against(a, db);
    Scalar s;
    s.num_ = a * b;
    s.den_ = merge_add(da, db);
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    mpq_class c;
    Mono m;
    Poly p;
    num_.split(c, m, p);
    Scalar s;
    s.num_ = cofactor(den_, {}).shifted(m.inverse()).scaled(1 / c);
    if (!p.is_constant()) s.den_ = factor_over_registry(p);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw DivisionByZero("division by zero scalar");
    return *this * o.inverse();
}

Scalar Scalar::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar r(1), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return (a - b).is_zero();
}

std::complex<double> Scalar::eval(const std::vector<std::complex<double>>& pt,
                                  double pole_tol) const {
    std::complex<double> n = num_.eval(pt);
    std::complex<double> d = 1;
    for (auto& [id, k] : den_) {
        const Poly& f = factor_poly(id);
        std::complex<double> v = f.eval(pt);
        double scale = 0;
        for (auto& t : f.terms()) {
            std::complex<double> tv = t.c.get_d();
            for (int i = 0; i < kMaxVars; ++i)
                if (t.m.e[i]) tv *= std::pow(pt[i], t.m.e[i]);
            scale += std::abs(tv);
        }
        if (std::abs(v) <= pole_tol * std::max(scale, 1.0))
            throw PoleAtPoint("denominator factor " + f.str() + " vanishes");
        d *= std::pow(v, k);
    }
    return n / d;
}

std::string Scalar::str() const {
    if (den_.empty()) return num_.str();
    std::string s = "(" + num_.str() + ")/(";
    bool first = true;
    for (auto& [id, k] : den_) {
        if (!first) s += "*";
        first = false;
        s += "(" + factor_poly(id).str() + ")";
        if (k != 1) s += "^" + std::to_string(k);
    }
    return s + ")";
}

std::vector<VarId> Scalar::variables() const {
    std::vector<bool> seen(kMaxVars, false);
    auto mark = [&](const Poly& p) {
        for (auto& t : p.terms())
            for (int i = 0; i < kMaxVars; ++i)
                if (t.m.e[i]) seen[i] = true;
    };
    mark(num_);
    for (auto& [id, k] : den_) mark(factor_poly(id));
    std::vector<VarId> r;
    for (int i = 0; i < kMaxVars; ++i)
        if (seen[i]) r.push_back(i);
    return r;
}

Scalar field_op(const Scalar& a, const Scalar& b, Op op) {
    switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    case Op::Pow: {
        if (!b.is_constant() || b.constant_value().get_den() != 1)
            throw InvalidInput("pow needs an integer exponent");
        return a.pow((int)b.constant_value().get_num().get_si());
    }
    }
    return Scalar();
}

// ---------------------------------------------------------------------------
// Substitution

Substitution& Substitution::set(VarId v, const Scalar& image) {
    if (image.is_zero()) throw InvalidInput("substitution maps " + var_name(v) + " to zero");
    map_[v] = image;
    return *this;
}

Substitution& Substitution::set(const std::string& name, const Scalar& image) {
    return set(var(name), image);
}

bool Substitution::monomial_only() const {
    for (auto& [v, s] : map_)
        if (!s.is_monomial()) return false;
    return true;
}

Scalar Substitution::apply(const Poly& p) const {
    if (map_.empty()) return Scalar(p);
    if (monomial_only()) {
        std::vector<Poly::Term> ts;
        ts.reserve(p.size());
        for (auto& t : p.terms()) {
            Mono m;
            mpq_class c = t.c;
            for (int i = 0; i < kMaxVars; ++i) {
                int e = t.m.e[i];
                if (!e) continue;
                auto it = map_.find(i);
                if (it == map_.end()) {
                    m.e[i] += e;
                    continue;
                }
                const auto& lt = it->second.numerator().lead();
                for (int j = 0; j < kMaxVars; ++j) m.e[j] += lt.m.e[j] * e;
                mpq_class cc = 1;
                for (int k = 0; k < std::abs(e); ++k) cc *= lt.c;
                if (e < 0) cc = 1 / cc;
                c *= cc;
            }
            ts.push_back({m, c});
        }
        return Scalar(Poly::from_terms(std::move(ts)));
    }
    Scalar acc;
    for (auto& t : p.terms()) {
        Scalar term(t.c);
        Mono rest;
        for (int i = 0; i < kMaxVars; ++i) {
            int e = t.m.e[i];
            if (!e) continue;
            auto it = map_.find(i);
            if (it == map_.end()) rest.e[i] = e;
            else term = term * it->second.pow(e);
        }
        acc = acc + term * Scalar::monomial(rest);
    }
    return acc;
}

Scalar Substitution::apply(const Scalar& s) const {
    if (map_.empty()) return s;
    Scalar r = apply(s.numerator());
    for (auto& [id, k] : s.den_factors()) r = r / apply(factor_poly(id)).pow(k);
    return r;
}

Substitution Substitution::then(const Substitution& other) const {
    Substitution r;
    for (auto& [v, s] : map_) r.map_[v] = other.apply(s);
    for (auto& [v, s] : other.map_)
        if (!r.map_.count(v)) r.map_[v] = s;
    return r;
}

Scalar substitute(const Scalar& s, const Substitution& sub) { return sub.apply(s); }

std::vector<std::complex<double>> point_vector(const NumericPoint& pt) {
    std::vector<std::complex<double>> v(kMaxVars, std::complex<double>(0, 0));
    for (auto& [name, z] : pt) v[var(name)] = z;
    return v;
}

std::complex<double> eval_numeric(const Scalar& s, const NumericPoint& pt, double pole_tol) {
    for (VarId v : s.variables())
        if (!pt.count(var_name(v)))
            throw InvalidInput("numeric point has no value for " + var_name(v));
    return s.eval(point_vector(pt), pole_tol);
}

Scalar q_number(const Scalar& q, int n) {
    Scalar s;
    Scalar p(1);
    for (int i = 0; i < n; ++i) {
        s = s + p;
        p = p * q;
    }
    return s;
}

Scalar q_factorial(const Scalar& q, int n) {
    Scalar r(1);
    for (int i = 1; i <= n; ++i) r = r * q_number(q, i);
    return r;
}

} // namespace qgf
