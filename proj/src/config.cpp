#include "qgf/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <algorithm>

#include <fmt/format.h>

#include "qgf/errors.hpp"

namespace qgf {

using nlohmann::json;

namespace {

const std::set<std::string> kFields = {
    "generators", "cartan_labels", "base_params", "phi_exponents", "surface",
    "weights",    "tau",           "grade_cutoff", "eps_order",   "backend",
    "numeric_point", "tolerance",  "seed"};

template <class T> T field(const json& j, const char* name, T fallback) {
    if (!j.contains(name)) return fallback;
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw ConfigParse(fmt::format("field '{}': {}", name, e.what()));
    }
}

std::string pair_key(const std::string& a, const std::string& b) { return a + "," + b; }

} // namespace

Scalar parse_monomial(const std::string& text) {
    Scalar out(1);
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw ConfigParse(fmt::format("monomial '{}': {}", text, why));
    };
    auto skip = [&] {
        while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == '*')) ++i;
    };
    auto read_int = [&]() -> long {
        bool paren = i < text.size() && text[i] == '(';
        if (paren) ++i;
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
        if (i == start || !std::isdigit((unsigned char)text[i - 1])) fail("expected an integer");
        long v = std::stol(text.substr(start, i - start));
        if (paren) {
            if (i >= text.size() || text[i] != ')') fail("unbalanced parenthesis");
            ++i;
        }
        return v;
    };
    bool any = false;
    skip();
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        if (text[i] == '-') out = -out;
        ++i;
        skip();
    }
    while (i < text.size()) {
        if (std::isdigit((unsigned char)text[i])) {
            size_t start = i;
            while (i < text.size() && (std::isdigit((unsigned char)text[i]) || text[i] == '/')) ++i;
            mpq_class v;
            if (v.set_str(text.substr(start, i - start), 10) != 0) fail("bad rational");
            v.canonicalize();
            if (v == 0) fail("zero coefficient");
            out *= Scalar(v);
        } else if (std::isalpha((unsigned char)text[i]) || text[i] == '_') {
            size_t start = i;
            while (i < text.size() && (std::isalnum((unsigned char)text[i]) || text[i] == '_')) ++i;
            std::string name = text.substr(start, i - start);
            long p = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                p = read_int();
            }
            out *= Scalar::variable(name, (int)p);
        } else {
            fail(fmt::format("unexpected character '{}'", text[i]));
        }
        any = true;
        skip();
    }
    if (!any) fail("empty");
    return out;
}

Config parse_config(const json& j) {
    if (!j.is_object()) throw ConfigParse("config must be a JSON object");
    for (auto& [k, v] : j.items())
        if (!kFields.count(k)) throw ConfigParse(fmt::format("unknown field '{}'", k));
    Config c;
    c.generators = field(j, "generators", std::vector<std::string>{});
    if (c.generators.empty()) throw ConfigParse("generators must be a nonempty list");
    if (std::set<std::string>(c.generators.begin(), c.generators.end()).size() !=
        c.generators.size())
        throw ConfigParse("generator labels must be distinct");
    if (c.generators.size() > 8) throw ConfigParse("at most 8 generators are supported");
    c.cartan_labels = field(j, "cartan_labels", std::vector<std::string>{});
    if (c.cartan_labels.empty())
        for (auto& g : c.generators) c.cartan_labels.push_back("h" + g);
    c.base_params = field(j, "base_params", std::vector<std::string>{});
    c.phi_exponents = field(j, "phi_exponents", std::map<std::string, std::vector<long>>{});
    c.surface = field(j, "surface", std::map<std::string, std::string>{});
    c.weights = field(j, "weights", std::map<std::string, std::vector<std::string>>{});
    c.grade_cutoff = field(j, "grade_cutoff", 4);
    c.eps_order = field(j, "eps_order", 2);
    c.backend = field(j, "backend", std::string("exact"));
    c.tolerance = field(j, "tolerance", 1e-9);
    c.seed = field(j, "seed", std::uint64_t{1});
    if (j.contains("tau")) {
        auto t = j.at("tau");
        if (!t.is_object() || !t.contains("domain") || !t.contains("image"))
            throw ConfigParse("tau needs 'domain' and 'image'");
        c.tau = std::pair{field(t, "domain", std::vector<std::string>{}),
                          field(t, "image", std::vector<std::string>{})};
    }
    auto pts = field(j, "numeric_point", std::map<std::string, std::vector<double>>{});
    for (auto& [name, v] : pts) {
        if (v.size() != 2) throw ConfigParse(fmt::format("numeric_point '{}' needs [re, im]", name));
        c.numeric_point[name] = {v[0], v[1]};
    }

    if (c.grade_cutoff < 0 || c.grade_cutoff > 8) throw ConfigParse("grade_cutoff outside 0..8");
    if (c.eps_order < 0 || c.eps_order > 6) throw ConfigParse("eps_order outside 0..6");
    if (c.backend != "exact" && c.backend != "numeric")
        throw ConfigParse("backend must be 'exact' or 'numeric'");
    if (!(c.tolerance > 0)) throw ConfigParse("tolerance must be positive");

    std::set<std::string> params(c.base_params.begin(), c.base_params.end());
    if (params.size() != c.base_params.size()) throw ConfigParse("base_params must be distinct");
    size_t n = c.generators.size();
    if (c.phi_exponents.size() != n * n)
        throw ConfigParse(fmt::format("phi_exponents must have {} entries, one per ordered pair", n * n));
    for (auto& a : c.generators)
        for (auto& b : c.generators) {
            auto it = c.phi_exponents.find(pair_key(a, b));
            if (it == c.phi_exponents.end())
                throw ConfigParse(fmt::format("phi_exponents missing pair '{}'", pair_key(a, b)));
            if (it->second.size() != c.base_params.size())
                throw ConfigParse(fmt::format("phi_exponents '{}' must have {} entries",
                                              it->first, c.base_params.size()));
        }
    for (auto& [label, w] : c.weights) {
        if (std::find(c.cartan_labels.begin(), c.cartan_labels.end(), label) ==
            c.cartan_labels.end())
            throw ConfigParse(fmt::format("weights for unknown cartan label '{}'", label));
        if (w.size() != n) throw ConfigParse(fmt::format("weights '{}' need {} entries", label, n));
    }
    if (c.weights.empty() && c.cartan_labels.size() != n)
        throw ConfigParse("weights are required when cartan_labels differ in number from generators");
    for (auto& [key, mono] : c.surface) {
        parse_monomial(mono);
        if (!params.count(key) && !c.phi_exponents.count(key))
            throw ConfigParse(fmt::format("surface key '{}' is neither a base param nor a pair", key));
    }
    if (c.backend == "numeric")
        for (auto& p : c.base_params) {
            bool fixed = c.surface.count(p) > 0;
            if (!fixed && !c.numeric_point.count(p))
                throw ConfigParse(fmt::format("numeric_point does not cover '{}'", p));
        }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParse(fmt::format("cannot open '{}'", path));
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigParse(fmt::format("'{}': {}", path, e.what()));
    }
    return parse_config(j);
}

nlohmann::ordered_json Config::echo() const {
    nlohmann::ordered_json j;
    j["generators"] = generators;
    j["cartan_labels"] = cartan_labels;
    j["base_params"] = base_params;
    j["phi_exponents"] = phi_exponents;
    j["surface"] = surface;
    if (!weights.empty()) j["weights"] = weights;
    if (tau) j["tau"] = {{"domain", tau->first}, {"image", tau->second}};
    j["grade_cutoff"] = grade_cutoff;
    j["eps_order"] = eps_order;
    j["backend"] = backend;
    nlohmann::ordered_json pt = nlohmann::ordered_json::object();
    for (auto& [k, v] : numeric_point) pt[k] = {v.real(), v.imag()};
    j["numeric_point"] = pt;
    j["tolerance"] = tolerance;
    j["seed"] = seed;
    return j;
}

AlgebraSpec build_spec(const Config& c) {
    int n = (int)c.generators.size();
    std::vector<std::vector<Scalar>> x(n, std::vector<Scalar>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto& e = c.phi_exponents.at(pair_key(c.generators[a], c.generators[b]));
            Scalar v(1);
            for (size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) v *= Scalar::variable(c.base_params[k], (int)e[k]);
            x[a][b] = v;
        }
    std::vector<std::vector<mpq_class>> w(c.cartan_labels.size(), std::vector<mpq_class>(n));
    for (size_t h = 0; h < c.cartan_labels.size(); ++h) {
        auto it = c.weights.find(c.cartan_labels[h]);
        for (int b = 0; b < n; ++b) {
            if (it == c.weights.end()) {
                w[h][b] = (int)h == b ? 1 : 0;
                continue;
            }
            mpq_class v;
            if (v.set_str(it->second[b], 10) != 0)
                throw ConfigParse(fmt::format("weight '{}' is not rational", it->second[b]));
            v.canonicalize();
            w[h][b] = v;
        }
    }
    AlgebraSpec spec(c.generators, c.cartan_labels, x, w);
    if (c.surface.empty()) return spec;

    Substitution sub;
    for (auto& [key, mono] : c.surface) {
        Scalar image = parse_monomial(mono);
        if (std::find(c.base_params.begin(), c.base_params.end(), key) != c.base_params.end()) {
            sub.set(key, image);
            continue;
        }
        // A pair key fixes x_ab; it must be a single base param to the power +-1.
        const auto& e = c.phi_exponents.at(key);
        int nonzero = 0, at = -1;
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0) ++nonzero, at = (int)k;
        if (nonzero != 1 || (e[at] != 1 && e[at] != -1))
            throw ConfigParse(fmt::format("surface pair '{}' is not a single base param", key));
        sub.set(c.base_params[at], e[at] == 1 ? image : image.inverse());
    }
    return spec.with_surface(sub);
}

TauMap build_tau(const Config& c, const AlgebraSpec& spec) {
    TauMap tau;
    if (!c.tau) return tau;
    auto& [dom, img] = *c.tau;
    if (dom.size() != img.size() || dom.empty())
        throw ConfigParse("tau domain and image must be nonempty and of equal length");
    for (size_t i = 0; i < dom.size(); ++i) {
        try {
            tau.domain.push_back(spec.index_of(dom[i]));
            tau.image.push_back(spec.index_of(img[i]));
        } catch (const InvalidInput& e) {
            throw ConfigParse(e.what());
        }
    }
    return tau;
}

} // namespace qgf
