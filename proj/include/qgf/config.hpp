#pragma once

// JSON configuration of an algebra spec and run settings.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgf/deformations.hpp"

namespace qgf {

struct Config {
    std::vector<std::string> generators;
    std::vector<std::string> cartan_labels;
    std::vector<std::string> base_params;
    // "a,b" -> exponents over base_params, x_ab = prod p^e.
    std::map<std::string, std::vector<long>> phi_exponents;
    // base param or "a,b" -> monomial such as "q^-2" or "-1".
    std::map<std::string, std::string> surface;
    // cartan label -> H_c(b) for each generator, as rational strings; identity by default.
    std::map<std::string, std::vector<std::string>> weights;
    std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>> tau;
    int grade_cutoff = 4;
    int eps_order = 2;
    std::string backend = "exact";
    NumericPoint numeric_point;
    double tolerance = 1e-9;
    std::uint64_t seed = 1;

    nlohmann::ordered_json echo() const;
};

// Throws ConfigParse.
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

// "-2/3 q^-1 s^2", "q^(-1)*s", "1". Throws ConfigParse.
Scalar parse_monomial(const std::string& text);

// Spec with x_ab from phi_exponents and the surface applied.
AlgebraSpec build_spec(const Config& c);
TauMap build_tau(const Config& c, const AlgebraSpec& spec);

} // namespace qgf
