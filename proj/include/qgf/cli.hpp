#pragma once

// Command dispatch and report generation for the qgf tool.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace qgf {

struct CliOptions {
    std::string command;
    std::optional<std::string> config_path;
    std::optional<int> grade;
    std::optional<int> eps_order;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out = "text";
    std::optional<double> eps, u, q;
    bool timing = false;
    int threads = 1;
};

struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = 0; // 0 pass, 1 residual failure, 2 input error
};

// Never throws for input problems; they become exit code 2 with an error report.
RunResult run(const CliOptions& opts);

std::string render(const nlohmann::ordered_json& report, const std::string& out);

// QGF_THREADS, default 1. Throws InvalidInput on a malformed value.
int threads_from_env();

} // namespace qgf
