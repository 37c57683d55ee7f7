#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace papsim {

namespace fs = std::filesystem;

inline constexpr const char* tool_version = "0.3.0";

struct Request {
    std::string command;  // levels, scatter, fc, dynamics, ensemble, rates
    fs::path config;
    std::vector<std::string> overrides;   // section.key=value
    std::optional<fs::path> out_dir;      // default: [output] dir, else "."
};

struct Report {
    int exit_code = 0;  // 0 ok, 2 config, 3 numerical, 1 anything else
    std::string error_tag;
    std::string error_message;
    std::vector<fs::path> outputs;  // manifest last
};

// Never throws.
Report run(const Request& req);

const std::vector<std::string>& command_names();

}  // namespace papsim
