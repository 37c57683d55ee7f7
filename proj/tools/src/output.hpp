#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace papsim {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Temp file in the same directory, then rename.
void write_atomic(const fs::path& path, const std::string& content);

// %.12e
std::string fmt(double v);

class Artifacts {
public:
    Artifacts(fs::path dir, std::string prefix);

    // Cells are preformatted; use fmt() for floats.
    fs::path csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);
    fs::path json_file(const std::string& name, const json& body);

    const std::vector<fs::path>& written() const { return written_; }
    fs::path path_for(const std::string& name) const;

private:
    fs::path dir_;
    std::string prefix_;
    std::vector<fs::path> written_;
};

}  // namespace papsim
