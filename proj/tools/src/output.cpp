#include "output.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>

#include <unistd.h>

#include "pap/errors.hpp"

namespace papsim {

void write_atomic(const fs::path& path, const std::string& content) {
    static std::atomic<unsigned> counter{0};
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw pap::ConfigError("cannot write '" + tmp.string() + "'", "OUTPUT_ERROR");
        out << content;
        out.flush();
        if (!out) throw pap::ConfigError("write failed for '" + tmp.string() + "'", "OUTPUT_ERROR");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw pap::ConfigError("cannot move output into place: " + ec.message(), "OUTPUT_ERROR");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

Artifacts::Artifacts(fs::path dir, std::string prefix) : dir_(std::move(dir)), prefix_(std::move(prefix)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw pap::ConfigError("cannot create output directory '" + dir_.string() + "'", "OUTPUT_ERROR");
}

fs::path Artifacts::path_for(const std::string& name) const { return dir_ / (prefix_ + name); }

fs::path Artifacts::csv(const std::string& name, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
    std::string text;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ',';
            text += cells[i];
        }
        text += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    const auto p = path_for(name);
    write_atomic(p, text);
    written_.push_back(p);
    return p;
}

fs::path Artifacts::json_file(const std::string& name, const json& body) {
    const auto p = path_for(name);
    write_atomic(p, body.dump(2) + "\n");
    written_.push_back(p);
    return p;
}

}  // namespace papsim
