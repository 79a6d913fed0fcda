#include "pgl2hom/cache.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace pgl2hom {

Cache::Cache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string Cache::make_key(const std::string& ring_spec, const std::string& op_id) {
    return ring_spec + "@" + kArtifactVersion + "@" + op_id;
}

std::string Cache::path_for(const std::string& key) const {
    std::string safe;
    for (char c : key)
        safe += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '@')
                    ? c
                    : '_';
    return dir_ + "/" + safe + ".txt";
}

std::optional<std::string> Cache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream f(path_for(key));
    if (!f) return std::nullopt;
    std::string line;
    std::getline(f, line);
    return line;
}

void Cache::put(const std::string& key, const std::string& value) const {
    if (!enabled()) return;
    std::ofstream f(path_for(key));
    f << value << "\n";
}

}  // namespace pgl2hom
