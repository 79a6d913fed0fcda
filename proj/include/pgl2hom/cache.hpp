#pragma once

#include <optional>
#include <string>

namespace pgl2hom {

/// Plain-text file cache keyed by (ring spec, artifact version,
/// operation id). One value per file; the format is a single line of
/// text so fixtures can be shared across implementations.
class Cache {
public:
    Cache() = default;  // disabled cache
    explicit Cache(std::string dir);

    bool enabled() const { return !dir_.empty(); }
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value) const;

    static std::string make_key(const std::string& ring_spec, const std::string& op_id);

private:
    std::string path_for(const std::string& key) const;
    std::string dir_;
};

inline constexpr const char* kArtifactVersion = "1";

}  // namespace pgl2hom
