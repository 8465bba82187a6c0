#ifndef FLP_IO_HPP
#define FLP_IO_HPP

#include "flp/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace flp {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance block embedded in every emitted file. Re-running the same
/// command with the same seed reproduces the payload byte-for-byte; only
/// the timestamp differs.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed{0};
    std::string tool_version{kToolVersion};
    std::string timestamp;  // ISO-8601 UTC
};

RunManifest make_manifest(std::string command,
                          std::map<std::string, std::string> parameters,
                          std::uint64_t seed = 0);

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Leading '#'-prefixed manifest lines for CSV outputs.
std::string manifest_csv_header(const RunManifest& manifest);

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

/// Schema: {"agents":[{"x":..,"y":..,"w":..},...],
///          "prediction":{"x":..,"y":..}|null, "confidence":<num>|null}
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace flp

#endif  // FLP_IO_HPP
