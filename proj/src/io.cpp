#include "flp/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace flp {

using nlohmann::json;

RunManifest make_manifest(std::string command,
                          std::map<std::string, std::string> parameters,
                          std::uint64_t seed) {
    RunManifest manifest;
    manifest.command = std::move(command);
    manifest.parameters = std::move(parameters);
    manifest.seed = seed;
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    manifest.timestamp = buf;
    return manifest;
}

json manifest_to_json(const RunManifest& manifest) {
    return json{{"command", manifest.command},
                {"parameters", manifest.parameters},
                {"seed", manifest.seed},
                {"tool_version", manifest.tool_version},
                {"timestamp", manifest.timestamp}};
}

std::string manifest_csv_header(const RunManifest& manifest) {
    std::string out;
    out += "# command=" + manifest.command + "\n";
    for (const auto& [key, value] : manifest.parameters)
        out += "# " + key + "=" + value + "\n";
    out += "# seed=" + std::to_string(manifest.seed) + "\n";
    out += "# tool_version=" + std::string(manifest.tool_version) + "\n";
    out += "# timestamp=" + manifest.timestamp + "\n";
    return out;
}

json point_to_json(const Point& p) {
    return json{{"x", p.x}, {"y", p.y}};
}

Point point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw std::invalid_argument("point must be an object with x and y");
    const Point p{j.at("x").get<double>(), j.at("y").get<double>()};
    if (!is_finite(p))
        throw std::invalid_argument("point coordinates must be finite");
    return p;
}

json instance_to_json(const Instance& instance) {
    json agents = json::array();
    for (const auto& a : instance.agents)
        agents.push_back(json{{"x", a.location.x}, {"y", a.location.y}, {"w", a.weight}});
    json j;
    j["agents"] = std::move(agents);
    j["prediction"] =
        instance.prediction ? point_to_json(*instance.prediction) : json(nullptr);
    j["confidence"] = instance.confidence ? json(*instance.confidence) : json(nullptr);
    return j;
}

Instance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("agents") || !j.at("agents").is_array())
        throw std::invalid_argument("instance must contain an agents array");
    Instance instance;
    for (const auto& entry : j.at("agents")) {
        if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
            !entry.contains("w"))
            throw std::invalid_argument("agent must have x, y, and w");
        instance.agents.push_back(
            make_agent(Point{entry.at("x").get<double>(), entry.at("y").get<double>()},
                       entry.at("w").get<double>()));
    }
    if (j.contains("prediction") && !j.at("prediction").is_null())
        instance.prediction = point_from_json(j.at("prediction"));
    if (j.contains("confidence") && !j.at("confidence").is_null())
        instance.confidence = j.at("confidence").get<double>();
    validate_instance(instance);
    return instance;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed instance file: " + std::string(e.what()));
    }
    return instance_from_json(j);
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace flp
