#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperiso/density.hpp"
#include "hyperiso/errors.hpp"

namespace hyperiso {

DensitySpec parse_density_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("density json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("lambda_nodes")) {
        throw DomainError("density json: missing \"lambda_nodes\"");
    }
    const auto& arr = doc.at("lambda_nodes");
    if (!arr.is_array()) throw DomainError("density json: \"lambda_nodes\" must be an array");

    std::vector<LambdaNode> nodes;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& pair = arr[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw DomainError("density json: node " + std::to_string(i) +
                              " must be a pair of numbers [t, value]");
        }
        nodes.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return DensitySpec(std::move(nodes));
}

DensitySpec load_density_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open density file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_density_json(buf.str());
}

std::string density_to_json(const DensitySpec& spec) {
    nlohmann::json doc;
    doc["lambda_nodes"] = nlohmann::json::array();
    for (const auto& n : spec.nodes()) doc["lambda_nodes"].push_back({n.t, n.value});
    return doc.dump();
}

}  // namespace hyperiso
