#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gentess/gspace.hpp"

namespace gentess {

/// Contents of a mesh file. Sections and smoothness are optional so that a
/// bare cell list is still a valid document.
struct MeshDocument {
    std::vector<Box> cells;
    std::optional<SectionFamily> s;
    std::optional<SectionFamily> t;
    std::optional<std::pair<int, int>> smoothness;
};

/// {"kind": ..., "params": {...}}. Throws InvalidParameter.
nlohmann::json generator_to_json(const GeneratorPair& gen);
GeneratorPair generator_from_json(const nlohmann::json& j);

/// {"kind": ..., "params": {...}, "n": n}.
nlohmann::json family_to_json(const SectionFamily& f);
SectionFamily family_from_json(const nlohmann::json& j);

/// Throws MeshError for malformed documents (with the offending cell ids).
MeshDocument mesh_document_from_json(const nlohmann::json& j);
nlohmann::json mesh_document_to_json(const MeshDocument& doc);

MeshDocument read_mesh_file(const std::string& path);
void write_mesh_file(const std::string& path, const MeshDocument& doc);

/// Parses and validates: the returned mesh has all derived structure.
TMesh load_mesh(const nlohmann::json& j);

} // namespace gentess
