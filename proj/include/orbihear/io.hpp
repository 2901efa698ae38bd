#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "orbihear/csc.hpp"
#include "orbihear/inversion.hpp"
#include "orbihear/minkowski.hpp"
#include "orbihear/polytope.hpp"

namespace orbihear::io {

nlohmann::json polytope_to_json(const LabeledPolytope& p);
/// Rejects non-primitive normals and malformed offsets with Error(ParseError).
LabeledPolytope polytope_from_json(const nlohmann::json& j);

nlohmann::json samples_to_json(const SpectralSamples& s, int dim, SumMode mode);
SpectralSamples samples_from_json(const nlohmann::json& j);

/// {"normals": [[...], ...], "volumes": [...]}; normals are normalized.
MinkowskiInput minkowski_from_json(const nlohmann::json& j);

CurvatureIntegrals integrals_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace orbihear::io
