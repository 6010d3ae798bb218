#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "firehash/fire.hpp"
#include "firehash/fire1.hpp"

namespace firehash {

inline constexpr int kModelFormatVersion = 1;
inline constexpr std::string_view kModelMagic = "firehash-model";

/// JSON document carrying every sampled parameter, bucket table and the RngSpec,
/// stamped with magic, format_version and an FNV-1a checksum of the payload.
std::string serialize_model(const SketchEnsemble& model);
std::string serialize_model(const ProjectionEnsemble& model);

using AnyModel = std::variant<SketchEnsemble, ProjectionEnsemble>;

/// Throws VersionError (bad magic/version), ChecksumError, or FormatError.
AnyModel deserialize_model(std::string_view text);

void save_model(const std::string& path, const SketchEnsemble& model);
void save_model(const std::string& path, const ProjectionEnsemble& model);
AnyModel load_model(const std::string& path);

SketchEnsemble load_sketch_model(const std::string& path);
ProjectionEnsemble load_projection_model(const std::string& path);

}  // namespace firehash
