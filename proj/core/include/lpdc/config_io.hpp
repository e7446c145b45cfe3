#pragma once

#include <filesystem>
#include <string>

#include "lpdc/model.hpp"

namespace lpdc {

/// Reads a JSON crystal description (schema in docs/config.md) and validates
/// it. Throws IoError when the file cannot be read and ConfigError for
/// malformed or physically invalid content.
CrystalConfig load_config(const std::filesystem::path& path);

CrystalConfig parse_config(const std::string& text);

/// Inverse of parse_config; round-trips exactly.
std::string dump_config(const CrystalConfig& config);

}  // namespace lpdc
