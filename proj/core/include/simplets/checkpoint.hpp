#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "simplets/fields.hpp"

namespace simplets {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

/// Complete restart state: every snapshot buffer with its role, the
/// configuration the run was started from, and the time level.
struct Checkpoint {
  std::string config_text;
  std::uint64_t config_hash = 0;
  double time = 0.0;
  long step = 0;
  FieldSet fields;
};

/// Writes to a temporary file next to `path` and renames it into place.
/// Throws IoError on failure.
void write_checkpoint(const std::filesystem::path& path, const std::string& config_text, double time,
                      long step, const FieldSet& fields);

/// Throws CheckpointError on a bad magic, unknown version, truncation or a
/// checksum mismatch; IoError when the file cannot be opened.
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Throws ConfigError when `config_text` does not hash to the value stored.
void check_config_hash(const Checkpoint& cp, const std::string& config_text);

}  // namespace simplets
