#ifndef DISTLINK_CLI_MANIFEST_H_
#define DISTLINK_CLI_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace distlink::cli {

// Hex SHA-256 of a file's bytes. Throws InputError if it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

// Current UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

// What a run needs to be repeated: the command line, the effective seed and
// configuration, and digests of every input file.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed;
  std::string config_json;  // empty when the command takes no config
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  std::string started_at;
  std::string finished_at;

  std::string to_json() const;
  void save(const std::filesystem::path& path) const;
};

}  // namespace distlink::cli

#endif  // DISTLINK_CLI_MANIFEST_H_
