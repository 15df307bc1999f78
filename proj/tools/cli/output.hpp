#pragma once

// Atomic file output and the run manifest.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pestpolicy::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes via a temporary file in the same directory, then renames it over
/// `path`. `write` returns the data row count.
std::size_t write_atomically(const std::filesystem::path& path,
                             const std::function<std::size_t(std::ostream&)>& write);

struct ManifestEntry {
    std::string file;
    std::string command;
    std::size_t rows = 0;
};

/// Records outputs in <dir>/manifest.json. Entries from earlier commands
/// with the same config hash and engine version are kept; otherwise the
/// manifest starts over.
void update_manifest(const std::filesystem::path& dir, const std::string& config_hash,
                     const std::string& engine_version, const std::vector<ManifestEntry>& entries);

}  // namespace pestpolicy::cli
