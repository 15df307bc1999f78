#include "output.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"

namespace pestpolicy::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::size_t write_atomically(const fs::path& path, const std::function<std::size_t(std::ostream&)>& write) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    std::size_t rows = 0;
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open '" + tmp.string() + "' for writing");
        rows = write(os);
        os.flush();
        if (!os) {
            fs::remove(tmp, ec);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
    return rows;
}

void update_manifest(const fs::path& dir, const std::string& config_hash, const std::string& engine_version,
                     const std::vector<ManifestEntry>& entries) {
    const fs::path path = dir / "manifest.json";
    std::map<std::string, json> files;
    if (std::ifstream in(path); in) {
        try {
            const json old = json::parse(in);
            if (old.value("config_hash", "") == config_hash && old.value("engine_version", "") == engine_version) {
                for (const auto& f : old.at("files")) files[f.at("file").get<std::string>()] = f;
            }
        } catch (const json::exception&) {
            files.clear();  // unreadable manifest: start over
        }
    }
    for (const ManifestEntry& e : entries) {
        files[e.file] = {{"file", e.file}, {"command", e.command}, {"rows", e.rows}};
    }
    json doc = {{"engine_version", engine_version}, {"config_hash", config_hash}, {"files", json::array()}};
    for (auto& [name, entry] : files) doc["files"].push_back(entry);
    write_atomically(path, [&](std::ostream& os) {
        os << doc.dump(2) << '\n';
        return files.size();
    });
}

}  // namespace pestpolicy::cli
