#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tempo/datetime.hpp"

namespace tempo {

// Content-addressed on-disk response cache:
//
//   <root>/<endpoint>/<sha256-of-key>.body    HTTP 200 response bytes
//   <root>/<endpoint>/<sha256-of-key>.<code>  negative result (e.g. .404)
//   <root>/<endpoint>/index                   key TAB fetch-epoch TAB filename
//
// The index is append-only; the last line for a key wins. Body writes go
// through a temp file and rename, and index appends are single writes, so
// concurrent auditors sharing one cache directory do not corrupt it.
class ResponseCache {
  public:
    explicit ResponseCache(std::filesystem::path root);

    struct Entry {
        int status = 200;
        std::string body;
        utc_seconds fetched_at{};
    };

    // Newest entry for the key, or nothing; entries older than `ttl`
    // (when given) are reported as missing.
    std::optional<Entry> lookup(const std::string& endpoint, const std::string& key,
                                std::optional<std::chrono::seconds> ttl = std::nullopt) const;

    // Persists a response. Keys must be free of tabs and newlines (request
    // URLs are). Throws IoError.
    void store(const std::string& endpoint, const std::string& key, int status,
               std::string_view body);

    const std::filesystem::path& root() const { return root_; }

  private:
    std::filesystem::path endpoint_dir(const std::string& endpoint) const;
    std::filesystem::path root_;
};

// Hex-encoded SHA-256, used for cache filenames and config hashes.
std::string sha256_hex(std::string_view data);

}  // namespace tempo
