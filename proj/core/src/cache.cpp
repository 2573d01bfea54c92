#include "tempo/cache.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "tempo/errors.hpp"

namespace tempo {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

ResponseCache::ResponseCache(fs::path root) : root_(std::move(root)) {}

fs::path ResponseCache::endpoint_dir(const std::string& endpoint) const {
    for (char c : endpoint)
        if (c == '/' || c == '\\' || c == '\0')
            throw IoError("endpoint name not usable as a directory: " + endpoint);
    return root_ / endpoint;
}

std::optional<ResponseCache::Entry> ResponseCache::lookup(
    const std::string& endpoint, const std::string& key,
    std::optional<std::chrono::seconds> ttl) const {
    fs::path dir = endpoint_dir(endpoint);
    std::ifstream index(dir / "index");
    if (!index) return std::nullopt;

    // Last entry for the key wins.
    std::string line, filename;
    long long epoch = 0;
    while (std::getline(index, line)) {
        size_t tab1 = line.find('\t');
        if (tab1 == std::string::npos) continue;
        if (line.compare(0, tab1, key) != 0) continue;
        size_t tab2 = line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos) continue;
        try {
            epoch = std::stoll(line.substr(tab1 + 1, tab2 - tab1 - 1));
        } catch (...) {
            continue;
        }
        filename = line.substr(tab2 + 1);
    }
    if (filename.empty()) return std::nullopt;

    Entry entry;
    entry.fetched_at = utc_seconds(std::chrono::seconds(epoch));
    if (ttl) {
        auto now = std::chrono::time_point_cast<std::chrono::seconds>(
            std::chrono::system_clock::now());
        if (now - entry.fetched_at > *ttl) return std::nullopt;
    }

    size_t dot = filename.rfind('.');
    std::string suffix = dot == std::string::npos ? "" : filename.substr(dot + 1);
    if (suffix != "body") {
        try {
            entry.status = std::stoi(suffix);
        } catch (...) {
            return std::nullopt;
        }
    }

    std::ifstream body(dir / filename, std::ios::binary);
    if (!body) return std::nullopt;
    std::ostringstream buf;
    buf << body.rdbuf();
    entry.body = std::move(buf).str();
    return entry;
}

void ResponseCache::store(const std::string& endpoint, const std::string& key, int status,
                          std::string_view body) {
    if (key.find('\t') != std::string::npos || key.find('\n') != std::string::npos)
        throw IoError("cache key contains tab or newline: " + key);
    fs::path dir = endpoint_dir(endpoint);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create cache directory " + dir.string());

    std::string filename =
        sha256_hex(key) + (status == 200 ? ".body" : "." + std::to_string(status));

    static thread_local std::mt19937_64 rng{std::random_device{}()};
    fs::path tmp = dir / (filename + ".tmp" + std::to_string(rng()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(body.data(), std::streamsize(body.size()));
        if (!out) throw IoError("cannot write cache file " + tmp.string());
    }
    fs::rename(tmp, dir / filename, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename cache file into place: " + (dir / filename).string());
    }

    auto now = std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch())
                   .count();
    std::string line = key + "\t" + std::to_string(now) + "\t" + filename + "\n";
    // A single appended write keeps concurrent writers from interleaving.
    std::FILE* f = std::fopen((dir / "index").c_str(), "ab");
    if (!f) throw IoError("cannot open cache index for append: " + (dir / "index").string());
    std::fwrite(line.data(), 1, line.size(), f);
    std::fclose(f);
}

}  // namespace tempo
