#pragma once

// Helpers for the offline desk-scale fixture bundle under
// fixtures/bundle/: a synthetic single-archive capture history for
// www.cnn.com and its top three zone-manager files across 2015-2016.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "support/fake_transport.hpp"
#include "tempo/audit.hpp"
#include "tempo/datetime.hpp"
#include "tempo/fetch.hpp"

namespace tempo::test {

inline std::string bundle_dir() { return std::string(TEMPO_FIXTURES_DIR) + "/bundle"; }

inline std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline std::string bundle_zone_url(const std::string& id, const std::string& ext) {
    return "http://www.cnn.com/data/ocs/section/index.html:" + id +
           "/views/zones/common/zone-manager" + ext;
}

inline AuditConfig bundle_config(const std::filesystem::path& cache_root, NetworkMode mode) {
    AuditConfig config = load_audit_config(bundle_dir() + "/audit.json");
    config.cache_root = cache_root;
    config.mode = mode;
    return config;
}

// Fills `cache_root` with every response the bundle audit needs, through the
// same fetch layer the audit uses.
inline void populate_bundle_cache(const std::filesystem::path& cache_root) {
    FakeTransport transport;
    const std::string cdx = "http://fixture.test/cdx?url=";
    const std::string tail = "&filter=statuscode:200&showResumeKey=true";
    transport.add(cdx + "http://www.cnn.com/&from=20150424000000&to=20161230235959" + tail, 200,
                  read_file_or_die(bundle_dir() + "/base.cdx"));
    const std::pair<const char*, const char*> zones[] = {
        {"homepage1-zone-1", "hp1"}, {"homepage2-zone-1", "hp2"}, {"homepage3-zone-1", "hp3"}};
    for (const auto& [id, prefix] : zones) {
        transport.add(cdx + bundle_zone_url(id, ".html") + tail, 200,
                      read_file_or_die(bundle_dir() + "/" + prefix + "_html.cdx"));
        transport.add(cdx + bundle_zone_url(id, ".izl.json") + tail, 200,
                      read_file_or_die(bundle_dir() + "/" + prefix + "_izljson.cdx"));
    }

    AuditConfig config = bundle_config(cache_root, NetworkMode::Online);
    ResponseCache cache(cache_root);
    Fetcher fetcher(cache, transport, {});
    const ArchiveEndpoint& endpoint = config.roster.at(0);
    FilterSpec base_filter;
    base_filter.status_code = 200;
    base_filter.from = parse_stamp14("20150424000000");
    base_filter.to = parse_stamp14("20161230235959");
    fetcher.fetch_captures(endpoint, "http://www.cnn.com/", base_filter);
    FilterSpec zone_filter;
    zone_filter.status_code = 200;
    for (const auto& [id, prefix] : zones) {
        fetcher.fetch_captures(endpoint, bundle_zone_url(id, ".html"), zone_filter);
        fetcher.fetch_captures(endpoint, bundle_zone_url(id, ".izl.json"), zone_filter);
    }
}

}  // namespace tempo::test
