#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempo/cache.hpp"
#include "tempo/cdx.hpp"
#include "tempo/fetch.hpp"
#include "tempo/http.hpp"
#include "tempo/memento.hpp"
#include "tempo/resolve.hpp"
#include "tempo/zones.hpp"

namespace tempo {

enum class NetworkMode { Online, OfflineCacheOnly };
enum class Sampling { FirstPerDay, FullPopulation };

struct AuditConfig {
    std::string target_url;
    std::vector<ArchiveEndpoint> roster;

    // Empty means auto-extract from probed HTML (falling back to the three
    // top-level news zones).
    std::vector<std::string> zone_ids;
    std::string zone_base_uri = "index.html";
    std::map<std::string, std::string> zone_uri_overrides;

    EraTimeline timeline = default_era_timeline();
    std::vector<std::chrono::seconds> thresholds = default_thresholds();
    std::chrono::seconds primary_threshold = std::chrono::hours{48};
    DateInterval range;
    std::filesystem::path cache_root;
    int concurrency = 4;
    NetworkMode mode = NetworkMode::Online;
    Sampling sampling = Sampling::FirstPerDay;
    bool probe_raw_html = true;
    std::size_t probe_limit = 0;  // 0 = unlimited
    ProbeOptions probe_options;

    static std::vector<std::chrono::seconds> default_thresholds();
};

// Loads the JSON audit config documented in docs/config.md. Relative roster,
// timeline, and cache paths resolve against the config file's directory.
// Throws ConfigError.
AuditConfig load_audit_config(const std::filesystem::path& path);

// Stable hash of everything that influences audit results (not the
// provenance clock).
std::string config_hash(const AuditConfig& config);

struct ResolutionRow {
    utc_seconds base_datetime{};
    std::string base_access_url;
    std::string base_archive;
    ResolutionResult result;
};

struct ZoneAuditReport {
    std::string zone_id;
    std::vector<std::string> resource_urls;  // era-variant zone-manager URLs
    std::vector<ResolutionRow> rows;         // at the primary threshold
    std::vector<DaySeriesPoint> series;
    std::vector<ThresholdImpactRow> impact;  // summed over era segments
    std::vector<std::string> diagnostics;
};

struct Provenance {
    int schema_version = 1;
    std::string config_hash;
    std::string generated_at;  // the one field excluded from comparison hashes
    std::vector<std::string> endpoints;
};

struct AuditReport {
    Provenance provenance;
    std::string target_url;
    DateInterval range;
    std::size_t base_total = 0;
    std::size_t base_sampled = 0;
    std::map<std::string, std::size_t> base_per_archive;
    std::size_t probed = 0;
    std::vector<ZoneAuditReport> zones;
    std::optional<HeroScanReport> hero_scan;
    std::vector<std::string> diagnostics;
    bool partial_failure = false;
};

// End-to-end audit: fetch and merge base-page captures, sample them, probe
// raw HTML where the endpoint supports unmodified content, generate
// era-appropriate zone-manager URLs, fetch their full capture histories,
// classify every sampled memento, and package the results. Deterministic
// given identical cache contents. Throws ConfigError up front, NetworkError
// when no base data is reachable, CacheMiss for required data in offline
// mode; zone-level failures degrade to Unresolvable rows instead.
AuditReport run_audit(const AuditConfig& config);

enum class ReportFormat { Json, Csv, PlotData };

// Writes report files under out_dir: report.json, the per-table CSVs, or
// two-column plot series per zone (see docs/report-formats.md). Returns the
// paths written. Throws IoError.
std::vector<std::filesystem::path> emit_report(const AuditReport& report, ReportFormat format,
                                               const std::filesystem::path& out_dir);

// JSON text of the full report (what emit_report writes for Json).
std::string report_to_json(const AuditReport& report);

// Hash of a report's JSON with provenance.generated_at blanked, so that two
// runs over identical caches compare equal.
std::string report_comparison_hash(const std::string& report_json);

struct ProbeCorpusRow {
    std::string stamp;
    HtmlProbeResult probe;
};

struct ProbeCorpusReport {
    std::vector<ProbeCorpusRow> rows;  // ascending by stamp
    std::map<std::string, std::size_t> verdict_counts;
    std::size_t files_skipped = 0;
    std::vector<std::string> diagnostics;
};

// Probes every `<14-digit-stamp>.html` under html_dir. Unreadable or
// non-stamp files are skipped and counted.
ProbeCorpusReport probe_corpus(const std::filesystem::path& html_dir,
                               const ProbeOptions& options = {});

std::string probe_corpus_to_csv(const ProbeCorpusReport& report);
std::string probe_corpus_to_json(const ProbeCorpusReport& report);

}  // namespace tempo
