#include "tempo/audit.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tempo/config.hpp"
#include "tempo/errors.hpp"
#include "tempo/url.hpp"

namespace tempo {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void parallel_for(std::size_t n, int concurrency, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    int workers = std::max(1, std::min<int>(concurrency, int(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

struct EraSegment {
    DateInterval range;
    ZoneDelivery era;
};

// Splits [range.from, range.to) at timeline boundaries. The part before the
// first boundary, if any, is returned through `uncovered`.
std::vector<EraSegment> era_segments(const EraTimeline& timeline, DateInterval range,
                                     std::optional<DateInterval>* uncovered) {
    std::vector<EraSegment> segments;
    utc_day cursor = range.from;
    if (!timeline.boundaries.empty() && cursor < timeline.boundaries.front().first) {
        utc_day end = std::min(range.to, timeline.boundaries.front().first);
        if (uncovered) *uncovered = DateInterval{cursor, end};
        cursor = end;
    }
    for (std::size_t i = 0; i < timeline.boundaries.size() && cursor < range.to; ++i) {
        utc_day era_start = timeline.boundaries[i].first;
        utc_day era_end = i + 1 < timeline.boundaries.size() ? timeline.boundaries[i + 1].first
                                                             : range.to;
        utc_day from = std::max(cursor, era_start);
        utc_day to = std::min(range.to, era_end);
        if (from < to) {
            segments.push_back({DateInterval{from, to}, timeline.boundaries[i].second});
            cursor = to;
        }
    }
    return segments;
}

CaptureSet records_in(const CaptureSet& base, DateInterval range) {
    CaptureSet out;
    out.original_url = base.original_url;
    out.filter_applied = base.filter_applied;
    out.source_archive = base.source_archive;
    out.replay_url_template = base.replay_url_template;
    for (const CdxRecord& rec : base.records)
        if (range.contains(rec.timestamp)) out.records.push_back(rec);
    return out;
}

std::vector<std::chrono::seconds> sorted_thresholds(std::vector<std::chrono::seconds> t) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

std::string expand_replay(const std::string& tmpl, utc_seconds ts, const std::string& url) {
    if (tmpl.empty()) return {};
    std::string out = tmpl;
    auto replace = [&](std::string_view ph, const std::string& value) {
        size_t pos = out.find(ph);
        if (pos != std::string::npos) out.replace(pos, ph.size(), value);
    };
    replace("{timestamp}", format_stamp14(ts));
    replace("{url}", url);
    return out;
}

}  // namespace

std::vector<std::chrono::seconds> AuditConfig::default_thresholds() {
    using namespace std::chrono;
    return {seconds(hours(1)), seconds(hours(2)), seconds(hours(6)), seconds(hours(24)),
            seconds(hours(48))};
}

namespace {

void validate(const AuditConfig& config) {
    if (config.target_url.empty()) throw ConfigError("target_url is empty");
    try {
        canonical_urlkey(config.target_url);
    } catch (const InvalidUrl& e) {
        throw ConfigError(std::string("target_url invalid: ") + e.what());
    }
    if (config.roster.empty()) throw ConfigError("archive roster is empty");
    bool any_cdx = std::any_of(config.roster.begin(), config.roster.end(),
                               [](const ArchiveEndpoint& e) { return !e.cdx_url_template.empty(); });
    if (!any_cdx) throw ConfigError("no endpoint in the roster has a CDX template");
    if (config.range.empty())
        throw ConfigError("empty date range " + format_iso_date(config.range.from) + ".." +
                          format_iso_date(config.range.to));
    if (config.thresholds.empty()) throw ConfigError("no thresholds configured");
    if (config.primary_threshold.count() <= 0) throw ConfigError("primary threshold must be positive");
    if (config.concurrency < 1) throw ConfigError("concurrency must be >= 1");
    if (config.cache_root.empty()) throw ConfigError("cache_root is empty");
    if (config.timeline.boundaries.empty()) throw ConfigError("era timeline is empty");
}

struct AuditContext {
    const AuditConfig& config;
    ResponseCache cache;
    std::unique_ptr<HttpTransport> transport;
    std::unique_ptr<Fetcher> fetcher;
    std::vector<const ArchiveEndpoint*> cdx_endpoints;
    std::map<std::string, const ArchiveEndpoint*> by_name;
    // zone-manager URL -> merged full-history captures (shared across zones)
    std::map<std::string, CaptureSet> zone_captures;

    explicit AuditContext(const AuditConfig& cfg) : config(cfg), cache(cfg.cache_root) {
        FetchOptions opts;
        opts.offline = cfg.mode == NetworkMode::OfflineCacheOnly;
        transport = opts.offline ? make_refusing_transport() : make_httplib_transport();
        fetcher = std::make_unique<Fetcher>(cache, *transport, opts);
        for (const ArchiveEndpoint& e : cfg.roster) {
            by_name[e.name] = &e;
            if (!e.cdx_url_template.empty()) cdx_endpoints.push_back(&e);
        }
    }

    std::string access_url_for(const std::string& archive, utc_seconds ts,
                               const std::string& url) const {
        auto it = by_name.find(archive);
        if (it == by_name.end()) return {};
        return expand_replay(it->second->replay_url_template, ts, url);
    }
};

// Fetches `url` from every CDX-capable endpoint and merges the results.
// Failures degrade to diagnostics unless `required`, in which case a total
// failure (no endpoint succeeded) rethrows.
CaptureSet fetch_merged(AuditContext& ctx, const std::string& url, const FilterSpec& filters,
                        bool required, std::vector<std::string>& diagnostics, bool& partial) {
    CaptureSet merged;
    merged.original_url = url;
    merged.filter_applied = filters.describe() + " (merged)";
    std::size_t successes = 0;
    std::exception_ptr last_error;
    for (const ArchiveEndpoint* endpoint : ctx.cdx_endpoints) {
        try {
            Fetcher::CaptureResult res = ctx.fetcher->fetch_captures(*endpoint, url, filters);
            successes++;
            if (res.parse_report.lines_skipped > 0)
                diagnostics.push_back(endpoint->name + ": skipped " +
                                      std::to_string(res.parse_report.lines_skipped) +
                                      " malformed CDX line(s) for " + url +
                                      " (first: " + res.parse_report.first_error + ")");
            merged.records.insert(merged.records.end(),
                                  std::make_move_iterator(res.captures.records.begin()),
                                  std::make_move_iterator(res.captures.records.end()));
        } catch (const CacheMiss& e) {
            last_error = std::current_exception();
            diagnostics.push_back(endpoint->name + ": " + e.what());
            partial = true;
        } catch (const NetworkError& e) {
            last_error = std::current_exception();
            diagnostics.push_back(endpoint->name + ": " + e.what());
            partial = true;
        }
    }
    if (required && successes == 0 && last_error) std::rethrow_exception(last_error);
    sort_captures(merged.records);
    merged.records.erase(std::unique(merged.records.begin(), merged.records.end(),
                                     [](const CdxRecord& a, const CdxRecord& b) {
                                         return a.timestamp == b.timestamp &&
                                                a.digest == b.digest &&
                                                a.original == b.original &&
                                                a.source_archive == b.source_archive;
                                     }),
                         merged.records.end());
    return merged;
}

std::vector<CdxRecord> sample_records(const CaptureSet& base, Sampling sampling) {
    if (sampling == Sampling::FullPopulation) return base.records;
    std::vector<CdxRecord> out;
    std::optional<utc_day> last_day;
    for (const CdxRecord& rec : base.records) {
        utc_day day = day_of(rec.timestamp);
        if (!last_day || *last_day != day) {
            out.push_back(rec);
            last_day = day;
        }
    }
    return out;
}

const CaptureSet& zone_capture_set(AuditContext& ctx, const std::string& url,
                                   std::vector<std::string>& diagnostics, bool& partial) {
    auto it = ctx.zone_captures.find(url);
    if (it != ctx.zone_captures.end()) return it->second;
    FilterSpec filters;
    filters.status_code = 200;  // full history on purpose: captures outside the
                                // audit range still resolve nearby mementos
    CaptureSet set = fetch_merged(ctx, url, filters, /*required=*/false, diagnostics, partial);
    return ctx.zone_captures.emplace(url, std::move(set)).first->second;
}

}  // namespace

AuditReport run_audit(const AuditConfig& raw_config) {
    AuditConfig config = raw_config;
    config.thresholds = sorted_thresholds(config.thresholds);
    validate(config);

    AuditContext ctx(config);
    AuditReport report;
    report.target_url = config.target_url;
    report.range = config.range;
    report.provenance.config_hash = config_hash(config);
    report.provenance.generated_at = format_iso8601(
        std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now()));
    for (const ArchiveEndpoint& e : config.roster)
        report.provenance.endpoints.push_back(
            e.name + " timemap=" + e.timemap_url_template + " cdx=" + e.cdx_url_template +
            " rate=" + std::to_string(e.rate_limit));

    // 1. Base-page captures over the audit range, merged across the roster.
    FilterSpec base_filter;
    base_filter.status_code = 200;
    base_filter.from = utc_seconds(config.range.from);
    base_filter.to = utc_seconds(config.range.to) - std::chrono::seconds(1);
    CaptureSet base = fetch_merged(ctx, config.target_url, base_filter, /*required=*/true,
                                   report.diagnostics, report.partial_failure);
    report.base_total = base.records.size();
    for (const CdxRecord& rec : base.records) report.base_per_archive[rec.source_archive]++;

    // 2. Sample for the per-memento stages.
    std::vector<CdxRecord> sampled = sample_records(base, config.sampling);
    report.base_sampled = sampled.size();

    std::optional<DateInterval> uncovered;
    std::vector<EraSegment> segments = era_segments(config.timeline, config.range, &uncovered);
    if (uncovered)
        report.diagnostics.push_back("range " + format_iso_date(uncovered->from) + ".." +
                                     format_iso_date(uncovered->to) +
                                     " predates the era timeline; skipped");

    // 3. Raw-HTML probe via the id_-style access pattern, where supported.
    std::vector<std::pair<MementoRecord, HtmlProbeResult>> probes;
    if (config.probe_raw_html) {
        std::vector<const CdxRecord*> to_probe;
        std::set<std::string> archives_without_raw;
        for (const CdxRecord& rec : sampled) {
            auto it = ctx.by_name.find(rec.source_archive);
            if (it == ctx.by_name.end() || it->second->raw_url_template.empty()) {
                archives_without_raw.insert(rec.source_archive);
                continue;
            }
            to_probe.push_back(&rec);
            if (config.probe_limit && to_probe.size() >= config.probe_limit) break;
        }
        for (const std::string& name : archives_without_raw)
            report.diagnostics.push_back("probe skipped for " + name +
                                         ": no raw (id_) URL template");

        std::vector<std::optional<std::pair<MementoRecord, HtmlProbeResult>>> slots(
            to_probe.size());
        std::vector<std::string> probe_errors(to_probe.size());
        parallel_for(to_probe.size(), config.concurrency, [&](std::size_t i) {
            const CdxRecord& rec = *to_probe[i];
            const ArchiveEndpoint& endpoint = *ctx.by_name.at(rec.source_archive);
            std::string url =
                expand_replay(endpoint.raw_url_template, rec.timestamp, rec.original);
            try {
                Fetcher::BodyResult body = ctx.fetcher->fetch_body(endpoint, url);
                if (body.status != 200) {
                    probe_errors[i] = "HTTP " + std::to_string(body.status) + " for " + url;
                    return;
                }
                MementoRecord m;
                m.original_url = rec.original;
                m.capture_datetime = rec.timestamp;
                m.access_url = ctx.access_url_for(rec.source_archive, rec.timestamp, rec.original);
                m.source_archive = rec.source_archive;
                slots[i] = {std::move(m), probe_html(body.body, config.probe_options)};
            } catch (const Error& e) {
                probe_errors[i] = e.what();
            }
        });
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i]) {
                probes.push_back(std::move(*slots[i]));
            } else if (!probe_errors[i].empty()) {
                report.diagnostics.push_back("probe failed: " + probe_errors[i]);
                report.partial_failure = true;
            }
        }
        report.probed = probes.size();
    }

    // 4. Zone inventory: explicit, extracted from probed HTML, or the
    // default top-level trio.
    std::vector<ZoneSpec> zones;
    if (!config.zone_ids.empty()) {
        for (const std::string& id : config.zone_ids) {
            ZoneSpec z;
            z.id = id;
            z.base_uri = config.zone_base_uri;
            if (auto it = config.zone_uri_overrides.find(id);
                it != config.zone_uri_overrides.end())
                z.uri = it->second;
            zones.push_back(std::move(z));
        }
    } else {
        for (const auto& [memento, probe] : probes)
            if (!probe.zones_declared.empty()) zones = probe.zones_declared;
        if (zones.empty()) {
            for (const char* id : {"homepage1-zone-1", "homepage2-zone-1", "homepage3-zone-1"}) {
                ZoneSpec z;
                z.id = id;
                z.base_uri = config.zone_base_uri;
                zones.push_back(std::move(z));
            }
            report.diagnostics.push_back(
                "no zone inventory configured or extracted; using the default top-level zones");
        }
    }

    // 5. Per-zone resolution, day series, and threshold impact. Era-variant
    // capture sets are fetched once and shared.
    for (const ZoneSpec& zone : zones) {
        ZoneAuditReport zr;
        zr.zone_id = zone.id;

        std::map<ZoneDelivery, std::string> url_by_era;
        for (const EraSegment& segment : segments) {
            auto zu = zone_manager_url(zone, utc_seconds(segment.range.from), config.timeline);
            if (zu) {
                url_by_era[segment.era] = zu->url;
                if (std::find(zr.resource_urls.begin(), zr.resource_urls.end(), zu->url) ==
                    zr.resource_urls.end())
                    zr.resource_urls.push_back(zu->url);
            }
        }
        for (const std::string& url : zr.resource_urls)
            zone_capture_set(ctx, url, zr.diagnostics, report.partial_failure);

        // Evidence rows for the sampled mementos at the primary threshold.
        for (const CdxRecord& rec : sampled) {
            ZoneDelivery era;
            try {
                era = era_at(config.timeline, rec.timestamp);
            } catch (const UncoveredInstant&) {
                continue;
            }
            auto url_it = url_by_era.find(era);
            if (url_it == url_by_era.end()) continue;  // zones not fetched via CSR yet
            const CaptureSet& captures = ctx.zone_captures.at(url_it->second);
            ResolutionRow row;
            row.base_datetime = rec.timestamp;
            row.base_archive = rec.source_archive;
            row.base_access_url =
                ctx.access_url_for(rec.source_archive, rec.timestamp, rec.original);
            row.result = classify(rec.timestamp, captures, config.primary_threshold);
            if (row.result.resolved && row.result.resolved->access_url.empty())
                row.result.resolved->access_url =
                    ctx.access_url_for(row.result.resolved->source_archive,
                                       row.result.resolved->capture_datetime,
                                       row.result.resolved->original_url);
            zr.rows.push_back(std::move(row));
        }

        // Day series and impact run over the full in-range population.
        std::map<std::chrono::seconds, ThresholdImpactRow> impact_sums;
        for (const EraSegment& segment : segments) {
            auto url_it = url_by_era.find(segment.era);
            if (url_it == url_by_era.end()) continue;
            const CaptureSet& captures = ctx.zone_captures.at(url_it->second);
            CaptureSet segment_base = records_in(base, segment.range);

            for (const DaySeriesPoint& point : day_series(segment_base, captures))
                zr.series.push_back(point);

            for (const ThresholdImpactRow& row :
                 threshold_impact(segment_base, captures, segment.range, config.thresholds)) {
                ThresholdImpactRow& sum = impact_sums[row.threshold];
                sum.range = config.range;
                sum.threshold = row.threshold;
                sum.total_mementos += row.total_mementos;
                sum.total_days += row.total_days;
                sum.affected_mementos += row.affected_mementos;
                sum.affected_days += row.affected_days;
            }
        }
        for (const auto& [threshold, row] : impact_sums) zr.impact.push_back(row);

        report.zones.push_back(std::move(zr));
    }

    // 6. Hero-zone violation scan over the probed mementos, per era variant.
    if (!probes.empty()) {
        ZoneSpec hero;
        hero.id = "homepage1-zone-1";
        hero.base_uri = config.zone_base_uri;
        if (auto it = config.zone_uri_overrides.find(hero.id);
            it != config.zone_uri_overrides.end())
            hero.uri = it->second;

        HeroScanReport merged;
        std::map<std::string, std::vector<std::pair<MementoRecord, HtmlProbeResult>>> by_url;
        for (const auto& pair : probes) {
            try {
                auto zu = zone_manager_url(hero, pair.first.capture_datetime, config.timeline);
                if (zu) by_url[zu->url].push_back(pair);
            } catch (const UncoveredInstant&) {
            }
        }
        for (auto& [url, pairs] : by_url) {
            const CaptureSet& captures =
                zone_capture_set(ctx, url, report.diagnostics, report.partial_failure);
            HeroScanReport part = hero_violation_scan(pairs, captures, config.primary_threshold);
            merged.scanned_csr += part.scanned_csr;
            merged.excluded_server_rendered += part.excluded_server_rendered;
            merged.violations += part.violations;
            merged.unresolvable += part.unresolvable;
            merged.violating_days += part.violating_days;
            merged.violating_days_with_alternative += part.violating_days_with_alternative;
            for (HeroScanRow& row : part.rows) {
                if (row.result.resolved && row.result.resolved->access_url.empty())
                    row.result.resolved->access_url = ctx.access_url_for(
                        row.result.resolved->source_archive,
                        row.result.resolved->capture_datetime, row.result.resolved->original_url);
                merged.rows.push_back(std::move(row));
            }
        }
        std::sort(merged.rows.begin(), merged.rows.end(),
                  [](const HeroScanRow& a, const HeroScanRow& b) {
                      return a.base.capture_datetime < b.base.capture_datetime;
                  });
        report.hero_scan = std::move(merged);
    }

    return report;
}

AuditConfig load_audit_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read audit config " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("audit config is not a JSON object: " + path.string());

    fs::path base_dir = path.parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path fp(p);
        return fp.is_absolute() ? fp : base_dir / fp;
    };

    AuditConfig config;
    try {
        config.target_url = j.at("target_url").get<std::string>();
        if (j.contains("roster"))
            config.roster = load_roster(resolve(j["roster"].get<std::string>()));
        else
            config.roster = default_roster();
        if (j.contains("era_timeline"))
            config.timeline = load_era_timeline(resolve(j["era_timeline"].get<std::string>()));
        if (j.contains("zones")) config.zone_ids = j["zones"].get<std::vector<std::string>>();
        if (j.contains("zone_base_uri")) config.zone_base_uri = j["zone_base_uri"];
        if (j.contains("zone_uri_overrides"))
            for (auto& [k, v] : j["zone_uri_overrides"].items())
                config.zone_uri_overrides[k] = v.get<std::string>();
        if (j.contains("thresholds_hours")) {
            config.thresholds.clear();
            for (double h : j["thresholds_hours"].get<std::vector<double>>())
                config.thresholds.push_back(
                    std::chrono::seconds(std::int64_t(h * 3600.0)));
        }
        if (j.contains("primary_threshold_hours"))
            config.primary_threshold = std::chrono::seconds(
                std::int64_t(j["primary_threshold_hours"].get<double>() * 3600.0));
        auto from = parse_iso8601(j.at("range").at("from").get<std::string>());
        auto to = parse_iso8601(j.at("range").at("to").get<std::string>());
        if (!from || !to) throw ConfigError("range dates must be ISO-8601");
        config.range = DateInterval{day_of(*from), day_of(*to)};
        config.cache_root = resolve(j.value("cache_root", std::string("cache")));
        config.concurrency = j.value("concurrency", 4);
        std::string mode = j.value("network", std::string("online"));
        if (mode == "online")
            config.mode = NetworkMode::Online;
        else if (mode == "offline")
            config.mode = NetworkMode::OfflineCacheOnly;
        else
            throw ConfigError("network must be online or offline, got " + mode);
        std::string sampling = j.value("sampling", std::string("first-per-day"));
        if (sampling == "first-per-day")
            config.sampling = Sampling::FirstPerDay;
        else if (sampling == "full")
            config.sampling = Sampling::FullPopulation;
        else
            throw ConfigError("sampling must be first-per-day or full, got " + sampling);
        config.probe_raw_html = j.value("probe_raw_html", true);
        config.probe_limit = j.value("probe_limit", std::size_t{0});
        config.probe_options.threshold = j.value("csr_word_threshold", std::size_t{15});
        config.probe_options.ascii_only = j.value("csr_ascii_only", false);
    } catch (const json::exception& e) {
        throw ConfigError("audit config " + path.string() + ": " + e.what());
    }
    return config;
}

std::string config_hash(const AuditConfig& config) {
    json j;
    j["target_url"] = config.target_url;
    json endpoints = json::array();
    for (const ArchiveEndpoint& e : config.roster)
        endpoints.push_back({{"name", e.name},
                             {"timemap", e.timemap_url_template},
                             {"cdx", e.cdx_url_template},
                             {"replay", e.replay_url_template},
                             {"raw", e.raw_url_template},
                             {"rate_limit", e.rate_limit}});
    j["roster"] = std::move(endpoints);
    j["zones"] = config.zone_ids;
    j["zone_base_uri"] = config.zone_base_uri;
    j["zone_uri_overrides"] = config.zone_uri_overrides;
    json timeline = json::array();
    for (const auto& [date, delivery] : config.timeline.boundaries)
        timeline.push_back({{"date", format_iso_date(date)}, {"delivery", to_string(delivery)}});
    j["era_timeline"] = std::move(timeline);
    json thresholds = json::array();
    for (auto t : config.thresholds) thresholds.push_back(t.count());
    j["thresholds_seconds"] = std::move(thresholds);
    j["primary_threshold_seconds"] = config.primary_threshold.count();
    j["range"] = {{"from", format_iso_date(config.range.from)},
                  {"to", format_iso_date(config.range.to)}};
    j["network"] = config.mode == NetworkMode::Online ? "online" : "offline";
    j["sampling"] = config.sampling == Sampling::FirstPerDay ? "first-per-day" : "full";
    j["probe_raw_html"] = config.probe_raw_html;
    j["probe_limit"] = config.probe_limit;
    j["csr_word_threshold"] = config.probe_options.threshold;
    j["csr_ascii_only"] = config.probe_options.ascii_only;
    return sha256_hex(j.dump());
}

ProbeCorpusReport probe_corpus(const fs::path& html_dir, const ProbeOptions& options) {
    ProbeCorpusReport report;
    if (!fs::is_directory(html_dir)) throw IoError("not a directory: " + html_dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(html_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    for (const fs::path& file : files) {
        std::string stem = file.stem().string();
        if (file.extension() != ".html" || !parse_stamp14(stem)) {
            report.files_skipped++;
            report.diagnostics.push_back("skipped (not a <stamp>.html file): " +
                                         file.filename().string());
            continue;
        }
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            report.files_skipped++;
            report.diagnostics.push_back("skipped (unreadable): " + file.filename().string());
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        ProbeCorpusRow row;
        row.stamp = stem;
        row.probe = probe_html(buf.str(), options);
        report.verdict_counts[to_string(row.probe.csr_verdict)]++;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace tempo
