// tempo: audit web archives for temporal violations in client-side-rendered
// pages (CNN.com-style zone construction).

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tempo/audit.hpp"
#include "tempo/config.hpp"
#include "tempo/errors.hpp"

namespace {

using namespace tempo;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;
constexpr int kExitCacheMiss = 3;
constexpr int kExitFatal = 4;

std::optional<utc_seconds> parse_instant(const std::string& s) {
    if (auto t = parse_iso8601(s)) return t;
    return parse_stamp14(s);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw IoError("cannot write " + path);
}

std::vector<ArchiveEndpoint> roster_from(const std::string& roster_path) {
    return roster_path.empty() ? default_roster() : load_roster(roster_path);
}

int cmd_audit(const std::string& config_path, bool offline, const std::string& out_dir,
              std::vector<std::string> formats, const std::string& from,
              const std::string& to, double threshold_hours) {
    AuditConfig config = load_audit_config(config_path);
    if (offline) config.mode = NetworkMode::OfflineCacheOnly;
    if (!from.empty()) {
        auto t = parse_instant(from);
        if (!t) throw ConfigError("bad --from: " + from);
        config.range.from = day_of(*t);
    }
    if (!to.empty()) {
        auto t = parse_instant(to);
        if (!t) throw ConfigError("bad --to: " + to);
        config.range.to = day_of(*t);
    }
    if (threshold_hours > 0)
        config.primary_threshold =
            std::chrono::seconds(std::int64_t(threshold_hours * 3600.0));

    AuditReport report = run_audit(config);

    if (formats.empty()) formats = {"json"};
    for (const std::string& f : formats) {
        ReportFormat format;
        if (f == "json")
            format = ReportFormat::Json;
        else if (f == "csv")
            format = ReportFormat::Csv;
        else if (f == "plotdata")
            format = ReportFormat::PlotData;
        else
            throw ConfigError("unknown format " + f + " (json, csv, plotdata)");
        for (const auto& path : emit_report(report, format, out_dir))
            std::cerr << "wrote " << path.string() << "\n";
    }

    std::cerr << "audit: " << report.base_total << " base mementos ("
              << report.base_sampled << " sampled, " << report.probed << " probed), "
              << report.zones.size() << " zone(s)\n";
    for (const std::string& d : report.diagnostics) std::cerr << "note: " << d << "\n";
    return report.partial_failure ? kExitPartial : kExitOk;
}

int cmd_timemap(const std::string& url, const std::string& roster_path,
                const std::string& cache_dir, bool offline, const std::string& out) {
    std::vector<ArchiveEndpoint> roster = roster_from(roster_path);
    ResponseCache cache{cache_dir};
    FetchOptions opts;
    opts.offline = offline;
    auto transport = offline ? make_refusing_transport() : make_httplib_transport();
    Fetcher fetcher(cache, *transport, opts);

    std::vector<TimeMap> maps;
    bool partial = false;
    for (const ArchiveEndpoint& endpoint : roster) {
        if (endpoint.timemap_url_template.empty()) continue;
        try {
            Fetcher::TimeMapResult res = fetcher.fetch_timemap(endpoint, url);
            if (res.archive_has_none) {
                std::cerr << endpoint.name << ": no mementos\n";
                continue;
            }
            std::cerr << endpoint.name << ": " << res.timemap.mementos.size()
                      << " mementos across " << res.pages << " page(s)\n";
            maps.push_back(std::move(res.timemap));
        } catch (const CacheMiss& e) {
            std::cerr << endpoint.name << ": " << e.what() << "\n";
            partial = true;
        } catch (const Error& e) {
            std::cerr << endpoint.name << ": " << e.what() << "\n";
            partial = true;
        }
    }
    if (maps.empty()) {
        std::cerr << "no archive returned a TimeMap for " << url << "\n";
        return partial ? kExitPartial : kExitOk;
    }
    TimeMap merged = aggregate_timemaps(maps);
    std::cerr << "---\n";
    for (const auto& [archive, count] : per_archive_counts(merged))
        std::cerr << archive << "\t" << count << "\n";
    std::cerr << "total\t" << merged.mementos.size() << "\n";
    write_output(out, serialize_link_timemap(merged));
    return partial ? kExitPartial : kExitOk;
}

int cmd_cdx(const std::string& url, const std::string& roster_path,
            const std::string& endpoint_name, const std::string& cache_dir, bool offline,
            int status, const std::string& from, const std::string& to,
            const std::string& out) {
    std::vector<ArchiveEndpoint> roster = roster_from(roster_path);
    const ArchiveEndpoint* endpoint = nullptr;
    for (const ArchiveEndpoint& e : roster)
        if (e.name == endpoint_name) endpoint = &e;
    if (!endpoint) throw ConfigError("no endpoint named " + endpoint_name + " in roster");

    FilterSpec filters;
    if (status > 0) filters.status_code = status;
    if (!from.empty()) {
        filters.from = parse_instant(from);
        if (!filters.from) throw ConfigError("bad --from: " + from);
    }
    if (!to.empty()) {
        filters.to = parse_instant(to);
        if (!filters.to) throw ConfigError("bad --to: " + to);
    }

    ResponseCache cache{cache_dir};
    FetchOptions opts;
    opts.offline = offline;
    auto transport = offline ? make_refusing_transport() : make_httplib_transport();
    Fetcher fetcher(cache, *transport, opts);

    Fetcher::CaptureResult res = fetcher.fetch_captures(*endpoint, url, filters);
    std::ostringstream body;
    for (const CdxRecord& rec : res.captures.records)
        body << serialize_cdx_classic(rec) << "\n";
    write_output(out, body.str());
    std::cerr << res.captures.records.size() << " captures (" << res.pages << " page(s), "
              << res.parse_report.lines_skipped << " skipped line(s))\n";
    return kExitOk;
}

int cmd_probe(const std::string& dir, std::size_t threshold, bool ascii_only,
              const std::string& format, const std::string& out) {
    ProbeOptions opts;
    opts.threshold = threshold;
    opts.ascii_only = ascii_only;
    ProbeCorpusReport report = probe_corpus(dir, opts);
    write_output(out, format == "json" ? probe_corpus_to_json(report)
                                       : probe_corpus_to_csv(report));
    for (const auto& [verdict, count] : report.verdict_counts)
        std::cerr << verdict << "\t" << count << "\n";
    if (report.files_skipped) std::cerr << "skipped\t" << report.files_skipped << "\n";
    return kExitOk;
}

int cmd_resolve(const std::string& at, const std::string& captures_file,
                const std::string& url, const std::string& roster_path,
                const std::string& endpoint_name, const std::string& cache_dir, bool offline,
                double threshold_hours) {
    auto base = parse_instant(at);
    if (!base) throw ConfigError("bad --at instant: " + at);

    CaptureSet captures;
    if (!captures_file.empty()) {
        std::ifstream in(captures_file, std::ios::binary);
        if (!in) throw IoError("cannot read " + captures_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        CdxParseReport rep;
        captures.records = parse_cdx_body(buf.str(), &rep);
        sort_captures(captures.records);
        captures.original_url = captures.records.empty() ? "" : captures.records.front().original;
        if (rep.lines_skipped)
            std::cerr << "skipped " << rep.lines_skipped << " malformed line(s)\n";
    } else if (!url.empty()) {
        std::vector<ArchiveEndpoint> roster = roster_from(roster_path);
        const ArchiveEndpoint* endpoint = nullptr;
        for (const ArchiveEndpoint& e : roster)
            if (e.name == endpoint_name) endpoint = &e;
        if (!endpoint) throw ConfigError("no endpoint named " + endpoint_name + " in roster");
        ResponseCache cache{cache_dir};
        FetchOptions opts;
        opts.offline = offline;
        auto transport = offline ? make_refusing_transport() : make_httplib_transport();
        Fetcher fetcher(cache, *transport, opts);
        FilterSpec filters;
        filters.status_code = 200;
        captures = fetcher.fetch_captures(*endpoint, url, filters).captures;
    } else {
        throw ConfigError("resolve needs --captures FILE or --url URL with --endpoint NAME");
    }

    auto threshold = std::chrono::seconds(std::int64_t(threshold_hours * 3600.0));
    ResolutionResult r = classify(*base, captures, threshold);
    std::cout << "base:           " << format_iso8601(*base) << " (" << format_stamp14(*base)
              << ")\n";
    std::cout << "captures:       " << captures.records.size() << "\n";
    std::cout << "classification: " << to_string(r.classification) << " (threshold "
              << threshold.count() << "s)\n";
    if (r.resolved) {
        std::cout << "resolved:       " << format_iso8601(r.resolved->capture_datetime) << " ("
                  << format_stamp14(r.resolved->capture_datetime) << ")\n";
        std::cout << "spread:         " << r.spread_seconds << "s ("
                  << double(r.spread_seconds) / 86400.0 << " days)\n";
        if (!r.resolved->access_url.empty())
            std::cout << "evidence:       " << r.resolved->access_url << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal-coherence auditor for web archives"};
    app.require_subcommand(1);

    // audit
    auto* audit = app.add_subcommand("audit", "run the full audit pipeline");
    std::string audit_config, audit_out = "out", audit_from, audit_to;
    std::vector<std::string> audit_formats;
    bool audit_offline = false;
    double audit_threshold = 0;
    audit->add_option("--config", audit_config, "audit config JSON")->required();
    audit->add_flag("--offline", audit_offline, "cache only, refuse network");
    audit->add_option("--out", audit_out, "output directory")->capture_default_str();
    audit->add_option("--format", audit_formats, "json, csv, plotdata (repeatable)");
    audit->add_option("--from", audit_from, "override range start (ISO date or stamp)");
    audit->add_option("--to", audit_to, "override range end (ISO date or stamp)");
    audit->add_option("--threshold-hours", audit_threshold, "override primary threshold");

    // timemap
    auto* timemap = app.add_subcommand("timemap", "fetch and aggregate TimeMaps");
    std::string tm_url, tm_roster, tm_cache = "cache", tm_out = "-";
    bool tm_offline = false;
    timemap->add_option("--url", tm_url, "original URL")->required();
    timemap->add_option("--roster", tm_roster, "archive roster file (default: built-in)");
    timemap->add_option("--cache", tm_cache, "cache directory")->capture_default_str();
    timemap->add_flag("--offline", tm_offline, "cache only");
    timemap->add_option("--out", tm_out, "merged TimeMap output (- = stdout)");

    // cdx
    auto* cdx = app.add_subcommand("cdx", "fetch a CDX capture set");
    std::string cdx_url, cdx_roster, cdx_endpoint = "web.archive.org", cdx_cache = "cache";
    std::string cdx_from, cdx_to, cdx_out = "-";
    int cdx_status = 0;
    bool cdx_offline = false;
    cdx->add_option("--url", cdx_url, "URL to query")->required();
    cdx->add_option("--roster", cdx_roster, "archive roster file (default: built-in)");
    cdx->add_option("--endpoint", cdx_endpoint, "endpoint name")->capture_default_str();
    cdx->add_option("--cache", cdx_cache, "cache directory")->capture_default_str();
    cdx->add_option("--status", cdx_status, "filter by status code");
    cdx->add_option("--from", cdx_from, "range start (ISO date or stamp)");
    cdx->add_option("--to", cdx_to, "range end, inclusive");
    cdx->add_flag("--offline", cdx_offline, "cache only");
    cdx->add_option("--out", cdx_out, "output file (- = stdout)");

    // probe
    auto* probe = app.add_subcommand("probe", "probe a raw-HTML corpus for CSR templates");
    std::string probe_dir, probe_format = "csv", probe_out = "-";
    std::size_t probe_threshold = 15;
    bool probe_ascii = false;
    probe->add_option("--dir", probe_dir, "directory of <stamp>.html files")->required();
    probe->add_option("--threshold", probe_threshold, "CSR content-word threshold")
        ->capture_default_str();
    probe->add_flag("--ascii-only", probe_ascii, "count only [a-z] starts as lowercase");
    probe->add_option("--format", probe_format, "csv or json")->capture_default_str();
    probe->add_option("--out", probe_out, "output file (- = stdout)");

    // resolve
    auto* resolve = app.add_subcommand("resolve", "single-instant what-if resolution");
    std::string res_at, res_captures, res_url, res_roster, res_endpoint = "web.archive.org";
    std::string res_cache = "cache";
    bool res_offline = false;
    double res_threshold = 48;
    resolve->add_option("--at", res_at, "base instant (ISO or 14-digit stamp)")->required();
    resolve->add_option("--captures", res_captures, "local CDX file as the capture set");
    resolve->add_option("--url", res_url, "fetch captures for this URL instead");
    resolve->add_option("--roster", res_roster, "archive roster file (default: built-in)");
    resolve->add_option("--endpoint", res_endpoint, "endpoint name")->capture_default_str();
    resolve->add_option("--cache", res_cache, "cache directory")->capture_default_str();
    resolve->add_flag("--offline", res_offline, "cache only");
    resolve->add_option("--threshold-hours", res_threshold, "violation threshold")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*audit)
            return cmd_audit(audit_config, audit_offline, audit_out, audit_formats, audit_from,
                             audit_to, audit_threshold);
        if (*timemap) return cmd_timemap(tm_url, tm_roster, tm_cache, tm_offline, tm_out);
        if (*cdx)
            return cmd_cdx(cdx_url, cdx_roster, cdx_endpoint, cdx_cache, cdx_offline,
                           cdx_status, cdx_from, cdx_to, cdx_out);
        if (*probe)
            return cmd_probe(probe_dir, probe_threshold, probe_ascii, probe_format, probe_out);
        if (*resolve)
            return cmd_resolve(res_at, res_captures, res_url, res_roster, res_endpoint,
                               res_cache, res_offline, res_threshold);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CacheMiss& e) {
        std::cerr << "cache miss: " << e.what() << "\n";
        return kExitCacheMiss;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitOk;
}
