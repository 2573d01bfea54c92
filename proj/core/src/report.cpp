#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tempo/audit.hpp"
#include "tempo/errors.hpp"

namespace tempo {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

json instant_json(utc_seconds t) {
    return json{{"stamp14", format_stamp14(t)}, {"iso8601", format_iso8601(t)}};
}

json resolution_json(const ResolutionResult& r) {
    json j;
    j["resource_url"] = r.resource_url;
    j["classification"] = to_string(r.classification);
    if (r.resolved) {
        j["spread_seconds"] = r.spread_seconds;
        j["resolved"] = {{"datetime", instant_json(r.resolved->capture_datetime)},
                         {"access_url", r.resolved->access_url},
                         {"archive", r.resolved->source_archive}};
    } else {
        j["resolved"] = nullptr;
    }
    return j;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

template <typename... Fields>
void csv_row(std::ostream& out, const Fields&... fields) {
    bool first = true;
    auto emit = [&](const auto& f) {
        if (!first) out << ',';
        first = false;
        if constexpr (std::is_convertible_v<decltype(f), std::string>)
            out << csv_escape(f);
        else
            out << f;
    };
    (emit(fields), ...);
    out << '\n';
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw IoError("cannot write " + path.string());
}

std::string resolved_stamp(const ResolutionResult& r) {
    return r.resolved ? format_stamp14(r.resolved->capture_datetime) : std::string("-");
}

std::string resolved_iso(const ResolutionResult& r) {
    return r.resolved ? format_iso8601(r.resolved->capture_datetime) : std::string("-");
}

std::string resolved_access(const ResolutionResult& r) {
    return r.resolved ? r.resolved->access_url : std::string("-");
}

std::string spread_or_dash(const ResolutionResult& r) {
    return r.resolved ? std::to_string(r.spread_seconds) : std::string("-");
}

}  // namespace

std::string report_to_json(const AuditReport& report) {
    json j;
    j["schema_version"] = report.provenance.schema_version;
    j["provenance"] = {{"config_hash", report.provenance.config_hash},
                       {"generated_at", report.provenance.generated_at},
                       {"endpoints", report.provenance.endpoints}};
    j["target_url"] = report.target_url;
    j["range"] = {{"from", format_iso_date(report.range.from)},
                  {"to", format_iso_date(report.range.to)}};
    j["base"] = {{"total", report.base_total},
                 {"sampled", report.base_sampled},
                 {"per_archive", report.base_per_archive},
                 {"probed", report.probed}};

    json zones = json::array();
    for (const ZoneAuditReport& zr : report.zones) {
        json zj;
        zj["zone_id"] = zr.zone_id;
        zj["resource_urls"] = zr.resource_urls;
        json rows = json::array();
        for (const ResolutionRow& row : zr.rows) {
            json rj = resolution_json(row.result);
            rj["base_datetime"] = instant_json(row.base_datetime);
            rj["base_access_url"] = row.base_access_url;
            rj["base_archive"] = row.base_archive;
            rows.push_back(std::move(rj));
        }
        zj["rows"] = std::move(rows);
        json series = json::array();
        for (const DaySeriesPoint& p : zr.series)
            series.push_back({{"day", format_iso_date(p.day)},
                              {"memento_count", p.memento_count},
                              {"sum_spread_seconds", p.sum_spread_seconds},
                              {"mean_spread_days", p.mean_spread_days()}});
        zj["day_series"] = std::move(series);
        json impact = json::array();
        for (const ThresholdImpactRow& row : zr.impact)
            impact.push_back({{"range_from", format_iso_date(row.range.from)},
                              {"range_to", format_iso_date(row.range.to)},
                              {"threshold_seconds", row.threshold.count()},
                              {"total_mementos", row.total_mementos},
                              {"total_days", row.total_days},
                              {"affected_mementos", row.affected_mementos},
                              {"affected_days", row.affected_days}});
        zj["threshold_impact"] = std::move(impact);
        zj["diagnostics"] = zr.diagnostics;
        zones.push_back(std::move(zj));
    }
    j["zones"] = std::move(zones);

    if (report.hero_scan) {
        const HeroScanReport& h = *report.hero_scan;
        json rows = json::array();
        for (const HeroScanRow& row : h.rows) {
            json rj = resolution_json(row.result);
            rj["base_datetime"] = instant_json(row.base.capture_datetime);
            rj["base_access_url"] = row.base.access_url;
            rj["base_archive"] = row.base.source_archive;
            rj["same_day_server_rendered"] = row.same_day_server_rendered;
            rows.push_back(std::move(rj));
        }
        j["hero_scan"] = {{"scanned_csr", h.scanned_csr},
                          {"excluded_server_rendered", h.excluded_server_rendered},
                          {"violations", h.violations},
                          {"unresolvable", h.unresolvable},
                          {"violating_days", h.violating_days},
                          {"violating_days_with_alternative", h.violating_days_with_alternative},
                          {"rows", std::move(rows)}};
    } else {
        j["hero_scan"] = nullptr;
    }

    j["diagnostics"] = report.diagnostics;
    j["partial_failure"] = report.partial_failure;
    return j.dump(1) + "\n";
}

std::string report_comparison_hash(const std::string& report_json) {
    json j = json::parse(report_json);
    if (j.contains("provenance") && j["provenance"].is_object())
        j["provenance"]["generated_at"] = "";
    return sha256_hex(j.dump());
}

namespace {

std::string resolution_rows_csv(const AuditReport& report) {
    std::ostringstream out;
    csv_row(out, "zone_id", "base_stamp14", "base_iso8601", "base_archive", "base_access_url",
            "resource_url", "classification", "spread_seconds", "resolved_stamp14",
            "resolved_iso8601", "resolved_access_url");
    for (const ZoneAuditReport& zr : report.zones)
        for (const ResolutionRow& row : zr.rows)
            csv_row(out, zr.zone_id, format_stamp14(row.base_datetime),
                    format_iso8601(row.base_datetime), row.base_archive, row.base_access_url,
                    row.result.resource_url, to_string(row.result.classification),
                    spread_or_dash(row.result), resolved_stamp(row.result),
                    resolved_iso(row.result), resolved_access(row.result));
    return out.str();
}

std::string day_series_csv(const AuditReport& report) {
    std::ostringstream out;
    csv_row(out, "zone_id", "day", "memento_count", "sum_spread_seconds", "mean_spread_days");
    for (const ZoneAuditReport& zr : report.zones)
        for (const DaySeriesPoint& p : zr.series)
            csv_row(out, zr.zone_id, format_iso_date(p.day), p.memento_count,
                    p.sum_spread_seconds, p.mean_spread_days());
    return out.str();
}

std::string threshold_impact_csv(const AuditReport& report) {
    std::ostringstream out;
    csv_row(out, "zone_id", "range_from", "range_to", "threshold_seconds", "total_mementos",
            "total_days", "affected_mementos", "affected_days");
    for (const ZoneAuditReport& zr : report.zones)
        for (const ThresholdImpactRow& row : zr.impact)
            csv_row(out, zr.zone_id, format_iso_date(row.range.from),
                    format_iso_date(row.range.to), row.threshold.count(), row.total_mementos,
                    row.total_days, row.affected_mementos, row.affected_days);
    return out.str();
}

std::string hero_scan_csv(const AuditReport& report) {
    std::ostringstream out;
    csv_row(out, "base_stamp14", "base_iso8601", "base_archive", "base_access_url",
            "classification", "spread_seconds", "resolved_stamp14", "resolved_access_url",
            "same_day_server_rendered");
    if (report.hero_scan)
        for (const HeroScanRow& row : report.hero_scan->rows)
            csv_row(out, format_stamp14(row.base.capture_datetime),
                    format_iso8601(row.base.capture_datetime), row.base.source_archive,
                    row.base.access_url, to_string(row.result.classification),
                    spread_or_dash(row.result), resolved_stamp(row.result),
                    resolved_access(row.result),
                    row.same_day_server_rendered ? "true" : "false");
    return out.str();
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ||
                              c == '_'
                          ? c
                          : '_');
    return out.empty() ? std::string("zone") : out;
}

}  // namespace

std::vector<fs::path> emit_report(const AuditReport& report, ReportFormat format,
                                  const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    std::vector<fs::path> written;
    auto emit = [&](const fs::path& name, const std::string& content) {
        fs::path path = out_dir / name;
        write_file(path, content);
        written.push_back(path);
    };

    switch (format) {
        case ReportFormat::Json:
            emit("report.json", report_to_json(report));
            break;
        case ReportFormat::Csv:
            emit("resolution_rows.csv", resolution_rows_csv(report));
            emit("day_series.csv", day_series_csv(report));
            emit("threshold_impact.csv", threshold_impact_csv(report));
            emit("hero_scan.csv", hero_scan_csv(report));
            break;
        case ReportFormat::PlotData: {
            fs::path plot_dir = out_dir / "plot";
            fs::create_directories(plot_dir, ec);
            if (ec) throw IoError("cannot create " + plot_dir.string());
            for (const ZoneAuditReport& zr : report.zones) {
                std::ostringstream out;
                for (const DaySeriesPoint& p : zr.series)
                    out << format_iso_date(p.day) << '\t' << p.mean_spread_days() << '\n';
                fs::path path = plot_dir / (sanitize(zr.zone_id) + ".tsv");
                write_file(path, out.str());
                written.push_back(path);
            }
            break;
        }
    }
    return written;
}

std::string probe_corpus_to_csv(const ProbeCorpusReport& report) {
    std::ostringstream out;
    csv_row(out, "stamp14", "iso8601", "verdict", "content_word_count", "has_hero_section_id",
            "zones_declared");
    for (const ProbeCorpusRow& row : report.rows) {
        auto t = parse_stamp14(row.stamp);
        csv_row(out, row.stamp, t ? format_iso8601(*t) : std::string("-"),
                to_string(row.probe.csr_verdict), row.probe.content_word_count,
                row.probe.has_hero_section_id ? "true" : "false",
                row.probe.zones_declared.size());
    }
    return out.str();
}

std::string probe_corpus_to_json(const ProbeCorpusReport& report) {
    json j;
    json rows = json::array();
    for (const ProbeCorpusRow& row : report.rows) {
        json zones = json::array();
        for (const ZoneSpec& z : row.probe.zones_declared) {
            json zj{{"id", z.id}, {"base_uri", z.base_uri}};
            if (z.uri) zj["uri"] = *z.uri;
            zones.push_back(std::move(zj));
        }
        rows.push_back({{"stamp14", row.stamp},
                        {"verdict", to_string(row.probe.csr_verdict)},
                        {"content_word_count", row.probe.content_word_count},
                        {"has_hero_section_id", row.probe.has_hero_section_id},
                        {"zones_declared", std::move(zones)}});
    }
    j["rows"] = std::move(rows);
    j["verdict_counts"] = report.verdict_counts;
    j["files_skipped"] = report.files_skipped;
    j["diagnostics"] = report.diagnostics;
    return j.dump(1) + "\n";
}

}  // namespace tempo
