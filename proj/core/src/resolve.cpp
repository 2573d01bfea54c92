#include "tempo/resolve.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

std::int64_t seconds_between(utc_seconds from, utc_seconds to) {
    return (to - from).count();
}

// Index of the nearest capture, or nothing for an empty set. Records are
// sorted by (timestamp, digest); the result is the first record holding the
// winning timestamp so linear-scan oracles agree with the binary search.
std::optional<std::size_t> nearest_index(const std::vector<CdxRecord>& records,
                                         utc_seconds base) {
    if (records.empty()) return std::nullopt;
    auto it = std::lower_bound(records.begin(), records.end(), base,
                               [](const CdxRecord& r, utc_seconds t) { return r.timestamp < t; });
    if (it == records.begin()) return 0;
    if (it == records.end()) {
        utc_seconds last_ts = records.back().timestamp;
        auto first_of_run = std::lower_bound(
            records.begin(), records.end(), last_ts,
            [](const CdxRecord& r, utc_seconds t) { return r.timestamp < t; });
        return std::size_t(first_of_run - records.begin());
    }
    std::int64_t dist_future = seconds_between(base, it->timestamp);
    auto past = std::prev(it);
    std::int64_t dist_past = seconds_between(past->timestamp, base);
    if (dist_past <= dist_future) {
        // Past side wins ties. Step to the first record of its timestamp run.
        auto first_of_run = std::lower_bound(
            records.begin(), records.end(), past->timestamp,
            [](const CdxRecord& r, utc_seconds t) { return r.timestamp < t; });
        return std::size_t(first_of_run - records.begin());
    }
    return std::size_t(it - records.begin());
}

}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Exact: return "exact";
        case Classification::WithinThreshold: return "within-threshold";
        case Classification::Violation: return "violation";
        case Classification::Unresolvable: return "unresolvable";
    }
    return "?";
}

std::string make_access_url(const CaptureSet& captures, const CdxRecord& rec) {
    std::string url = captures.replay_url_template;
    if (url.empty()) return url;
    auto replace = [&](std::string_view placeholder, const std::string& value) {
        size_t pos = url.find(placeholder);
        if (pos != std::string::npos) url.replace(pos, placeholder.size(), value);
    };
    replace("{timestamp}", format_stamp14(rec.timestamp));
    replace("{url}", rec.original);
    return url;
}

std::optional<MementoRecord> resolve_nearest(utc_seconds base_datetime,
                                             const CaptureSet& captures) {
    auto idx = nearest_index(captures.records, base_datetime);
    if (!idx) return std::nullopt;
    const CdxRecord& rec = captures.records[*idx];
    MementoRecord m;
    m.original_url = rec.original;
    m.capture_datetime = rec.timestamp;
    m.access_url = make_access_url(captures, rec);
    m.source_archive =
        rec.source_archive.empty() ? captures.source_archive : rec.source_archive;
    return m;
}

ResolutionResult classify(utc_seconds base_datetime, const CaptureSet& captures,
                          std::chrono::seconds threshold) {
    ResolutionResult result;
    result.base_datetime = base_datetime;
    result.resource_url = captures.original_url;
    result.resolved = resolve_nearest(base_datetime, captures);
    if (!result.resolved) {
        result.classification = Classification::Unresolvable;
        return result;
    }
    result.spread_seconds = seconds_between(base_datetime, result.resolved->capture_datetime);
    std::int64_t magnitude = std::llabs(result.spread_seconds);
    if (magnitude == 0)
        result.classification = Classification::Exact;
    else if (magnitude <= threshold.count())
        result.classification = Classification::WithinThreshold;
    else
        result.classification = Classification::Violation;
    return result;
}

std::vector<DaySeriesPoint> day_series(const CaptureSet& base_captures,
                                       const CaptureSet& resource_captures) {
    std::map<utc_day, DaySeriesPoint> by_day;
    for (const CdxRecord& base : base_captures.records) {
        auto idx = nearest_index(resource_captures.records, base.timestamp);
        if (!idx) continue;
        utc_day day = day_of(base.timestamp);
        DaySeriesPoint& point = by_day[day];
        point.day = day;
        point.sum_spread_seconds += seconds_between(
            base.timestamp, resource_captures.records[*idx].timestamp);
        point.memento_count++;
    }
    std::vector<DaySeriesPoint> out;
    out.reserve(by_day.size());
    for (auto& [day, point] : by_day) out.push_back(point);
    return out;
}

std::vector<ThresholdImpactRow> threshold_impact(
    const CaptureSet& base_captures, const CaptureSet& resource_captures, DateInterval range,
    const std::vector<std::chrono::seconds>& thresholds) {
    if (range.empty())
        throw InvalidRange("empty date range " + format_iso_date(range.from) + ".." +
                           format_iso_date(range.to));

    std::vector<const CdxRecord*> in_range;
    std::set<utc_day> total_days;
    for (const CdxRecord& rec : base_captures.records) {
        if (!range.contains(rec.timestamp)) continue;
        in_range.push_back(&rec);
        total_days.insert(day_of(rec.timestamp));
    }

    std::vector<ThresholdImpactRow> rows;
    rows.reserve(thresholds.size());
    for (std::chrono::seconds threshold : thresholds) {
        ThresholdImpactRow row;
        row.range = range;
        row.total_mementos = in_range.size();
        row.total_days = total_days.size();
        row.threshold = threshold;
        std::set<utc_day> affected_days;
        for (const CdxRecord* rec : in_range) {
            ResolutionResult r = classify(rec->timestamp, resource_captures, threshold);
            if (r.affected()) {
                row.affected_mementos++;
                affected_days.insert(day_of(rec->timestamp));
            }
        }
        row.affected_days = affected_days.size();
        rows.push_back(row);
    }
    return rows;
}

HeroScanReport hero_violation_scan(
    const std::vector<std::pair<MementoRecord, HtmlProbeResult>>& probe_results,
    const CaptureSet& hero_captures, std::chrono::seconds threshold) {
    HeroScanReport report;

    std::set<utc_day> server_rendered_days;
    for (const auto& [memento, probe] : probe_results)
        if (probe.has_hero_section_id) server_rendered_days.insert(day_of(memento.capture_datetime));

    std::set<utc_day> violating_days, violating_days_with_alt;
    for (const auto& [memento, probe] : probe_results) {
        if (probe.has_hero_section_id) {
            report.excluded_server_rendered++;
            continue;
        }
        report.scanned_csr++;
        HeroScanRow row;
        row.base = memento;
        row.result = classify(memento.capture_datetime, hero_captures, threshold);
        utc_day day = day_of(memento.capture_datetime);
        row.same_day_server_rendered = server_rendered_days.count(day) > 0;
        if (row.result.classification == Classification::Violation) {
            report.violations++;
            violating_days.insert(day);
            if (row.same_day_server_rendered) violating_days_with_alt.insert(day);
        } else if (row.result.classification == Classification::Unresolvable) {
            report.unresolvable++;
            violating_days.insert(day);
            if (row.same_day_server_rendered) violating_days_with_alt.insert(day);
        }
        report.rows.push_back(std::move(row));
    }
    report.violating_days = violating_days.size();
    report.violating_days_with_alternative = violating_days_with_alt.size();
    return report;
}

}  // namespace tempo
