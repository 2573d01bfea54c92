#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempo/cdx.hpp"
#include "tempo/datetime.hpp"
#include "tempo/memento.hpp"
#include "tempo/zones.hpp"

namespace tempo {

// Half-open [from, to) over UTC calendar days.
struct DateInterval {
    utc_day from{};
    utc_day to{};

    bool contains(utc_seconds t) const {
        return utc_seconds(from) <= t && t < utc_seconds(to);
    }
    bool empty() const { return from >= to; }
};

enum class Classification { Exact, WithinThreshold, Violation, Unresolvable };

const char* to_string(Classification c);

// Outcome of nearest-memento resolution for one (base instant, resource) pair.
// Sign convention: spread = resolved minus base, so positive means the
// replayed content comes from the future.
struct ResolutionResult {
    utc_seconds base_datetime{};
    std::string resource_url;
    std::optional<MementoRecord> resolved;
    std::int64_t spread_seconds = 0;  // meaningless when unresolvable
    Classification classification = Classification::Unresolvable;

    bool affected() const {
        return classification == Classification::Violation ||
               classification == Classification::Unresolvable;
    }
};

struct DaySeriesPoint {
    utc_day day{};
    std::int64_t sum_spread_seconds = 0;  // exact; mean derived at presentation
    std::size_t memento_count = 0;
    double mean_spread_days() const {
        return double(sum_spread_seconds) / double(memento_count) / 86400.0;
    }
};

struct ThresholdImpactRow {
    DateInterval range;
    std::size_t total_mementos = 0;
    std::size_t total_days = 0;
    std::chrono::seconds threshold{};
    std::size_t affected_mementos = 0;
    std::size_t affected_days = 0;
};

// URI-M for a capture, from the set's replay template. Empty template
// yields an empty access URL.
std::string make_access_url(const CaptureSet& captures, const CdxRecord& rec);

// The capture minimizing |timestamp - base|; the past one on an exact
// midpoint tie. Among equal-timestamp captures the first in set order wins.
// Logarithmic in the capture count. Nothing when the set is empty.
std::optional<MementoRecord> resolve_nearest(utc_seconds base_datetime,
                                             const CaptureSet& captures);

// Wraps resolve_nearest with the signed spread and classification:
// Exact at spread 0, WithinThreshold for 0 < |spread| <= threshold,
// Violation beyond it (strict), Unresolvable when no capture exists.
ResolutionResult classify(utc_seconds base_datetime, const CaptureSet& captures,
                          std::chrono::seconds threshold);

// Per-UTC-day mean of signed spreads of the base captures against
// resource_captures, in capture-order-independent form. Days without base
// captures are omitted; so is everything when the resource set is empty.
std::vector<DaySeriesPoint> day_series(const CaptureSet& base_captures,
                                       const CaptureSet& resource_captures);

// For each threshold, how many base captures in range (and how many distinct
// days) would show no zone content if resources farther than the threshold
// were not loaded: Violation or Unresolvable both count. The resource set is
// used in full, never sliced to the range — a capture just outside the range
// can still rescue mementos near the boundary. Throws InvalidRange on an
// empty range.
std::vector<ThresholdImpactRow> threshold_impact(const CaptureSet& base_captures,
                                                 const CaptureSet& resource_captures,
                                                 DateInterval range,
                                                 const std::vector<std::chrono::seconds>& thresholds);

struct HeroScanRow {
    MementoRecord base;
    ResolutionResult result;
    // Does the same UTC day hold a memento whose Hero content is in the HTML?
    bool same_day_server_rendered = false;
};

struct HeroScanReport {
    std::size_t scanned_csr = 0;                 // mementos requesting Hero via CSR
    std::size_t excluded_server_rendered = 0;    // hero-in-HTML mementos, not scanned
    std::size_t violations = 0;
    std::size_t unresolvable = 0;
    std::size_t violating_days = 0;
    std::size_t violating_days_with_alternative = 0;
    std::vector<HeroScanRow> rows;
};

// Scans probed base mementos whose Hero zone was requested via CSR
// (has_hero_section_id == false) against the Hero zone-manager captures.
// Each violating day is checked for a same-day server-rendered memento, the
// condition under which redacting the violative capture loses nothing.
HeroScanReport hero_violation_scan(
    const std::vector<std::pair<MementoRecord, HtmlProbeResult>>& probe_results,
    const CaptureSet& hero_captures, std::chrono::seconds threshold);

}  // namespace tempo
