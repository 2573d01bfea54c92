#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/datetime.hpp"

namespace tempo {

// One archived capture of a resource.
struct MementoRecord {
    std::string original_url;
    utc_seconds capture_datetime{};
    std::string access_url;  // the URI-M
    std::string source_archive;

    friend bool operator==(const MementoRecord&, const MementoRecord&) = default;
};

// All known captures of one original URL, ascending by capture datetime.
struct TimeMap {
    std::string original_url;
    std::vector<MementoRecord> mementos;
    utc_seconds retrieved_at{};

    // retrieved_at is bookkeeping, not identity.
    friend bool operator==(const TimeMap& a, const TimeMap& b) {
        return a.original_url == b.original_url && a.mementos == b.mementos;
    }
};

struct ArchiveEndpoint {
    std::string name;
    std::string timemap_url_template;        // one {url} placeholder
    std::string cdx_url_template;            // optional; one {url} placeholder
    std::string replay_url_template;         // optional; {timestamp} and {url}
    std::string raw_url_template;            // optional; id_-style unmodified content
    double rate_limit = 1.0;                 // max requests per second
};

// Counters from tolerant parsing. Bad entries are skipped, not fatal.
struct TimeMapParseReport {
    std::size_t entries_seen = 0;
    std::size_t mementos_parsed = 0;
    std::size_t dropped_bad_datetime = 0;
    std::size_t dropped_bad_uri = 0;
};

// Parses an RFC 7089 application/link-format TimeMap body. Entries with
// rel="memento" become records; the rel="original" target becomes
// original_url. Mementos with unparseable datetimes are dropped and counted.
// Throws MalformedTimeMap when the body is not link-format or carries no
// original relation.
TimeMap parse_link_timemap(std::string_view body, std::string_view source_archive,
                           TimeMapParseReport* report = nullptr);

// Emits a link-format body that parse_link_timemap accepts back.
std::string serialize_link_timemap(const TimeMap& tm);

// Union of the inputs, sorted, deduplicated on (capture_datetime, access_url).
// Same-instant captures held by different archives have different URI-Ms and
// are all retained. Throws MixedOriginals when the inputs disagree on the
// canonicalized original URL.
TimeMap aggregate_timemaps(const std::vector<TimeMap>& timemaps);

// Table-2-style per-archive memento counts.
std::map<std::string, std::size_t> per_archive_counts(const TimeMap& tm);

// Link targets of rel="timemap" entries other than self_url; used to follow
// paginated TimeMaps.
std::vector<std::string> timemap_continuations(std::string_view body, std::string_view self_url);

void sort_mementos(std::vector<MementoRecord>& mementos);

}  // namespace tempo
