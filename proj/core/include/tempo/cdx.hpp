#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/datetime.hpp"

namespace tempo {

// One line of a Wayback-style CDX/CDXJ index.
struct CdxRecord {
    std::string urlkey;
    utc_seconds timestamp{};
    std::string original;
    std::string mimetype = "-";
    std::optional<int> status_code;      // nullopt = the '-' sentinel
    std::string digest = "-";
    std::optional<std::int64_t> length;  // nullopt = unknown
    // Fields 7..10 of an 11-field classic line (redirect, robotflags,
    // offset, filename), kept verbatim so such lines re-serialize
    // byte-identically. Empty for 7-field and CDXJ input.
    std::vector<std::string> classic_extra;
    // Attribution for merged sets; not part of any wire format.
    std::string source_archive;
};

struct CaptureSet {
    std::string original_url;
    std::vector<CdxRecord> records;  // ascending by (timestamp, digest), stable
    std::string filter_applied;
    std::string source_archive;
    std::string replay_url_template;  // {timestamp} + {url}, for evidence URI-Ms

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
};

// Accepts the 7-field CDX API flavor, the 11-field classic flavor, and CDXJ
// (urlkey timestamp {json}). The variant is auto-detected from the third
// token. Throws MalformedCdxLine carrying the byte offset of the first
// offending field.
CdxRecord parse_cdx_line(std::string_view line);

// Classic space-separated form, 7 or 11 fields depending on what was parsed.
std::string serialize_cdx_classic(const CdxRecord& rec);

struct CdxParseReport {
    std::size_t lines_seen = 0;
    std::size_t records_parsed = 0;
    std::size_t lines_skipped = 0;
    std::string first_error;
};

// Line-tolerant parse of a whole CDX response body: malformed lines are
// skipped and counted, never fatal. Blank lines terminate a page in the
// resume-key protocol, so everything after the first blank line is ignored
// (the fetch layer extracts resume keys itself).
std::vector<CdxRecord> parse_cdx_body(std::string_view body, CdxParseReport* report = nullptr);

// Sorts ascending by timestamp, ties by digest, further ties keep input
// order, so ordering is deterministic across runs.
void sort_captures(std::vector<CdxRecord>& records);

struct FilterSpec {
    std::optional<int> status_code;
    std::optional<utc_seconds> from;
    std::optional<utc_seconds> to;  // inclusive day/instant, CDX API semantics

    std::string describe() const;
};

}  // namespace tempo
