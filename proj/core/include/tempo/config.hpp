#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "tempo/memento.hpp"
#include "tempo/zones.hpp"

namespace tempo {

// Archive roster: INI-style sections, one per endpoint.
//
//   [endpoint web.archive.org]
//   timemap    = https://web.archive.org/web/timemap/link/{url}
//   cdx        = https://web.archive.org/cdx/search/cdx?url={url}
//   replay     = https://web.archive.org/web/{timestamp}/{url}
//   raw        = https://web.archive.org/web/{timestamp}id_/{url}
//   rate_limit = 1.0
//
// Only `timemap` is required. '#' starts a comment. Throws ConfigError.
std::vector<ArchiveEndpoint> parse_roster(std::string_view text);
std::vector<ArchiveEndpoint> load_roster(const std::filesystem::path& path);

// The MemGator-style public archive roster this tool ships with.
std::vector<ArchiveEndpoint> default_roster();

// Era timeline override file: `ISO-date = descriptor` lines, strictly
// increasing dates, descriptors from the ZoneDelivery enumeration
// (zones-in-html, csr-except-hero, hero-sometimes-csr, izl-json,
// all-zones-csr, izl). Throws ConfigError.
EraTimeline parse_era_timeline(std::string_view text);
EraTimeline load_era_timeline(const std::filesystem::path& path);

}  // namespace tempo
