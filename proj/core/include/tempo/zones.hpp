#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/datetime.hpp"

namespace tempo {

// How CNN.com delivered zone content during an era (Table-style timeline:
// each boundary date starts a new delivery mode).
enum class ZoneDelivery {
    ZonesInHtml,       // content in the base HTML, divided into zones
    CsrExceptHero,     // all but the Hero zone fetched as zone-manager.html
    HeroSometimesCsr,  // Hero zone sometimes fetched via CSR too
    IzlJson,           // zone-manager format changed to .izl.json
    AllZonesCsr,       // every zone fetched via CSR
    Izl,               // extension changed to .izl
};

const char* to_string(ZoneDelivery d);
std::optional<ZoneDelivery> zone_delivery_from_string(std::string_view s);

// Filename extension of the zone-manager file for a delivery mode; nothing
// when zones were not fetched over the network at all.
std::optional<std::string> zone_manager_extension(ZoneDelivery d);

struct EraTimeline {
    // Strictly increasing; each entry covers [date, next date).
    std::vector<std::pair<utc_day, ZoneDelivery>> boundaries;
};

// The observed CNN.com timeline: 2015-02-18 zones-in-html, 2015-04-24
// csr-except-hero, 2015-09-17 hero-sometimes-csr, 2016-10-18 izl-json,
// 2016-11-01 all-zones-csr, 2017-01-31 izl.
EraTimeline default_era_timeline();

// Throws UncoveredInstant when `at` predates the first boundary.
ZoneDelivery era_at(const EraTimeline& timeline, utc_seconds at);

// One entry of the CNN.Zones inventory.
struct ZoneSpec {
    std::string id;
    std::optional<std::string> uri;  // per-zone override; wins over base_uri
    std::string base_uri = "index.html";
    int min_width = 800;  // breakpoint the zone list was read from
};

// Pulls the zone list for one breakpoint (default the >=800px desktop list)
// out of the inline CNN.Zones assignment. The object is located by token
// search and sliced with a string-aware balanced-brace scan, so minified or
// lightly non-JSON markup still works. Returns declaration order; empty when
// the page has no such structure. `diagnostic`, when given, receives a note
// about malformed structures.
std::vector<ZoneSpec> extract_zones(std::string_view html, int min_width = 800,
                                    std::string* diagnostic = nullptr);

struct ZoneUrl {
    std::string url;
    ZoneDelivery era;
    std::string extension;
};

// The zone-manager URL a page of that era requests for this zone:
//   http://www.cnn.com/data/ocs/section/<uri-or-baseUri>:<id>/views/zones/common/zone-manager<ext>
// Nothing when the era predates CSR delivery. Throws UncoveredInstant when
// the timeline does not span `at`.
std::optional<ZoneUrl> zone_manager_url(const ZoneSpec& zone, utc_seconds at,
                                        const EraTimeline& timeline);

enum class CsrVerdict { ServerRendered, CsrTemplate, Indeterminate };

const char* to_string(CsrVerdict v);

struct HtmlProbeResult {
    bool has_hero_section_id = false;
    std::size_t content_word_count = 0;
    std::vector<ZoneSpec> zones_declared;
    CsrVerdict csr_verdict = CsrVerdict::Indeterminate;
};

struct ProbeOptions {
    std::size_t threshold = 15;  // max content words for a CSR template
    bool ascii_only = false;     // restrict "lowercase letter" to [a-z]
    int zone_min_width = 800;
};

// Classifies raw (id_-style, unreplayed) base-page markup. Content words are
// whitespace-delimited tokens starting with a lowercase letter, counted after
// removing every tag plus script/style bodies. CsrTemplate when the count is
// at or under the threshold, ServerRendered when a <section> carries
// id="homepage1-zone-1", Indeterminate otherwise. Tag soup is tolerated.
HtmlProbeResult probe_html(std::string_view html, const ProbeOptions& opts = {});

}  // namespace tempo
