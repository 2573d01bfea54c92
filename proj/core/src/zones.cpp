#include "tempo/zones.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

struct LlRange {
    std::uint32_t lo, hi;
};

constexpr LlRange kLlRanges[] = {
#include "unicode_ll_ranges.inc"
};

bool is_lowercase_letter(std::uint32_t cp) {
    auto it = std::upper_bound(std::begin(kLlRanges), std::end(kLlRanges), cp,
                               [](std::uint32_t v, const LlRange& r) { return v < r.lo; });
    return it != std::begin(kLlRanges) && cp <= std::prev(it)->hi;
}

// Decodes the first UTF-8 code point; malformed sequences yield the raw byte.
std::uint32_t first_codepoint(std::string_view s) {
    if (s.empty()) return 0;
    unsigned char c0 = s[0];
    if (c0 < 0x80) return c0;
    int extra = 0;
    std::uint32_t cp = 0;
    if ((c0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = c0 & 0x1F;
    } else if ((c0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = c0 & 0x0F;
    } else if ((c0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = c0 & 0x07;
    } else {
        return c0;
    }
    if (s.size() < std::size_t(extra) + 1) return c0;
    for (int i = 1; i <= extra; ++i) {
        unsigned char c = s[i];
        if ((c & 0xC0) != 0x80) return c0;
        cp = (cp << 6) | (c & 0x3F);
    }
    return cp;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

size_t ifind(std::string_view haystack, std::string_view needle, size_t pos = 0) {
    if (needle.empty() || haystack.size() < needle.size()) return std::string_view::npos;
    for (size_t i = pos; i + needle.size() <= haystack.size(); ++i)
        if (iequals(haystack.substr(i, needle.size()), needle)) return i;
    return std::string_view::npos;
}

// Slice of a balanced {...} or [...] block starting at `open_pos`, skipping
// over quoted strings. npos-length result on imbalance.
std::string_view balanced_slice(std::string_view text, size_t open_pos) {
    char open = text[open_pos];
    char close = open == '{' ? '}' : ']';
    int depth = 0;
    char quote = 0;
    for (size_t i = open_pos; i < text.size(); ++i) {
        char c = text[i];
        if (quote) {
            if (c == '\\')
                ++i;
            else if (c == quote)
                quote = 0;
            continue;
        }
        if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == open) {
            ++depth;
        } else if (c == close) {
            if (--depth == 0) return text.substr(open_pos, i - open_pos + 1);
        }
    }
    return {};
}

// Finds `"key"` (or 'key' / bare key followed by ':') and returns the
// position just past the ':' of that key, or npos.
size_t find_key(std::string_view text, std::string_view key, size_t pos = 0) {
    while (pos < text.size()) {
        size_t hit = text.find(key, pos);
        if (hit == std::string_view::npos) return std::string_view::npos;
        size_t end = hit + key.size();
        bool quoted = hit > 0 && (text[hit - 1] == '"' || text[hit - 1] == '\'');
        if (quoted) {
            if (end >= text.size() || text[end] != text[hit - 1]) {
                pos = end;
                continue;
            }
            ++end;
        }
        size_t colon = end;
        while (colon < text.size() &&
               std::isspace(static_cast<unsigned char>(text[colon])))
            ++colon;
        if (colon < text.size() && text[colon] == ':') return colon + 1;
        pos = end;
    }
    return std::string_view::npos;
}

std::optional<std::string> string_value_at(std::string_view text, size_t pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || (text[pos] != '"' && text[pos] != '\'')) return std::nullopt;
    char quote = text[pos];
    std::string out;
    for (size_t i = pos + 1; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) {
            out.push_back(text[i + 1]);
            ++i;
        } else if (text[i] == quote) {
            return out;
        } else {
            out.push_back(text[i]);
        }
    }
    return std::nullopt;
}

std::optional<std::string> key_string_value(std::string_view text, std::string_view key) {
    size_t pos = find_key(text, key);
    if (pos == std::string_view::npos) return std::nullopt;
    return string_value_at(text, pos);
}

std::string_view key_block(std::string_view text, std::string_view key, char open) {
    size_t pos = find_key(text, key);
    if (pos == std::string_view::npos) return {};
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != open) return {};
    return balanced_slice(text, pos);
}

// --- HTML scanning -----------------------------------------------------

// Replaces <!-- ... --> with a space.
std::string strip_comments(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    size_t i = 0;
    while (i < html.size()) {
        if (html.compare(i, 4, "<!--") == 0) {
            size_t end = html.find("-->", i + 4);
            out.push_back(' ');
            if (end == std::string_view::npos) break;
            i = end + 3;
        } else {
            out.push_back(html[i]);
            ++i;
        }
    }
    return out;
}

// Replaces <script>/<style> elements, including their bodies, with a space.
std::string strip_container_elements(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    size_t i = 0;
    auto element_at = [&](size_t pos, std::string_view name) {
        if (pos + 1 + name.size() > html.size()) return false;
        if (html[pos] != '<' || !iequals(html.substr(pos + 1, name.size()), name)) return false;
        char after = pos + 1 + name.size() < html.size() ? html[pos + 1 + name.size()] : '>';
        return after == '>' || after == ' ' || after == '\t' || after == '\n' || after == '\r' ||
               after == '/';
    };
    while (i < html.size()) {
        std::string_view name;
        if (element_at(i, "script"))
            name = "script";
        else if (element_at(i, "style"))
            name = "style";
        if (name.empty()) {
            out.push_back(html[i]);
            ++i;
            continue;
        }
        std::string close = "</" + std::string(name);
        size_t end = ifind(html, close, i);
        out.push_back(' ');
        if (end == std::string_view::npos) break;  // unterminated: swallow to EOF
        size_t gt = html.find('>', end);
        if (gt == std::string_view::npos) break;
        i = gt + 1;
    }
    return out;
}

std::string strip_tags(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    size_t i = 0;
    while (i < html.size()) {
        if (html[i] == '<') {
            size_t gt = html.find('>', i);
            out.push_back(' ');
            if (gt == std::string_view::npos) break;
            i = gt + 1;
        } else {
            out.push_back(html[i]);
            ++i;
        }
    }
    return out;
}

// The handful of entities that affect token boundaries or leading letters.
std::string decode_basic_entities(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kEntities{{
        {"&nbsp;", " "},
        {"&#160;", " "},
        {"&amp;", "&"},
        {"&lt;", "<"},
        {"&gt;", ">"},
        {"&quot;", "\""},
        {"&#39;", "'"},
    }};
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '&') {
            bool matched = false;
            for (const auto& [from, to] : kEntities) {
                if (text.compare(i, from.size(), from) == 0) {
                    out += to;
                    i += from.size();
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

// True when some <section ...> tag carries id="homepage1-zone-1" (any quote
// style).
bool has_hero_section(std::string_view html) {
    size_t pos = 0;
    while ((pos = ifind(html, "<section", pos)) != std::string_view::npos) {
        size_t gt = html.find('>', pos);
        std::string_view tag = html.substr(
            pos, gt == std::string_view::npos ? html.size() - pos : gt - pos + 1);
        size_t id_pos = 0;
        while ((id_pos = ifind(tag, "id", id_pos)) != std::string_view::npos) {
            // Must be a standalone attribute name.
            if (id_pos > 0) {
                char before = tag[id_pos - 1];
                if (!std::isspace(static_cast<unsigned char>(before)) && before != '"' &&
                    before != '\'') {
                    id_pos += 2;
                    continue;
                }
            }
            size_t eq = id_pos + 2;
            while (eq < tag.size() && std::isspace(static_cast<unsigned char>(tag[eq]))) ++eq;
            if (eq >= tag.size() || tag[eq] != '=') {
                id_pos += 2;
                continue;
            }
            ++eq;
            while (eq < tag.size() && std::isspace(static_cast<unsigned char>(tag[eq]))) ++eq;
            std::string value;
            if (eq < tag.size() && (tag[eq] == '"' || tag[eq] == '\'')) {
                char q = tag[eq];
                size_t close = tag.find(q, eq + 1);
                if (close != std::string_view::npos)
                    value = std::string(tag.substr(eq + 1, close - eq - 1));
            } else {
                size_t end = eq;
                while (end < tag.size() && !std::isspace(static_cast<unsigned char>(tag[end])) &&
                       tag[end] != '>')
                    ++end;
                value = std::string(tag.substr(eq, end - eq));
            }
            if (value == "homepage1-zone-1") return true;
            id_pos += 2;
        }
        if (gt == std::string_view::npos) break;
        pos = gt + 1;
    }
    return false;
}

}  // namespace

const char* to_string(ZoneDelivery d) {
    switch (d) {
        case ZoneDelivery::ZonesInHtml: return "zones-in-html";
        case ZoneDelivery::CsrExceptHero: return "csr-except-hero";
        case ZoneDelivery::HeroSometimesCsr: return "hero-sometimes-csr";
        case ZoneDelivery::IzlJson: return "izl-json";
        case ZoneDelivery::AllZonesCsr: return "all-zones-csr";
        case ZoneDelivery::Izl: return "izl";
    }
    return "?";
}

std::optional<ZoneDelivery> zone_delivery_from_string(std::string_view s) {
    for (ZoneDelivery d : {ZoneDelivery::ZonesInHtml, ZoneDelivery::CsrExceptHero,
                           ZoneDelivery::HeroSometimesCsr, ZoneDelivery::IzlJson,
                           ZoneDelivery::AllZonesCsr, ZoneDelivery::Izl})
        if (s == to_string(d)) return d;
    return std::nullopt;
}

std::optional<std::string> zone_manager_extension(ZoneDelivery d) {
    switch (d) {
        case ZoneDelivery::ZonesInHtml: return std::nullopt;
        case ZoneDelivery::CsrExceptHero:
        case ZoneDelivery::HeroSometimesCsr: return ".html";
        case ZoneDelivery::IzlJson:
        case ZoneDelivery::AllZonesCsr: return ".izl.json";
        case ZoneDelivery::Izl: return ".izl";
    }
    return std::nullopt;
}

EraTimeline default_era_timeline() {
    using namespace std::chrono;
    auto d = [](int y, unsigned m, unsigned dd) { return sys_days{year{y} / m / dd}; };
    return EraTimeline{{
        {d(2015, 2, 18), ZoneDelivery::ZonesInHtml},
        {d(2015, 4, 24), ZoneDelivery::CsrExceptHero},
        {d(2015, 9, 17), ZoneDelivery::HeroSometimesCsr},
        {d(2016, 10, 18), ZoneDelivery::IzlJson},
        {d(2016, 11, 1), ZoneDelivery::AllZonesCsr},
        {d(2017, 1, 31), ZoneDelivery::Izl},
    }};
}

ZoneDelivery era_at(const EraTimeline& timeline, utc_seconds at) {
    if (timeline.boundaries.empty()) throw UncoveredInstant("era timeline is empty");
    if (at < utc_seconds(timeline.boundaries.front().first))
        throw UncoveredInstant("instant " + format_iso8601(at) +
                               " predates the era timeline");
    ZoneDelivery current = timeline.boundaries.front().second;
    for (const auto& [date, delivery] : timeline.boundaries) {
        if (utc_seconds(date) <= at)
            current = delivery;
        else
            break;
    }
    return current;
}

std::vector<ZoneSpec> extract_zones(std::string_view html, int min_width,
                                    std::string* diagnostic) {
    auto note = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
    };

    size_t anchor = html.find("CNN.Zones");
    if (anchor == std::string_view::npos) return {};
    size_t eq = html.find('=', anchor + 9);
    if (eq == std::string_view::npos) {
        note("CNN.Zones token without assignment");
        return {};
    }
    size_t open = html.find('{', eq);
    if (open == std::string_view::npos) {
        note("CNN.Zones assignment without object literal");
        return {};
    }
    std::string_view object = balanced_slice(html, open);
    if (object.empty()) {
        note("CNN.Zones object braces are unbalanced");
        return {};
    }

    std::string_view zones_obj = key_block(object, "zones", '{');
    if (zones_obj.empty()) zones_obj = object;
    std::string base_uri = key_string_value(zones_obj, "baseUri").value_or("index.html");

    std::string_view min_width_obj = key_block(zones_obj, "minWidth", '{');
    std::string_view search_in = min_width_obj.empty() ? zones_obj : min_width_obj;
    std::string_view list = key_block(search_in, std::to_string(min_width), '[');
    if (list.empty()) {
        note("no zone list for minWidth " + std::to_string(min_width));
        return {};
    }

    std::vector<ZoneSpec> zones;
    size_t pos = 1;  // past '['
    while (pos < list.size()) {
        size_t obj_start = list.find('{', pos);
        if (obj_start == std::string_view::npos) break;
        std::string_view zone_obj = balanced_slice(list, obj_start);
        if (zone_obj.empty()) {
            note("unbalanced zone entry");
            break;
        }
        ZoneSpec spec;
        spec.base_uri = base_uri;
        spec.min_width = min_width;
        if (auto id = key_string_value(zone_obj, "id")) spec.id = *id;
        if (auto uri = key_string_value(zone_obj, "uri")) spec.uri = *uri;
        if (!spec.id.empty()) zones.push_back(std::move(spec));
        pos = obj_start + zone_obj.size();
    }
    return zones;
}

std::optional<ZoneUrl> zone_manager_url(const ZoneSpec& zone, utc_seconds at,
                                        const EraTimeline& timeline) {
    ZoneDelivery era = era_at(timeline, at);
    auto ext = zone_manager_extension(era);
    if (!ext) return std::nullopt;
    const std::string& path_part = zone.uri ? *zone.uri : zone.base_uri;
    ZoneUrl out;
    out.era = era;
    out.extension = *ext;
    out.url = "http://www.cnn.com/data/ocs/section/" + path_part + ":" + zone.id +
              "/views/zones/common/zone-manager" + *ext;
    return out;
}

const char* to_string(CsrVerdict v) {
    switch (v) {
        case CsrVerdict::ServerRendered: return "server-rendered";
        case CsrVerdict::CsrTemplate: return "csr-template";
        case CsrVerdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

HtmlProbeResult probe_html(std::string_view html, const ProbeOptions& opts) {
    HtmlProbeResult result;
    result.has_hero_section_id = has_hero_section(html);
    result.zones_declared = extract_zones(html, opts.zone_min_width);

    std::string text = strip_comments(html);
    text = strip_container_elements(text);
    text = strip_tags(text);
    text = decode_basic_entities(text);

    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::string_view token = std::string_view(text).substr(start, i - start);
        std::uint32_t cp = first_codepoint(token);
        bool lower = opts.ascii_only ? (cp >= 'a' && cp <= 'z') : is_lowercase_letter(cp);
        if (lower) result.content_word_count++;
    }

    if (result.content_word_count <= opts.threshold)
        result.csr_verdict = CsrVerdict::CsrTemplate;
    else if (result.has_hero_section_id)
        result.csr_verdict = CsrVerdict::ServerRendered;
    else
        result.csr_verdict = CsrVerdict::Indeterminate;
    return result;
}

}  // namespace tempo
