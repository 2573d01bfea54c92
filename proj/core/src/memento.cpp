#include "tempo/memento.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "tempo/errors.hpp"
#include "tempo/url.hpp"

namespace tempo {

namespace {

struct LinkEntry {
    std::string uri;
    std::vector<std::pair<std::string, std::string>> params;

    std::string param(std::string_view name) const {
        for (const auto& [k, v] : params)
            if (k == name) return v;
        return {};
    }

    bool has_rel(std::string_view rel) const {
        // rel is a whitespace-separated list, e.g. rel="first memento".
        std::istringstream ss(param("rel"));
        std::string word;
        while (ss >> word)
            if (word == rel) return true;
        return false;
    }
};

// Minimal RFC 8288-style tokenizer for application/link-format bodies:
// entries are <uri> followed by ;-separated params, separated by commas.
// Structural garbage throws MalformedTimeMap; entry-level oddities are left
// for the caller to judge.
std::vector<LinkEntry> parse_link_entries(std::string_view body) {
    std::vector<LinkEntry> entries;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    };
    skip_ws();
    while (i < body.size()) {
        if (body[i] != '<') throw MalformedTimeMap("expected '<' at start of link entry");
        size_t close = body.find('>', i + 1);
        if (close == std::string_view::npos) throw MalformedTimeMap("unterminated link URI");
        LinkEntry entry;
        entry.uri = std::string(body.substr(i + 1, close - i - 1));
        i = close + 1;
        skip_ws();
        while (i < body.size() && body[i] == ';') {
            ++i;
            skip_ws();
            size_t name_start = i;
            while (i < body.size() && body[i] != '=' && body[i] != ';' && body[i] != ',' &&
                   !std::isspace(static_cast<unsigned char>(body[i])))
                ++i;
            std::string name(body.substr(name_start, i - name_start));
            skip_ws();
            std::string value;
            if (i < body.size() && body[i] == '=') {
                ++i;
                skip_ws();
                if (i < body.size() && body[i] == '"') {
                    ++i;
                    while (i < body.size() && body[i] != '"') {
                        if (body[i] == '\\' && i + 1 < body.size()) ++i;
                        value.push_back(body[i]);
                        ++i;
                    }
                    if (i >= body.size()) throw MalformedTimeMap("unterminated quoted string");
                    ++i;
                } else {
                    while (i < body.size() && body[i] != ';' && body[i] != ',' &&
                           !std::isspace(static_cast<unsigned char>(body[i]))) {
                        value.push_back(body[i]);
                        ++i;
                    }
                }
            }
            if (!name.empty()) entry.params.emplace_back(std::move(name), std::move(value));
            skip_ws();
        }
        entries.push_back(std::move(entry));
        if (i < body.size()) {
            if (body[i] != ',') throw MalformedTimeMap("expected ',' between link entries");
            ++i;
            skip_ws();
        }
    }
    return entries;
}

bool plausible_absolute_url(const std::string& s) {
    return s.find("://") != std::string::npos && s.find("://") > 0;
}

std::string original_key(const std::string& url) {
    try {
        return canonical_urlkey(url);
    } catch (const InvalidUrl&) {
        return url;
    }
}

}  // namespace

void sort_mementos(std::vector<MementoRecord>& mementos) {
    std::sort(mementos.begin(), mementos.end(), [](const MementoRecord& a, const MementoRecord& b) {
        if (a.capture_datetime != b.capture_datetime) return a.capture_datetime < b.capture_datetime;
        if (a.access_url != b.access_url) return a.access_url < b.access_url;
        return a.source_archive < b.source_archive;
    });
}

TimeMap parse_link_timemap(std::string_view body, std::string_view source_archive,
                           TimeMapParseReport* report) {
    TimeMapParseReport local;
    TimeMapParseReport& rep = report ? *report : local;

    std::vector<LinkEntry> entries = parse_link_entries(body);

    TimeMap tm;
    bool have_original = false;
    for (const LinkEntry& entry : entries) {
        rep.entries_seen++;
        if (entry.has_rel("original")) {
            tm.original_url = entry.uri;
            have_original = true;
        }
        if (!entry.has_rel("memento")) continue;
        if (entry.uri.empty() || !plausible_absolute_url(entry.uri)) {
            rep.dropped_bad_uri++;
            continue;
        }
        auto dt = parse_rfc1123(entry.param("datetime"));
        if (!dt) {
            rep.dropped_bad_datetime++;
            continue;
        }
        MementoRecord rec;
        rec.capture_datetime = *dt;
        rec.access_url = entry.uri;
        rec.source_archive = std::string(source_archive);
        tm.mementos.push_back(std::move(rec));
    }
    if (!have_original) throw MalformedTimeMap("no rel=\"original\" entry in TimeMap body");
    for (auto& m : tm.mementos) m.original_url = tm.original_url;
    sort_mementos(tm.mementos);
    tm.mementos.erase(std::unique(tm.mementos.begin(), tm.mementos.end()), tm.mementos.end());
    return tm;
}

std::string serialize_link_timemap(const TimeMap& tm) {
    std::string out;
    out += "<" + tm.original_url + ">; rel=\"original\"";
    for (const auto& m : tm.mementos) {
        out += ",\n<" + m.access_url + ">; rel=\"memento\"; datetime=\"" +
               format_rfc1123(m.capture_datetime) + "\"";
    }
    out += "\n";
    return out;
}

TimeMap aggregate_timemaps(const std::vector<TimeMap>& timemaps) {
    TimeMap merged;
    if (timemaps.empty()) return merged;

    std::string key = original_key(timemaps.front().original_url);
    merged.original_url = timemaps.front().original_url;
    for (const TimeMap& tm : timemaps) {
        if (original_key(tm.original_url) != key)
            throw MixedOriginals("aggregating TimeMaps for different originals: " +
                                 timemaps.front().original_url + " vs " + tm.original_url);
        // Deterministic representative regardless of input order.
        merged.original_url = std::min(merged.original_url, tm.original_url);
        merged.retrieved_at = std::max(merged.retrieved_at, tm.retrieved_at);
        merged.mementos.insert(merged.mementos.end(), tm.mementos.begin(), tm.mementos.end());
    }
    sort_mementos(merged.mementos);
    merged.mementos.erase(
        std::unique(merged.mementos.begin(), merged.mementos.end(),
                    [](const MementoRecord& a, const MementoRecord& b) {
                        return a.capture_datetime == b.capture_datetime &&
                               a.access_url == b.access_url;
                    }),
        merged.mementos.end());
    return merged;
}

std::map<std::string, std::size_t> per_archive_counts(const TimeMap& tm) {
    std::map<std::string, std::size_t> counts;
    for (const auto& m : tm.mementos) counts[m.source_archive]++;
    return counts;
}

std::vector<std::string> timemap_continuations(std::string_view body, std::string_view self_url) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const LinkEntry& entry : parse_link_entries(body)) {
        if (!entry.has_rel("timemap")) continue;
        if (entry.uri.empty() || entry.uri == self_url) continue;
        if (seen.insert(entry.uri).second) out.push_back(entry.uri);
    }
    return out;
}

}  // namespace tempo
