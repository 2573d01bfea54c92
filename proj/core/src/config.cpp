#include "tempo/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tempo/errors.hpp"
#include "tempo/fetch.hpp"

namespace tempo {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void check_url_placeholder(const std::string& tmpl, const std::string& endpoint,
                           const char* field) {
    if (tmpl.empty()) return;
    // Exactly one {url}; expand_url_template enforces the same rule at use.
    try {
        expand_url_template(tmpl, "x");
    } catch (const ConfigError&) {
        throw ConfigError("endpoint " + endpoint + ": " + field +
                          " template must contain exactly one {url}: " + tmpl);
    }
}

void validate_endpoint(const ArchiveEndpoint& e) {
    if (e.name.empty()) throw ConfigError("endpoint with empty name");
    for (char c : e.name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_'))
            throw ConfigError("endpoint name must be [A-Za-z0-9._-]: " + e.name);
    if (e.timemap_url_template.empty() && e.cdx_url_template.empty())
        throw ConfigError("endpoint " + e.name + " has neither timemap nor cdx template");
    check_url_placeholder(e.timemap_url_template, e.name, "timemap");
    check_url_placeholder(e.cdx_url_template, e.name, "cdx");
    check_url_placeholder(e.replay_url_template, e.name, "replay");
    check_url_placeholder(e.raw_url_template, e.name, "raw");
    if (!(e.rate_limit > 0))
        throw ConfigError("endpoint " + e.name + " rate_limit must be positive");
}

}  // namespace

std::vector<ArchiveEndpoint> parse_roster(std::string_view text) {
    std::vector<ArchiveEndpoint> roster;
    ArchiveEndpoint* current = nullptr;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("roster line " + std::to_string(lineno) + ": unclosed '['");
            std::string header = trim(line.substr(1, line.size() - 2));
            if (header.rfind("endpoint", 0) != 0)
                throw ConfigError("roster line " + std::to_string(lineno) +
                                  ": expected [endpoint <name>]");
            roster.emplace_back();
            current = &roster.back();
            current->name = trim(header.substr(8));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos || !current)
            throw ConfigError("roster line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "timemap")
            current->timemap_url_template = value;
        else if (key == "cdx")
            current->cdx_url_template = value;
        else if (key == "replay")
            current->replay_url_template = value;
        else if (key == "raw")
            current->raw_url_template = value;
        else if (key == "rate_limit")
            try {
                current->rate_limit = std::stod(value);
            } catch (...) {
                throw ConfigError("roster line " + std::to_string(lineno) + ": bad rate_limit");
            }
        else
            throw ConfigError("roster line " + std::to_string(lineno) + ": unknown key " + key);
    }
    for (const ArchiveEndpoint& e : roster) validate_endpoint(e);
    return roster;
}

std::vector<ArchiveEndpoint> load_roster(const std::filesystem::path& path) {
    try {
        return parse_roster(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::vector<ArchiveEndpoint> default_roster() {
    auto wayback = [](std::string name, std::string base) {
        ArchiveEndpoint e;
        e.name = std::move(name);
        e.timemap_url_template = base + "/timemap/link/{url}";
        e.replay_url_template = base + "/{timestamp}/{url}";
        e.raw_url_template = base + "/{timestamp}id_/{url}";
        return e;
    };
    std::vector<ArchiveEndpoint> roster;
    ArchiveEndpoint ia = wayback("web.archive.org", "https://web.archive.org/web");
    ia.cdx_url_template = "https://web.archive.org/cdx/search/cdx?url={url}";
    roster.push_back(ia);
    roster.push_back(wayback("wayback.archive-it.org", "https://wayback.archive-it.org/all"));
    roster.push_back(wayback("webarchive.loc.gov", "https://webarchive.loc.gov/all"));
    roster.push_back(wayback("arquivo.pt", "https://arquivo.pt/wayback"));
    roster.push_back(wayback("swap.stanford.edu", "https://swap.stanford.edu"));
    roster.push_back(wayback("perma.cc", "https://perma-archives.org/warc"));
    roster.push_back(wayback("www.webarchive.org.uk", "https://www.webarchive.org.uk/wayback/archive"));
    roster.push_back(wayback("web.archive.org.au", "https://web.archive.org.au/awa"));
    ArchiveEndpoint at;
    at.name = "archive.today";
    at.timemap_url_template = "https://archive.ph/timemap/{url}";
    roster.push_back(at);
    return roster;
}

EraTimeline parse_era_timeline(std::string_view text) {
    EraTimeline timeline;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("timeline line " + std::to_string(lineno) +
                              ": expected `date = descriptor`");
        auto date = parse_iso8601(trim(line.substr(0, eq)));
        if (!date)
            throw ConfigError("timeline line " + std::to_string(lineno) + ": bad ISO date");
        auto delivery = zone_delivery_from_string(trim(line.substr(eq + 1)));
        if (!delivery)
            throw ConfigError("timeline line " + std::to_string(lineno) +
                              ": unknown descriptor " + trim(line.substr(eq + 1)));
        timeline.boundaries.emplace_back(day_of(*date), *delivery);
    }
    if (timeline.boundaries.empty()) throw ConfigError("timeline file has no entries");
    for (size_t i = 1; i < timeline.boundaries.size(); ++i)
        if (timeline.boundaries[i].first <= timeline.boundaries[i - 1].first)
            throw ConfigError("timeline dates must be strictly increasing");
    return timeline;
}

EraTimeline load_era_timeline(const std::filesystem::path& path) {
    try {
        return parse_era_timeline(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace tempo
