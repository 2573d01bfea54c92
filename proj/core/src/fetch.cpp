#include "tempo/fetch.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

// Percent-encodes a resume key for use as a query parameter value.
std::string encode_query_value(std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out.push_back(char(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

std::string append_param(std::string url, const std::string& name, const std::string& value) {
    url += url.find('?') == std::string::npos ? '?' : '&';
    url += name + "=" + value;
    return url;
}

// The resume key, when present, follows the first blank line of a CDX page.
std::optional<std::string> extract_resume_key(std::string_view body) {
    size_t pos = 0;
    bool after_blank = false;
    while (pos <= body.size()) {
        size_t eol = body.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? body.substr(pos) : body.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (after_blank && !line.empty()) return std::string(line);
        if (line.empty()) after_blank = true;
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return std::nullopt;
}

}  // namespace

std::string expand_url_template(const std::string& url_template, const std::string& url) {
    size_t pos = url_template.find("{url}");
    if (pos == std::string::npos || url_template.find("{url}", pos + 1) != std::string::npos)
        throw ConfigError("template must contain exactly one {url} placeholder: " +
                          url_template);
    std::string out = url_template;
    out.replace(pos, 5, url);
    return out;
}

Fetcher::Fetcher(ResponseCache& cache, HttpTransport& transport, FetchOptions options)
    : cache_(cache), transport_(transport), options_(options) {}

RateLimiter& Fetcher::limiter_for(const ArchiveEndpoint& endpoint) {
    std::lock_guard lock(limiters_mu_);
    auto& slot = limiters_[endpoint.name];
    if (!slot) slot = std::make_unique<RateLimiter>(endpoint.rate_limit);
    return *slot;
}

Fetcher::Response Fetcher::get(const ArchiveEndpoint& endpoint, const std::string& url) {
    auto ttl = options_.offline ? std::nullopt : options_.cache_ttl;
    if (auto hit = cache_.lookup(endpoint.name, url, ttl))
        return Response{hit->status, std::move(hit->body), false};
    if (options_.offline)
        throw CacheMiss("offline mode and no cached response for " + url);

    RateLimiter& limiter = limiter_for(endpoint);
    std::string last_error;
    for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
        if (attempt > 1) std::this_thread::sleep_for(options_.backoff * (attempt - 1));
        limiter.acquire();
        HttpResponse res;
        try {
            res = transport_.get(url);
        } catch (const NetworkError& e) {
            last_error = e.what();
            continue;
        }
        if (res.status == 200 || res.status == 404) {
            cache_.store(endpoint.name, url, res.status, res.body);
            return Response{res.status, std::move(res.body), true};
        }
        last_error = "HTTP " + std::to_string(res.status) + " for " + url;
        if (!retryable_status(res.status)) throw NetworkError(last_error, attempt);
    }
    throw NetworkError(last_error, options_.attempts);
}

Fetcher::TimeMapResult Fetcher::fetch_timemap(const ArchiveEndpoint& endpoint,
                                              const std::string& original_url) {
    TimeMapResult result;
    std::set<std::string> visited;
    std::vector<std::string> queue{expand_url_template(endpoint.timemap_url_template,
                                                       original_url)};
    std::vector<TimeMap> pages;

    while (!queue.empty() && result.pages < options_.max_pages) {
        std::string page_url = queue.back();
        queue.pop_back();
        if (!visited.insert(page_url).second) continue;

        Response res = get(endpoint, page_url);
        if (res.from_network) result.network_requests++;
        if (res.status == 404) {
            if (result.pages == 0) {
                result.archive_has_none = true;
                result.timemap.original_url = original_url;
                return result;
            }
            result.failed_pages++;
            continue;
        }
        result.pages++;

        TimeMapParseReport page_report;
        pages.push_back(parse_link_timemap(res.body, endpoint.name, &page_report));
        result.parse_report.entries_seen += page_report.entries_seen;
        result.parse_report.dropped_bad_datetime += page_report.dropped_bad_datetime;
        result.parse_report.dropped_bad_uri += page_report.dropped_bad_uri;

        for (std::string& next : timemap_continuations(res.body, page_url))
            if (!visited.count(next)) queue.push_back(std::move(next));
    }

    result.timemap = aggregate_timemaps(pages);
    result.parse_report.mementos_parsed = result.timemap.mementos.size();
    return result;
}

Fetcher::BodyResult Fetcher::fetch_body(const ArchiveEndpoint& endpoint,
                                        const std::string& url) {
    Response res = get(endpoint, url);
    return BodyResult{res.status, std::move(res.body), res.from_network};
}

Fetcher::CaptureResult Fetcher::fetch_captures(const ArchiveEndpoint& endpoint,
                                               const std::string& url,
                                               const FilterSpec& filters) {
    if (endpoint.cdx_url_template.empty())
        throw ConfigError("endpoint " + endpoint.name + " has no CDX URL template");

    CaptureResult result;
    result.captures.original_url = url;
    result.captures.filter_applied = filters.describe();
    result.captures.source_archive = endpoint.name;
    result.captures.replay_url_template = endpoint.replay_url_template;

    std::string base_url = expand_url_template(endpoint.cdx_url_template, url);
    if (filters.from) base_url = append_param(base_url, "from", format_stamp14(*filters.from));
    if (filters.to) base_url = append_param(base_url, "to", format_stamp14(*filters.to));
    if (filters.status_code)
        base_url = append_param(base_url, "filter",
                                "statuscode:" + std::to_string(*filters.status_code));
    base_url = append_param(base_url, "showResumeKey", "true");

    std::optional<std::string> resume_key;
    while (result.pages < options_.max_pages) {
        std::string page_url = base_url;
        if (resume_key)
            page_url = append_param(page_url, "resumeKey", encode_query_value(*resume_key));

        Response res = get(endpoint, page_url);
        if (res.from_network) result.network_requests++;
        result.pages++;
        if (res.status == 404) break;  // endpoint has nothing for this URL

        CdxParseReport page_report;
        std::vector<CdxRecord> records = parse_cdx_body(res.body, &page_report);
        result.parse_report.lines_seen += page_report.lines_seen;
        result.parse_report.records_parsed += page_report.records_parsed;
        result.parse_report.lines_skipped += page_report.lines_skipped;
        if (result.parse_report.first_error.empty())
            result.parse_report.first_error = page_report.first_error;

        for (CdxRecord& rec : records) {
            if (filters.status_code &&
                (!rec.status_code || *rec.status_code != *filters.status_code))
                continue;
            if (filters.from && rec.timestamp < *filters.from) continue;
            if (filters.to && rec.timestamp > *filters.to) continue;
            rec.source_archive = endpoint.name;
            result.captures.records.push_back(std::move(rec));
        }

        resume_key = extract_resume_key(res.body);
        if (!resume_key) break;
    }

    sort_captures(result.captures.records);
    return result;
}

}  // namespace tempo
