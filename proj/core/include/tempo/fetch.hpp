#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tempo/cache.hpp"
#include "tempo/cdx.hpp"
#include "tempo/http.hpp"
#include "tempo/memento.hpp"

namespace tempo {

struct FetchOptions {
    int attempts = 3;                                  // for retryable failures
    std::chrono::milliseconds backoff{250};            // grows linearly per retry
    std::optional<std::chrono::seconds> cache_ttl{};   // nothing = never stale
    bool offline = false;                              // cache only, no network
    std::size_t max_pages = 1000;
};

// Cached, rate-limited, retrying fetch of TimeMaps and CDX capture sets.
// Requests to one endpoint are serialized by its rate limit; distinct
// endpoints proceed concurrently. Thread-safe.
class Fetcher {
  public:
    Fetcher(ResponseCache& cache, HttpTransport& transport, FetchOptions options = {});

    struct TimeMapResult {
        TimeMap timemap;
        bool archive_has_none = false;  // endpoint answered 404
        TimeMapParseReport parse_report;
        std::size_t pages = 0;
        std::size_t network_requests = 0;  // 0 = served entirely from cache
        std::size_t failed_pages = 0;
    };

    // Expands the endpoint's timemap template, follows rel="timemap"
    // continuations to exhaustion, and merges the pages. Throws
    // MalformedTimeMap (non-retryable), NetworkError (after retries), or
    // CacheMiss in offline mode.
    TimeMapResult fetch_timemap(const ArchiveEndpoint& endpoint,
                                const std::string& original_url);

    struct CaptureResult {
        CaptureSet captures;
        CdxParseReport parse_report;
        std::size_t pages = 0;
        std::size_t network_requests = 0;
    };

    // CDX query honoring the filters, following resume keys to exhaustion.
    // Filters are also applied client-side so fixture servers need not
    // implement them. `to` is inclusive. Malformed lines are skipped and
    // counted in the parse report.
    CaptureResult fetch_captures(const ArchiveEndpoint& endpoint, const std::string& url,
                                 const FilterSpec& filters);

    struct BodyResult {
        int status = 0;
        std::string body;
        bool from_network = false;
    };

    // Single cached GET, e.g. for id_-style raw memento HTML.
    BodyResult fetch_body(const ArchiveEndpoint& endpoint, const std::string& url);

    const FetchOptions& options() const { return options_; }

  private:
    struct Response {
        int status;
        std::string body;
        bool from_network;
    };
    Response get(const ArchiveEndpoint& endpoint, const std::string& url);
    RateLimiter& limiter_for(const ArchiveEndpoint& endpoint);

    ResponseCache& cache_;
    HttpTransport& transport_;
    FetchOptions options_;
    std::mutex limiters_mu_;
    std::map<std::string, std::unique_ptr<RateLimiter>> limiters_;
};

// Replaces the single {url} placeholder. Throws ConfigError when the
// template does not contain exactly one.
std::string expand_url_template(const std::string& url_template, const std::string& url);

}  // namespace tempo
