#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>

namespace tempo {

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Minimal injectable GET. Throws NetworkError when no HTTP response was
// obtained at all; HTTP error statuses come back as responses.
class HttpTransport {
  public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url) = 0;
};

// Real transport backed by cpp-httplib, following redirects.
std::unique_ptr<HttpTransport> make_httplib_transport(
    std::chrono::seconds timeout = std::chrono::seconds{30});

// Offline guard: every request throws NetworkError.
std::unique_ptr<HttpTransport> make_refusing_transport();

// Serializes callers to at most `per_second` acquisitions per second.
class RateLimiter {
  public:
    explicit RateLimiter(double per_second);
    void acquire();

  private:
    std::mutex mu_;
    std::chrono::steady_clock::time_point next_;
    std::chrono::nanoseconds interval_;
};

}  // namespace tempo
