#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tempo/http.hpp"

#include <thread>

#include "tempo/errors.hpp"
#include "tempo/url.hpp"

namespace tempo {

namespace {

class HttplibTransport : public HttpTransport {
  public:
    explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

    HttpResponse get(const std::string& url) override {
        Url u = parse_url(url);
        std::string origin = u.scheme + "://" + u.host;
        if (!u.port.empty()) origin += ":" + u.port;
        std::string target = u.path;
        if (!u.query.empty()) target += "?" + u.query;

        httplib::Client client(origin);
        client.set_follow_location(true);
        client.set_connection_timeout(timeout_.count(), 0);
        client.set_read_timeout(timeout_.count(), 0);
        client.set_default_headers({{"User-Agent", "tempo-audit/0.1"}});

        httplib::Result res = client.Get(target);
        if (!res)
            throw NetworkError("GET " + url + ": " + httplib::to_string(res.error()), 1);
        return HttpResponse{res->status, res->body};
    }

  private:
    std::chrono::seconds timeout_;
};

class RefusingTransport : public HttpTransport {
  public:
    HttpResponse get(const std::string& url) override {
        throw NetworkError("network disabled (offline mode), refused GET " + url, 1);
    }
};

}  // namespace

std::unique_ptr<HttpTransport> make_httplib_transport(std::chrono::seconds timeout) {
    return std::make_unique<HttplibTransport>(timeout);
}

std::unique_ptr<HttpTransport> make_refusing_transport() {
    return std::make_unique<RefusingTransport>();
}

RateLimiter::RateLimiter(double per_second)
    : next_(std::chrono::steady_clock::now()),
      interval_(std::chrono::nanoseconds(
          per_second > 0 ? std::int64_t(1e9 / per_second) : 0)) {}

void RateLimiter::acquire() {
    std::chrono::steady_clock::time_point wake;
    {
        std::lock_guard lock(mu_);
        auto now = std::chrono::steady_clock::now();
        wake = std::max(next_, now);
        next_ = wake + interval_;
    }
    std::this_thread::sleep_until(wake);
}

}  // namespace tempo
