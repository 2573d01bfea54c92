#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "tempo/errors.hpp"
#include "tempo/http.hpp"

namespace tempo::test {

// In-process stub server: canned responses per URL, request logging.
class FakeTransport : public HttpTransport {
  public:
    void add(const std::string& url, int status, std::string body) {
        responses_[url] = HttpResponse{status, std::move(body)};
    }

    // First `failures` requests for the URL throw, then the response works.
    void add_flaky(const std::string& url, int failures, int status, std::string body) {
        responses_[url] = HttpResponse{status, std::move(body)};
        remaining_failures_[url] = failures;
    }

    HttpResponse get(const std::string& url) override {
        std::lock_guard lock(mu_);
        log_.push_back(url);
        if (auto it = remaining_failures_.find(url);
            it != remaining_failures_.end() && it->second > 0) {
            --it->second;
            throw NetworkError("injected failure for " + url, 1);
        }
        auto it = responses_.find(url);
        if (it == responses_.end()) throw NetworkError("no canned response for " + url, 1);
        return it->second;
    }

    std::size_t requests() const {
        std::lock_guard lock(mu_);
        return log_.size();
    }

    std::vector<std::string> log() const {
        std::lock_guard lock(mu_);
        return log_;
    }

  private:
    mutable std::mutex mu_;
    std::map<std::string, HttpResponse> responses_;
    std::map<std::string, int> remaining_failures_;
    std::vector<std::string> log_;
};

}  // namespace tempo::test
