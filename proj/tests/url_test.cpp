#include <doctest.h>

#include <random>

#include "tempo/errors.hpp"
#include "tempo/url.hpp"

using namespace tempo;

namespace {

// Random plausible URL for the scheme-flip property.
std::string random_url(std::mt19937_64& rng, const std::string& scheme) {
    static const char* hosts[] = {"www.cnn.com", "Example.ORG", "a.b.c.d.test",
                                  "news.example.co.uk", "cdn-1.media.test"};
    static const char* paths[] = {"/", "/index.html", "/data/ocs/section/index.html:zone-1",
                                  "/a/b/c", "/path%2fwith%20escapes", "/UPPER/Case"};
    static const char* queries[] = {"", "b=2&a=1", "z=9&a=1&m=5", "key=%41%42", "single=1"};
    std::string url = scheme + "://" + hosts[rng() % 5] + paths[rng() % 6];
    const char* q = queries[rng() % 5];
    if (*q) url += std::string("?") + q;
    return url;
}

}  // namespace

TEST_SUITE("url") {

TEST_CASE("canonical keys match the definitional examples") {
    CHECK(canonical_urlkey("https://WWW.CNN.com/") == "com,cnn,www)/");
    CHECK(canonical_urlkey("http://www.cnn.com/?b=2&a=1") == "com,cnn,www)/?a=1&b=2");
    CHECK(canonical_urlkey("http://www.cnn.com/") == "com,cnn,www)/");
    CHECK(canonical_urlkey(
              "http://www.cnn.com/data/ocs/section/index.html:homepage4-zone-5/views/zones/"
              "common/zone-manager.html") ==
          "com,cnn,www)/data/ocs/section/index.html:homepage4-zone-5/views/zones/common/"
          "zone-manager.html");
}

TEST_CASE("default ports drop, explicit ports stay") {
    CHECK(canonical_urlkey("http://example.test:80/x") == "test,example)/x");
    CHECK(canonical_urlkey("https://example.test:443/x") == "test,example)/x");
    CHECK(canonical_urlkey("http://example.test:8080/x") == "test,example:8080)/x");
}

TEST_CASE("fragments and userinfo are dropped") {
    CHECK(canonical_urlkey("http://u:p@example.test/x#frag") == "test,example)/x");
    CHECK(canonical_urlkey("http://example.test/#frag") == "test,example)/");
}

TEST_CASE("percent-encoding normalizes") {
    // %2F is reserved (kept, uppercased); %41 is 'A' (unreserved, decoded).
    CHECK(canonical_urlkey("http://example.test/a%2fb") == "test,example)/a%2Fb");
    CHECK(canonical_urlkey("http://example.test/%41%42c") == "test,example)/ABc");
    CHECK(normalize_percent_encoding("%7e%2f%zz") == "~%2F%zz");
}

TEST_CASE("invalid URLs throw InvalidUrl") {
    CHECK_THROWS_AS(canonical_urlkey(""), InvalidUrl);
    CHECK_THROWS_AS(canonical_urlkey("not a url"), InvalidUrl);
    CHECK_THROWS_AS(canonical_urlkey("http://"), InvalidUrl);
    CHECK_THROWS_AS(canonical_urlkey("://host/x"), InvalidUrl);
    CHECK_THROWS_AS(canonical_urlkey("http://host:12ab3/"), InvalidUrl);
}

TEST_CASE("scheme flip never changes the key (50 random URLs)") {
    std::mt19937_64 rng(2015);
    for (int i = 0; i < 50; ++i) {
        std::string http_url = random_url(rng, "http");
        std::string https_url = "https" + http_url.substr(4);
        CHECK(canonical_urlkey(http_url) == canonical_urlkey(https_url));
    }
}

TEST_CASE("keying is idempotent through urlkey_to_url") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        std::string url = random_url(rng, "http");
        std::string key = canonical_urlkey(url);
        CHECK(canonical_urlkey(urlkey_to_url(key)) == key);
    }
}

TEST_CASE("parse_url splits components") {
    Url u = parse_url("https://User@Host.Example.COM:8443/a/b?x=1#frag");
    CHECK(u.scheme == "https");
    CHECK(u.host == "host.example.com");
    CHECK(u.port == "8443");
    CHECK(u.path == "/a/b");
    CHECK(u.query == "x=1");
    Url bare = parse_url("http://example.test");
    CHECK(bare.path == "/");
    CHECK(bare.query.empty());
}

}  // TEST_SUITE
