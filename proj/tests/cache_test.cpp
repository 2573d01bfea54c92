#include <doctest.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "support/temp_dir.hpp"
#include "tempo/cache.hpp"
#include "tempo/errors.hpp"

using namespace tempo;
using tempo::test::TempDir;

TEST_SUITE("cache") {

TEST_CASE("store then lookup returns the body") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    CHECK_FALSE(cache.lookup("ia", "http://x.test/a"));

    cache.store("ia", "http://x.test/a", 200, "hello");
    auto entry = cache.lookup("ia", "http://x.test/a");
    REQUIRE(entry.has_value());
    CHECK(entry->status == 200);
    CHECK(entry->body == "hello");
}

TEST_CASE("the newest entry for a key wins") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    cache.store("ia", "k", 200, "v1");
    cache.store("ia", "k", 200, "v2");
    CHECK(cache.lookup("ia", "k")->body == "v2");
}

TEST_CASE("negative results keep their status") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    cache.store("ia", "k404", 404, "not found");
    auto entry = cache.lookup("ia", "k404");
    REQUIRE(entry.has_value());
    CHECK(entry->status == 404);
}

TEST_CASE("an expired TTL reads as a miss, a generous one as a hit") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    cache.store("ia", "k", 200, "v");
    CHECK(cache.lookup("ia", "k", std::chrono::hours(1)));
    CHECK_FALSE(cache.lookup("ia", "k", std::chrono::seconds(-1)));
}

TEST_CASE("endpoints are isolated") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    cache.store("ia", "k", 200, "from-ia");
    CHECK_FALSE(cache.lookup("ait", "k"));
}

TEST_CASE("the index manifest is line-oriented: key TAB epoch TAB filename") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    cache.store("ia", "http://x.test/q?a=1", 200, "body");

    std::ifstream index(dir.path() / "ia" / "index");
    REQUIRE(index);
    std::string line;
    REQUIRE(std::getline(index, line));
    auto tab1 = line.find('\t');
    auto tab2 = line.find('\t', tab1 + 1);
    REQUIRE(tab1 != std::string::npos);
    REQUIRE(tab2 != std::string::npos);
    CHECK(line.substr(0, tab1) == "http://x.test/q?a=1");
    CHECK(std::stoll(line.substr(tab1 + 1, tab2 - tab1 - 1)) > 0);
    std::string filename = line.substr(tab2 + 1);
    CHECK(filename == sha256_hex("http://x.test/q?a=1") + ".body");
    CHECK(std::filesystem::exists(dir.path() / "ia" / filename));
}

TEST_CASE("keys with tabs or newlines are refused") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    CHECK_THROWS_AS(cache.store("ia", "bad\tkey", 200, "x"), IoError);
    CHECK_THROWS_AS(cache.store("ia", "bad\nkey", 200, "x"), IoError);
    CHECK_THROWS_AS(cache.store("../escape", "k", 200, "x"), IoError);
}

TEST_CASE("concurrent writers do not corrupt the index") {
    TempDir dir("cache");
    ResponseCache cache(dir.path());
    std::vector<std::thread> writers;
    for (int t = 0; t < 4; ++t) {
        writers.emplace_back([&cache, t] {
            for (int i = 0; i < 50; ++i)
                cache.store("ia", "key-" + std::to_string(t) + "-" + std::to_string(i), 200,
                            "body-" + std::to_string(t) + "-" + std::to_string(i));
        });
    }
    for (auto& w : writers) w.join();

    for (int t = 0; t < 4; ++t)
        for (int i = 0; i < 50; ++i) {
            auto entry =
                cache.lookup("ia", "key-" + std::to_string(t) + "-" + std::to_string(i));
            REQUIRE(entry.has_value());
            CHECK(entry->body == "body-" + std::to_string(t) + "-" + std::to_string(i));
        }
}

TEST_CASE("sha256 matches a known vector") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // TEST_SUITE
