#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support/builders.hpp"
#include "tempo/cdx.hpp"
#include "tempo/errors.hpp"

using namespace tempo;
using tempo::test::at;

#ifndef TEMPO_FIXTURES_DIR
#error "TEMPO_FIXTURES_DIR must be defined by the build"
#endif

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(TEMPO_FIXTURES_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace

TEST_SUITE("cdx") {

TEST_CASE("the 7-field API flavor parses") {
    CdxRecord rec =
        parse_cdx_line("com,cnn)/ 20150424150304 http://www.cnn.com/ text/html 200 AAAA 5432");
    CHECK(rec.urlkey == "com,cnn)/");
    CHECK(format_iso8601(rec.timestamp) == "2015-04-24T15:03:04Z");
    CHECK(rec.original == "http://www.cnn.com/");
    CHECK(rec.mimetype == "text/html");
    CHECK(rec.status_code == 200);
    CHECK(rec.digest == "AAAA");
    CHECK(rec.length == 5432);
    CHECK(rec.classic_extra.empty());
}

TEST_CASE("sentinel fields pass through as unknowns") {
    CdxRecord rec =
        parse_cdx_line("com,cnn)/ 20150424150304 http://www.cnn.com/ warc/revisit - - -");
    CHECK_FALSE(rec.status_code.has_value());
    CHECK(rec.digest == "-");
    CHECK_FALSE(rec.length.has_value());
}

TEST_CASE("the 11-field classic flavor parses and keeps its extras") {
    std::string line =
        "com,cnn)/ 20150424150304 http://www.cnn.com/ text/html 200 AAAA - - 5432 1234 "
        "crawl-2015.warc.gz";
    CdxRecord rec = parse_cdx_line(line);
    CHECK(rec.length == 5432);
    REQUIRE(rec.classic_extra.size() == 4);
    CHECK(rec.classic_extra[3] == "crawl-2015.warc.gz");
    CHECK(serialize_cdx_classic(rec) == line);
}

TEST_CASE("CDXJ is auto-detected by the third token") {
    CdxRecord rec = parse_cdx_line(
        "com,cnn)/ 20200618234848 {\"url\": \"https://www.cnn.com/\", \"mime\": \"text/html\", "
        "\"status\": \"200\", \"digest\": \"XYZ\", \"length\": \"12345\"}");
    CHECK(rec.original == "https://www.cnn.com/");
    CHECK(rec.status_code == 200);
    CHECK(rec.digest == "XYZ");
    CHECK(rec.length == 12345);
}

TEST_CASE("malformed lines throw with the offending byte offset") {
    std::string bad_ts = "com,cnn)/ 2015x424150304 http://www.cnn.com/ text/html 200 A 1";
    try {
        parse_cdx_line(bad_ts);
        FAIL("expected MalformedCdxLine");
    } catch (const MalformedCdxLine& e) {
        CHECK(e.byte_offset == bad_ts.find("2015x"));
    }
    std::string bad_status = "com,cnn)/ 20150424150304 http://www.cnn.com/ text/html 9xx A 1";
    try {
        parse_cdx_line(bad_status);
        FAIL("expected MalformedCdxLine");
    } catch (const MalformedCdxLine& e) {
        CHECK(e.byte_offset == bad_status.find("9xx"));
    }
    CHECK_THROWS_AS(parse_cdx_line(""), MalformedCdxLine);
    CHECK_THROWS_AS(parse_cdx_line("a b"), MalformedCdxLine);
    CHECK_THROWS_AS(parse_cdx_line("a 20150424150304 url m 200 d"), MalformedCdxLine);
    CHECK_THROWS_AS(parse_cdx_line("k 20150424150304 {not json}"), MalformedCdxLine);
    CHECK_THROWS_AS(parse_cdx_line("k 20150424150304 {\"mime\": \"text/html\"}"),
                    MalformedCdxLine);
}

TEST_CASE("vendored IA sample parses in full (oracle: line count)") {
    std::string body = read_fixture("cdx/ia_cnn_sample.cdx");
    std::size_t line_count = std::count(body.begin(), body.end(), '\n');
    REQUIRE(line_count == 1000);

    CdxParseReport report;
    std::vector<CdxRecord> records = parse_cdx_body(body, &report);
    CHECK(records.size() == line_count);
    CHECK(report.lines_seen == line_count);
    CHECK(report.lines_skipped == 0);
}

TEST_CASE("well-formed classic lines re-serialize byte-identically") {
    std::string body = read_fixture("cdx/ia_cnn_sample.cdx");
    std::istringstream lines(body);
    std::string line;
    while (std::getline(lines, line))
        CHECK(serialize_cdx_classic(parse_cdx_line(line)) == line);
}

TEST_CASE("parse-serialize round-trip on generated records") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        CdxRecord rec = tempo::test::capture(
            format_stamp14(utc_seconds{std::chrono::seconds(1104537600 + std::int64_t(
                                                                rng() % 500000000))}),
            "http://example.test/a?b=1", "D" + std::to_string(rng() % 1000));
        if (rng() % 4 == 0) rec.status_code.reset();
        if (rng() % 4 == 0) rec.length.reset();
        std::string line = serialize_cdx_classic(rec);
        CHECK(serialize_cdx_classic(parse_cdx_line(line)) == line);
    }
}

TEST_CASE("body parsing skips bad lines and stops at the resume-key epilogue") {
    std::string body =
        "com,cnn)/ 20150424150304 http://www.cnn.com/ text/html 200 A 1\n"
        "garbage line here\n"
        "com,cnn)/ 20150424160000 http://www.cnn.com/ text/html 200 B 2\n"
        "\n"
        "com,cnn)/+resume+key\n";
    CdxParseReport report;
    std::vector<CdxRecord> records = parse_cdx_body(body, &report);
    CHECK(records.size() == 2);
    CHECK(report.lines_seen == 3);
    CHECK(report.lines_skipped == 1);
    CHECK_FALSE(report.first_error.empty());
}

TEST_CASE("capture ordering is deterministic: timestamp, then digest, then input order") {
    std::vector<CdxRecord> records;
    records.push_back(tempo::test::capture("20150101000000", "http://e.test/", "B"));
    records.push_back(tempo::test::capture("20150101000000", "http://e.test/", "A"));
    records.push_back(tempo::test::capture("20140101000000", "http://e.test/", "Z"));
    CdxRecord dup_b = tempo::test::capture("20150101000000", "http://e.test/", "B");
    dup_b.length = 77;  // distinguishable twin, same sort key
    records.push_back(dup_b);
    sort_captures(records);
    CHECK(records[0].digest == "Z");
    CHECK(records[1].digest == "A");
    CHECK(records[2].digest == "B");
    CHECK(records[2].length == 1000);  // input order preserved within ties
    CHECK(records[3].length == 77);
}

TEST_CASE("filter descriptions are readable") {
    FilterSpec f;
    CHECK(f.describe() == "none");
    f.status_code = 200;
    f.from = at("20150424000000");
    CHECK(f.describe() == "status=200 from=20150424000000");
}

}  // TEST_SUITE
