#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "support/builders.hpp"
#include "tempo/errors.hpp"
#include "tempo/zones.hpp"

using namespace tempo;
using tempo::test::at;

namespace {

std::string read_corpus_file(const std::string& stamp) {
    std::ifstream in(std::string(TEMPO_FIXTURES_DIR) + "/corpus/" + stamp + ".html",
                     std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

ZoneSpec zone(const std::string& id) {
    ZoneSpec z;
    z.id = id;
    return z;
}

}  // namespace

TEST_SUITE("zones") {

TEST_CASE("the 2020 zone inventory extracts in declaration order") {
    std::string html = read_corpus_file("20200618234848");
    std::vector<ZoneSpec> zones = extract_zones(html);
    REQUIRE(zones.size() == 12);
    CHECK(zones.front().id == "homepage-injection-zone-1");
    REQUIRE(zones.front().uri.has_value());
    CHECK(*zones.front().uri == "_homepage-zone-injection/index.html");
    CHECK(zones.front().base_uri == "index.html");
    CHECK(zones[1].id == "homepage1-zone-1");
    CHECK_FALSE(zones[1].uri.has_value());
    CHECK(zones[2].id == "homepage-injection-zone-2");
    CHECK(zones[3].id == "homepage2-zone-1");
    CHECK(zones[4].id == "homepage3-zone-1");
    CHECK(zones.back().id == "homepage4-zone-7");
    for (const ZoneSpec& z : zones) CHECK(z.min_width == 800);
}

TEST_CASE("breakpoint selection picks the requested minWidth list") {
    std::string html = read_corpus_file("20200618234848");
    CHECK(extract_zones(html, 640).size() == 3);
    CHECK(extract_zones(html, 0).size() == 2);
    CHECK(extract_zones(html, 1024).empty());
}

TEST_CASE("pages without CNN.Zones yield an empty list") {
    CHECK(extract_zones("<html><body>plain page</body></html>").empty());
    CHECK(extract_zones("").empty());
    CHECK(extract_zones(read_corpus_file("20140610120000")).empty());
}

TEST_CASE("minified and single-quoted variants still extract") {
    std::string minified =
        "<script>window.x=1;CNN.Zones={\"zones\":{\"baseUri\":\"index.html\",\"minWidth\":{"
        "\"800\":[{\"id\":\"homepage1-zone-1\"},{\"id\":\"homepage2-zone-1\",\"uri\":\"alt/"
        "index.html\"}]}}};CNN.other={};</script>";
    auto zones = extract_zones(minified);
    REQUIRE(zones.size() == 2);
    CHECK(zones[1].uri.has_value());

    std::string single_quoted =
        "CNN.Zones = {'zones': {'baseUri': 'index.html', 'minWidth': {'800': "
        "[{'id': 'homepage1-zone-1'}]}}};";
    CHECK(extract_zones(single_quoted).size() == 1);
}

TEST_CASE("braces inside strings do not break the scanner") {
    std::string tricky =
        "CNN.Zones = {\"note\": \"has } and { inside\", \"zones\": {\"baseUri\": "
        "\"index.html\", \"minWidth\": {\"800\": [{\"id\": \"homepage1-zone-1\", "
        "\"label\": \"a ] b [ c\"}]}}};";
    auto zones = extract_zones(tricky);
    REQUIRE(zones.size() == 1);
    CHECK(zones[0].id == "homepage1-zone-1");
}

TEST_CASE("malformed structures report a diagnostic and return nothing") {
    std::string diag;
    CHECK(extract_zones("CNN.Zones = {\"zones\": {", 800, &diag).empty());
    CHECK_FALSE(diag.empty());
}

TEST_CASE("the default timeline reproduces the observed boundaries") {
    EraTimeline tl = default_era_timeline();
    REQUIRE(tl.boundaries.size() == 6);
    CHECK(era_at(tl, at("20150218000000")) == ZoneDelivery::ZonesInHtml);
    CHECK(era_at(tl, at("20150424000000")) == ZoneDelivery::CsrExceptHero);
    CHECK(era_at(tl, at("20150917000000")) == ZoneDelivery::HeroSometimesCsr);
    CHECK(era_at(tl, at("20161018000000")) == ZoneDelivery::IzlJson);
    CHECK(era_at(tl, at("20161101000000")) == ZoneDelivery::AllZonesCsr);
    CHECK(era_at(tl, at("20170131000000")) == ZoneDelivery::Izl);
    CHECK_THROWS_AS(era_at(tl, at("20150217235959")), UncoveredInstant);
}

TEST_CASE("zone-manager URLs match the archived examples") {
    EraTimeline tl = default_era_timeline();

    ZoneSpec hp4z5 = zone("homepage4-zone-5");
    auto earliest = zone_manager_url(hp4z5, at("20150427192038"), tl);
    REQUIRE(earliest.has_value());
    CHECK(earliest->url ==
          "http://www.cnn.com/data/ocs/section/index.html:homepage4-zone-5/views/zones/common/"
          "zone-manager.html");

    ZoneSpec hero = zone("homepage1-zone-1");
    auto izl = zone_manager_url(hero, at("20200618234850"), tl);
    REQUIRE(izl.has_value());
    CHECK(izl->url ==
          "http://www.cnn.com/data/ocs/section/index.html:homepage1-zone-1/views/zones/common/"
          "zone-manager.izl");

    ZoneSpec injection = zone("homepage-injection-zone-1");
    injection.uri = "_homepage-zone-injection/index.html";
    auto inj = zone_manager_url(injection, at("20161215000000"), tl);
    REQUIRE(inj.has_value());
    CHECK(inj->url ==
          "http://www.cnn.com/data/ocs/section/_homepage-zone-injection/index.html:"
          "homepage-injection-zone-1/views/zones/common/zone-manager.izl.json");

    ZoneSpec hp3 = zone("homepage3-zone-1");
    auto h3 = zone_manager_url(hp3, at("20160101000000"), tl);
    REQUIRE(h3.has_value());
    CHECK(h3->url ==
          "http://www.cnn.com/data/ocs/section/index.html:homepage3-zone-1/views/zones/common/"
          "zone-manager.html");
}

TEST_CASE("no zone-manager URL before CSR delivery began") {
    EraTimeline tl = default_era_timeline();
    CHECK_FALSE(zone_manager_url(zone("homepage1-zone-1"), at("20150301000000"), tl));
    CHECK_THROWS_AS(zone_manager_url(zone("homepage1-zone-1"), at("20150101000000"), tl),
                    UncoveredInstant);
}

TEST_CASE("eras are half-open: the flip happens exactly at each boundary") {
    EraTimeline tl = default_era_timeline();
    const char* boundaries[] = {"20150218000000", "20150424000000", "20150917000000",
                                "20161018000000", "20161101000000", "20170131000000"};
    for (std::size_t i = 1; i < 6; ++i) {
        utc_seconds b = at(boundaries[i]);
        CHECK(era_at(tl, b - std::chrono::seconds(1)) != era_at(tl, b));
        CHECK(era_at(tl, b) == era_at(tl, b + std::chrono::seconds(1)));
    }

    ZoneSpec z = zone("homepage2-zone-1");
    auto ext_at = [&](utc_seconds t) -> std::string {
        auto zu = zone_manager_url(z, t, tl);
        return zu ? zu->extension : "";
    };
    CHECK(ext_at(at("20150423235959")) == "");
    CHECK(ext_at(at("20150424000000")) == ".html");
    CHECK(ext_at(at("20161017235959")) == ".html");
    CHECK(ext_at(at("20161018000000")) == ".izl.json");
    CHECK(ext_at(at("20170130235959")) == ".izl.json");
    CHECK(ext_at(at("20170131000000")) == ".izl");
    CHECK(ext_at(at("20170131000001")) == ".izl");
}

TEST_CASE("probe: the hero-in-HTML page classifies server-rendered") {
    std::string html = read_corpus_file("20150424150304");
    REQUIRE(html.find("Bombshell find at Yellowstone") != std::string::npos);
    HtmlProbeResult probe = probe_html(html);
    CHECK(probe.has_hero_section_id);
    CHECK(probe.csr_verdict == CsrVerdict::ServerRendered);
    CHECK(probe.content_word_count > 15);
    CHECK_FALSE(probe.zones_declared.empty());
}

TEST_CASE("probe: empty document is a CSR template with zero words") {
    HtmlProbeResult probe = probe_html("");
    CHECK(probe.content_word_count == 0);
    CHECK(probe.csr_verdict == CsrVerdict::CsrTemplate);
    CHECK_FALSE(probe.has_hero_section_id);
}

TEST_CASE("probe: 16 lowercase words without a hero id is indeterminate") {
    // Tokens starting lowercase, counted by hand: one two three four five six
    // seven eight nine ten eleven twelve thirteen fourteen fifteen sixteen.
    std::string html =
        "<html><body><p>one two three four five six seven eight</p>"
        "<p>nine ten eleven twelve thirteen fourteen fifteen sixteen</p>"
        "<p>Capitalized Words Do Not Count 123 4x</p>"
        "<script>var ignored = 'lowercase words inside scripts do not count';</script>"
        "</body></html>";
    HtmlProbeResult probe = probe_html(html);
    CHECK(probe.content_word_count == 16);  // digits-first tokens do not count
    CHECK(probe.csr_verdict == CsrVerdict::Indeterminate);

    ProbeOptions opts;
    opts.threshold = 16;
    CHECK(probe_html(html, opts).csr_verdict == CsrVerdict::CsrTemplate);
}

TEST_CASE("probe: script and style bodies never count") {
    std::string base = "<html><body><p>alpha beta gamma</p></body></html>";
    std::size_t base_count = probe_html(base).content_word_count;
    CHECK(base_count == 3);

    std::string with_script =
        "<html><body><p>alpha beta gamma</p>"
        "<script>these lowercase words must not count at all ever</script>"
        "<style>div { color: red; } .cls { display: none; }</style>"
        "<SCRIPT type='x'>more hidden words</SCRIPT>"
        "</body></html>";
    CHECK(probe_html(with_script).content_word_count == base_count);

    std::string unterminated = "<html><body><p>alpha beta gamma</p><script>swallows the rest";
    CHECK(probe_html(unterminated).content_word_count == base_count);
}

TEST_CASE("probe: comments and entities are handled") {
    CHECK(probe_html("<body><!-- lots of hidden words here -->ok</body>").content_word_count ==
          1);
    // &nbsp; splits tokens; "x&nbsp;y" is two words.
    CHECK(probe_html("<body>x&nbsp;y</body>").content_word_count == 2);
}

TEST_CASE("probe: Unicode lowercase counts unless ascii_only") {
    std::string html = "<body>\xC3\xA9tude r\xC3\xA9sum\xC3\xA9 \xC3\x89tude Zebra ok</body>";
    HtmlProbeResult unicode = probe_html(html);
    CHECK(unicode.content_word_count == 3);  // étude, résumé, ok

    ProbeOptions ascii;
    ascii.ascii_only = true;
    CHECK(probe_html(html, ascii).content_word_count == 2);  // résumé (ASCII 'r'), ok
}

TEST_CASE("probe: hero id detection is attribute-aware") {
    CHECK(probe_html("<section id=\"homepage1-zone-1\">x</section>").has_hero_section_id);
    CHECK(probe_html("<section id='homepage1-zone-1'>x</section>").has_hero_section_id);
    CHECK(probe_html("<section data-x=\"1\" id=homepage1-zone-1>x</section>")
              .has_hero_section_id);
    CHECK_FALSE(probe_html("<div id=\"homepage1-zone-1\">x</div>").has_hero_section_id);
    CHECK_FALSE(probe_html("<section data-id=\"homepage1-zone-1\">x</section>")
                    .has_hero_section_id);
    CHECK_FALSE(probe_html("<section id=\"homepage1-zone-11\">x</section>")
                    .has_hero_section_id);
    CHECK_FALSE(probe_html("<p>section id=\"homepage1-zone-1\" as text</p>")
                    .has_hero_section_id);
}

TEST_CASE("the corpus labels assigned at creation time hold") {
    const std::map<std::string, CsrVerdict> expected = {
        {"20140610120000", CsrVerdict::Indeterminate},
        {"20150115080000", CsrVerdict::Indeterminate},
        {"20150301103000", CsrVerdict::ServerRendered},
        {"20150420221500", CsrVerdict::ServerRendered},
        {"20150424150304", CsrVerdict::ServerRendered},
        {"20150610090000", CsrVerdict::ServerRendered},
        {"20150815143000", CsrVerdict::ServerRendered},
        {"20150917000017", CsrVerdict::CsrTemplate},
        {"20151001000018", CsrVerdict::ServerRendered},
        {"20151014000014", CsrVerdict::CsrTemplate},
        {"20151216001003", CsrVerdict::CsrTemplate},
        {"20160420010831", CsrVerdict::ServerRendered},
        {"20160420120709", CsrVerdict::CsrTemplate},
        {"20160729003156", CsrVerdict::ServerRendered},
        {"20161020120000", CsrVerdict::ServerRendered},
        {"20161025060000", CsrVerdict::CsrTemplate},
        {"20161101120000", CsrVerdict::CsrTemplate},
        {"20161215000000", CsrVerdict::CsrTemplate},
        {"20170201000000", CsrVerdict::CsrTemplate},
        {"20181004120000", CsrVerdict::CsrTemplate},
        {"20200618234848", CsrVerdict::CsrTemplate},
        {"20220101000000", CsrVerdict::CsrTemplate},
    };
    for (const auto& [stamp, verdict] : expected) {
        HtmlProbeResult probe = probe_html(read_corpus_file(stamp));
        CAPTURE(stamp);
        CHECK(probe.csr_verdict == verdict);
        // Server-rendered exactly when the Hero zone was not CSR-requested.
        CHECK(probe.has_hero_section_id == (verdict == CsrVerdict::ServerRendered));
    }
}

TEST_CASE("delivery descriptors round-trip through their names") {
    for (ZoneDelivery d : {ZoneDelivery::ZonesInHtml, ZoneDelivery::CsrExceptHero,
                           ZoneDelivery::HeroSometimesCsr, ZoneDelivery::IzlJson,
                           ZoneDelivery::AllZonesCsr, ZoneDelivery::Izl})
        CHECK(zone_delivery_from_string(to_string(d)) == d);
    CHECK_FALSE(zone_delivery_from_string("no-such-era"));
}

}  // TEST_SUITE
