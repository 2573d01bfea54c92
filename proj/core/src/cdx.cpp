#include "tempo/cdx.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

struct Token {
    std::string_view text;
    std::size_t offset;
};

std::vector<Token> split_fields(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        if (i >= line.size()) break;
        size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        out.push_back({line.substr(start, i - start), start});
    }
    return out;
}

std::optional<std::int64_t> parse_int64(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<int> parse_status(std::string_view s) {
    auto v = parse_int64(s);
    if (!v || *v < 100 || *v > 599) return std::nullopt;
    return int(*v);
}

CdxRecord parse_cdxj(const std::vector<Token>& fields, std::string_view line) {
    CdxRecord rec;
    rec.urlkey = std::string(fields[0].text);
    auto ts = parse_stamp14(fields[1].text);
    if (!ts) throw MalformedCdxLine("bad CDXJ timestamp", fields[1].offset);
    rec.timestamp = *ts;

    std::string_view json_part = line.substr(fields[2].offset);
    nlohmann::json j = nlohmann::json::parse(json_part, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw MalformedCdxLine("bad CDXJ JSON block", fields[2].offset);

    auto str = [&](const char* key) -> std::string {
        auto it = j.find(key);
        return it != j.end() && it->is_string() ? it->get<std::string>() : std::string();
    };
    rec.original = str("url");
    if (rec.original.empty())
        throw MalformedCdxLine("CDXJ block lacks \"url\"", fields[2].offset);
    if (auto m = str("mime"); !m.empty()) rec.mimetype = m;
    std::string status = str("status");
    if (!status.empty() && status != "-") {
        rec.status_code = parse_status(status);
        if (!rec.status_code) throw MalformedCdxLine("bad CDXJ status", fields[2].offset);
    }
    if (auto d = str("digest"); !d.empty()) rec.digest = d;
    std::string length = str("length");
    if (!length.empty() && length != "-") rec.length = parse_int64(length);
    return rec;
}

}  // namespace

CdxRecord parse_cdx_line(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    std::vector<Token> fields = split_fields(line);
    if (fields.size() < 3) throw MalformedCdxLine("too few fields", line.size());

    if (fields[2].text.front() == '{') return parse_cdxj(fields, line);

    if (fields.size() != 7 && fields.size() != 11)
        throw MalformedCdxLine("expected 7 or 11 fields, got " + std::to_string(fields.size()),
                               fields.back().offset);

    CdxRecord rec;
    rec.urlkey = std::string(fields[0].text);
    auto ts = parse_stamp14(fields[1].text);
    if (!ts) throw MalformedCdxLine("bad timestamp", fields[1].offset);
    rec.timestamp = *ts;
    rec.original = std::string(fields[2].text);
    rec.mimetype = std::string(fields[3].text);
    if (fields[4].text != "-") {
        rec.status_code = parse_status(fields[4].text);
        if (!rec.status_code) throw MalformedCdxLine("bad status code", fields[4].offset);
    }
    rec.digest = std::string(fields[5].text);

    // 7-field API flavor: length is last. 11-field classic: redirect,
    // robotflags, length, offset, filename follow the digest.
    const Token& length_field = fields.size() == 7 ? fields[6] : fields[8];
    if (length_field.text != "-") {
        rec.length = parse_int64(length_field.text);
        if (!rec.length) throw MalformedCdxLine("bad length", length_field.offset);
    }
    if (fields.size() == 11) {
        rec.classic_extra = {std::string(fields[6].text), std::string(fields[7].text),
                             std::string(fields[9].text), std::string(fields[10].text)};
    }
    return rec;
}

std::string serialize_cdx_classic(const CdxRecord& rec) {
    std::string status = rec.status_code ? std::to_string(*rec.status_code) : "-";
    std::string length = rec.length ? std::to_string(*rec.length) : "-";
    std::string out = rec.urlkey + " " + format_stamp14(rec.timestamp) + " " + rec.original +
                      " " + rec.mimetype + " " + status + " " + rec.digest;
    if (rec.classic_extra.size() == 4) {
        out += " " + rec.classic_extra[0] + " " + rec.classic_extra[1] + " " + length + " " +
               rec.classic_extra[2] + " " + rec.classic_extra[3];
    } else {
        out += " " + length;
    }
    return out;
}

std::vector<CdxRecord> parse_cdx_body(std::string_view body, CdxParseReport* report) {
    CdxParseReport local;
    CdxParseReport& rep = report ? *report : local;
    std::vector<CdxRecord> records;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t eol = body.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? body.substr(pos) : body.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? body.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) break;  // resume-key epilogue starts here
        rep.lines_seen++;
        try {
            records.push_back(parse_cdx_line(line));
            rep.records_parsed++;
        } catch (const MalformedCdxLine& e) {
            rep.lines_skipped++;
            if (rep.first_error.empty()) rep.first_error = e.what();
        }
    }
    return records;
}

void sort_captures(std::vector<CdxRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const CdxRecord& a, const CdxRecord& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.digest < b.digest;
    });
}

std::string FilterSpec::describe() const {
    std::string out;
    if (status_code) out += "status=" + std::to_string(*status_code);
    if (from) {
        if (!out.empty()) out += " ";
        out += "from=" + format_stamp14(*from);
    }
    if (to) {
        if (!out.empty()) out += " ";
        out += "to=" + format_stamp14(*to);
    }
    return out.empty() ? "none" : out;
}

}  // namespace tempo
