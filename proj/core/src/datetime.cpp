#include "tempo/datetime.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace tempo {

namespace {

bool all_digits(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return !s.empty();
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

std::optional<utc_seconds> make_instant(int y, int mo, int d, int h, int mi, int sec) {
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 59) return std::nullopt;
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

constexpr std::array<const char*, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

constexpr std::array<const char*, 7> kWeekdayNames = {
    "Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

}  // namespace

utc_day day_of(utc_seconds t) { return std::chrono::floor<std::chrono::days>(t); }

std::optional<utc_seconds> parse_stamp14(std::string_view s) {
    if (!all_digits(s)) return std::nullopt;
    if (s.size() < 4 || s.size() > 14 || s.size() % 2 != 0) return std::nullopt;
    int y = to_int(s.substr(0, 4));
    int mo = s.size() >= 6 ? to_int(s.substr(4, 2)) : 1;
    int d = s.size() >= 8 ? to_int(s.substr(6, 2)) : 1;
    int h = s.size() >= 10 ? to_int(s.substr(8, 2)) : 0;
    int mi = s.size() >= 12 ? to_int(s.substr(10, 2)) : 0;
    int sec = s.size() >= 14 ? to_int(s.substr(12, 2)) : 0;
    return make_instant(y, mo, d, h, mi, sec);
}

std::string format_stamp14(utc_seconds t) {
    using namespace std::chrono;
    auto sd = floor<days>(t);
    year_month_day ymd{sd};
    hh_mm_ss tod{t - sd};
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d%02u%02u%02d%02d%02d", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), int(tod.hours().count()),
                  int(tod.minutes().count()), int(tod.seconds().count()));
    return buf;
}

std::optional<utc_seconds> parse_rfc1123(std::string_view s) {
    // [Ddd, ]DD Mon YYYY hh:mm:ss GMT
    auto skip_ws = [&](size_t& i) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    size_t i = 0;
    skip_ws(i);
    size_t comma = s.find(',', i);
    if (comma != std::string_view::npos && comma < i + 10) i = comma + 1;
    skip_ws(i);

    auto take_digits = [&](size_t& pos, size_t min_n, size_t max_n) -> std::optional<int> {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        size_t n = pos - start;
        if (n < min_n || n > max_n) return std::nullopt;
        return to_int(s.substr(start, n));
    };

    auto d = take_digits(i, 1, 2);
    if (!d) return std::nullopt;
    skip_ws(i);
    if (i + 3 > s.size()) return std::nullopt;
    int mo = 0;
    for (size_t m = 0; m < kMonthNames.size(); ++m) {
        if (s.compare(i, 3, kMonthNames[m]) == 0) {
            mo = int(m) + 1;
            break;
        }
    }
    if (mo == 0) return std::nullopt;
    i += 3;
    skip_ws(i);
    auto y = take_digits(i, 4, 4);
    if (!y) return std::nullopt;
    skip_ws(i);
    auto h = take_digits(i, 2, 2);
    if (!h || i >= s.size() || s[i] != ':') return std::nullopt;
    ++i;
    auto mi = take_digits(i, 2, 2);
    if (!mi || i >= s.size() || s[i] != ':') return std::nullopt;
    ++i;
    auto sec = take_digits(i, 2, 2);
    if (!sec) return std::nullopt;
    skip_ws(i);
    if (s.compare(i, 3, "GMT") != 0 && s.compare(i, 3, "UTC") != 0) return std::nullopt;
    return make_instant(*y, mo, *d, *h, *mi, *sec);
}

std::string format_rfc1123(utc_seconds t) {
    using namespace std::chrono;
    auto sd = floor<days>(t);
    year_month_day ymd{sd};
    weekday wd{sd};
    hh_mm_ss tod{t - sd};
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s, %02u %s %04d %02d:%02d:%02d GMT",
                  kWeekdayNames[wd.c_encoding()], unsigned(ymd.day()),
                  kMonthNames[unsigned(ymd.month()) - 1], int(ymd.year()),
                  int(tod.hours().count()), int(tod.minutes().count()),
                  int(tod.seconds().count()));
    return buf;
}

std::optional<utc_seconds> parse_iso8601(std::string_view s) {
    if (s.size() < 10) return std::nullopt;
    if (s[4] != '-' || s[7] != '-') return std::nullopt;
    auto y = s.substr(0, 4), mo = s.substr(5, 2), d = s.substr(8, 2);
    if (!all_digits(y) || !all_digits(mo) || !all_digits(d)) return std::nullopt;
    int h = 0, mi = 0, sec = 0;
    if (s.size() > 10) {
        // Accept 'T' or ' ' as the separator and an optional trailing 'Z'.
        if (s.size() < 19 || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
        if (s[13] != ':' || s[16] != ':') return std::nullopt;
        auto hh = s.substr(11, 2), mm = s.substr(14, 2), ss = s.substr(17, 2);
        if (!all_digits(hh) || !all_digits(mm) || !all_digits(ss)) return std::nullopt;
        if (s.size() > 19 && !(s.size() == 20 && s[19] == 'Z')) return std::nullopt;
        h = to_int(hh);
        mi = to_int(mm);
        sec = to_int(ss);
    }
    return make_instant(to_int(y), to_int(mo), to_int(d), h, mi, sec);
}

std::string format_iso8601(utc_seconds t) {
    using namespace std::chrono;
    auto sd = floor<days>(t);
    year_month_day ymd{sd};
    hh_mm_ss tod{t - sd};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), int(tod.hours().count()),
                  int(tod.minutes().count()), int(tod.seconds().count()));
    return buf;
}

std::string format_iso_date(utc_day d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

}  // namespace tempo
