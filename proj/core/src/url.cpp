#include "tempo/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_unreserved(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::string normalize_percent_encoding(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            int hi = hex_value(s[i + 1]);
            int lo = hex_value(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                unsigned char c = static_cast<unsigned char>(hi * 16 + lo);
                if (is_unreserved(c)) {
                    out.push_back(static_cast<char>(c));
                } else {
                    out.push_back('%');
                    out.push_back(static_cast<char>(std::toupper(s[i + 1])));
                    out.push_back(static_cast<char>(std::toupper(s[i + 2])));
                }
                i += 2;
                continue;
            }
        }
        out.push_back(s[i]);
    }
    return out;
}

Url parse_url(std::string_view url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0)
        throw InvalidUrl("not an absolute URL: " + std::string(url));
    Url u;
    u.scheme = to_lower(url.substr(0, scheme_end));
    for (char c : u.scheme)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            throw InvalidUrl("bad scheme in URL: " + std::string(url));

    std::string_view rest = url.substr(scheme_end + 3);
    size_t authority_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, authority_end);
    if (authority.empty()) throw InvalidUrl("empty host in URL: " + std::string(url));

    // Strip userinfo.
    size_t at = authority.rfind('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);

    size_t colon = authority.rfind(':');
    if (colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
        u.host = to_lower(authority.substr(0, colon));
        u.port = std::string(authority.substr(colon + 1));
        for (char c : u.port)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw InvalidUrl("bad port in URL: " + std::string(url));
    } else {
        u.host = to_lower(authority);
    }
    if (u.host.empty()) throw InvalidUrl("empty host in URL: " + std::string(url));
    if ((u.scheme == "http" && u.port == "80") || (u.scheme == "https" && u.port == "443"))
        u.port.clear();

    if (authority_end == std::string_view::npos) {
        u.path = "/";
        return u;
    }
    rest = rest.substr(authority_end);
    size_t frag = rest.find('#');
    if (frag != std::string_view::npos) rest = rest.substr(0, frag);
    size_t qmark = rest.find('?');
    if (qmark != std::string_view::npos) {
        u.query = std::string(rest.substr(qmark + 1));
        rest = rest.substr(0, qmark);
    }
    u.path = rest.empty() ? "/" : std::string(rest);
    if (u.path[0] == '?') u.path = "/";
    if (u.path[0] != '/') u.path = "/" + u.path;
    return u;
}

std::string canonical_urlkey(std::string_view url) {
    Url u = parse_url(url);

    std::vector<std::string> labels = split(u.host, '.');
    std::reverse(labels.begin(), labels.end());
    std::string key;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) key.push_back(',');
        key += labels[i];
    }
    if (!u.port.empty()) key += ":" + u.port;
    key += ")";
    key += normalize_percent_encoding(u.path);
    if (!u.query.empty()) {
        std::vector<std::string> params = split(u.query, '&');
        for (auto& p : params) p = normalize_percent_encoding(p);
        std::sort(params.begin(), params.end());
        key.push_back('?');
        for (size_t i = 0; i < params.size(); ++i) {
            if (i) key.push_back('&');
            key += params[i];
        }
    }
    return key;
}

std::string urlkey_to_url(std::string_view key) {
    size_t paren = key.find(')');
    if (paren == std::string_view::npos) throw InvalidUrl("not a urlkey: " + std::string(key));
    std::string_view host_part = key.substr(0, paren);
    std::string port;
    size_t colon = host_part.rfind(':');
    if (colon != std::string_view::npos) {
        port = std::string(host_part.substr(colon + 1));
        host_part = host_part.substr(0, colon);
    }
    std::vector<std::string> labels = split(host_part, ',');
    std::reverse(labels.begin(), labels.end());
    std::string url = "http://";
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) url.push_back('.');
        url += labels[i];
    }
    if (!port.empty()) url += ":" + port;
    std::string_view tail = key.substr(paren + 1);
    if (tail.empty()) tail = "/";
    url += std::string(tail);
    return url;
}

}  // namespace tempo
