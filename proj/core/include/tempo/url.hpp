#pragma once

#include <string>
#include <string_view>

namespace tempo {

struct Url {
    std::string scheme;  // lowercased
    std::string host;    // lowercased
    std::string port;    // empty when absent or default for the scheme
    std::string path;    // always starts with '/'
    std::string query;   // without leading '?', empty when absent
};

// Splits an absolute http(s) URL. Drops userinfo and fragment.
// Throws InvalidUrl.
Url parse_url(std::string_view url);

// SURT-style canonical key: host labels reversed and comma-joined, scheme and
// default port dropped, query parameters sorted, percent-encoding normalized
// (uppercase hex, unreserved characters decoded). Stable across the
// http/https variants of a URL.
//
//   https://WWW.CNN.com/          -> com,cnn,www)/
//   http://www.cnn.com/?b=2&a=1   -> com,cnn,www)/?a=1&b=2
//
// Throws InvalidUrl.
std::string canonical_urlkey(std::string_view url);

// Expands a key back into an http URL (the inverse host transform). Used to
// check idempotence of the keying; not a general-purpose URL builder.
std::string urlkey_to_url(std::string_view key);

// Uppercases hex digits of %XX escapes and decodes escaped unreserved
// characters (ALPHA / DIGIT / "-" / "." / "_" / "~"). Invalid escapes are
// left untouched.
std::string normalize_percent_encoding(std::string_view s);

}  // namespace tempo
