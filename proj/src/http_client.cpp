#include "spamhunt/ingestion.hpp"

#include "spamhunt/text.hpp"

#ifdef SPAMHUNT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace spamhunt {

namespace {

// Splits an absolute URL into the scheme://host[:port] origin and the
// path?query remainder httplib expects.
std::pair<std::string, std::string> split_origin(const std::string& url) {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

// Resolves a possibly relative Location header against the request URL.
std::string absolutize(const std::string& base_url, const std::string& location) {
    if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0) return location;
    const auto [origin, path] = split_origin(base_url);
    if (!location.empty() && location.front() == '/') return origin + location;
    const auto last_slash = path.rfind('/');
    return origin + path.substr(0, last_slash + 1) + location;
}

} // namespace

std::optional<std::string> HttpRedirectClient::next_hop(const std::string& url) {
    if (!is_valid_http_url(url)) throw TransportError("invalid URL: " + url);
#ifndef SPAMHUNT_HAVE_OPENSSL
    if (case_fold(url).rfind("https://", 0) == 0) {
        throw TransportError("built without TLS support: " + url);
    }
#endif
    const auto [origin, path] = split_origin(url);
    httplib::Client client(origin);
    client.set_follow_location(false);
    client.set_connection_timeout(timeout_seconds_);
    client.set_read_timeout(timeout_seconds_);
    const httplib::Result result = client.Get(path);
    if (!result) throw TransportError("request failed: " + url);
    if (result->status >= 300 && result->status < 400 && result->has_header("Location")) {
        return absolutize(url, result->get_header_value("Location"));
    }
    return std::nullopt;
}

} // namespace spamhunt
