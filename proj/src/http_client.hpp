#pragma once

#include <map>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "mre/error.hpp"

namespace mre::detail {

struct ParsedUrl {
  std::string scheme_host;  // e.g. "http://localhost:8080"
  std::string path;         // e.g. "/v1/embed"
};

inline ParsedUrl parse_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must be an http(s) URL: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

inline nlohmann::json http_post_json(
    const std::string& endpoint, const nlohmann::json& body,
    int timeout_seconds,
    const std::map<std::string, std::string>& headers = {}) {
  auto url = parse_url(endpoint);
  httplib::Client client(url.scheme_host);
  client.set_connection_timeout(timeout_seconds);
  client.set_read_timeout(timeout_seconds);

  httplib::Headers hs;
  for (const auto& [k, v] : headers) hs.emplace(k, v);

  auto res = client.Post(url.path, hs, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request to " + endpoint + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403) {
    throw CredentialError("endpoint " + endpoint + " rejected credentials (" +
                          std::to_string(res->status) + ")");
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("endpoint " + endpoint + " returned status " +
                         std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError("endpoint " + endpoint +
                        " returned non-JSON body: " + std::string(e.what()));
  }
}

}  // namespace mre::detail
